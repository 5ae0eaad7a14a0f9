"""Translation of arbitrary Büchi automata into finitely ambiguous ones.

The construction tracks one branch of the *reduced split tree* of the input:
a binary tree whose levels partition the states reachable on a word, with
accepting successors branching left and each state kept only at its
leftmost occurrence.  A pair state (P, S) records the branch's own state
set S together with the union P of the sets on branches strictly to its
left; moving through an accepting branch marks acceptance.  The tree has at
most one branch per state, so the result has at most ``|Q|`` accepting runs
per word, with at most ``3^|Q|`` pair states.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Nba
from .errors import DepthExceededError


@dataclass(frozen=True)
class PairState:
    """One reduced-split-tree branch: ``label`` is the branch's state set,
    ``left`` the union of the sets on branches strictly to its left."""

    left: frozenset[str]
    label: frozenset[str]

    def __post_init__(self):
        if self.left & self.label:
            raise ValueError("branch sets must be disjoint")
        if not self.label:
            raise ValueError("branch label must be non-empty")

    def name(self, a: Nba) -> str:
        lhs = ",".join(a.sort_states(self.left))
        rhs = ",".join(a.sort_states(self.label))
        return f"P{{{lhs}}}_S{{{rhs}}}"


def pair_successors(
    a: Nba, pair: PairState, symbol: str
) -> tuple[PairState | None, PairState | None]:
    """The at most two successors of a pair state on one symbol.

    The first follows the accepting (left) child of the branch, the second
    the non-accepting (right) child; either is None when its branch label
    empties out.
    """
    step_left = a.delta(pair.left, symbol)
    step_label = a.delta(pair.label, symbol)
    to_accepting = frozenset(q for q in step_label if q in a.accepting)
    to_rest = step_label - to_accepting

    follow_acc = None
    label0 = to_accepting - step_left
    if label0:
        follow_acc = PairState(step_left, label0)

    follow_rest = None
    left1 = step_left | to_accepting
    label1 = to_rest - left1
    if label1:
        follow_rest = PairState(left1, label1)
    return follow_acc, follow_rest


def initial_pair(a: Nba) -> PairState | None:
    if not a.initial:
        return None
    return PairState(frozenset(), frozenset(a.initial))


def disambiguate(a: Nba) -> Nba:
    """Equivalent automaton with at most ``|Q|`` accepting runs per word.

    Materializes only the pair states reachable from the initial pair
    (worklist closure); state names encode the pair so the output remains
    auditable.  A pair state accepts when its branch label consists of
    accepting states only.  The output is not trimmed.
    """
    root = initial_pair(a)
    if root is None:
        return Nba.make((), a.alphabet, (), (), ())
    ordered: list[PairState] = [root]
    seen = {root}
    transitions: list[tuple[str, str, str]] = []
    head = 0
    while head < len(ordered):
        cur = ordered[head]
        head += 1
        for sym in a.alphabet:
            for succ in pair_successors(a, cur, sym):
                if succ is None:
                    continue
                if succ not in seen:
                    seen.add(succ)
                    ordered.append(succ)
                transitions.append((cur.name(a), sym, succ.name(a)))
    acc = frozenset(a.accepting)
    names = [p.name(a) for p in ordered]
    return Nba.make(
        names,
        a.alphabet,
        transitions,
        {root.name(a)},
        (p.name(a) for p in ordered if p.label <= acc),
    )


@dataclass(frozen=True)
class SplitTree:
    """Finite-depth truncation of the (reduced) split tree of a word.

    ``levels[i]`` holds the level-i nodes left to right as (address, label)
    pairs, addresses being {0,1}-strings; the left child extends the
    address with 0.  The full variant keeps empty labels and duplicate
    state occurrences, the reduced variant drops both.
    """

    word: tuple[str, ...]
    reduced: bool
    levels: tuple[tuple[tuple[str, frozenset[str]], ...], ...]

    def level_labels(self, i: int) -> tuple[frozenset[str], ...]:
        return tuple(label for _, label in self.levels[i])

    @property
    def depth(self) -> int:
        return len(self.levels) - 1


def build_split_tree(
    a: Nba, word, reduced: bool = False, max_depth: int = 12
) -> SplitTree:
    """Level-by-level construction of the split tree for a word prefix.

    The first ``|word|`` levels of the tree of any infinite word extending
    ``word`` depend only on this prefix.  Reduction keeps each state's
    leftmost occurrence per level and drops emptied nodes together with
    their descendants.
    """
    prefix = tuple(word)
    if len(prefix) > max_depth:
        raise DepthExceededError(
            f"word length {len(prefix)} exceeds the depth cap {max_depth}"
        )
    acc = frozenset(a.accepting)
    level: list[tuple[str, frozenset[str]]] = [("", frozenset(a.initial))]
    if reduced and not level[0][1]:
        level = []
    levels = [tuple(level)]
    for sym in prefix:
        grown: list[tuple[str, frozenset[str]]] = []
        for address, label in level:
            step = a.delta(label, sym)
            to_acc = frozenset(q for q in step if q in acc)
            grown.append((address + "0", to_acc))
            grown.append((address + "1", step - to_acc))
        if reduced:
            seen: set[str] = set()
            pruned = []
            for address, label in grown:
                kept = label - seen
                if kept:
                    seen |= kept
                    pruned.append((address, kept))
            grown = pruned
        level = grown
        levels.append(tuple(level))
    return SplitTree(prefix, reduced, tuple(levels))


def check_run_tree_correspondence(a: Nba, word, max_depth: int = 12) -> bool:
    """Verify the exact match between reachable pair states and reduced
    split tree nodes after reading ``word``: each level-|word| node with
    label S, preceded on its level by labels with union P, corresponds
    one-to-one to a reachable pair state (P, S)."""
    prefix = tuple(word)
    if len(prefix) > max_depth:
        raise DepthExceededError(
            f"word length {len(prefix)} exceeds the depth cap {max_depth}"
        )
    tree = build_split_tree(a, prefix, reduced=True, max_depth=max_depth)
    root = initial_pair(a)
    reached: set[PairState] = {root} if root is not None else set()
    for sym in prefix:
        reached = {
            succ
            for pair in reached
            for succ in pair_successors(a, pair, sym)
            if succ is not None
        }
    expected: set[PairState] = set()
    union_left: frozenset[str] = frozenset()
    for _, label in tree.levels[-1]:
        expected.add(PairState(union_left, label))
        union_left |= label
    return reached == expected

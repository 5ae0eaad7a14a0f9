"""Value-semantic automata plus the graph primitives shared by every analysis.

One transition structure is read two ways: as an NFA over finite words (a
run accepts when it ends in an accepting state) and as a Büchi automaton
over infinite words (a run accepts when it visits accepting states
infinitely often).  All types here are immutable after construction and all
functions are pure, so values can be shared freely between threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from ._graph import strongly_connected_components
from .errors import EmptyLanguageError, LengthExceededError

Transition = tuple[str, str, str]


@dataclass(frozen=True)
class Nba:
    """A finite automaton: states, alphabet, transition triples, initial and
    accepting sets.

    The declaration order of ``states`` and ``alphabet`` is the canonical
    order used everywhere: serialization, witness tie-breaking, and the
    state indexing of the degree algorithm all refer to it.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transitions: frozenset[Transition]
    initial: frozenset[str]
    accepting: frozenset[str]

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state ids in declaration")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate symbols in alphabet declaration")
        state_set = set(self.states)
        symbol_set = set(self.alphabet)
        for src, sym, dst in self.transitions:
            if src not in state_set:
                raise ValueError(f"undeclared source state {src!r} in transition")
            if dst not in state_set:
                raise ValueError(f"undeclared target state {dst!r} in transition")
            if sym not in symbol_set:
                raise ValueError(f"undeclared symbol {sym!r} in transition")
        for q in self.initial | self.accepting:
            if q not in state_set:
                raise ValueError(f"undeclared state {q!r} in initial/accepting set")

    @classmethod
    def make(cls, states, alphabet, transitions, initial, accepting) -> "Nba":
        """Coerce plain iterables into a validated automaton."""
        return cls(
            tuple(states),
            tuple(alphabet),
            frozenset((s, a, t) for s, a, t in transitions),
            frozenset(initial),
            frozenset(accepting),
        )

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def _succ(self) -> dict[tuple[str, str], tuple[str, ...]]:
        by_key: dict[tuple[str, str], list[str]] = {}
        for src, sym, dst in self.transitions:
            by_key.setdefault((src, sym), []).append(dst)
        idx = self.state_index
        return {k: tuple(sorted(v, key=idx.__getitem__)) for k, v in by_key.items()}

    @cached_property
    def _succ_any(self) -> dict[str, tuple[str, ...]]:
        by_src: dict[str, set[str]] = {q: set() for q in self.states}
        for src, _, dst in self.transitions:
            by_src[src].add(dst)
        return {q: self.sort_states(v) for q, v in by_src.items()}

    @cached_property
    def self_loop_states(self) -> frozenset[str]:
        return frozenset(src for src, _, dst in self.transitions if src == dst)

    def successors(self, state: str, symbol: str) -> tuple[str, ...]:
        """Targets of ``state`` under ``symbol``, in canonical order."""
        return self._succ.get((state, symbol), ())

    def delta(self, sources: Iterable[str], symbol: str) -> frozenset[str]:
        """All states reachable from ``sources`` in one ``symbol`` step."""
        out: set[str] = set()
        for q in sources:
            out.update(self._succ.get((q, symbol), ()))
        return frozenset(out)

    def sort_states(self, states: Iterable[str]) -> tuple[str, ...]:
        """Sort a state collection into canonical (declaration) order."""
        return tuple(sorted(states, key=self.state_index.__getitem__))


@dataclass(frozen=True)
class LassoWord:
    """An ultimately periodic word ``prefix · period^ω``; the period is never
    empty.  This is the canonical decidable test-input shape."""

    prefix: tuple[str, ...]
    period: tuple[str, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("lasso period must be non-empty")

    @classmethod
    def make(cls, prefix: Iterable[str], period: Iterable[str]) -> "LassoWord":
        return cls(tuple(prefix), tuple(period))

    def letter(self, i: int) -> str:
        """Symbol at position ``i`` of the infinite word (0-based)."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def unrolled(self, copies: int) -> "LassoWord":
        """The same infinite word with the period repeated ``copies`` times."""
        if copies < 1:
            raise ValueError("need at least one period copy")
        return LassoWord(self.prefix, self.period * copies)

    def symbols(self) -> frozenset[str]:
        return frozenset(self.prefix) | frozenset(self.period)


@dataclass(frozen=True)
class PathWitness:
    """A concrete path: chained transition triples, plus an anchor state so
    the empty path at a state is representable."""

    steps: tuple[Transition, ...]
    start: str

    def __post_init__(self):
        if self.steps:
            if self.steps[0][0] != self.start:
                raise ValueError("anchor state does not match first step")
            for a, b in zip(self.steps, self.steps[1:]):
                if a[2] != b[0]:
                    raise ValueError("steps do not chain")

    @property
    def src(self) -> str:
        return self.start

    @property
    def trg(self) -> str:
        return self.steps[-1][2] if self.steps else self.start

    @property
    def label(self) -> tuple[str, ...]:
        return tuple(s[1] for s in self.steps)

    @property
    def states(self) -> tuple[str, ...]:
        return (self.start,) + tuple(s[2] for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def concat(self, other: "PathWitness") -> "PathWitness":
        """Compose with a path starting where this one ends."""
        if other.src != self.trg:
            raise ValueError("paths do not compose")
        return PathWitness(self.steps + other.steps, self.start)

    def exists_in(self, a: Nba) -> bool:
        """True when the anchor is a state of ``a`` and each step is in Δ."""
        return self.start in a.state_index and all(t in a.transitions for t in self.steps)


@dataclass(frozen=True)
class Scc:
    """An SCC partition in topological order (edges go from earlier to later
    components); ``nontrivial[i]`` marks components that contain a cycle."""

    components: tuple[tuple[str, ...], ...]
    nontrivial: tuple[bool, ...]

    @cached_property
    def component_of(self) -> dict[str, int]:
        return {q: i for i, comp in enumerate(self.components) for q in comp}

    def same_component(self, p: str, q: str) -> bool:
        return self.component_of[p] == self.component_of[q]

    def cycle_states(self) -> frozenset[str]:
        """States that lie on at least one cycle."""
        return frozenset(
            q for comp, flag in zip(self.components, self.nontrivial) if flag for q in comp
        )


def sccs(a: Nba) -> Scc:
    """Strongly connected components of the transition graph."""
    raw = strongly_connected_components(a.states, lambda q: a._succ_any[q])
    raw.reverse()  # Tarjan emits reverse-topologically
    components = tuple(a.sort_states(comp) for comp in raw)
    loops = a.self_loop_states
    nontrivial = tuple(len(c) > 1 or c[0] in loops for c in components)
    return Scc(components, nontrivial)


def reachable_states(a: Nba, sources: Iterable[str]) -> frozenset[str]:
    """States reachable from ``sources`` by any number of transitions."""
    seen = set(sources)
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for d in a._succ_any[q]:
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return frozenset(seen)


def _backward_closure(pred: dict[str, list[str]], seeds: Iterable[str]) -> set[str]:
    seen = set(seeds)
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for p in pred.get(q, ()):
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def _accepting_cycle_reachers(
    alive: set[str], accepting: set[str], succ: dict[str, list[str]]
) -> set[str]:
    """States (within ``alive``) from which a cycle through an accepting
    state is reachable."""
    comps = strongly_connected_components(sorted(alive), lambda q: succ[q])
    good: set[str] = set()
    for comp in comps:
        has_cycle = len(comp) > 1 or comp[0] in succ[comp[0]]
        if has_cycle and any(q in accepting for q in comp):
            good.update(comp)
    pred: dict[str, list[str]] = {q: [] for q in alive}
    for q in alive:
        for d in succ[q]:
            pred[d].append(q)
    return _backward_closure(pred, good)


def _on_cycle(alive: set[str], succ: dict[str, list[str]]) -> set[str]:
    comps = strongly_connected_components(sorted(alive), lambda q: succ[q])
    out: set[str] = set()
    for comp in comps:
        if len(comp) > 1 or comp[0] in succ[comp[0]]:
            out.update(comp)
    return out


def trim_nba(a: Nba) -> Nba:
    """Remove everything that cannot take part in an accepting run.

    Iterates two steps to a fixpoint: unmark accepting states that lie on no
    cycle, then delete states that are unreachable from the initial set or
    cannot reach a cycle through a (still-)accepting state.  A single pass is
    not enough because deletion can destroy cycles.  Raises
    :class:`EmptyLanguageError` when nothing survives.
    """
    alive = set(a.states)
    accepting = set(a.accepting)
    while True:
        changed = False
        succ = {q: [d for d in a._succ_any[q] if d in alive] for q in alive}
        on_cycle = _on_cycle(alive, succ)
        marked = {q for q in accepting if q in on_cycle}
        if marked != accepting:
            accepting = marked
            changed = True
        reach: set[str] = set()
        queue = deque(q for q in a.initial if q in alive)
        reach.update(queue)
        while queue:
            q = queue.popleft()
            for d in succ[q]:
                if d not in reach:
                    reach.add(d)
                    queue.append(d)
        useful = reach & _accepting_cycle_reachers(alive, accepting, succ)
        if useful != alive:
            alive = useful
            accepting &= alive
            changed = True
        if not changed:
            break
    if not alive:
        raise EmptyLanguageError("no state survives trimming; the language is empty")
    return Nba.make(
        (q for q in a.states if q in alive),
        a.alphabet,
        ((s, x, t) for (s, x, t) in a.transitions if s in alive and t in alive),
        a.initial & alive,
        accepting,
    )


def is_trim(a: Nba) -> bool:
    """True iff every state lies on a path from the initial set into a cycle
    through an accepting state, and every accepting state is on a cycle."""
    if not a.states:
        return True
    alive = set(a.states)
    succ = {q: list(a._succ_any[q]) for q in a.states}
    on_cycle = _on_cycle(alive, succ)
    if not set(a.accepting) <= on_cycle:
        return False
    if reachable_states(a, a.initial) != frozenset(a.states):
        return False
    return _accepting_cycle_reachers(alive, set(a.accepting), succ) == alive


def enumerate_paths(
    a: Nba,
    sources: Iterable[str],
    label: Iterable[str],
    targets: Iterable[str],
    max_len: int = 16,
) -> frozenset[PathWitness]:
    """Exhaustively expand every path from ``sources`` to ``targets`` with the
    given label.  This is a test oracle, so the label length is capped."""
    word = tuple(label)
    if len(word) > max_len:
        raise LengthExceededError(f"label length {len(word)} exceeds cap {max_len}")
    partial: list[tuple[str, tuple[Transition, ...], str]] = [
        (q, (), q) for q in sources
    ]
    for sym in word:
        grown = []
        for start, steps, cur in partial:
            for dst in a.successors(cur, sym):
                grown.append((start, steps + ((cur, sym, dst),), dst))
        partial = grown
    target_set = set(targets)
    return frozenset(
        PathWitness(steps, start) for start, steps, cur in partial if cur in target_set
    )

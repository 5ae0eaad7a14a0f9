"""Ground truth at desk scale: membership, run counting and run-cardinality
classification on lasso words, plus reproducible random automata.

Everything here works on explicit position-unrolled run graphs and is
deliberately independent of the pattern-detection and degree machinery, so
those algorithms can be checked against this module.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from ._graph import strongly_connected_components
from .core import LassoWord, Nba
from .errors import LengthExceededError

Vertex = tuple[str, int]  # (state, position)


class Cardinality(Enum):
    FINITE = "finite"
    COUNTABLY_INFINITE = "aleph0"
    UNCOUNTABLE = "continuum"


@dataclass(frozen=True)
class RunCardinality:
    """How many accepting runs a word has: an exact finite count, countably
    many, or continuum many."""

    kind: Cardinality
    count: int | None = None

    def __post_init__(self):
        if (self.kind is Cardinality.FINITE) != (self.count is not None):
            raise ValueError("count is carried exactly for finite cardinalities")
        if self.count is not None and self.count < 0:
            raise ValueError("negative run count")

    @classmethod
    def finite(cls, count: int) -> "RunCardinality":
        return cls(Cardinality.FINITE, count)

    @classmethod
    def aleph0(cls) -> "RunCardinality":
        return cls(Cardinality.COUNTABLY_INFINITE)

    @classmethod
    def continuum(cls) -> "RunCardinality":
        return cls(Cardinality.UNCOUNTABLE)

    def is_positive(self) -> bool:
        """True when at least one accepting run exists."""
        return self.kind is not Cardinality.FINITE or self.count > 0


class LassoGraph:
    """All runs of an automaton on ``u·v^ω``, unrolled by position.

    Vertices are (state, position) for positions ``0 .. |u|+|v|-1``; the
    successor of the last position wraps back to ``|u|``.  A vertex is
    *useful* when it is reachable from a source and an accepting infinite
    path starts at it; every useful vertex keeps at least one useful
    successor.
    """

    def __init__(self, a: Nba, w: LassoWord):
        self.nba = a
        self.word = w
        length = len(w.prefix) + len(w.period)
        self.length = length
        succ: dict[Vertex, tuple[Vertex, ...]] = {}
        for i in range(length):
            sym = w.letter(i)
            nxt = i + 1 if i + 1 < length else len(w.prefix)
            for q in a.states:
                succ[(q, i)] = tuple((d, nxt) for d in a.successors(q, sym))
        self.successors_map = succ
        self.sources = tuple((q, 0) for q in a.states if q in a.initial)
        self.accepting = frozenset(
            (q, i) for q in a.accepting for i in range(length)
        )
        idx = a.state_index
        self._order = lambda v: (v[1], idx[v[0]])
        self._compute_useful()

    def _compute_useful(self) -> None:
        reach: set[Vertex] = set(self.sources)
        queue = list(self.sources)
        while queue:
            v = queue.pop()
            for s in self.successors_map[v]:
                if s not in reach:
                    reach.add(s)
                    queue.append(s)
        vertices = sorted(self.successors_map, key=self._order)
        comps = strongly_connected_components(vertices, self.successors_map.__getitem__)
        good: set[Vertex] = set()
        for comp in comps:
            nontrivial = len(comp) > 1 or comp[0] in self.successors_map[comp[0]]
            if nontrivial and any(v in self.accepting for v in comp):
                good.update(comp)
        pred: dict[Vertex, list[Vertex]] = {v: [] for v in vertices}
        for v in vertices:
            for s in self.successors_map[v]:
                pred[s].append(v)
        co = set(good)
        queue = list(good)
        while queue:
            v = queue.pop()
            for p in pred[v]:
                if p not in co:
                    co.add(p)
                    queue.append(p)
        self.reachable = frozenset(reach)
        self.co_accepting = frozenset(co)
        self.useful = frozenset(reach & co)

    def useful_successors(self, v: Vertex) -> tuple[Vertex, ...]:
        return tuple(s for s in self.successors_map[v] if s in self.useful)


def lasso_member(a: Nba, w: LassoWord) -> bool:
    """True iff ``u·v^ω`` is accepted, i.e. some source vertex of the lasso
    graph reaches a cycle through an accepting vertex."""
    g = LassoGraph(a, w)
    return any(s in g.useful for s in g.sources)


def count_runs(a: Nba, w: LassoWord) -> RunCardinality:
    """Classify and count the accepting runs on ``u·v^ω``.

    On the useful subgraph: continuum many runs iff some SCC with an
    accepting vertex is more than a single simple cycle; otherwise countably
    many iff some cycle vertex still has two useful successors; otherwise
    the count is finite and computed by a DAG count over the acyclic region
    (cycle vertices have a forced, accepting tail).
    """
    g = LassoGraph(a, w)
    useful = g.useful
    if not useful:
        return RunCardinality.finite(0)
    usucc = {v: g.useful_successors(v) for v in useful}
    order = sorted(useful, key=g._order)
    comps = strongly_connected_components(order, usucc.__getitem__)
    cycle_vertices: set[Vertex] = set()
    for comp in comps:
        members = set(comp)
        nontrivial = len(comp) > 1 or comp[0] in usucc[comp[0]]
        if not nontrivial:
            continue
        cycle_vertices.update(members)
        if any(v in g.accepting for v in comp):
            simple = all(
                sum(1 for s in usucc[v] if s in members) == 1 for v in comp
            )
            if not simple:
                return RunCardinality.continuum()
    if any(len(usucc[v]) >= 2 for v in cycle_vertices):
        return RunCardinality.aleph0()
    runs: dict[Vertex, int] = {}
    for comp in comps:  # reverse topological: successors are already counted
        for v in comp:
            runs[v] = 1 if v in cycle_vertices else sum(runs[s] for s in usucc[v])
    return RunCardinality.finite(sum(runs[s] for s in g.sources if s in useful))


def count_runs_nfa(a: Nba, word: Iterable[str], max_len: int = 16) -> int:
    """Number of accepting finite-word runs on ``word``: ``|P(Q0, word, F)|``."""
    w = tuple(word)
    if len(w) > max_len:
        raise LengthExceededError(f"word length {len(w)} exceeds cap {max_len}")
    counts = {q: 1 for q in a.initial}
    for sym in w:
        nxt: dict[str, int] = {}
        for q, c in counts.items():
            for d in a.successors(q, sym):
                nxt[d] = nxt.get(d, 0) + c
        counts = nxt
    return sum(c for q, c in counts.items() if q in a.accepting)


def random_nba(
    seed: int,
    n_states: int,
    n_letters: int,
    density: float,
    accept_fraction: float,
) -> Nba:
    """Reproducible pseudo-random automaton with a single initial state.

    Each potential transition is included independently with probability
    ``density``; each state is accepting with probability
    ``accept_fraction`` (the last state is forced accepting if the draw
    produced none and the fraction is positive).  Only ``Random.random``
    draws are used, in a fixed order, so the same seed and parameters give
    the identical automaton on every platform.
    """
    if n_states < 1:
        raise ValueError("need at least one state")
    if not 1 <= n_letters <= 26:
        raise ValueError("letter count must be between 1 and 26")
    if not 0.0 <= density <= 1.0 or not 0.0 <= accept_fraction <= 1.0:
        raise ValueError("density and accept_fraction must lie in [0, 1]")
    rng = random.Random(seed)
    states = tuple(f"q{i}" for i in range(n_states))
    letters = tuple(string.ascii_lowercase[:n_letters])
    transitions = [
        (src, sym, dst)
        for src in states
        for sym in letters
        for dst in states
        if rng.random() < density
    ]
    accepting = [q for q in states if rng.random() < accept_fraction]
    if accept_fraction > 0 and not accepting:
        accepting = [states[-1]]
    return Nba.make(states, letters, transitions, {states[0]}, accepting)


class _PeriodProfile:
    """Per-period data that lets counting over many prefixes run in O(|Q|).

    For the period graph (state, offset) the profile records, per state at
    offset 0: whether an accepting continuation exists (``in_w``), whether a
    continuum/countable branching structure is reachable (``reach_unc`` /
    ``reach_inf``), and the exact number of accepting continuations when
    neither is (``runs``, poisoned to None inside bad regions).
    """

    __slots__ = ("in_w", "reach_unc", "reach_inf", "runs")

    def __init__(self, in_w, reach_unc, reach_inf, runs):
        self.in_w = in_w
        self.reach_unc = reach_unc
        self.reach_inf = reach_inf
        self.runs = runs


def _build_profile(a: Nba, period: tuple[str, ...]) -> _PeriodProfile:
    n = len(a.states)
    m = len(period)
    idx = a.state_index
    size = n * m
    succ: list[list[int]] = [[] for _ in range(size)]
    for j, sym in enumerate(period):
        nj = (j + 1) % m
        for q in a.states:
            base = idx[q] * m + j
            succ[base] = [idx[d] * m + nj for d in a.successors(q, sym)]
    accepting_state = [q in a.accepting for q in a.states]

    comps = strongly_connected_components(range(size), succ.__getitem__)
    good: set[int] = set()
    for comp in comps:
        nontrivial = len(comp) > 1 or comp[0] in succ[comp[0]]
        if nontrivial and any(accepting_state[v // m] for v in comp):
            good.update(comp)
    pred: list[list[int]] = [[] for _ in range(size)]
    for v in range(size):
        for s in succ[v]:
            pred[s].append(v)
    w_set = set(good)
    queue = list(good)
    while queue:
        v = queue.pop()
        for p in pred[v]:
            if p not in w_set:
                w_set.add(p)
                queue.append(p)

    wsucc = {v: [s for s in succ[v] if s in w_set] for v in w_set}
    bad_unc: set[int] = set()
    bad_inf: set[int] = set()
    cycle_member: set[int] = set()
    for comp in comps:
        if not set(comp) <= w_set:
            continue
        members = set(comp)
        nontrivial = len(comp) > 1 or comp[0] in wsucc[comp[0]]
        if not nontrivial:
            continue
        cycle_member.update(members)
        if any(accepting_state[v // m] for v in comp):
            if any(sum(1 for s in wsucc[v] if s in members) != 1 for v in comp):
                bad_unc.update(members)
    for v in cycle_member:
        if len(wsucc[v]) >= 2:
            bad_inf.add(v)

    def back_reach(seeds: set[int]) -> set[int]:
        seen = set(seeds)
        queue = list(seeds)
        while queue:
            v = queue.pop()
            for p in pred[v]:
                if p in w_set and p not in seen:
                    seen.add(p)
                    queue.append(p)
        return seen

    r_unc = back_reach(bad_unc)
    r_inf = back_reach(bad_inf)

    runs: dict[int, int | None] = {}
    for comp in comps:  # reverse topological
        for v in comp:
            if v not in w_set:
                continue
            if v in cycle_member:
                runs[v] = 1 if len(wsucc[v]) == 1 else None
            else:
                total: int | None = 0
                for s in wsucc[v]:
                    r = runs[s]
                    if r is None:
                        total = None
                        break
                    total += r
                runs[v] = total

    col0 = [i * m for i in range(n)]
    return _PeriodProfile(
        in_w=[v in w_set for v in col0],
        reach_unc=[v in r_unc for v in col0],
        reach_inf=[v in r_inf for v in col0],
        runs=[runs.get(v) for v in col0],
    )


class LassoSweeper:
    """Amortized membership and run counting over many lassos of one automaton.

    Builds one profile per distinct period and one path-count vector per
    distinct prefix, which makes exhaustive sweeps over bounded lassos cheap.
    Results agree with :func:`lasso_member` and :func:`count_runs` (the
    test suite cross-checks them).
    """

    def __init__(self, a: Nba):
        self.nba = a
        self._profiles: dict[tuple[str, ...], _PeriodProfile] = {}
        self._counts: dict[tuple[str, ...], list[int]] = {}
        self._step: dict[str, list[tuple[int, int]]] = {
            sym: [
                (a.state_index[src], a.state_index[dst])
                for (src, s, dst) in a.transitions
                if s == sym
            ]
            for sym in a.alphabet
        }

    def _profile(self, period: tuple[str, ...]) -> _PeriodProfile:
        prof = self._profiles.get(period)
        if prof is None:
            prof = self._profiles[period] = _build_profile(self.nba, period)
        return prof

    def _count_vector(self, prefix: tuple[str, ...]) -> list[int]:
        vec = self._counts.get(prefix)
        if vec is not None:
            return vec
        if not prefix:
            vec = [1 if q in self.nba.initial else 0 for q in self.nba.states]
        else:
            prev = self._count_vector(prefix[:-1])
            vec = [0] * len(self.nba.states)
            for src_i, dst_i in self._step.get(prefix[-1], ()):
                if prev[src_i]:
                    vec[dst_i] += prev[src_i]
        self._counts[prefix] = vec
        return vec

    def member(self, prefix: tuple[str, ...], period: tuple[str, ...]) -> bool:
        prof = self._profile(period)
        vec = self._count_vector(prefix)
        return any(c and w for c, w in zip(vec, prof.in_w))

    def count(self, prefix: tuple[str, ...], period: tuple[str, ...]) -> RunCardinality:
        prof = self._profile(period)
        vec = self._count_vector(prefix)
        if any(c and r for c, r in zip(vec, prof.reach_unc)):
            return RunCardinality.continuum()
        if any(c and r for c, r in zip(vec, prof.reach_inf)):
            return RunCardinality.aleph0()
        total = 0
        for c, w, r in zip(vec, prof.in_w, prof.runs):
            if c and w:
                if r is None:  # unreachable given the checks above
                    raise RuntimeError("inconsistent period profile")
                total += c * r
        return RunCardinality.finite(total)


def iter_lassos(
    alphabet: tuple[str, ...], max_u: int, max_v: int
) -> Iterable[tuple[tuple[str, ...], tuple[str, ...]]]:
    """All (prefix, period) pairs within the bounds, by increasing total
    length and lexicographically within each total."""
    from itertools import product

    for total in range(1, max_u + max_v + 1):
        bucket = []
        for len_u in range(0, min(max_u, total - 1) + 1):
            len_v = total - len_u
            if not 1 <= len_v <= max_v:
                continue
            for u in product(alphabet, repeat=len_u):
                for v in product(alphabet, repeat=len_v):
                    bucket.append((u, v))
        bucket.sort()
        yield from bucket


def lasso_equiv_sample(
    a: Nba, b: Nba, max_u: int, max_v: int
) -> LassoWord | None:
    """First lasso within the bounds on which membership differs, or None.

    The sweep runs over the union of the two alphabets (a word using a
    symbol missing from one automaton is simply not accepted by it), ordered
    by total length and then lexicographically, so the returned
    counterexample is minimal.  Absence is bounded evidence of equivalence,
    not a proof.
    """
    union = list(a.alphabet)
    union.extend(sym for sym in b.alphabet if sym not in set(a.alphabet))
    sweep_a = LassoSweeper(a)
    sweep_b = LassoSweeper(b)

    def restrict(nba: Nba, side: tuple[str, ...]) -> bool:
        return all(sym in set(nba.alphabet) for sym in side)

    for u, v in iter_lassos(tuple(union), max_u, max_v):
        in_a = restrict(a, u + v) and sweep_a.member(u, v)
        in_b = restrict(b, u + v) and sweep_b.member(u, v)
        if in_a != in_b:
            return LassoWord(u, v)
    return None

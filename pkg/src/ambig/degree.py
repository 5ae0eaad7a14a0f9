"""Exact finite ambiguity degrees through saturating matrix products.

For a finitely ambiguous automaton the number of accepting runs on any word
is witnessed by an ultimately periodic word ``x·z^ω``: count the x-paths
into each state whose unique z-cycle passes an accepting state.  Path counts
are tracked in integer matrices whose entries saturate at a small bound, so
the whole configuration space is finite and can be explored exhaustively
and deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import LassoWord, Nba, trim_nba
from .errors import (
    EmptyLanguageError,
    ExceedsMaxError,
    HashSymbolClashError,
    PreconditionViolatedError,
    SearchSpaceExceededError,
)
from .patterns import AmbiguityTag, classify

MAX_CONFIGURATIONS = 200_000


@dataclass(frozen=True)
class BoundedMatrix:
    """Square nonnegative-integer matrix with entries clamped at ``bound``.

    The saturating product keeps every entry equal to
    ``min(true value, bound)``, which makes long products well-defined and
    the set of distinct matrices finite.
    """

    bound: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            if any(e < 0 or e > self.bound for e in row):
                raise ValueError("entry outside [0, bound]")

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, bound: int) -> "BoundedMatrix":
        return cls(bound, tuple(
            tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
        ))

    @classmethod
    def from_rows(cls, rows, bound: int) -> "BoundedMatrix":
        return cls(bound, tuple(
            tuple(min(e, bound) for e in row) for row in rows
        ))

    def mul(self, other: "BoundedMatrix", bound: int | None = None) -> "BoundedMatrix":
        """Saturating product; the result is clamped at ``bound`` (default:
        this matrix's bound)."""
        b = self.bound if bound is None else bound
        return BoundedMatrix(b, _sat_mul(self.rows, other.rows, b))


def _sat_mul(x, y, bound):
    n = len(x)
    cols = list(zip(*y))
    return tuple(
        tuple(min(bound, sum(a * b for a, b in zip(row, col))) for col in cols)
        for row in x
    )


def _sat_vec_mul(vec, rows, bound):
    n = len(rows)
    out = [0] * n
    for i, c in enumerate(vec):
        if c:
            row = rows[i]
            for j, e in enumerate(row):
                if e:
                    out[j] += c * e
    return tuple(min(v, bound) for v in out)


def letter_matrices(a: Nba) -> dict[str, tuple[BoundedMatrix, BoundedMatrix]]:
    """Per-symbol transition matrices in canonical state order.

    ``T[i][j]`` is 1 when state j is an a-successor of state i, so products
    of T matrices count paths.  ``A[i][j]`` additionally weighs accepting
    targets with 2, so a diagonal entry above 1 in a product flags a cycle
    that visits an accepting state.
    """
    n = len(a.states)
    idx = a.state_index
    out: dict[str, tuple[BoundedMatrix, BoundedMatrix]] = {}
    for sym in a.alphabet:
        t_rows = [[0] * n for _ in range(n)]
        a_rows = [[0] * n for _ in range(n)]
        for q in a.states:
            for d in a.successors(q, sym):
                t_rows[idx[q]][idx[d]] = 1
                a_rows[idx[q]][idx[d]] = 2 if d in a.accepting else 1
        out[sym] = (
            BoundedMatrix(1, tuple(tuple(r) for r in t_rows)),
            BoundedMatrix(2, tuple(tuple(r) for r in a_rows)),
        )
    return out


@dataclass(frozen=True)
class DegreeResult:
    """Outcome of a degree query: whether the threshold is exceeded, the
    exact degree when computed, and a lasso realizing it."""

    exceeds: bool
    exact: int | None = None
    witness_lasso: LassoWord | None = None


def _require_finitely_ambiguous(a: Nba) -> bool:
    """Check the finite-ambiguity precondition.  Returns True when the
    language is empty (degree 0, nothing to search)."""
    try:
        trimmed = trim_nba(a)
    except EmptyLanguageError:
        return True
    cls = classify(trimmed)
    if cls.tag is not AmbiguityTag.FINITE:
        raise PreconditionViolatedError(
            f"degree is only defined for finitely ambiguous automata; "
            f"ambiguity is {cls.tag.value}",
            witness=cls.witness,
        )
    return False


def _exceeds_search(a: Nba, d: int) -> DegreeResult:
    """Deterministic two-phase exploration of the saturated configuration
    space: prefix path-count vectors first, then period cycle matrices.

    Configurations are deduplicated after saturation; the search is
    breadth-first by letters consumed with lexicographic tie-breaking, so
    the reported witness lasso is minimal, then lexicographically least
    (prefix compared before period)."""
    n = len(a.states)
    symbols = a.alphabet
    t_rows = []
    a_rows = []
    for sym in symbols:
        rows_t = [[0] * n for _ in range(n)]
        rows_a = [[0] * n for _ in range(n)]
        idx = a.state_index
        for q in a.states:
            for dst in a.successors(q, sym):
                rows_t[idx[q]][idx[dst]] = 1
                rows_a[idx[q]][idx[dst]] = 2 if dst in a.accepting else 1
        t_rows.append(tuple(tuple(r) for r in rows_t))
        a_rows.append(tuple(tuple(r) for r in rows_a))

    x_bound = d + 1
    start = tuple(1 if q in a.initial else 0 for q in a.states)

    # phase 1: all reachable saturated prefix vectors, first witness each
    vectors: dict[tuple[int, ...], tuple[int, ...]] = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for vec in frontier:
            wit = vectors[vec]
            for s in range(len(symbols)):
                grown = _sat_vec_mul(vec, t_rows[s], x_bound)
                if grown not in vectors:
                    vectors[grown] = wit + (s,)
                    nxt.append(grown)
        if len(vectors) > MAX_CONFIGURATIONS:
            raise SearchSpaceExceededError("prefix configuration space too large")
        frontier = nxt

    # phase 2: all reachable saturated period matrix pairs
    pairs: dict[tuple, tuple[int, ...]] = {}
    frontier2 = []
    for s in range(len(symbols)):
        z = tuple(tuple(min(e, 2) for e in row) for row in t_rows[s])
        zh = a_rows[s]
        if (z, zh) not in pairs:
            pairs[(z, zh)] = (s,)
            frontier2.append((z, zh))
    while frontier2:
        nxt2 = []
        for z, zh in frontier2:
            wit = pairs[(z, zh)]
            for s in range(len(symbols)):
                gz = _sat_mul(z, t_rows[s], 2)
                gzh = _sat_mul(zh, a_rows[s], 2)
                if (gz, gzh) not in pairs:
                    pairs[(gz, gzh)] = wit + (s,)
                    nxt2.append((gz, gzh))
        if len(pairs) > MAX_CONFIGURATIONS:
            raise SearchSpaceExceededError("period configuration space too large")
        frontier2 = nxt2

    # group period configurations by their unambiguous accepting-cycle set
    index_sets: dict[frozenset[int], tuple[int, ...]] = {}
    for (z, zh), wit in pairs.items():
        idx_set = frozenset(
            i for i in range(n) if z[i][i] == 1 and zh[i][i] > 1
        )
        if idx_set and idx_set not in index_sets:
            index_sets[idx_set] = wit

    best = None
    for idx_set, z_wit in index_sets.items():
        for vec, x_wit in vectors.items():
            if sum(vec[i] for i in idx_set) > d:
                key = (len(x_wit) + len(z_wit), x_wit, z_wit)
                if best is None or key < best:
                    best = key
    if best is None:
        return DegreeResult(exceeds=False)
    _, x_wit, z_wit = best
    lasso = LassoWord(
        tuple(symbols[s] for s in x_wit), tuple(symbols[s] for s in z_wit)
    )
    return DegreeResult(exceeds=True, witness_lasso=lasso)


def decide_degree_exceeds(a: Nba, d: int) -> DegreeResult:
    """Decide whether some word has more than ``d`` accepting runs.

    Requires finite ambiguity (raises
    :class:`PreconditionViolatedError` carrying the blocking pattern
    otherwise).  On success with ``exceeds`` the result carries a witness
    lasso whose run count is above ``d``."""
    if d < 0:
        raise ValueError("threshold must be nonnegative")
    if _require_finitely_ambiguous(a):
        return DegreeResult(exceeds=False)
    return _exceeds_search(a, d)


def exact_degree(a: Nba, max_d: int) -> DegreeResult:
    """The exact ambiguity degree: the least k with no word above k runs.

    Searches k = 0, 1, … up to ``max_d`` and reports the witness lasso of
    the last exceeded threshold, whose run count equals the degree.  Raises
    :class:`ExceedsMaxError` when the degree lies above ``max_d``."""
    if max_d < 1:
        raise ValueError("max_d must be positive")
    if _require_finitely_ambiguous(a):
        return DegreeResult(exceeds=False, exact=0)
    witness = None
    for k in range(max_d + 1):
        result = _exceeds_search(a, k)
        if not result.exceeds:
            return DegreeResult(exceeds=False, exact=k, witness_lasso=witness)
        witness = result.witness_lasso
    raise ExceedsMaxError(f"ambiguity degree exceeds {max_d}")


def omega_closure_hash(nfa: Nba, symbol: str = "#") -> Nba:
    """Turn an NFA into a Büchi automaton accepting ``w·symbol^ω`` for every
    accepted finite word ``w``, preserving the number of accepting runs per
    word.  A fresh sink state carries the only accepting loop."""
    if symbol in nfa.alphabet:
        raise HashSymbolClashError(f"symbol {symbol!r} already in the alphabet")
    sink = "qhash"
    while sink in nfa.state_index:
        sink += "x"
    transitions = set(nfa.transitions)
    transitions.update((q, symbol, sink) for q in nfa.accepting)
    transitions.add((sink, symbol, sink))
    return Nba.make(
        nfa.states + (sink,),
        nfa.alphabet + (symbol,),
        transitions,
        nfa.initial,
        {sink},
    )

"""Structural ambiguity patterns and the six-level hierarchy.

Two patterns drive everything.  An IDA pattern is a pair of distinct states
p, q with equal-label cycles at both and an equally-labelled path from p to
q; it forces unbounded ambiguity.  An EDA pattern is a single state with two
distinct equal-label cycles; it forces exponential growth.  Restricting the
cycle state (EDA) or the target state (IDA) to be accepting yields the
variants that separate uncountable and countable run cardinalities on
infinite words.  Detection runs in matched-letter products of the automaton
with itself.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from ._graph import strongly_connected_components
from .core import Nba, PathWitness, Scc, is_trim, reachable_states, sccs
from .errors import NotShiftableError, NotTrimError, PreconditionViolatedError


class PatternKind(Enum):
    IDA = "IDA"
    EDA = "EDA"
    IDA_F = "IDA_F"
    EDA_F = "EDA_F"


_IDA_KINDS = (PatternKind.IDA, PatternKind.IDA_F)
_EDA_KINDS = (PatternKind.EDA, PatternKind.EDA_F)


@dataclass(frozen=True)
class PatternWitness:
    """A checked ambiguity pattern.

    IDA kinds carry three paths (cycle at ``p``, path ``p``→``q``, cycle at
    ``q``) over the same label; EDA kinds carry two distinct cycles at
    ``p``.  ``validate`` re-verifies every path against the automaton.
    """

    kind: PatternKind
    p: str
    q: str | None
    label: tuple[str, ...]
    paths: tuple[PathWitness, ...]

    def validate(self, a: Nba) -> None:
        """Raise ValueError unless the witness holds in ``a``."""
        if not self.label:
            raise ValueError("pattern label must be non-empty")
        for path in self.paths:
            if not path.exists_in(a):
                raise ValueError("witness path uses transitions missing from the automaton")
            if path.label != self.label:
                raise ValueError("witness path label differs from the pattern label")
        if self.kind in _IDA_KINDS:
            if self.q is None or self.q == self.p:
                raise ValueError("IDA patterns need two distinct states")
            if len(self.paths) != 3:
                raise ValueError("IDA patterns carry three paths")
            pi1, pi2, pi3 = self.paths
            if (pi1.src, pi1.trg) != (self.p, self.p):
                raise ValueError("first path must cycle at p")
            if (pi2.src, pi2.trg) != (self.p, self.q):
                raise ValueError("second path must lead from p to q")
            if (pi3.src, pi3.trg) != (self.q, self.q):
                raise ValueError("third path must cycle at q")
            if self.kind is PatternKind.IDA_F and self.q not in a.accepting:
                raise ValueError("IDA_F needs q accepting")
        else:
            if self.q is not None:
                raise ValueError("EDA patterns have no second state")
            if len(self.paths) != 2:
                raise ValueError("EDA patterns carry two paths")
            pi1, pi2 = self.paths
            for path in (pi1, pi2):
                if (path.src, path.trg) != (self.p, self.p):
                    raise ValueError("both paths must cycle at p")
            if pi1 == pi2:
                raise ValueError("the two cycles must be distinct")
            if self.kind is PatternKind.EDA_F and self.p not in a.accepting:
                raise ValueError("EDA_F needs p accepting")


def _succ_index(a: Nba) -> list[list[list[int]]]:
    """succ[state][symbol] as canonical index lists."""
    idx = a.state_index
    return [
        [[idx[d] for d in a.successors(q, sym)] for sym in a.alphabet]
        for q in a.states
    ]


def _lex_shortest(
    start,
    target,
    successors,
    n_symbols: int,
    vertex_key,
):
    """Shortest path from ``start`` to ``target`` in a labelled graph, with
    the lexicographically least label among shortest ones.

    ``successors(v, s)`` lists the s-successors of v.  Returns
    (symbol_index_tuple, vertex_path) or None when unreachable.  The
    concrete vertex path is chosen deterministically via ``vertex_key``.
    """
    forward: dict = {start: None}
    order = [start]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for s in range(n_symbols):
            for w in successors(v, s):
                if w not in forward:
                    forward[w] = None
                    order.append(w)
    if target not in forward:
        return None
    rev: dict = {v: [] for v in forward}
    for v in forward:
        for s in range(n_symbols):
            for w in successors(v, s):
                rev[w].append((v, s))
    dist = {target: 0}
    queue = deque([target])
    while queue:
        w = queue.popleft()
        for v, _ in rev[w]:
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    if start not in dist:
        return None
    total = dist[start]
    label: list[int] = []
    frontiers = [{start}]
    frontier = {start}
    for step in range(total):
        remaining = total - step - 1
        for s in range(n_symbols):
            nxt = {
                w
                for v in frontier
                for w in successors(v, s)
                if dist.get(w) == remaining
            }
            if nxt:
                label.append(s)
                frontier = nxt
                frontiers.append(frontier)
                break
        else:
            raise RuntimeError("inconsistent distance table")
    path = [target]
    cur = target
    for step in range(total - 1, -1, -1):
        s = label[step]
        cands = [v for v in frontiers[step] if cur in successors(v, s)]
        cur = min(cands, key=vertex_key)
        path.append(cur)
    path.reverse()
    return tuple(label), path


def _project_path(a: Nba, states_idx: list[int], label_idx: tuple[int, ...]) -> PathWitness:
    names = [a.states[i] for i in states_idx]
    symbols = [a.alphabet[s] for s in label_idx]
    steps = tuple(
        (names[i], symbols[i], names[i + 1]) for i in range(len(symbols))
    )
    return PathWitness(steps, names[0])


def find_eda(a: Nba, restrict_accepting: bool = False) -> PatternWitness | None:
    """Two distinct equal-label cycles at one state (an accepting one when
    restricted).

    Such cycles exist at p exactly when, in the matched-letter self-product,
    (p, p) shares a strongly connected component with an off-diagonal
    vertex.  The witness uses the shortest such cycle label, ties broken
    lexicographically and then by state order.
    """
    n = len(a.states)
    if n == 0 or not a.transitions:
        return None
    succ = _succ_index(a)
    n_symbols = len(a.alphabet)

    def pair_succ(v: int):
        x, y = divmod(v, n)
        for s in range(n_symbols):
            for xd in succ[x][s]:
                for yd in succ[y][s]:
                    yield xd * n + yd

    comps = strongly_connected_components(range(n * n), pair_succ)
    candidates: list[tuple[int, frozenset[int]]] = []
    for comp in comps:
        if not any(v // n != v % n for v in comp):
            continue
        members = frozenset(comp)
        for p in sorted(v // n for v in comp if v // n == v % n):
            if restrict_accepting and a.states[p] not in a.accepting:
                continue
            candidates.append((p, members))
    if not candidates:
        return None

    best = None
    for p, members in sorted(candidates):
        found = _eda_cycle(a, p, members, succ, n_symbols)
        if found is None:
            continue
        label, pair_path = found
        key = (len(label), label, p)
        if best is None or key < best[0]:
            best = (key, label, pair_path)
    if best is None:
        return None
    _, label, pair_path = best
    n_states = len(a.states)
    xs = [v // n_states for v in pair_path]
    ys = [v % n_states for v in pair_path]
    pi1 = _project_path(a, xs, label)
    pi2 = _project_path(a, ys, label)
    kind = PatternKind.EDA_F if restrict_accepting else PatternKind.EDA
    witness = PatternWitness(
        kind, a.states[pair_path[0] // n_states], None,
        tuple(a.alphabet[s] for s in label), (pi1, pi2),
    )
    witness.validate(a)
    return witness


def _eda_cycle(a, p, members, succ, n_symbols):
    """Shortest lex-least cycle at (p, p) through an off-diagonal product
    vertex, searched in the layered (vertex, seen-off-diagonal) graph."""
    n = len(a.states)
    start = (p * n + p, 0)
    target = (p * n + p, 1)

    def layered_succ(v, s):
        pair, flag = v
        x, y = divmod(pair, n)
        out = []
        for xd in succ[x][s]:
            for yd in succ[y][s]:
                w = xd * n + yd
                if w in members:
                    out.append((w, flag | (xd != yd)))
        return out

    found = _lex_shortest(
        start, target, layered_succ, n_symbols, vertex_key=lambda v: (v[0], v[1])
    )
    if found is None:
        return None
    label, layered_path = found
    return label, [v for v, _ in layered_path]


def _ida_pairs(a: Nba, restrict_accepting: bool) -> list[tuple[str, str]]:
    """All IDA pairs (p, q), via one SCC pass over the matched triple product
    extended with back-links from (p, q, q) to (p, p, q).

    A back-link lies on a cycle exactly when the pattern holds for its pair,
    so the pair list is exactly the set of components where both endpoints
    of a back-link meet.  The x and z coordinates are restricted to states
    on cycles, which every witness path satisfies.
    """
    n = len(a.states)
    if n < 2 or not a.transitions:
        return []
    scc = sccs(a)
    cyc = sorted(a.state_index[q] for q in scc.cycle_states())
    if len(cyc) < 2:
        return []
    cyc_set = set(cyc)
    succ = _succ_index(a)
    n_symbols = len(a.alphabet)
    accepting_idx = {a.state_index[q] for q in a.accepting}

    def enc(x: int, y: int, z: int) -> int:
        return (x * n + y) * n + z

    def tsucc(v: int):
        x, rest = divmod(v, n * n)
        y, z = divmod(rest, n)
        for s in range(n_symbols):
            xs = [d for d in succ[x][s] if d in cyc_set]
            if not xs:
                continue
            zs = [d for d in succ[z][s] if d in cyc_set]
            if not zs:
                continue
            for xd in xs:
                for yd in succ[y][s]:
                    for zd in zs:
                        yield enc(xd, yd, zd)
        if y == z and x != y and (not restrict_accepting or z in accepting_idx):
            yield enc(x, x, z)

    roots = [enc(x, y, z) for x in cyc for y in range(n) for z in cyc]
    comps = strongly_connected_components(roots, tsucc)
    comp_of: dict[int, int] = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    pairs: list[tuple[str, str]] = []
    for p in cyc:
        for q in cyc:
            if p == q:
                continue
            if restrict_accepting and q not in accepting_idx:
                continue
            v_from = enc(p, q, q)
            v_to = enc(p, p, q)
            cf = comp_of.get(v_from)
            if cf is not None and cf == comp_of.get(v_to):
                pairs.append((a.states[p], a.states[q]))
    return pairs


def _triple_region(a: Nba, scc: Scc, p: str, q: str):
    """Vertex restriction for witness search: the p-cycle stays in p's SCC,
    the q-cycle in q's, and the middle path between p and q."""
    idx = a.state_index
    comp_p = scc.components[scc.component_of[p]]
    comp_q = scc.components[scc.component_of[q]]
    xs = {idx[s] for s in comp_p}
    zs = {idx[s] for s in comp_q}
    fwd = reachable_states(a, {p})
    pred: dict[str, list[str]] = {s: [] for s in a.states}
    for s in a.states:
        for d in a._succ_any[s]:
            pred[d].append(s)
    back = {q}
    queue = deque([q])
    while queue:
        cur = queue.popleft()
        for s in pred[cur]:
            if s not in back:
                back.add(s)
                queue.append(s)
    ys = {idx[s] for s in fwd & back}
    return xs, ys, zs


def _triple_witness(a: Nba, scc: Scc, p: str, q: str, succ, length_only: bool):
    """Shortest (optionally lex-least) label of a matched path from
    (p, p, q) to (p, q, q), restricted to the witness region."""
    n = len(a.states)
    idx = a.state_index
    xs, ys, zs = _triple_region(a, scc, p, q)
    n_symbols = len(a.alphabet)
    pi, qi = idx[p], idx[q]

    def enc(x, y, z):
        return (x * n + y) * n + z

    def dec(v):
        x, rest = divmod(v, n * n)
        return x, *divmod(rest, n)

    def tsucc(v, s):
        x, y, z = dec(v)
        out = []
        for xd in succ[x][s]:
            if xd not in xs:
                continue
            for yd in succ[y][s]:
                if yd not in ys:
                    continue
                for zd in succ[z][s]:
                    if zd in zs:
                        out.append(enc(xd, yd, zd))
        return out

    start = enc(pi, pi, qi)
    target = enc(pi, qi, qi)
    if length_only:
        if start == target:
            return 0
        dist = {start: 0}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for s in range(n_symbols):
                for w in tsucc(v, s):
                    if w not in dist:
                        if w == target:
                            return dist[v] + 1
                        dist[w] = dist[v] + 1
                        queue.append(w)
        return None
    found = _lex_shortest(start, target, tsucc, n_symbols, vertex_key=lambda v: v)
    if found is None:
        return None
    label, path = found
    decoded = [dec(v) for v in path]
    pi1 = _project_path(a, [d[0] for d in decoded], label)
    pi2 = _project_path(a, [d[1] for d in decoded], label)
    pi3 = _project_path(a, [d[2] for d in decoded], label)
    return label, (pi1, pi2, pi3)


def find_ida(a: Nba, restrict_accepting: bool = False) -> PatternWitness | None:
    """Cycle–path–cycle pattern over one label at distinct states p, q
    (q accepting when restricted).

    Pair detection is a single SCC pass over the matched triple product;
    the witness label is the shortest matched path from (p, p, q) to
    (p, q, q), ties broken lexicographically and then by state order.
    """
    pairs = _ida_pairs(a, restrict_accepting)
    if not pairs:
        return None
    scc = sccs(a)
    succ = _succ_index(a)
    idx = a.state_index
    dists = []
    for p, q in pairs:
        d = _triple_witness(a, scc, p, q, succ, length_only=True)
        if d is not None:
            dists.append((d, idx[p], idx[q], p, q))
    if not dists:
        return None
    shortest = min(d[0] for d in dists)
    best = None
    for d, p_i, q_i, p, q in dists:
        if d != shortest:
            continue
        label, paths = _triple_witness(a, scc, p, q, succ, length_only=False)
        key = (label, p_i, q_i)
        if best is None or key < best[0]:
            best = (key, p, q, label, paths)
    _, p, q, label, paths = best
    kind = PatternKind.IDA_F if restrict_accepting else PatternKind.IDA
    witness = PatternWitness(
        kind, p, q, tuple(a.alphabet[s] for s in label), paths
    )
    witness.validate(a)
    return witness


def _split_cycle(path: PathWitness, at: int) -> tuple[PathWitness, PathWitness]:
    head = PathWitness(path.steps[:at], path.start)
    tail = PathWitness(path.steps[at:], head.trg)
    return head, tail


def shift_pattern(a: Nba, witness: PatternWitness) -> PatternWitness:
    """Rotate a pattern so the accepting visit lands on the distinguished
    state, turning IDA into IDA_F and EDA into EDA_F.

    The cycle carrying the accepting visit is split there; all paths are
    split at the same offset, rotated, and concatenated, giving a pattern
    over the doubled rotated label.  Raises :class:`NotShiftableError` when
    no accepting visit exists on the relevant cycles.
    """
    witness.validate(a)
    v_len = len(witness.label)
    if witness.kind in _IDA_KINDS:
        pi1, pi2, pi3 = witness.paths
        split = next(
            (i for i in range(v_len) if pi3.states[i] in a.accepting), None
        )
        if split is None:
            raise NotShiftableError("no accepting visit on the cycle at q")
        q_new = pi3.states[split]
        p3_head, p3_tail = _split_cycle(pi3, split)
        p1_head, p1_tail = _split_cycle(pi1, split)
        p_new = pi1.states[split]
        hat1 = p1_tail.concat(pi1).concat(p1_head)
        hat2 = p1_tail.concat(pi2).concat(p3_head)
        hat3 = p3_tail.concat(pi3).concat(p3_head)
        label = hat1.label
        if p_new == q_new:
            # both rotated cycles sit at the same accepting state
            out = PatternWitness(PatternKind.EDA_F, p_new, None, label, (hat1, hat2))
        else:
            out = PatternWitness(PatternKind.IDA_F, p_new, q_new, label, (hat1, hat2, hat3))
    else:
        pi1, pi2 = witness.paths
        split = next(
            (i for i in range(v_len) if pi1.states[i] in a.accepting), None
        )
        if split is None:
            pi1, pi2 = pi2, pi1
            split = next(
                (i for i in range(v_len) if pi1.states[i] in a.accepting), None
            )
        if split is None:
            raise NotShiftableError("no accepting visit on either cycle")
        p_new = pi1.states[split]
        head, tail = _split_cycle(pi1, split)
        hat1 = tail.concat(pi1).concat(head)
        hat2 = tail.concat(pi2).concat(head)
        out = PatternWitness(PatternKind.EDA_F, p_new, None, hat1.label, (hat1, hat2))
    out.validate(a)
    return out


class AmbiguityTag(Enum):
    FINITE = "finite"
    POLYNOMIAL = "polynomial"
    EXPONENTIAL = "exponential"
    STRICT_COUNTABLE = "strict-countable"
    UNCOUNTABLE = "uncountable"


@dataclass(frozen=True)
class AmbiguityClass:
    """Classification outcome: the hierarchy tag, the polynomial-growth
    exponent when applicable, and the pattern witness justifying any
    non-finite tag."""

    tag: AmbiguityTag
    dpa: int | None = None
    witness: PatternWitness | None = None


def _longest_chain(a: Nba, pairs: list[tuple[str, str]]) -> int:
    """Longest chain of IDA pairs ordered by reachability from one pair's
    target cycle to the next pair's source cycle."""
    reach: dict[str, frozenset[str]] = {}
    for _, q in pairs:
        if q not in reach:
            reach[q] = reachable_states(a, {q})
    succ = [
        [j for j, (p2, _) in enumerate(pairs) if i != j and p2 in reach[q1]]
        for i, (_, q1) in enumerate(pairs)
    ]
    depth: dict[int, int] = {}
    active: set[int] = set()

    def walk(i: int) -> int:
        if i in depth:
            return depth[i]
        if i in active:
            raise RuntimeError("pair chain is cyclic; exponential pattern missed")
        active.add(i)
        depth[i] = 1 + max((walk(j) for j in succ[i]), default=0)
        active.discard(i)
        return depth[i]

    return max(walk(i) for i in range(len(pairs)))


def compute_dpa(a: Nba) -> int:
    """Polynomial-growth exponent: the longest reachability-ordered chain of
    IDA pairs.  Only defined when ambiguity is infinite but every single
    word has finitely many runs and growth is sub-exponential."""
    eda = find_eda(a, False)
    if eda is not None:
        raise PreconditionViolatedError(
            "growth is exponential (distinct equal-label cycles exist)", witness=eda
        )
    ida_f = find_ida(a, True)
    if ida_f is not None:
        raise PreconditionViolatedError(
            "some word has infinitely many runs (accepting cycle-path-cycle pattern)",
            witness=ida_f,
        )
    pairs = _ida_pairs(a, False)
    if not pairs:
        raise PreconditionViolatedError("ambiguity is finite; no growth exponent exists")
    return _longest_chain(a, pairs)


def classify(a: Nba) -> AmbiguityClass:
    """Place a trim automaton in the six-level ambiguity hierarchy.

    Cascade: accepting double-cycle → uncountable; accepting
    cycle-path-cycle → strict-countable; double-cycle → limit-countable
    exponential; cycle-path-cycle → limit-countable polynomial (with the
    growth exponent); otherwise finite.  Non-trim input is refused because
    the hierarchy's pattern characterizations presume trimness.
    """
    if not is_trim(a):
        raise NotTrimError(
            "classification needs a trim automaton; trim it first (or pass --trim-first)"
        )
    witness = find_eda(a, True)
    if witness is not None:
        return AmbiguityClass(AmbiguityTag.UNCOUNTABLE, None, witness)
    witness = find_ida(a, True)
    if witness is not None:
        return AmbiguityClass(AmbiguityTag.STRICT_COUNTABLE, None, witness)
    witness = find_eda(a, False)
    if witness is not None:
        return AmbiguityClass(AmbiguityTag.EXPONENTIAL, None, witness)
    witness = find_ida(a, False)
    if witness is not None:
        dpa = _longest_chain(a, _ida_pairs(a, False))
        return AmbiguityClass(AmbiguityTag.POLYNOMIAL, dpa, witness)
    return AmbiguityClass(AmbiguityTag.FINITE)

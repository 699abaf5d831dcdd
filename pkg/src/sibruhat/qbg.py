"""Parabolic quantum Bruhat graphs and their Maya-diagram description.

Edges of QB^{I minus {i}} are produced two ways: ``generic`` checks the
length condition for every positive root, ``classified`` reads the
case-by-case column moves from ``column_moves``.  The two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .cst import Col, column_of_window, is_cst, sort_letters, window_of_column
from .weyl import (
    RootDatum,
    Root,
    SignedPermutation,
    WeylError,
    coroot_of,
    dot,
    enumerate_min_reps,
    format_vector,
    is_min_rep,
    length,
    min_coset_rep,
    reflection,
    unit,
    vadd,
    vsub,
)

BRUHAT = "bruhat"
QUANTUM = "quantum"


@dataclass(frozen=True)
class QBGEdge:
    source: SignedPermutation
    target: SignedPermutation
    root: Root
    kind: str
    clause: str | None = field(default=None, compare=False)

    def key(self):
        return (self.source.window, self.target.window, self.root.vector, self.kind)

    def __str__(self):
        tag = f" ({self.clause})" if self.clause else ""
        return f"{self.source} -[{self.root}]-> {self.target} {self.kind}{tag}"


def _complement(datum: RootDatum, J: Iterable[int]) -> tuple[int, ...]:
    J = set(J)
    return tuple(j for j in datum.index_set if j not in J)


def _in_span(datum: RootDatum, gamma: Root, J) -> bool:
    """gamma lies in Delta_J: its coroot has no coordinate outside J."""
    cv = gamma.coroot
    return all(datum.coroot_coordinate(cv, k) == 0 for k in _complement(datum, J))


def edge_generic(w: SignedPermutation, gamma: Root | Sequence[int],
                 J: Iterable[int]) -> QBGEdge | None:
    """The edge w -gamma-> floor(w r_gamma) of QB^J, if the length condition holds."""
    J = tuple(sorted(set(J)))
    datum = w.datum
    gamma = gamma if isinstance(gamma, Root) else Root(tuple(gamma))
    if not datum.is_root(gamma.vector) or not gamma.is_positive:
        raise WeylError(f"{gamma} is not a positive root of {datum}")
    if not is_min_rep(w, J):
        raise WeylError(f"{w} is not a minimal coset representative for J={list(J)}")
    if _in_span(datum, gamma, J):
        raise WeylError(f"{gamma} lies in the parabolic root subsystem")
    target = min_coset_rep(w * reflection(datum, gamma), J)
    diff = length(target) - length(w)
    if diff == 1:
        return QBGEdge(w, target, gamma, BRUHAT)
    drop = dot(gamma.coroot, vsub(datum.rho2(), datum.rho2(J)))
    if diff == 1 - drop:
        return QBGEdge(w, target, gamma, QUANTUM)
    return None


# -- classified column moves ---------------------------------------------------


@dataclass(frozen=True)
class ColumnMove:
    """One case of the edge classification applied to a column.

    ``qbg_clause`` names the Bruhat/quantum case, ``sib_clause`` the cover
    case of the semi-infinite order.  Bruhat moves carry the stated value of
    c_i(gamma^vee); quantum moves carry gamma^vee itself.
    """

    qbg_clause: str
    sib_clause: str
    target: Col
    kind: str
    ci: int
    coroot: tuple[int, ...] | None = None

    @property
    def dc(self) -> int:
        return self.ci if self.kind == QUANTUM else 0


def _replace(col: Col, changes: dict[int, int]) -> Col:
    return tuple(changes.get(u, x) for u, x in enumerate(col))


def _raise_unbarred(n: int, col: Col):
    """Clause shape 1: an unbarred entry moves up past the barred values."""
    barred = {-x for x in col if x < 0}
    for s, x in enumerate(col):
        if 0 < x < n:
            cands = [k for k in range(x + 1, n + 1) if k not in barred]
            if cands:
                yield _replace(col, {s: min(cands)})


def _raise_barred(n: int, col: Col, lo: int, hi: int):
    """Clause shape 2: a barred entry with |x| in [lo, hi] moves up."""
    unbarred = {x for x in col if x > 0}
    for s, x in enumerate(col):
        if x < 0 and lo <= -x <= hi:
            cands = [k for k in range(1, -x) if k not in unbarred]
            if cands:
                yield _replace(col, {s: -max(cands)})


def _swap_pair(n: int, col: Col):
    """a at s and -(a+1) at t > s become a+1 and -a."""
    for s, x in enumerate(col):
        if 0 < x < n:
            for t in range(s + 1, len(col)):
                if col[t] == -(x + 1):
                    yield _replace(col, {s: x + 1, t: -x})


def _flip_n(n: int, col: Col):
    for s, x in enumerate(col):
        if x == n:
            yield _replace(col, {s: -n})


def _adjacent_bar(n: int, col: Col, last: int):
    """a, a+1 at s, s+1 (s <= last) become -(a+1), -a."""
    for s in range(min(last, len(col) - 1)):
        a = col[s]
        if a > 0 and col[s + 1] == a + 1 and a + 1 <= n:
            yield _replace(col, {s: -(a + 1), s + 1: -a})


def _cross_middle(n: int, col: Col):
    """Type D moves between the incomparable letters n and -n.

    An unbarred entry whose next free value is n may jump to -n, and n
    itself moves to the bar of the largest value not used unbarred.
    """
    barred = {-x for x in col if x < 0}
    unbarred = {x for x in col if x > 0}
    for s, x in enumerate(col):
        if 0 < x < n:
            cands = [k for k in range(x + 1, n + 1) if k not in barred]
            if cands and min(cands) == n:
                yield _replace(col, {s: -n})
        elif x == n:
            cands = [k for k in range(1, n) if k not in unbarred]
            if cands:
                yield _replace(col, {s: -max(cands)})


def _shift_in_complement(n: int, col: Col) -> Col | None:
    """Quantum move with gamma^vee = alpha_i^vee (types B and D).

    With a_1 < a_2 < ... the values not used by the first i-1 entries, the
    move needs a_1 = 1 and sigma(T(i)) in {1, a_2}; the new first entry is
    the other member of {1, a_2} and the remaining entries shift down.
    """
    head = {abs(x) for x in col[:-1]}
    a = [k for k in range(1, n + 1) if k not in head]
    if a[0] != 1 or len(a) < 2 or -col[-1] not in (1, a[1]):
        return None
    first = a[1] if -col[-1] == 1 else 1
    return (first,) + col[:-1]


def _rotate_one(col: Col) -> Col:
    return (1,) + col[:-1]


def _rotate_two(col: Col) -> Col:
    return (1, 2) + col[:-2]


def column_moves(datum: RootDatum, i: int, col: Sequence[int]) -> list[ColumnMove]:
    """All classified moves out of a column for family B, C or D.

    Candidates that are not column-strict are discarded; the clauses
    only assert moves whose target is again a minimal representative.
    """
    fam, n = datum.family, datum.n
    col = tuple(col)
    if fam == "A":
        raise WeylError("type A moves are produced generically")
    if not is_cst(datum, i, col):
        raise WeylError(f"{list(col)} is not a column of shape {i} in {datum}")
    moves: list[ColumnMove] = []

    def bruhat(qc, sc, targets, ci):
        for t in targets:
            if is_cst(datum, i, t):
                moves.append(ColumnMove(qc, sc, t, BRUHAT, ci))

    def quantum(qc, sc, target, coroot):
        if is_cst(datum, i, target):
            ci = datum.coroot_coordinate(coroot, i)
            moves.append(ColumnMove(qc, sc, target, QUANTUM, ci, tuple(coroot)))

    eps = lambda s: unit(n, s)  # noqa: E731

    if fam == "C":
        if i <= n - 1:
            bruhat("b-C1", "C1", _raise_unbarred(n, col), 1)
            bruhat("b-C2", "C2", _raise_barred(n, col, 2, n), 1)
        if i >= 2:
            bruhat("b-C3", "C3", _swap_pair(n, col), 2)
        bruhat("b-C4", "C4", _flip_n(n, col), 1)
        if col[-1] == -1:
            quantum("q-C", "C5", _rotate_one(col), eps(i))
    elif fam == "B":
        if i <= n - 1:
            bruhat("b-B1", "B1", _raise_unbarred(n, col), 1)
            bruhat("b-B2", "B2", _raise_barred(n, col, 2, n), 1)
        if 2 <= i <= n - 1:
            bruhat("b-B3", "B3", _swap_pair(n, col), 2)
        if i <= n - 1:
            bruhat("b-B5", "B4", _flip_n(n, col), 2)
        if i == n:
            bruhat("b-B4", "B3", _swap_pair(n, col), 1)
            bruhat("b-B6", "B4", _flip_n(n, col), 1)
        if i == 1 and col[0] in (-1, -2):
            quantum("q-B1", "B5", (2,) if col[0] == -1 else (1,), vsub(eps(1), eps(2)))
        if 2 <= i <= n - 1:
            target = _shift_in_complement(n, col)
            if target is not None:
                quantum("q-B2", "B6", target, vsub(eps(i), eps(i + 1)))
        if 2 <= i <= n - 1 and col[-1] == -1 and col[-2] == -2:
            quantum("q-B3", "B7", _rotate_two(col), vadd(eps(i - 1), eps(i)))
        if i == n and col[-1] == -1 and col[-2] == -2:
            quantum("q-B4", "B8", _rotate_two(col), vadd(eps(n - 1), eps(n)))
    else:  # D
        if i <= n - 2:
            bruhat("b-D1", "D1", _raise_unbarred(n, col), 1)
            bruhat("b-D2", "D2", _raise_barred(n, col, 2, n), 1)
            bruhat("b-D3", "D3", _cross_middle(n, col), 1)
        if 2 <= i <= n - 2:
            d4 = list(_swap_pair(n, col))
            if n - 1 in col and n in col:
                s, t = col.index(n - 1), col.index(n)
                d4.append(_replace(col, {s: -n, t: -(n - 1)}))
            bruhat("b-D4", "D4", d4, 2)
        if i >= n - 1:
            bruhat("b-D5", "D5", _swap_pair(n, col), 1)
        if i == n - 1:
            bruhat("b-D6", "D6", _adjacent_bar(n, col, n - 2), 1)
        if i == n:
            bruhat("b-D7", "D7", _adjacent_bar(n, col, n - 1), 1)
        if i <= n - 2:
            target = _shift_in_complement(n, col)
            if target is not None:
                quantum("q-D1", "D8", target, vsub(eps(i), eps(i + 1)))
        if 2 <= i <= n - 2 and col[-1] == -1 and col[-2] == -2:
            quantum("q-D2", "D9", _rotate_two(col), vadd(eps(i - 1), eps(i)))
        if i == n - 1 and col[-1] == -1 and col[-2] == -2:
            quantum("q-D3", "D10", _rotate_two(col), vsub(eps(n - 1), eps(n)))
        if i == n and col[-1] == -1 and col[-2] == -2:
            quantum("q-D4", "D10", _rotate_two(col), vadd(eps(n - 1), eps(n)))
    return moves


@lru_cache(maxsize=None)
def _reflection_roots(datum: RootDatum) -> dict:
    return {reflection(datum, r).window: r for r in datum.positive_roots()}


def _classified_edges(datum: RootDatum, i: int, w: SignedPermutation) -> list[QBGEdge]:
    col = column_of_window(w, i)
    out = []
    refl = _reflection_roots(datum)
    for mv in column_moves(datum, i, col):
        target = window_of_column(datum, i, mv.target)
        if mv.kind == BRUHAT:
            gamma = refl.get((w.inverse() * target).window)
            if gamma is None:
                continue
            if datum.coroot_coordinate(gamma.coroot, i) != mv.ci:
                continue
        else:
            gamma = Root(coroot_of(mv.coroot))
        out.append(QBGEdge(w, target, gamma, mv.kind, mv.qbg_clause))
    return out


def enumerate_edges(datum: RootDatum, i: int, mode: str = "generic") -> list[QBGEdge]:
    """The edge set of QB^{I minus {i}}, sorted by (source, target, root)."""
    datum.check_index(i)
    J = tuple(j for j in datum.index_set if j != i)
    edges: list[QBGEdge] = []
    if mode == "generic":
        roots = [r for r in datum.positive_roots() if not _in_span(datum, r, J)]
        for w in enumerate_min_reps(i, datum):
            for r in roots:
                e = edge_generic(w, r, J)
                if e is not None:
                    edges.append(e)
    elif mode == "classified":
        for w in enumerate_min_reps(i, datum):
            edges.extend(_classified_edges(datum, i, w))
    else:
        raise WeylError(f"unknown mode {mode!r}")
    edges.sort(key=lambda e: (e.source.window, e.target.window, e.root.vector))
    return edges


def edge_ci(e: QBGEdge, i: int) -> int:
    return e.source.datum.coroot_coordinate(e.root.coroot, i)


def half_graph_edges(datum: RootDatum, i: int, mode: str = "generic") -> list[QBGEdge]:
    """QB(varpi_i; 1/2): the edges with c_i(gamma^vee) even, hence equal to 2."""
    return [e for e in enumerate_edges(datum, i, mode) if edge_ci(e, i) % 2 == 0]


def adjacency(edges: Iterable[QBGEdge]) -> dict:
    adj: dict = {}
    for e in edges:
        adj.setdefault(e.source.window, []).append(e)
    return adj


def edge_label(e: QBGEdge) -> str:
    return format_vector(e.root.vector)


# -- minuscule nodes, segments and Maya diagrams ------------------------------


def is_minuscule(datum: RootDatum, i: int) -> bool:
    """<gamma^vee, varpi_i> in {0, 1} for every positive root gamma."""
    datum.check_index(i)
    fam, n = datum.family, datum.n
    if fam == "A":
        return True
    if fam == "B":
        return i == n
    if fam == "C":
        return i == 1
    return i in (1, n - 1, n)


@dataclass(frozen=True)
class SegmentSequence:
    """Intervals J_1 < ... < J_mu of [n], consecutive ones separated by a gap."""

    segments: tuple[tuple[int, int], ...]

    def __post_init__(self):
        segs = tuple(tuple(s) for s in self.segments)
        object.__setattr__(self, "segments", segs)
        for j, k in segs:
            if j > k:
                raise WeylError(f"empty segment [{j},{k}]")
        for (_, k), (j2, _) in zip(segs, segs[1:]):
            if not k + 1 < j2:
                raise WeylError("segments must be separated by at least one value")

    @property
    def size(self) -> int:
        return sum(k - j + 1 for j, k in self.segments)

    def sets(self) -> list[frozenset[int]]:
        return [frozenset(range(j, k + 1)) for j, k in self.segments]

    def __str__(self):
        return "(" + ",".join(f"[{j},{k}]" for j, k in self.segments) + ")"


@dataclass(frozen=True)
class MayaDiagram:
    """One subset M_nu of each segment J_nu."""

    segments: SegmentSequence
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        parts = tuple(frozenset(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        sets = self.segments.sets()
        if len(parts) != len(sets) or any(not p <= s for p, s in zip(parts, sets)):
            raise WeylError("Maya diagram parts must lie in their segments")

    def __str__(self):
        return "(" + ",".join("{" + ",".join(map(str, sorted(p))) + "}"
                              for p in self.parts) + ")"


def segments_of_values(values: Iterable[int]) -> SegmentSequence:
    vals = sorted(set(values))
    segs = []
    for v in vals:
        if segs and segs[-1][1] == v - 1:
            segs[-1][1] = v
        else:
            segs.append([v, v])
    return SegmentSequence(tuple(tuple(s) for s in segs))


def column_segments_and_maya(col: Sequence[int]) -> tuple[SegmentSequence, MayaDiagram]:
    segs = segments_of_values(abs(x) for x in col)
    barred = {-x for x in col if x < 0}
    return segs, MayaDiagram(segs, tuple(s & barred for s in segs.sets()))


def segments_and_maya(w: SignedPermutation, i: int) -> tuple[SegmentSequence, MayaDiagram]:
    """J(w) and M(w) for w in W^{I minus {i}}."""
    J = [j for j in w.datum.index_set if j != i]
    if not is_min_rep(w, J):
        raise WeylError(f"{w} is not a minimal coset representative")
    return column_segments_and_maya(column_of_window(w, i))


def column_of_maya(maya: MayaDiagram) -> Col:
    """Inverse of the Maya map on a fixed segment sequence (type B/C/D columns)."""
    letters = []
    for seg, part in zip(maya.segments.sets(), maya.parts):
        for k in seg:
            letters.append(-k if k in part else k)
    # any n at least the largest value gives the same letter order
    return sort_letters(max((abs(u) for u in letters), default=1), letters)


MAYA_RULES = {"B": ("M1", "M2", "M4"), "C": ("M1",), "D": ("M1", "M3", "M4")}


def maya_edge(family: str, n: int, segment: tuple[int, int], M, N) -> str | None:
    """The clause realizing an edge M -> N on one segment, or None."""
    lo, hi = segment
    seg = frozenset(range(lo, hi + 1))
    M, N = frozenset(M), frozenset(N)
    if not (M <= seg and N <= seg):
        raise WeylError("Maya diagrams must lie in the segment")
    rules = MAYA_RULES[family]
    if "M1" in rules:
        for j in range(1, n):
            if j in N and j + 1 in M and M - {j + 1} == N - {j}:
                return "M1"
    if "M2" in rules and n in N and M == N - {n}:
        return "M2"
    if "M3" in rules and {n - 1, n} <= N and M == N - {n - 1, n}:
        return "M3"
    if "M4" in rules and {1, 2} <= M and N == M - {1, 2}:
        return "M4"
    return None


def maya_leq_reachability(family: str, n: int, segment: tuple[int, int], M, N,
                          prime: bool = False) -> bool:
    """M <| N by breadth-first search in the Maya graph of the segment."""
    from itertools import combinations

    lo, hi = segment
    vals = list(range(lo, hi + 1))
    verts = [frozenset(c) for r in range(len(vals) + 1) for c in combinations(vals, r)]
    start, goal = frozenset(M), frozenset(N)
    seen, frontier = {start}, [start]
    while frontier:
        nxt = []
        for a in frontier:
            if a == goal:
                return True
            for b in verts:
                if b in seen:
                    continue
                kind = maya_edge(family, n, segment, a, b)
                if kind is None or (prime and kind == "M4"):
                    continue
                seen.add(b)
                nxt.append(b)
        frontier = nxt
    return goal in seen


def maya_case(family: str, n: int, segment: tuple[int, int]) -> int:
    """Which closed form governs the segment (1, 2, 3 or 4)."""
    seg = set(range(segment[0], segment[1] + 1))
    if family == "C":
        return 1
    if family == "B":
        if n in seg:
            return 2
        return 4 if {1, 2} <= seg else 1
    if {n - 1, n} <= seg:
        return 3
    return 4 if {1, 2} <= seg else 1


def maya_leq(family: str, n: int, segment: tuple[int, int], M, N,
             prime: bool = False) -> bool:
    """Closed-form comparison M <| N (or M <|' N when ``prime``)."""
    lo, hi = segment
    seg = frozenset(range(lo, hi + 1))
    if not (frozenset(M) <= seg and frozenset(N) <= seg):
        raise WeylError("Maya diagrams must lie in the segment")
    m, nn = sorted(M), sorted(N)
    r, s = len(m), len(nn)
    case = maya_case(family, n, segment)
    if case == 4 and prime:
        case = 1
    if case == 1:
        return r == s and all(a >= b for a, b in zip(m, nn))
    if case == 2:
        return r <= s and all(m[v] >= nn[v] for v in range(r))
    if case == 3:
        return s - r >= 0 and (s - r) % 2 == 0 and all(m[v] >= nn[v] for v in range(r))
    return (r - s >= 0 and (r - s) % 2 == 0
            and all(m[r - 1 - v] >= nn[s - 1 - v] for v in range(s)))


def maya_diagram_leq(family: str, n: int, a: MayaDiagram, b: MayaDiagram,
                     prime: bool = False) -> bool:
    if a.segments != b.segments:
        return False
    return all(maya_leq(family, n, seg, x, y, prime)
               for seg, x, y in zip(a.segments.segments, a.parts, b.parts))


def column_qls_leq(datum: RootDatum, i: int, w_col: Sequence[int], v_col: Sequence[int],
                   prime: bool = False) -> bool:
    """w <| v on columns; equality at minuscule nodes and in type A."""
    w_col, v_col = tuple(w_col), tuple(v_col)
    if datum.family == "A" or is_minuscule(datum, i):
        return w_col == v_col
    _, mw = column_segments_and_maya(w_col)
    _, mv = column_segments_and_maya(v_col)
    return maya_diagram_leq(datum.family, datum.n, mw, mv, prime)


def qls_leq(w: SignedPermutation, v: SignedPermutation, i: int, prime: bool = False) -> bool:
    return column_qls_leq(w.datum, i, column_of_window(w, i), column_of_window(v, i), prime)


@lru_cache(maxsize=None)
def _half_adjacency(datum: RootDatum, i: int) -> dict:
    return adjacency(half_graph_edges(datum, i))


def qls_leq_reachability(datum: RootDatum, i: int, w: SignedPermutation,
                         v: SignedPermutation, prime: bool = False) -> bool:
    """w <| v by search in QB(varpi_i; 1/2) (Bruhat edges only when ``prime``)."""
    adj = _half_adjacency(datum, i)
    seen, frontier = {w.window}, [w.window]
    while frontier:
        nxt = []
        for x in frontier:
            for e in adj.get(x, ()):
                if prime and e.kind == QUANTUM:
                    continue
                y = e.target.window
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return v.window in seen


__all__ = [
    "QBGEdge", "ColumnMove", "SegmentSequence", "MayaDiagram", "BRUHAT", "QUANTUM",
    "edge_generic", "enumerate_edges", "column_moves", "half_graph_edges", "edge_ci",
    "adjacency", "edge_label", "is_minuscule", "segments_of_values",
    "column_segments_and_maya", "segments_and_maya", "column_of_maya", "maya_edge",
    "maya_leq", "maya_leq_reachability", "maya_case", "maya_diagram_leq",
    "column_qls_leq", "qls_leq", "qls_leq_reachability",
]

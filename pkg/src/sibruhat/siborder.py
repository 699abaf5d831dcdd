"""Semi-infinite Bruhat order on (W^J)_af.

For a maximal parabolic J = I minus {i} an element w t_xi is recorded by the
tableau vertex (T_w^(i), c_i(xi)).  Cover relations come either from the
classified column moves (types B, C, D) or generically from the quantum
Bruhat graph: a Bruhat edge keeps c, a quantum edge along gamma raises it by
c_i(gamma^vee).  ``tableau_leq`` is the closed-form comparison; the
``*_bruteforce`` functions are reachability oracles.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .affine import (
    AffineElement,
    affine_reflection,
    in_WJ_af,
    semi_infinite_length,
)
from .cst import (
    Col,
    check_cst,
    column_of_window,
    enumerate_columns,
    format_column,
    letter_leq,
    window_of_column,
)
from .qbg import QUANTUM, column_moves, edge_generic, enumerate_edges
from .weyl import (
    RootDatum,
    SignedPermutation,
    WeylError,
    min_coset_rep,
)

INF2 = "∞/2-"


@dataclass(frozen=True, order=True)
class TabVertex:
    column: Col
    c: int

    def __post_init__(self):
        object.__setattr__(self, "column", tuple(self.column))

    def __str__(self):
        return f"{format_column(self.column)}@{self.c}"


@dataclass(frozen=True)
class SibEdge:
    source: TabVertex
    target: TabVertex
    clause: str

    def __str__(self):
        return f"{self.source} -> {self.target} [{self.clause}]"


def parse_vertex(datum: RootDatum, i: int, text: str) -> TabVertex:
    """Parse ``"3,-3@0"``; the column is validated as a CST of shape i."""
    body, sep, c = text.strip().partition("@")
    if not sep:
        raise WeylError(f"expected 'column@c', got {text!r}")
    col = tuple(int(tok) for tok in body.split(",") if tok.strip())
    return TabVertex(check_cst(datum, i, col), int(c))


def _check_vertex(datum: RootDatum, i: int, v: TabVertex) -> None:
    check_cst(datum, i, v.column)


# -- covers ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _generic_moves(datum: RootDatum, i: int) -> dict:
    """column -> [(target column, dc, label)] read off the generic QBG."""
    out: dict = {}
    for e in enumerate_edges(datum, i, "generic"):
        src = column_of_window(e.source, i)
        dst = column_of_window(e.target, i)
        dc = datum.coroot_coordinate(e.root.coroot, i) if e.kind == QUANTUM else 0
        out.setdefault(src, []).append((dst, dc, f"{e.kind}:{e.root}"))
    return out


def covers(datum: RootDatum, i: int, v: TabVertex, mode: str = "classified") -> list[SibEdge]:
    """All covers of v in the semi-infinite order on (W^{I minus {i}})_af.

    ``classified`` uses the column-move table (type A always falls back to
    the generic route); ``generic`` reads the quantum Bruhat graph.
    """
    _check_vertex(datum, i, v)
    if mode == "classified" and datum.family != "A":
        edges = [SibEdge(v, TabVertex(m.target, v.c + m.dc), INF2 + m.sib_clause)
                 for m in column_moves(datum, i, v.column)]
    elif mode in ("classified", "generic"):
        edges = [SibEdge(v, TabVertex(dst, v.c + dc), label)
                 for dst, dc, label in _generic_moves(datum, i).get(v.column, ())]
    else:
        raise WeylError(f"unknown mode {mode!r}")
    for e in edges:
        if not 0 <= e.target.c - v.c <= 2:
            raise AssertionError(f"cover {e} changes c by {e.target.c - v.c}")
    return sorted(edges, key=lambda e: (e.target.c, e.target.column))


# -- closed-form comparison ---------------------------------------------------


def _chain(datum: RootDatum, T: Col, Tp: Col, shift: int, upto: int, start: int = 1) -> bool:
    """T(u) <= T'(u + shift) for u in [start, upto] (1-based)."""
    return all(letter_leq(datum, T[u - 1], Tp[u + shift - 1]) for u in range(start, upto + 1))


def _leq_A_or_C(datum, i, T, Tp, d):
    return d >= 0 and _chain(datum, T, Tp, d, i - d)


def _odd_shift_ok(datum, i, T, Tp, d):
    """Extra requirement for odd d when T(i) is barred (types B and D).

    a is the least value not used barred, b the least value not used at all.
    """
    n = datum.n
    a = min(set(range(1, n + 1)) - {-x for x in T if x < 0})
    b = min(set(range(1, n + 1)) - {abs(x) for x in T})
    if 1 <= d <= i and not letter_leq(datum, a, Tp[d - 1]):
        return False
    if a < b:
        for k in range(1, i + 1):
            below = letter_leq(datum, T[k - 1], b) and T[k - 1] != b
            above = k == i or (letter_leq(datum, b, T[k]) and T[k] != b)
            if below and above:
                if not _chain(datum, T, Tp, d - 1, min(k, i - d + 1), start=2):
                    return False
                if k <= i - d and not letter_leq(datum, b, Tp[k + d - 1]):
                    return False
                break
    return True


def _middle_parity_ok(n, T, Tp, d):
    """Type D parity constraint across the incomparable pair n, -n.

    Compare T(1..i-d) with T'(d+1..i).  Whenever both parts use every value
    of [a, n] and have the same number of entries at or above the letter a,
    the numbers of barred entries of absolute value at least a must agree
    mod 2.  Entrywise comparison alone misses this (e.g. 3,4 and 4,-3 in D4).
    """
    T, Tp = T[: len(T) - d], Tp[d:]
    absT, absTp = {abs(x) for x in T}, {abs(x) for x in Tp}
    for a in range(1, n + 1):
        block = set(range(a, n + 1))
        if not (block <= absT and block <= absTp):
            continue
        if sum(x < 0 or x >= a for x in T) != sum(x < 0 or x >= a for x in Tp):
            continue
        if sum(x <= -a for x in T) % 2 != sum(x <= -a for x in Tp) % 2:
            return False
    return True


def _leq_B(datum, i, T, Tp, d):
    n = datum.n
    if i == n:
        return d >= 0 and _chain(datum, T, Tp, 2 * d, n - 2 * d)
    if i == 1:
        if d >= 2:
            return True
        if d == 1:
            return T[0] != -1 or Tp[0] != 1
        return d == 0 and letter_leq(datum, T[0], Tp[0])
    if d < 0 or not _chain(datum, T, Tp, d, i - d):
        return False
    if d % 2 == 0 or T[i - 1] > 0:
        return True
    return _odd_shift_ok(datum, i, T, Tp, d)


def _leq_D(datum, i, T, Tp, d):
    n = datum.n
    if i >= n - 1:
        return d >= 0 and _chain(datum, T, Tp, 2 * d, n - 2 * d)
    if d < 0 or not _chain(datum, T, Tp, d, i - d):
        return False
    if not _middle_parity_ok(n, T, Tp, d):
        return False
    if d % 2 == 0 or T[i - 1] > 0:
        return True
    return _odd_shift_ok(datum, i, T, Tp, d)


def tableau_leq(datum: RootDatum, i: int, a: TabVertex, b: TabVertex) -> bool:
    """(T, c) <= (T', c') by the closed-form tableau criterion of the family."""
    _check_vertex(datum, i, a)
    _check_vertex(datum, i, b)
    return _tableau_leq(datum, i, a.column, b.column, b.c - a.c)


@lru_cache(maxsize=1 << 18)
def _tableau_leq(datum: RootDatum, i: int, T: Col, Tp: Col, d: int) -> bool:
    fam = datum.family
    if fam in ("A", "C"):
        return _leq_A_or_C(datum, i, T, Tp, d)
    if fam == "B":
        return _leq_B(datum, i, T, Tp, d)
    return _leq_D(datum, i, T, Tp, d)


def saturation_gap(datum: RootDatum, i: int) -> int:
    """The least d such that every pair with c' - c >= d is comparable."""
    fam, n = datum.family, datum.n
    if fam == "A":
        return min(i, n - i)
    if fam == "C":
        return i
    if fam == "B":
        return i + 1 if i < n else (i + 1) // 2
    return i + 1 if i <= n - 2 else n // 2 + 1


# -- reachability oracles -------------------------------------------------------


def reachable_band(datum: RootDatum, i: int, start: TabVertex, top: int,
                   mode: str = "generic") -> set[TabVertex]:
    """Everything reachable from ``start`` by covers with c <= top."""
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in covers(datum, i, v, mode):
            u = e.target
            if u.c <= top and u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def sib_leq_bruteforce(datum: RootDatum, i: int, a: TabVertex, b: TabVertex,
                       mode: str = "generic") -> bool:
    """a <= b by search through covers inside the band a.c <= c <= b.c.

    Covers never lower c, so no path can leave the band and come back.
    """
    _check_vertex(datum, i, a)
    _check_vertex(datum, i, b)
    if b.c < a.c:
        return False
    return b in reachable_band(datum, i, a, b.c, mode)


def tab_vertex(x: AffineElement, i: int) -> TabVertex:
    """Y_i(w t_xi) = (T_w^(i), c_i(xi))."""
    return TabVertex(column_of_window(x.w, i), x.xi[x.datum.index_set.index(i)])


def deodhar_leq(J: Iterable[int], x: AffineElement, y: AffineElement) -> bool:
    """x <= y in (W^J)_af, tested one maximal parabolic i outside J at a time."""
    datum = x.datum
    if y.datum != datum:
        raise WeylError("datum mismatch")
    J = set(J)
    return all(tableau_leq(datum, i, tab_vertex(x, i), tab_vertex(y, i))
               for i in datum.index_set if i not in J)


def deodhar_report(J: Iterable[int], x: AffineElement, y: AffineElement) -> dict[int, bool]:
    """The per-i comparisons whose conjunction is ``deodhar_leq``."""
    J = set(J)
    return {i: tableau_leq(x.datum, i, tab_vertex(x, i), tab_vertex(y, i))
            for i in x.datum.index_set if i not in J}


def _outside(datum: RootDatum, J) -> tuple[int, ...]:
    return tuple(i for i in datum.index_set if i not in J)


def _general_key(x: AffineElement, J) -> tuple:
    datum = x.datum
    out = _outside(datum, J)
    pos = {i: k for k, i in enumerate(datum.index_set)}
    return (min_coset_rep(x.w, J).window, tuple(x.xi[pos[i]] for i in out))


@lru_cache(maxsize=None)
def _general_edges(datum: RootDatum, J: tuple[int, ...]) -> dict:
    """window -> [(target window, shift of the coordinates outside J)]."""
    out_idx = _outside(datum, J)
    roots = [r for r in datum.positive_roots()
             if any(datum.coroot_coordinate(r.coroot, i) for i in out_idx)]
    reps = [w for w in _all_min_reps(datum, J)]
    adj: dict = {}
    for w in reps:
        for r in roots:
            e = edge_generic(w, r, J)
            if e is None:
                continue
            if e.kind == QUANTUM:
                shift = tuple(datum.coroot_coordinate(r.coroot, i) for i in out_idx)
            else:
                shift = (0,) * len(out_idx)
            adj.setdefault(w.window, []).append((e.target.window, shift))
    return adj


def _all_min_reps(datum: RootDatum, J) -> list[SignedPermutation]:
    seen = {}
    for w in datum.elements():
        m = min_coset_rep(w, J)
        seen[m.window] = m
    return list(seen.values())


def general_key(J: Iterable[int], x: AffineElement) -> tuple:
    """The vertex (floor(w), c_i for i outside J) of x in the semi-infinite graph."""
    return _general_key(x, tuple(sorted(set(J))))


def reachable_general(J: Iterable[int], x: AffineElement, top: Sequence[int]) -> set:
    """Vertices reachable from x with every coordinate outside J at most ``top``."""
    datum = x.datum
    J = tuple(sorted(set(J)))
    adj = _general_edges(datum, J)
    start = _general_key(x, J)
    top = tuple(top)
    seen = {start}
    queue = deque([start])
    while queue:
        w, cs = queue.popleft()
        for t, shift in adj.get(w, ()):
            nc = tuple(a + b for a, b in zip(cs, shift))
            if any(c > h for c, h in zip(nc, top)):
                continue
            key = (t, nc)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    return seen


def sib_leq_general_bruteforce(J: Iterable[int], x: AffineElement, y: AffineElement) -> bool:
    """x <= y in (W^J)_af by search in the semi-infinite Bruhat graph.

    A vertex is (w in W^J, coordinates c_i for i outside J).  A Bruhat edge
    w -> floor(w r_gamma) keeps the coordinates, a quantum edge adds those
    of gamma^vee.  All shifts are nonnegative, so the search stays in the
    box between the coordinates of x and y.
    """
    J = tuple(sorted(set(J)))
    for z in (x, y):
        if not in_WJ_af(z, J):
            raise WeylError(f"{z} is not a minimal representative for J={list(J)}")
    start, goal = _general_key(x, J), _general_key(y, J)
    if any(a > b for a, b in zip(start[1], goal[1])):
        return False
    return goal in reachable_general(J, x, goal[1])


def literal_covers(J: Iterable[int], x: AffineElement) -> list[AffineElement]:
    """Covers r_beta x of x straight from the definition.

    beta runs over gamma + k delta; keep r_beta x when it lies in (W^J)_af
    and its semi-infinite length is one more than that of x.  A length change
    of one bounds |k| by the number of positive roots.
    """
    datum = x.datum
    J = tuple(sorted(set(J)))
    base = semi_infinite_length(x)
    bound = len(datum.positive_roots()) + 1
    out = {}
    for r, k in product(datum.positive_roots(), range(-bound, bound + 1)):
        y = affine_reflection(datum, r.vector, k) * x
        if semi_infinite_length(y) == base + 1 and in_WJ_af(y, J):
            out[str(y)] = y
    return [out[k] for k in sorted(out)]


def vertices(datum: RootDatum, i: int, cs: Iterable[int]) -> list[TabVertex]:
    cols = enumerate_columns(datum, i)
    return [TabVertex(col, c) for c in cs for col in cols]


def element_of_vertex(datum: RootDatum, i: int, v: TabVertex) -> AffineElement:
    """An element of W_af with Y_i equal to v (translation c_i alpha_i^vee)."""
    w = window_of_column(datum, i, v.column)
    xi = tuple(v.c if j == i else 0 for j in datum.index_set)
    return AffineElement(w, xi)


__all__ = [
    "TabVertex", "SibEdge", "parse_vertex", "covers", "tableau_leq", "saturation_gap",
    "reachable_band", "sib_leq_bruteforce", "tab_vertex", "deodhar_leq",
    "deodhar_report", "sib_leq_general_bruteforce", "general_key", "reachable_general", "literal_covers", "vertices",
    "element_of_vertex",
]

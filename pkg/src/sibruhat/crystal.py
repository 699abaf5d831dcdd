"""Crystal structures on columns, two-step QLS paths, tensors and affinizations.

Elements are ``Column`` and ``QLSPath`` (from ``columns``), ``AffElem`` and
``TensorElem``.  Operators return ``None`` for the zero of the crystal.

Column operators follow the rule tables for each family.  The columns that
are minuscule CST columns (type A, the spin node of B except for f_0 and
e_0, the spin nodes of D) are driven by the QLS root operators through the
degenerate path (T, T).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .affine import LevelZeroWeight, pair_affine_coroot, weight_from_vector2
from .columns import (
    CST,
    Column,
    QLSPath,
    _split_bc,
    b_rank,
    column_violation,
    d_coefficient,
    hat_D,
    lift_K,
    qls_of_qkn,
    unhat_D,
)
from .cst import column_of_window, window_of_column
from .siborder import TabVertex, tableau_leq
from .weyl import RootDatum, WeylError, reflection, vadd

HALF = Fraction(1, 2)


# -- element kinds -------------------------------------------------------------


@dataclass(frozen=True)
class AffElem:
    """(b, c) in the affinization; f_0 raises c by one, e_0 lowers it."""

    inner: Column | QLSPath
    c: int

    def __post_init__(self):
        if isinstance(self.inner, AffElem):
            raise WeylError("affinizations do not nest")

    def __str__(self):
        return f"{self.inner}@{self.c}"


@dataclass(frozen=True)
class TensorElem:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise WeylError("empty tensor")

    def __str__(self):
        return " (x) ".join(str(b) for b in self.factors)


def affine_indices(datum: RootDatum) -> tuple[int, ...]:
    return (0,) + datum.index_set


def _datum_of(b) -> RootDatum:
    if isinstance(b, (Column, QLSPath)):
        return b.datum
    if isinstance(b, AffElem):
        return b.inner.datum
    return _datum_of(b.factors[0])


# -- weights -----------------------------------------------------------------------


def _spin(datum: RootDatum, i: int) -> bool:
    n = datum.n
    return (datum.family == "B" and i == n) or (datum.family == "D" and i >= n - 1)


def letters_weight2(datum: RootDatum, i: int, letters: Iterable[int]) -> tuple[int, ...]:
    """Twice the sum of eps_u over the letters (the sum itself for spin columns)."""
    unit = 1 if _spin(datum, i) else 2
    out = [0] * datum.n
    for u in letters:
        if u:
            out[abs(u) - 1] += unit if u > 0 else -unit
    return tuple(out)


def weight_vector2(b) -> tuple[int, ...]:
    """Twice the classical weight of b in the epsilon basis."""
    if isinstance(b, Column):
        return letters_weight2(b.datum, b.shape, b.core)
    if isinstance(b, QLSPath):
        a = letters_weight2(b.datum, b.shape, b.v)
        c = letters_weight2(b.datum, b.shape, b.w)
        total = vadd(a, c)
        if any(x % 2 for x in total):
            raise WeylError(f"{b} has a non-integral weight")
        return tuple(x // 2 for x in total)
    if isinstance(b, AffElem):
        return weight_vector2(b.inner)
    total = None
    for f in b.factors:
        v = weight_vector2(f)
        total = v if total is None else vadd(total, v)
    return total


def weight(b) -> LevelZeroWeight:
    """wt(b); affinization subtracts c delta, tensors add."""
    datum = _datum_of(b)
    return weight_from_vector2(datum, weight_vector2(b), -_delta_part(b))


def _delta_part(b) -> int:
    if isinstance(b, AffElem):
        return b.c
    if isinstance(b, TensorElem):
        return sum(_delta_part(f) for f in b.factors)
    return 0


def pairing(j: int, b) -> int:
    """<alpha_j^vee, wt(b)> for j in I_af."""
    return pair_affine_coroot(_datum_of(b), j, weight_vector2(b))


# -- QLS root operators ---------------------------------------------------------------


def reflect_column(datum: RootDatum, i: int, j: int, col: Sequence[int]) -> tuple[int, ...]:
    """The column of r_j x for the direction x (r_0 acts as r_theta)."""
    x = window_of_column(datum, i, col)
    r = reflection(datum, datum.highest_root()) if j == 0 else datum.simple_reflection(j)
    return column_of_window(r * x, i)


def _profile(j: int, p: QLSPath):
    """Breakpoints, values and slopes of h_j(t) = <alpha_j^vee, p(t)>."""
    datum = p.datum
    sa = pair_affine_coroot(datum, j, letters_weight2(datum, p.shape, p.v))
    sb = pair_affine_coroot(datum, j, letters_weight2(datum, p.shape, p.w))
    pts = (Fraction(0), HALF, Fraction(1))
    vals = (Fraction(0), HALF * sa, HALF * (sa + sb))
    return pts, vals, (sa, sb)


def _min_value(vals) -> int:
    m = min(vals)
    if m.denominator != 1:
        raise WeylError("local minimum of a QLS path is not integral")
    return int(m)


def qls_eps_phi(j: int, p: QLSPath) -> tuple[int, int]:
    _, vals, _ = _profile(j, p)
    m = _min_value(vals)
    return -m, int(vals[2] - m)


def _rebuild(p: QLSPath, j: int, t0: Fraction, t1: Fraction) -> QLSPath:
    """Reflect the directions on [t0, t1] and read the path back in two halves."""
    cuts = sorted({Fraction(0), HALF, Fraction(1), t0, t1})
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        if a == b:
            continue
        d = p.v if b <= HALF else p.w
        if t0 <= a and b <= t1:
            d = reflect_column(p.datum, p.shape, j, d)
        pieces.append((a, b, d))
    merged = []
    for a, b, d in pieces:
        if merged and merged[-1][2] == d:
            merged[-1] = (merged[-1][0], b, d)
        else:
            merged.append((a, b, d))
    for a, _, _ in merged[1:]:
        if a != HALF:
            raise WeylError(f"root operator produced a breakpoint at {a}")
    first = merged[0][2]
    return QLSPath(p.datum, p.shape, first, merged[-1][2])


def _crossing(a, b, ha, slope, target):
    """The t in [a, b] where a line through (a, ha) of the given slope hits target."""
    if slope == 0:
        return a if ha == target else None
    t = a + (target - ha) / slope
    return t if a <= t <= b else None


def f_qls(j: int, p: QLSPath) -> QLSPath | None:
    pts, vals, slopes = _profile(j, p)
    m = _min_value(vals)
    if vals[2] - m < 1:
        return None
    t0 = max(t for t, h in zip(pts, vals) if h == m)
    t1 = None
    for k in range(2):
        a, b = pts[k], pts[k + 1]
        if b <= t0:
            continue
        start = max(a, t0)
        hs = vals[k] + slopes[k] * (start - a)
        t = _crossing(start, b, hs, slopes[k], m + 1)
        if t is not None:
            t1 = t
            break
    return _rebuild(p, j, t0, t1)


def e_qls(j: int, p: QLSPath) -> QLSPath | None:
    pts, vals, slopes = _profile(j, p)
    m = _min_value(vals)
    if m > -1:
        return None
    t1 = min(t for t, h in zip(pts, vals) if h == m)
    t0 = None
    for k in (1, 0):
        a, b = pts[k], pts[k + 1]
        if a >= t1:
            continue
        end = min(b, t1)
        # scan backwards: the largest t in [a, end] with h(t) = m + 1
        if slopes[k] == 0:
            if vals[k] == m + 1:
                t0 = end
        else:
            t = a + (m + 1 - vals[k]) / slopes[k]
            if a <= t <= end:
                t0 = t
        if t0 is not None:
            break
    return _rebuild(p, j, t0, t1)


# -- column rule tables ------------------------------------------------------------------


def _pair_table(j: int) -> dict:
    """f_j for j in [n-1]: the letters in {j, j+1, bar(j+1), bar j} -> (old, new)."""
    a, b, bb, ba = j, j + 1, -(j + 1), -j
    return {
        frozenset({a}): (a, b),
        frozenset({bb}): (bb, ba),
        frozenset({a, bb}): (a, b),
        frozenset({b, bb}): (bb, ba),
        frozenset({a, b, bb}): (bb, ba),
        frozenset({a, bb, ba}): (a, b),
    }


def _substitute(core: Sequence[int], old: int, new: int) -> tuple[int, ...]:
    out = list(core)
    out[out.index(old)] = new
    return tuple(out)


def _pair_rule(j: int, core, raising: bool):
    letters = {j, j + 1, -(j + 1), -j}
    S = frozenset(u for u in core if u in letters)
    table = _pair_table(j)
    if raising:
        inverse = {}
        for src, (old, new) in table.items():
            inverse[(src - {old}) | {new}] = (new, old)
        table = inverse
    move = table.get(S)
    if move is None:
        return None
    return _substitute(core, *move)


def _b_spin_rule(n: int, core, raising: bool):
    zeros = core.count(0)
    if raising:
        if n in core:
            return None
        if -n in core:
            return _substitute(core, -n, 0)
        return _substitute(core, 0, n) if zeros else None
    if -n in core:
        return None
    if n in core:
        return _substitute(core, n, 0)
    return _substitute(core, 0, -n) if zeros else None


def _c_end_rule(n: int, core, raising: bool):
    S = {u for u in core if abs(u) == n}
    if raising:
        return _substitute(core, -n, n) if S == {-n} else None
    return _substitute(core, n, -n) if S == {n} else None


def _c_zero_rule(core, raising: bool):
    S = {u for u in core if abs(u) == 1}
    if raising:
        return _substitute(core, 1, -1) if S == {1} else None
    return _substitute(core, -1, 1) if S == {-1} else None


# D, j in {n-1, n}: cancellation of adjacent pairs, then act on what is left.
def _d_end_data(n: int, j: int):
    if j == n - 1:
        pairs = {(-n, n), (n - 1, n), (-n, -(n - 1)), (n - 1, -(n - 1))}
        lower = {n - 1: n, -n: -(n - 1)}
    else:
        pairs = {(n, -n), (n - 1, -n), (n, -(n - 1)), (n - 1, -(n - 1))}
        lower = {n - 1: -n, n: -(n - 1)}
    return pairs, lower


def _d_end_rule(n: int, j: int, core, raising: bool):
    pairs, lower = _d_end_data(n, j)
    word = [(pos, u) for pos, u in enumerate(core) if abs(u) >= n - 1]
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            if (word[k][1], word[k + 1][1]) in pairs:
                del word[k: k + 2]
                changed = True
                break
    out = list(core)
    if raising:
        upper = {v: k for k, v in lower.items()}
        for pos, u in reversed(word):
            if u in upper:
                out[pos] = upper[u]
                return tuple(out)
        return None
    for pos, u in word:
        if u in lower:
            out[pos] = lower[u]
            return tuple(out)
    return None


def _f0_quantum_b(n: int, core: tuple, m: int):
    """f_0 on a quantum B column given by its sorted core and m."""
    S = frozenset(u for u in core if u in (1, 2, -2, -1))
    s = _split_bc("B", n, core)
    yk = min(s.J) if s.J else None
    rest = list(core)
    if yk in (1, 2):
        zk = s.I[-1]
        if zk in (1, 2) or S - {zk, -zk} not in (frozenset({-2}), frozenset({-1})):
            return None
        bar = next(iter(S - {zk, -zk}))
        rest.remove(zk)
        rest.remove(-zk)
        rest.remove(bar)
        rest.append(1 if bar == -2 else 2)
        return tuple(rest), m + 1
    if S == {-2, -1}:
        rest.remove(-2)
        rest.remove(-1)
        return tuple(rest), m + 1
    if m == 0:
        if S == {-2}:
            return _substitute(core, -2, 1), 0
        if S == {-1}:
            return _substitute(core, -1, 2), 0
        return None
    if not S:
        return tuple(rest + [1, 2]), m - 1
    if S in ({-2}, {-1}):
        x2 = lift_K(n, s.r, m)[1]
        bar = next(iter(S))
        rest.remove(bar)
        rest += [1 if bar == -2 else 2, x2, -x2]
        return tuple(rest), m - 1
    return None


def _sort_b(n: int, letters) -> tuple:
    return tuple(sorted(letters, key=lambda u: b_rank(n, u)))


def _to_b(col: Column) -> tuple:
    n = col.datum.n
    core = col.core if col.datum.family == "B" else hat_D(n, col.core)
    return _sort_b(n, core)


def _from_b(col: Column, core, m: int) -> Column | None:
    n = col.datum.n
    core = _sort_b(n, core)
    if col.datum.family == "D":
        try:
            core = unhat_D(n, core)
        except WeylError:
            return None
    out = Column(col.datum, col.shape, core, m, col.flavor)
    return out if column_violation(out) is None else None


def _f0_quantum(col: Column) -> Column | None:
    res = _f0_quantum_b(col.datum.n, _to_b(col), col.m)
    if res is None:
        return None
    out = _from_b(col, *res)
    if out is None:
        raise WeylError(f"f_0 left the column set at {col}")
    return out


def _e0_candidates(n: int, core: tuple, m: int):
    """Reverse every arrow of the f_0 table; f_0 decides which one is real."""
    L = list(core)

    def minus(*xs):
        out = list(L)
        for x in xs:
            if x not in out:
                return None
            out.remove(x)
        return out

    cands = []
    for top, bar in ((1, -2), (2, -1)):
        r = minus(top)
        if r is not None:
            cands.append((r + [bar], m))
            if m >= 1:
                for z in range(0, n + 1):
                    cands.append((r + [z, -z, bar], m - 1))
        for x in range(1, n + 1):
            r = minus(top, x, -x)
            if r is not None:
                cands.append((r + [bar], m + 1))
    if m >= 1:
        cands.append((L + [-2, -1], m - 1))
    r = minus(1, 2)
    if r is not None:
        cands.append((r, m + 1))
    return cands


def _e0_quantum(col: Column) -> Column | None:
    n = col.datum.n
    found = set()
    for core, m in _e0_candidates(n, _to_b(col), col.m):
        if m < 0 or len(core) + 2 * m != len(col):
            continue
        cand = _from_b(col, core, m)
        if cand is not None and _f0_quantum(cand) == col:
            found.add(cand)
    if len(found) > 1:
        raise WeylError(f"e_0 is not single-valued at {col}: {sorted(map(str, found))}")
    return found.pop() if found else None


def _b_spin_zero(col: Column, raising: bool) -> Column | None:
    S = {u for u in col.core if abs(u) <= 2}
    src, dst = ({-2, -1}, {1, 2}) if not raising else ({1, 2}, {-2, -1})
    if S != src:
        return None
    core = [u for u in col.core if u not in src] + sorted(dst)
    from .cst import sort_letters

    return Column(col.datum, col.shape, sort_letters(col.datum.n, core), 0, CST)


def _uses_paths(col: Column, j: int) -> bool:
    fam, n, i = col.datum.family, col.datum.n, col.shape
    if fam == "A" or (fam == "D" and i >= n - 1):
        return True
    return fam == "B" and i == n and j != 0


def _column_op(j: int, col: Column, raising: bool) -> Column | None:
    datum = col.datum
    fam, n = datum.family, datum.n
    if j != 0:
        datum.check_index(j)
    if _uses_paths(col, j):
        p = QLSPath(datum, col.shape, col.core, col.core)
        q = e_qls(j, p) if raising else f_qls(j, p)
        if q is None:
            return None
        if not q.degenerate:
            raise WeylError(f"minuscule path left the degenerate paths at {col}")
        return Column(datum, col.shape, q.v, 0, CST)
    if fam == "B" and col.shape == n:
        return _b_spin_zero(col, raising)
    if j == 0:
        if fam == "C":
            core = _c_zero_rule(col.core, raising)
            return None if core is None else col.with_core(core)
        return _e0_quantum(col) if raising else _f0_quantum(col)
    if j < n and not (fam == "D" and j == n - 1):
        core = _pair_rule(j, col.core, raising)
    elif fam == "C":
        core = _c_end_rule(n, col.core, raising)
    elif fam == "B":
        core = _b_spin_rule(n, col.core, raising)
    else:
        core = _d_end_rule(n, j, col.core, raising)
    return None if core is None else col.with_core(core)


def f_column(j: int, col: Column) -> Column | None:
    return _column_op(j, col, raising=False)


def e_column(j: int, col: Column) -> Column | None:
    return _column_op(j, col, raising=True)


# -- generic dispatch -----------------------------------------------------------------


def f(j: int, b):
    if isinstance(b, Column):
        return f_column(j, b)
    if isinstance(b, QLSPath):
        return f_qls(j, b)
    if isinstance(b, AffElem):
        return f_affine(j, b)
    return f_tensor(j, b)


def e(j: int, b):
    if isinstance(b, Column):
        return e_column(j, b)
    if isinstance(b, QLSPath):
        return e_qls(j, b)
    if isinstance(b, AffElem):
        return e_affine(j, b)
    return e_tensor(j, b)


def string_lengths(j: int, b) -> tuple[int, int]:
    """(eps_j, phi_j) by applying e_j and f_j until they vanish."""
    eps = 0
    x = e(j, b)
    while x is not None:
        eps += 1
        x = e(j, x)
    phi = 0
    x = f(j, b)
    while x is not None:
        phi += 1
        x = f(j, x)
    return eps, phi


def eps_phi(j: int, b) -> tuple[int, int]:
    if isinstance(b, QLSPath):
        return qls_eps_phi(j, b)
    if isinstance(b, AffElem):
        return eps_phi(j, b.inner)
    if isinstance(b, TensorElem):
        return _tensor_eps_phi(j, b.factors)
    return string_lengths(j, b)


# -- affinization ---------------------------------------------------------------------


def f_affine(j: int, a: AffElem) -> AffElem | None:
    x = f(j, a.inner)
    return None if x is None else AffElem(x, a.c + (1 if j == 0 else 0))


def e_affine(j: int, a: AffElem) -> AffElem | None:
    x = e(j, a.inner)
    return None if x is None else AffElem(x, a.c - (1 if j == 0 else 0))


# -- tensor products (b1 (x) b2, n-fold by left association) -----------------------------


def _tensor_eps_phi(j: int, factors: tuple) -> tuple[int, int]:
    if len(factors) == 1:
        return eps_phi(j, factors[0])
    left = TensorElem(factors[:-1])
    right = factors[-1]
    e1, p1 = _tensor_eps_phi(j, left.factors)
    e2, p2 = eps_phi(j, right)
    eps = max(e1, e2 - pairing(j, left))
    phi = max(p2, p1 + pairing(j, right))
    return eps, phi


def _split_last(t: TensorElem):
    left = t.factors[:-1]
    return (TensorElem(left) if len(left) > 1 else left[0]), t.factors[-1]


def _join(left, right) -> TensorElem:
    lf = left.factors if isinstance(left, TensorElem) else (left,)
    return TensorElem(lf + (right,))


def f_tensor(j: int, t: TensorElem) -> TensorElem | None:
    if len(t.factors) == 1:
        x = f(j, t.factors[0])
        return None if x is None else TensorElem((x,))
    b1, b2 = _split_last(t)
    if eps_phi(j, b1)[1] > eps_phi(j, b2)[0]:
        x = f(j, b1)
        return None if x is None else _join(x, b2)
    y = f(j, b2)
    return None if y is None else _join(b1, y)


def e_tensor(j: int, t: TensorElem) -> TensorElem | None:
    if len(t.factors) == 1:
        x = e(j, t.factors[0])
        return None if x is None else TensorElem((x,))
    b1, b2 = _split_last(t)
    if eps_phi(j, b1)[1] >= eps_phi(j, b2)[0]:
        x = e(j, b1)
        return None if x is None else _join(x, b2)
    y = e(j, b2)
    return None if y is None else _join(b1, y)


# -- semi-infinite KN tableaux ---------------------------------------------------------


@dataclass(frozen=True)
class SiKNTableau:
    datum: RootDatum
    shape: int
    columns: tuple[Column, ...]
    cs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "cs", tuple(self.cs))
        if len(self.columns) != len(self.cs):
            raise WeylError("one c per column")

    def __str__(self):
        return " ".join(f"[{c}]@{k}" for c, k in zip(self.columns, self.cs))


def _ends(col: Column):
    """(rC~, lC~, d_i(rC~, lC~)) of a column."""
    p = qls_of_qkn(col)
    return p.v, p.w, d_coefficient(p)


def sikn_violation(T: SiKNTableau) -> str | None:
    for k, col in enumerate(T.columns, start=1):
        if col.datum != T.datum or col.shape != T.shape:
            return f"column {k} has the wrong type or shape"
        bad = column_violation(col)
        if bad:
            return f"column {k}: {bad}"
    for k in range(len(T.columns) - 1):
        _, l1, d1 = _ends(T.columns[k])
        r2, _, d2 = _ends(T.columns[k + 1])
        upper = TabVertex(l1, T.cs[k] - d1)
        lower = TabVertex(r2, T.cs[k + 1] + d2)
        if not tableau_leq(T.datum, T.shape, lower, upper):
            return f"columns {k + 1} and {k + 2} violate the chain condition"
    return None


def sikn_validate(T: SiKNTableau) -> bool:
    return sikn_violation(T) is None


def sikn_embed(T: SiKNTableau) -> TensorElem:
    bad = sikn_violation(T)
    if bad:
        raise WeylError(f"not a semi-infinite KN tableau: {bad}")
    return TensorElem(tuple(AffElem(col, c) for col, c in zip(T.columns, T.cs)))


def sikn_decode(t: TensorElem) -> SiKNTableau:
    cols = tuple(a.inner for a in t.factors)
    return SiKNTableau(cols[0].datum, cols[0].shape, cols, tuple(a.c for a in t.factors))


# -- graphs --------------------------------------------------------------------------


def crystal_edges(elements: Iterable, indices: Iterable[int]) -> list[tuple]:
    """(b, j, f_j b) for every element and index with f_j b defined."""
    indices = tuple(indices)
    out = []
    for b in elements:
        for j in indices:
            x = f(j, b)
            if x is not None:
                out.append((b, j, x))
    return out


def component(start, indices: Iterable[int]) -> set:
    """The closure of ``start`` under all e_j and f_j."""
    indices = tuple(indices)
    seen = {start}
    queue = deque([start])
    while queue:
        b = queue.popleft()
        for j in indices:
            for op in (f, e):
                x = op(j, b)
                if x is not None and x not in seen:
                    seen.add(x)
                    queue.append(x)
    return seen


def parse_ops(text: str) -> list[tuple[str, int]]:
    """``"f1,f0,e2"`` -> [("f", 1), ("f", 0), ("e", 2)]."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok[0] not in "ef" or not tok[1:].isdigit():
            raise WeylError(f"bad operator {tok!r}; expected e<j> or f<j>")
        out.append((tok[0], int(tok[1:])))
    return out


def apply_ops(ops: Sequence[tuple[str, int]], b):
    """Apply operators left to right; None as soon as one vanishes."""
    for kind, j in ops:
        b = f(j, b) if kind == "f" else e(j, b)
        if b is None:
            return None
    return b


__all__ = [
    "AffElem", "TensorElem", "SiKNTableau", "affine_indices", "weight", "weight_vector2",
    "letters_weight2", "pairing", "reflect_column", "f_qls", "e_qls", "qls_eps_phi",
    "f_column", "e_column", "f", "e", "eps_phi", "string_lengths", "f_affine", "e_affine",
    "f_tensor", "e_tensor", "sikn_violation", "sikn_validate", "sikn_embed", "sikn_decode",
    "crystal_edges", "component", "parse_ops", "apply_ops",
]

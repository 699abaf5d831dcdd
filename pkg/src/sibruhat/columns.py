"""Kashiwara-Nakashima columns, their quantum lifts and two-step QLS paths.

Letters are integers: ``k`` and ``-k`` for k and its bar, ``0`` for the
zero letter of type B.  The bar of zero only ever sits at the bottom of a
quantum column, in pairs, so a column keeps its core letters and the number
``m`` of such pairs separately.  In text form the bar of zero is ``!0``.

Type D cores are stored in the order given, since n and its bar are
incomparable and may alternate; B and C cores are kept sorted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from .cst import Col, column_of_window, column_size, is_cst, sort_letters, window_of_column
from .qbg import column_qls_leq, column_segments_and_maya, is_minuscule
from .weyl import RootDatum, SignedPermutation, WeylError, is_min_rep

BAR_ZERO = "!0"

CST, KN, QKN = "CST", "KN", "QKN"


class CannotSplit(WeylError):
    """The greedy choice of J_C ran out of candidates at step ``step``."""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


# -- letters -----------------------------------------------------------------


def sigma(u: int) -> int:
    return -u


def b_rank(n: int, u: int) -> int:
    """Position in 1 < ... < n < 0 < -n < ... < -1."""
    if u == 0:
        return n + 1
    return u if u > 0 else 2 * n + 2 + u


def compare_letters(family: str, n: int, a: int, b: int) -> str:
    """'lt', 'gt', 'eq' or 'inc' (only n and -n in type D are incomparable)."""
    if a == b:
        return "eq"
    if family == "D" and {a, b} == {n, -n}:
        return "inc"
    ra, rb = b_rank(n, a), b_rank(n, b)
    return "lt" if ra < rb else "gt"


def letter_text(u) -> str:
    return BAR_ZERO if u == BAR_ZERO else str(u)


def _sort_b(n: int, letters: Iterable[int]) -> Col:
    return tuple(sorted(letters, key=lambda u: b_rank(n, u)))


# -- columns -----------------------------------------------------------------


@dataclass(frozen=True)
class Column:
    """A column of shape ``shape``: ``core`` followed by 2m bars of zero.

    ``flavor`` is CST for the columns that are their own crystal (type A,
    the spin nodes of B and D, the node 1 of D), KN for type C and QKN for
    the other B and D nodes.
    """

    datum: RootDatum
    shape: int
    core: Col
    m: int = 0
    flavor: str = field(default=QKN, compare=False)

    def __post_init__(self):
        core = tuple(self.core)
        if self.datum.family in ("B", "C"):
            core = _sort_b(self.datum.n, core)
        object.__setattr__(self, "core", core)

    @property
    def letters(self) -> tuple:
        return self.core + (BAR_ZERO,) * (2 * self.m)

    def __len__(self):
        return len(self.core) + 2 * self.m

    def __str__(self):
        return format_letters(self.letters)

    def with_core(self, core: Sequence[int], m: int | None = None) -> "Column":
        return Column(self.datum, self.shape, tuple(core), self.m if m is None else m,
                      self.flavor)


def format_letters(letters: Iterable) -> str:
    return ",".join(letter_text(u) for u in letters)


def column_flavor(datum: RootDatum, i: int) -> str:
    datum.check_index(i)
    fam, n = datum.family, datum.n
    if fam == "A" or (fam == "B" and i == n) or (fam == "D" and i in (1, n - 1, n)):
        return CST
    return KN if fam == "C" else QKN


def _kn_clause_2(family: str, n: int, letters: Col, shape: int) -> str | None:
    """The condition shared by (KN-C2), (KN-B3) and (KN-D2)."""
    for p, a in enumerate(letters, start=1):
        if not 1 <= a <= n:
            continue
        for q, b in enumerate(letters, start=1):
            if b != -a:
                continue
            gap = abs(q - p) if family == "D" else q - p
            if not gap > shape - a:
                return f"position {p} holds {a} and position {q} its bar"
    return None


def kn_violation(datum: RootDatum, letters: Sequence[int], shape: int | None = None) -> str | None:
    """None if ``letters`` is a KN column of its length, else the failing clause."""
    fam, n = datum.family, datum.n
    letters = tuple(letters)
    shape = len(letters) if shape is None else shape
    if len(letters) != shape:
        return "length"
    for u in letters:
        if abs(u) > n or (u == 0 and fam != "B"):
            return f"letter {u} not in the alphabet"
    if fam == "A":
        return None if _strict_a(letters) else "order"
    for p, (a, b) in enumerate(zip(letters, letters[1:]), start=1):
        rel = compare_letters(fam, n, a, b)
        if fam == "C" and rel != "lt":
            return f"KN-C1 at {p}"
        if fam == "B" and not (rel == "lt" or (a == b == 0)):
            return f"KN-B1/B2 at {p}"
        if fam == "D" and rel not in ("lt", "inc"):
            return f"KN-D1 at {p}"
    bad = _kn_clause_2(fam, n, letters, shape)
    if bad:
        return {"C": "KN-C2", "B": "KN-B3", "D": "KN-D2"}[fam] + ": " + bad
    return None


def _strict_a(letters: Col) -> bool:
    return all(0 < a < b for a, b in zip(letters, letters[1:])) and all(u > 0 for u in letters)


def kn_validate(datum: RootDatum, letters: Sequence[int], shape: int | None = None) -> bool:
    return kn_violation(datum, letters, shape) is None


def _core_shape_ok(datum: RootDatum, k: int) -> bool:
    fam, n = datum.family, datum.n
    if fam == "C":
        return 0 <= k <= n
    if fam == "B":
        return 0 <= k <= n - 1
    if fam == "D":
        return 0 <= k <= n - 2
    return False


def column_violation(col: Column) -> str | None:
    datum, i = col.datum, col.shape
    try:
        flavor = column_flavor(datum, i)
    except WeylError as exc:
        return str(exc)
    if col.m < 0 or len(col) != column_size(datum, i):
        return "length"
    if flavor == CST:
        if col.m:
            return "bars of zero only occur in quantum columns"
        return None if is_cst(datum, i, col.core) else "not a column-strict tableau"
    if flavor == KN and col.m:
        return "bars of zero only occur in quantum columns"
    if not _core_shape_ok(datum, len(col.core)):
        return "core shape"
    return kn_violation(datum, col.core)


def make_column(datum: RootDatum, i: int, letters: Iterable) -> Column:
    """Build and validate a column from letters (``BAR_ZERO`` allowed at the end)."""
    letters = list(letters)
    core = []
    bars = 0
    for pos, u in enumerate(letters, start=1):
        if u == BAR_ZERO:
            bars += 1
        elif bars:
            raise WeylError(f"letter {u} at position {pos} follows a bar of zero (QKN-1)")
        else:
            core.append(int(u))
    if bars % 2:
        raise WeylError("bars of zero come in pairs (QKN-1)")
    col = Column(datum, i, tuple(core), bars // 2, column_flavor(datum, i))
    bad = column_violation(col)
    if bad:
        raise WeylError(f"{format_letters(letters)} is not a valid column of shape {i} "
                        f"in {datum}: {bad}")
    return col


def parse_letters(text: str) -> list:
    out = []
    for pos, tok in enumerate(text.split(","), start=1):
        tok = tok.strip()
        if not tok:
            continue
        if tok == BAR_ZERO:
            out.append(BAR_ZERO)
            continue
        try:
            out.append(int(tok))
        except ValueError as exc:
            raise WeylError(f"cannot parse letter {tok!r} at position {pos}") from exc
    return out


def parse_column(datum: RootDatum, i: int, text: str) -> Column:
    """Read a column top to bottom; the text must already be in column order."""
    letters = parse_letters(text)
    col = make_column(datum, i, letters)
    given = tuple(u for u in letters if u != BAR_ZERO)
    if given != col.core:
        raise WeylError(f"{format_letters(letters)}: letters are not in column order "
                        f"(expected {format_letters(col.letters)})")
    return col


def is_valid_column(col: Column) -> bool:
    return column_violation(col) is None


# -- the hat map (type D) ----------------------------------------------------------


def hat_D(n: int, letters: Sequence[int]) -> Col:
    """Replace every adjacent (bar n, n) by (0, 0)."""
    out = list(letters)
    u = 0
    while u + 1 < len(out):
        if out[u] == -n and out[u + 1] == n:
            out[u] = out[u + 1] = 0
            u += 2
        else:
            u += 1
    return tuple(out)


def unhat_D(n: int, letters: Sequence[int]) -> Col:
    """Inverse of ``hat_D`` on B-ordered letters: each 0, 0 becomes bar n, n."""
    out = []
    zeros = 0
    for u in letters:
        if u == 0:
            zeros += 1
            if zeros == 2:
                out.extend((-n, n))
                zeros = 0
        else:
            if zeros:
                raise WeylError("odd run of zeros cannot come from a type D column")
            out.append(u)
    if zeros:
        raise WeylError("odd run of zeros cannot come from a type D column")
    return tuple(out)


# -- splitting ---------------------------------------------------------------------


@dataclass(frozen=True)
class SplitResult:
    I: tuple[int, ...]
    J: tuple[int, ...]
    r: Col
    l: Col
    K: tuple[int, ...] = ()


def _split_bc(family: str, n: int, letters: Sequence[int]) -> SplitResult:
    letters = tuple(letters)
    present = set(letters)
    used = {abs(u) for u in letters if u}
    zeros = letters.count(0)
    I = [0] * zeros + sorted((z for z in range(1, n + 1) if z in present and -z in present),
                             reverse=True)
    J: list[int] = []
    bound = None
    for step, z in enumerate(I, start=1):
        top = n + 1 if z == 0 else z
        if bound is not None:
            top = min(top, bound)
        choices = [y for y in range(1, top) if y not in used]
        if not choices:
            raise CannotSplit(f"no free letter below {top} at step {step}", step)
        y = max(choices)
        J.append(y)
        bound = y
    r = list(letters)
    l = list(letters)
    for z, y in zip(I, J):
        r.remove(-z)
        r.append(-y)
        l.remove(z)
        l.append(y)
    return SplitResult(tuple(I), tuple(J), sort_letters(n, r), sort_letters(n, l))


def split(datum: RootDatum, letters: Sequence[int]) -> SplitResult:
    """Split a KN core into (I_C, J_C, rC, lC); type D goes through the hat map."""
    fam, n = datum.family, datum.n
    letters = tuple(letters)
    if fam == "D":
        return _split_bc("D", n, _sort_b(n, hat_D(n, letters)))
    if fam in ("B", "C"):
        return _split_bc(fam, n, _sort_b(n, letters))
    raise WeylError(f"no splitting in type {fam}")


def lift_K(n: int, r: Col, m: int) -> tuple[int, ...]:
    """The 2m smallest values of [n] not used by rC."""
    used = {abs(u) for u in r}
    free = [x for x in range(1, n + 1) if x not in used]
    if len(free) < 2 * m:
        raise WeylError("not enough free values for the quantum lift")
    return tuple(free[: 2 * m])


def qkn_split(col: Column) -> SplitResult:
    """Split the core and lift by K: rC~ = K u rC, lC~ = bar(K) u lC."""
    bad = column_violation(col)
    if bad:
        raise WeylError(f"invalid column {col}: {bad}")
    if col.flavor == CST:
        return SplitResult((), (), col.core, col.core)
    n = col.datum.n
    s = split(col.datum, col.core)
    K = lift_K(n, s.r, col.m)
    r = sort_letters(n, s.r + K)
    l = sort_letters(n, s.l + tuple(-x for x in K))
    return SplitResult(s.I, s.J, r, l, K)


# -- QLS paths ---------------------------------------------------------------------


@dataclass(frozen=True)
class QLSPath:
    """(v, w; 0, 1/2, 1): direction v on [0, 1/2] and w on [1/2, 1].

    Valid when w <| v, that is, w reaches v in the half quantum Bruhat graph.
    """

    datum: RootDatum
    shape: int
    v: Col
    w: Col

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "w", tuple(self.w))

    @property
    def degenerate(self) -> bool:
        return self.v == self.w

    def __str__(self):
        return f"({format_letters(self.v)} | {format_letters(self.w)})"


def qls_violation(p: QLSPath) -> str | None:
    for col in (p.v, p.w):
        if not is_cst(p.datum, p.shape, col):
            return f"{format_letters(col)} is not a column-strict tableau"
    if not column_qls_leq(p.datum, p.shape, p.w, p.v):
        return "w does not reach v in the half graph"
    return None


def make_path(datum: RootDatum, i: int, v: Sequence[int], w: Sequence[int]) -> QLSPath:
    p = QLSPath(datum, i, tuple(v), tuple(w))
    bad = qls_violation(p)
    if bad:
        raise WeylError(f"invalid QLS path {p}: {bad}")
    return p


def maya_data(p: QLSPath):
    """(segments, M(w), N(v)) of a path."""
    segs, mw = column_segments_and_maya(p.w)
    segs_v, nv = column_segments_and_maya(p.v)
    if segs != segs_v:
        raise WeylError(f"{p} has different segment sequences")
    return segs, mw.parts, nv.parts


def d_coefficient(p: QLSPath) -> int:
    """Number of quantum edges of weight 2 on a path from w to v."""
    fam = p.datum.family
    if fam in ("A", "C") or is_minuscule(p.datum, p.shape) or p.degenerate:
        return 0
    segs, M, N = maya_data(p)
    lo, hi = segs.segments[0]
    if not (lo == 1 and hi >= 2):
        return 0
    diff = len(M[0]) - len(N[0])
    if diff < 0 or diff % 2:
        raise WeylError(f"{p}: odd or negative gap on the first segment")
    return diff // 2


def qls_of_qkn(col: Column) -> QLSPath:
    s = qkn_split(col)
    return QLSPath(col.datum, col.shape, s.r, s.l)


def qkn_of_qls(p: QLSPath) -> Column:
    """Rebuild the quantum column from (v, w) through the Maya data."""
    bad = qls_violation(p)
    if bad:
        raise WeylError(f"invalid QLS path {p}: {bad}")
    datum, i = p.datum, p.shape
    fam, n = datum.family, datum.n
    flavor = column_flavor(datum, i)
    if flavor == CST:
        if not p.degenerate:
            raise WeylError(f"{p} must be degenerate at a minuscule node")
        return make_column(datum, i, p.v)
    segs, M, N = maya_data(p)
    sets = segs.sets()
    last = sets[-1]
    f = 0
    if (fam == "B" and n in last) or (fam == "D" and {n - 1, n} <= last):
        f = len(N[-1]) - len(M[-1])
    m = 0
    if fam in ("B", "D") and {1, 2} <= sets[0]:
        m2 = len(M[0]) - len(N[0])
        if m2 < 0 or m2 % 2:
            raise WeylError(f"{p}: bad quantum gap {m2}")
        m = m2 // 2
    if f < 0:
        raise WeylError(f"{p}: negative zero count")
    J1, M1, N1 = sets[0], M[0], N[0]
    if m == 0:
        # no quantum part: every segment follows the plain rule, which also
        # covers a first segment that is the last one and carries the zeros
        letters = []
        for Jn, Mn, Nn in zip(sets, M, N):
            letters += sorted(Jn - Nn) + [-z for z in Mn]
        return _finish_inverse(p, letters + [0] * f, 0, flavor)
    ys = sorted(N1 - M1)
    pool = sorted(M1 - N1)
    zs: list[int] = []
    for step, y in enumerate(ys, start=1):
        floor = y if not zs else max(y, zs[-1])
        cand = [z for z in pool if z > floor]
        if not cand:
            raise CannotSplit(f"no z above {floor} for the inverse at step {step}", step)
        zs.append(cand[0])
    letters = sorted(J1 - (M1 | N1))
    letters += zs + [-z for z in zs] + [-z for z in M1 & N1]
    for Jn, Mn, Nn in zip(sets[1:], M[1:], N[1:]):
        letters += sorted(Jn - Nn) + [-z for z in Mn]
    return _finish_inverse(p, letters + [0] * f, m, flavor)


def _finish_inverse(p: QLSPath, letters: list[int], m: int, flavor: str) -> Column:
    datum, i, n = p.datum, p.shape, p.datum.n
    core = _sort_b(n, letters)
    if datum.family == "D":
        core = unhat_D(n, core)
    col = Column(datum, i, core, m, flavor)
    bad = column_violation(col)
    if bad:
        raise WeylError(f"{p} gives an invalid column {col}: {bad}")
    return col


def column_of_weyl(w: SignedPermutation, i: int) -> Column:
    """T_w^(i) for w minimal in its coset modulo W_{I minus {i}}."""
    J = [j for j in w.datum.index_set if j != i]
    if not is_min_rep(w, J):
        raise WeylError(f"{w} is not a minimal coset representative for i={i}")
    return Column(w.datum, i, column_of_window(w, i), 0, CST)


def weyl_of_column(datum: RootDatum, i: int, col: Sequence[int]) -> SignedPermutation:
    return window_of_column(datum, i, col)


# -- enumeration -----------------------------------------------------------------------


def _d_sequences(n: int, k: int) -> list[Col]:
    alphabet = list(range(1, n + 1)) + list(range(-n, 0))
    out = []

    def grow(prefix):
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        for u in alphabet:
            if prefix and compare_letters("D", n, prefix[-1], u) not in ("lt", "inc"):
                continue
            prefix.append(u)
            grow(prefix)
            prefix.pop()

    grow([])
    return out


def ordered_cores(datum: RootDatum, k: int) -> list[Col]:
    """Letter sequences of length k obeying the ordering clause of the family."""
    fam, n = datum.family, datum.n
    if fam == "C":
        return [c for c in combinations(datum.letters(), k)]
    if fam == "B":
        alphabet = sorted(datum.letters() + (0,), key=lambda u: b_rank(n, u))
        out = []
        for c in combinations_with_replacement(alphabet, k):
            if all(a != b or a == 0 for a, b in zip(c, c[1:])):
                out.append(c)
        return out
    if fam == "D":
        return _d_sequences(n, k)
    raise WeylError(f"no KN columns in type {fam}")


def enumerate_kn(datum: RootDatum, k: int) -> list[Col]:
    """All KN cores of length k (k = 0 gives the empty column)."""
    if datum.family == "D" and k == 1:
        return [(u,) for u in datum.letters()]
    return [c for c in ordered_cores(datum, k) if kn_validate(datum, c)]


def enumerate_qkn(datum: RootDatum, i: int) -> list[Column]:
    """The column crystal attached to the node i."""
    flavor = column_flavor(datum, i)
    from .cst import enumerate_columns

    if flavor == CST:
        return [Column(datum, i, c, 0, CST) for c in enumerate_columns(datum, i)]
    if flavor == KN:
        return [Column(datum, i, c, 0, KN) for c in enumerate_kn(datum, i)]
    out = []
    for m in range(i // 2 + 1):
        out += [Column(datum, i, c, m, QKN) for c in enumerate_kn(datum, i - 2 * m)]
    return out


def enumerate_qls(datum: RootDatum, i: int) -> list[QLSPath]:
    from .cst import enumerate_columns

    cols = enumerate_columns(datum, i)
    return [QLSPath(datum, i, v, w) for v in cols for w in cols
            if column_qls_leq(datum, i, w, v)]


__all__ = [
    "BAR_ZERO", "CST", "KN", "QKN", "CannotSplit", "Column", "SplitResult", "QLSPath",
    "sigma", "b_rank", "compare_letters", "letter_text", "format_letters", "column_flavor",
    "kn_violation", "kn_validate", "column_violation", "make_column", "parse_letters",
    "parse_column", "is_valid_column", "hat_D", "unhat_D", "split", "lift_K", "qkn_split",
    "qls_violation", "make_path", "maya_data", "d_coefficient", "qls_of_qkn", "qkn_of_qls",
    "column_of_weyl", "weyl_of_column", "ordered_cores", "enumerate_kn", "enumerate_qkn",
    "enumerate_qls",
]

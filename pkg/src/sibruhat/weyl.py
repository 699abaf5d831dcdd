"""Finite Weyl groups of classical type as signed permutations.

Letters are nonzero integers; ``-k`` stands for the barred letter.  A group
element is stored through its window ``(w(1), ..., w(n))`` and acts on the
remaining letters by ``w(-u) = -w(u)``.  Weights and roots live in the
epsilon basis as integer tuples.  Anything that may be half-integral (the
spin weights of types B and D, rho) is stored doubled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Vector = tuple[int, ...]

FAMILIES = ("A", "B", "C", "D")
_MIN_RANK = {"A": 2, "B": 3, "C": 2, "D": 4}


class WeylError(ValueError):
    pass


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def vadd(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(k: int, a: Sequence[int]) -> Vector:
    return tuple(k * x for x in a)


def unit(n: int, s: int, coeff: int = 1) -> Vector:
    v = [0] * n
    v[s - 1] = coeff
    return tuple(v)


@dataclass(frozen=True)
class RootDatum:
    """Root system of type A_{n-1} (n letters), B_n, C_n or D_n."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise WeylError(f"unknown family {self.family!r}")
        if self.n < _MIN_RANK[self.family]:
            raise WeylError(
                f"family {self.family} needs n >= {_MIN_RANK[self.family]}, got {self.n}")

    def __str__(self):
        return f"{self.family}{self.n}"

    @property
    def index_set(self) -> tuple[int, ...]:
        top = self.n - 1 if self.family == "A" else self.n
        return tuple(range(1, top + 1))

    @property
    def rank(self) -> int:
        return len(self.index_set)

    def check_index(self, i: int) -> None:
        if i not in self.index_set:
            raise WeylError(f"index {i} not in I for {self}")

    # -- roots -------------------------------------------------------------

    def simple_root(self, i: int) -> Vector:
        self.check_index(i)
        n = self.n
        if i < n:
            return vsub(unit(n, i), unit(n, i + 1))
        if self.family == "B":
            return unit(n, n)
        if self.family == "C":
            return unit(n, n, 2)
        return vadd(unit(n, n - 1), unit(n, n))

    def simple_coroot(self, i: int) -> Vector:
        return coroot_of(self.simple_root(i))

    def cartan(self, i: int, j: int) -> int:
        """<alpha_i^vee, alpha_j>."""
        return dot(self.simple_coroot(i), self.simple_root(j))

    def highest_root(self) -> Vector:
        n = self.n
        if self.family == "A":
            return vsub(unit(n, 1), unit(n, n))
        if self.family == "C":
            return unit(n, 1, 2)
        return vadd(unit(n, 1), unit(n, 2))

    def positive_roots(self) -> tuple["Root", ...]:
        return _positive_roots(self)

    def is_root(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        return v in _root_set(self)

    def fundamental_weight2(self, i: int) -> Vector:
        """Twice the fundamental weight varpi_i in the epsilon basis."""
        self.check_index(i)
        n = self.n
        if self.family == "B" and i == n:
            return (1,) * n
        if self.family == "D" and i == n:
            return (1,) * n
        if self.family == "D" and i == n - 1:
            return (1,) * (n - 1) + (-1,)
        return tuple(2 if s < i else 0 for s in range(n))

    def rho2(self, J: Iterable[int] | None = None) -> Vector:
        """2 rho (or 2 rho_J) as the sum of the relevant positive roots."""
        roots = self.positive_roots() if J is None else self.positive_roots_in(J)
        total = (0,) * self.n
        for r in roots:
            total = vadd(total, r.vector)
        return total

    def positive_roots_in(self, J: Iterable[int]) -> tuple["Root", ...]:
        J = frozenset(J)
        outside = [i for i in self.index_set if i not in J]
        return tuple(r for r in self.positive_roots()
                     if all(self.coroot_coordinate(r.coroot, i) == 0 for i in outside))

    # -- coroot lattice ----------------------------------------------------

    def coroot_coordinate(self, xi: Sequence[int], i: int) -> int:
        """c_i(xi) for xi in Q^vee given in the epsilon basis."""
        twice = dot(xi, self.fundamental_weight2(i))
        if twice % 2:
            raise WeylError(f"{xi} is not in the coroot lattice of {self}")
        return twice // 2

    def coroot_coordinates(self, xi: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.coroot_coordinate(xi, i) for i in self.index_set)

    def coroot_vector(self, coords: Sequence[int]) -> Vector:
        if len(coords) != self.rank:
            raise WeylError(f"expected {self.rank} coroot coordinates, got {len(coords)}")
        total = (0,) * self.n
        for c, i in zip(coords, self.index_set):
            if c:
                total = vadd(total, vscale(c, self.simple_coroot(i)))
        return total

    def components(self, J: Iterable[int]) -> list[tuple[int, ...]]:
        """Connected components of the Dynkin subdiagram on J."""
        left = sorted(set(J))
        comps = []
        while left:
            stack = [left.pop(0)]
            comp = set(stack)
            while stack:
                a = stack.pop()
                for b in list(left):
                    if self.cartan(a, b) != 0:
                        left.remove(b)
                        comp.add(b)
                        stack.append(b)
            comps.append(tuple(sorted(comp)))
        return comps

    # -- group -------------------------------------------------------------

    def identity(self) -> "SignedPermutation":
        return SignedPermutation(self, tuple(range(1, self.n + 1)))

    def simple_reflection(self, i: int) -> "SignedPermutation":
        return reflection(self, Root(self.simple_root(i)))

    def elements(self) -> tuple["SignedPermutation", ...]:
        return _elements(self)

    def longest_element(self, K: Iterable[int] | None = None) -> "SignedPermutation":
        """Longest element of W_K (of W when K is None)."""
        K = self.index_set if K is None else tuple(sorted(set(K)))
        return _longest(self, K)

    def letters(self) -> tuple[int, ...]:
        """The alphabet in increasing order (1 < ... < n < -n < ... < -1)."""
        if self.family == "A":
            return tuple(range(1, self.n + 1))
        return tuple(range(1, self.n + 1)) + tuple(range(-self.n, 0))


def coroot_of(v: Sequence[int]) -> Vector:
    norm = dot(v, v)
    out = []
    for x in v:
        if (2 * x) % norm:
            raise WeylError(f"{tuple(v)} has no integral coroot")
        out.append(2 * x // norm)
    return tuple(out)


@dataclass(frozen=True)
class Root:
    vector: Vector

    @property
    def is_positive(self) -> bool:
        for x in self.vector:
            if x:
                return x > 0
        raise WeylError("zero vector is not a root")

    @property
    def coroot(self) -> Vector:
        return coroot_of(self.vector)

    def __neg__(self):
        return Root(vscale(-1, self.vector))

    def __str__(self):
        return format_vector(self.vector)


def format_vector(v: Sequence[int]) -> str:
    """Epsilon-basis string, e.g. ``e1-e3`` or ``2e2``."""
    parts = []
    for s, x in enumerate(v, start=1):
        if not x:
            continue
        sign = "-" if x < 0 else "+"
        mag = "" if abs(x) == 1 else str(abs(x))
        parts.append(f"{sign}{mag}e{s}")
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text[0] == "+" else text


def _root_vectors(datum: RootDatum) -> list[Vector]:
    n, fam = datum.n, datum.family
    out = []
    for s in range(1, n + 1):
        for t in range(s + 1, n + 1):
            out.append(vsub(unit(n, s), unit(n, t)))
            if fam != "A":
                out.append(vadd(unit(n, s), unit(n, t)))
    if fam == "B":
        out.extend(unit(n, s) for s in range(1, n + 1))
    if fam == "C":
        out.extend(unit(n, s, 2) for s in range(1, n + 1))
    return out


@lru_cache(maxsize=None)
def _positive_roots(datum: RootDatum) -> tuple[Root, ...]:
    return tuple(Root(v) for v in _root_vectors(datum))


@lru_cache(maxsize=None)
def _root_set(datum: RootDatum) -> frozenset[Vector]:
    pos = _root_vectors(datum)
    return frozenset(pos) | frozenset(vscale(-1, v) for v in pos)


@dataclass(frozen=True)
class SignedPermutation:
    """w in W, stored as its window (w(1), ..., w(n))."""

    datum: RootDatum
    window: tuple[int, ...]

    def __post_init__(self):
        n = self.datum.n
        w = tuple(self.window)
        object.__setattr__(self, "window", w)
        if len(w) != n or sorted(abs(x) for x in w) != list(range(1, n + 1)):
            raise WeylError(f"{list(w)} is not a signed permutation of [{n}]")
        if self.datum.family == "A" and any(x < 0 for x in w):
            raise WeylError("type A windows have no barred letters")
        if self.datum.family == "D" and sum(x < 0 for x in w) % 2:
            raise WeylError(f"{list(w)} has an odd number of barred letters (type D)")

    def __call__(self, u: int) -> int:
        if u == 0 or abs(u) > self.datum.n:
            raise WeylError(f"letter {u} out of range")
        x = self.window[abs(u) - 1]
        return x if u > 0 else -x

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return compose(self, other)

    def inverse(self) -> "SignedPermutation":
        inv = [0] * self.datum.n
        for s, x in enumerate(self.window, start=1):
            inv[abs(x) - 1] = s if x > 0 else -s
        return SignedPermutation(self.datum, tuple(inv))

    def act(self, v: Sequence[int]) -> Vector:
        """w acting on an epsilon-basis vector: eps_s -> eps_{w(s)}."""
        out = [0] * self.datum.n
        for s, x in enumerate(self.window):
            out[abs(x) - 1] += v[s] if x > 0 else -v[s]
        return tuple(out)

    def length(self) -> int:
        return length(self)

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.datum.n + 1))

    def __str__(self):
        return format_window(self.window)

    def __repr__(self):
        return f"SignedPermutation({self.datum.family}{self.datum.n}, {format_window(self.window)})"


def format_window(window: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in window) + "]"


def parse_window(datum: RootDatum, text: str) -> SignedPermutation:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    try:
        entries = tuple(int(tok) for tok in body.split(",") if tok.strip())
    except ValueError as exc:
        raise WeylError(f"cannot parse window {text!r}") from exc
    return SignedPermutation(datum, entries)


def compose(a: SignedPermutation, b: SignedPermutation) -> SignedPermutation:
    if a.datum != b.datum:
        raise WeylError(f"cannot compose elements of {a.datum} and {b.datum}")
    return SignedPermutation(a.datum, tuple(a(x) for x in b.window))


def reflection(datum: RootDatum, r: Root | Sequence[int]) -> SignedPermutation:
    """The reflection r_gamma, read off from its action on the basis vectors."""
    gamma = r.vector if isinstance(r, Root) else tuple(r)
    if not datum.is_root(gamma):
        raise WeylError(f"{format_vector(gamma)} is not a root of {datum}")
    cv = coroot_of(gamma)
    window = []
    for s in range(1, datum.n + 1):
        e = unit(datum.n, s)
        image = vsub(e, vscale(dot(cv, e), gamma))
        (t,) = [k for k, x in enumerate(image, start=1) if x]
        window.append(t if image[t - 1] > 0 else -t)
    return SignedPermutation(datum, tuple(window))


def letter_rank(n: int, u: int) -> int:
    """Position of a letter in 1 < ... < n < -n < ... < -1."""
    return u if u > 0 else 2 * n + 1 + u


def letter_lt(family: str, n: int, a: int, b: int) -> bool:
    """Strict order on letters; in type D the letters n and -n are incomparable."""
    if family == "D" and {a, b} == {n, -n}:
        return False
    return letter_rank(n, a) < letter_rank(n, b)


def length(w: SignedPermutation) -> int:
    """Length through inversion statistics on the window.

    Types B and C add a_s + b_s + e_s over s, type D drops e_s and treats
    n and -n as incomparable, type A is the inversion number.
    """
    fam, n, win = w.datum.family, w.datum.n, w.window
    if fam == "A":
        return sum(1 for s in range(n) for t in range(s + 1, n) if win[s] > win[t])
    total = 0
    for s in range(n):
        x = win[s]
        for t in range(s + 1, n):
            if letter_lt(fam, n, win[t], x):
                total += 1
            if letter_lt(fam, n, -win[t], x):
                total += 1
        if fam != "D" and x < 0:
            total += 1
    return total


def length_by_roots(w: SignedPermutation) -> int:
    """Number of positive roots sent to negative roots."""
    return sum(1 for r in w.datum.positive_roots() if not Root(w.act(r.vector)).is_positive)


def min_coset_rep(w: SignedPermutation, J: Iterable[int]) -> SignedPermutation:
    """The minimal-length representative of w W_J."""
    J = tuple(sorted(set(J)))
    datum = w.datum
    gens = [datum.simple_reflection(j) for j in J]
    cur, cur_len = w, length(w)
    moved = True
    while moved:
        moved = False
        for s in gens:
            cand = cur * s
            cand_len = length(cand)
            if cand_len < cur_len:
                cur, cur_len, moved = cand, cand_len, True
    return cur


def is_min_rep(w: SignedPermutation, J: Iterable[int]) -> bool:
    ell = length(w)
    return all(length(w * w.datum.simple_reflection(j)) > ell for j in J)


@lru_cache(maxsize=None)
def _elements(datum: RootDatum) -> tuple[SignedPermutation, ...]:
    n = datum.n
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        if datum.family == "A":
            out.append(SignedPermutation(datum, perm))
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if datum.family == "D" and signs.count(-1) % 2:
                continue
            out.append(SignedPermutation(datum, tuple(s * p for s, p in zip(signs, perm))))
    return tuple(out)


@lru_cache(maxsize=None)
def _longest(datum: RootDatum, K: tuple[int, ...]) -> SignedPermutation:
    gens = [datum.simple_reflection(k) for k in K]
    cur, cur_len = datum.identity(), 0
    grown = True
    while grown:
        grown = False
        for s in gens:
            cand = cur * s
            if length(cand) > cur_len:
                cur, cur_len, grown = cand, cur_len + 1, True
    return cur


def enumerate_min_reps(i: int, datum: RootDatum) -> list[SignedPermutation]:
    """W^{I minus {i}}, sorted by the window's column encoding."""
    datum.check_index(i)
    return list(_min_reps(datum, i))


@lru_cache(maxsize=None)
def _min_reps(datum: RootDatum, i: int) -> tuple[SignedPermutation, ...]:
    J = [j for j in datum.index_set if j != i]
    reps = [w for w in datum.elements() if is_min_rep(w, J)]
    reps.sort(key=lambda w: tuple(letter_rank(datum.n, x) for x in w.window))
    return tuple(reps)


def parabolic_complement(datum: RootDatum, i: int) -> tuple[int, ...]:
    return tuple(j for j in datum.index_set if j != i)


def iter_group(datum: RootDatum) -> Iterator[SignedPermutation]:
    return iter(datum.elements())

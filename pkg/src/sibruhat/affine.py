"""Affine Weyl group elements w t_xi, level-zero weights and the projection Pi^J.

Translations are kept in simple-coroot coordinates ``(c_j(xi))_{j in I}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .weyl import (
    RootDatum,
    Root,
    SignedPermutation,
    WeylError,
    coroot_of,
    dot,
    length,
    min_coset_rep,
    parse_window,
    reflection,
    vadd,
    vscale,
)


@dataclass(frozen=True)
class AffineElement:
    w: SignedPermutation
    xi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(self.xi))
        if len(self.xi) != self.w.datum.rank:
            raise WeylError(f"xi needs {self.w.datum.rank} coordinates, got {len(self.xi)}")

    @property
    def datum(self) -> RootDatum:
        return self.w.datum

    @property
    def xi_vector(self):
        return self.datum.coroot_vector(self.xi)

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        # (w t_xi)(v t_zeta) = wv t_{v^-1 xi + zeta}
        if self.datum != other.datum:
            raise WeylError("datum mismatch")
        vinv = other.w.inverse()
        vec = vadd(vinv.act(self.xi_vector), other.xi_vector)
        return AffineElement(self.w * other.w, self.datum.coroot_coordinates(vec))

    def inverse(self) -> "AffineElement":
        # (w t_xi)^-1 = w^-1 t_{-w xi}
        vec = vscale(-1, self.w.act(self.xi_vector))
        return AffineElement(self.w.inverse(), self.datum.coroot_coordinates(vec))

    def __str__(self):
        return f"{self.w};[{','.join(str(c) for c in self.xi)}]"


def identity(datum: RootDatum) -> AffineElement:
    return AffineElement(datum.identity(), (0,) * datum.rank)


def translation(datum: RootDatum, coords: Sequence[int]) -> AffineElement:
    return AffineElement(datum.identity(), tuple(coords))


def finite(w: SignedPermutation) -> AffineElement:
    return AffineElement(w, (0,) * w.datum.rank)


def parse_affine(datum: RootDatum, text: str) -> AffineElement:
    """Parse ``[w-window];[c_1,...,c_r]``."""
    try:
        left, right = text.split(";")
    except ValueError as exc:
        raise WeylError(f"expected '[window];[coords]', got {text!r}") from exc
    w = parse_window(datum, left)
    body = right.strip().strip("[]")
    coords = tuple(int(tok) for tok in body.split(",") if tok.strip())
    return AffineElement(w, coords)


def affine_reflection(datum: RootDatum, gamma: Sequence[int], k: int) -> AffineElement:
    """r_beta for beta = gamma + k delta, equal to r_gamma t_{k gamma^vee}."""
    gamma = tuple(gamma)
    coords = datum.coroot_coordinates(vscale(k, coroot_of(gamma)))
    return AffineElement(reflection(datum, Root(gamma)), coords)


def semi_infinite_length(x: AffineElement) -> int:
    """l(w) + 2<xi, rho>."""
    return length(x.w) + dot(x.xi_vector, x.datum.rho2())


def coroot_coordinate(x: AffineElement, i: int) -> int:
    x.datum.check_index(i)
    return x.xi[x.datum.index_set.index(i)]


# -- level-zero weights ------------------------------------------------------


@dataclass(frozen=True)
class LevelZeroWeight:
    """sum_i m_i varpi_i + delta_coeff * delta.

    The delta coefficient is always an integer here (<xi, lambda> is integral
    for xi in Q^vee and lambda in P), so it is stored as is.
    """

    m: tuple[int, ...]
    delta: int = 0

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))


def weight_vector2(datum: RootDatum, lam: LevelZeroWeight):
    """Twice the finite part of lambda in the epsilon basis."""
    total = (0,) * datum.n
    for mi, i in zip(lam.m, datum.index_set):
        if mi:
            total = vadd(total, vscale(mi, datum.fundamental_weight2(i)))
    return total


def weight_from_vector2(datum: RootDatum, vec2, delta: int = 0) -> LevelZeroWeight:
    m = []
    for i in datum.index_set:
        twice = dot(datum.simple_coroot(i), vec2)
        if twice % 2:
            raise WeylError("not an integral weight")
        m.append(twice // 2)
    return LevelZeroWeight(tuple(m), delta)


def act_level_zero(x: AffineElement, lam: LevelZeroWeight) -> LevelZeroWeight:
    """w t_xi lambda = w lambda - <xi, lambda> delta."""
    datum = x.datum
    if len(lam.m) != datum.rank:
        raise WeylError("weight rank mismatch")
    vec2 = weight_vector2(datum, lam)
    pairing2 = dot(x.xi_vector, vec2)
    moved = x.w.act(vec2)
    return weight_from_vector2(datum, moved, lam.delta - pairing2 // 2)


def stabilizer_J(datum: RootDatum, lam: LevelZeroWeight) -> tuple[int, ...]:
    """J_lambda = {i : <alpha_i^vee, lambda> = 0}."""
    return tuple(i for i, mi in zip(datum.index_set, lam.m) if mi == 0)


# -- J-adjustment -------------------------------------------------------------


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan over the rationals for a square invertible system."""
    k = len(rhs)
    a = [row[:] + [rhs[r]] for r, row in enumerate(matrix)]
    for col in range(k):
        piv = next(r for r in range(col, k) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(k):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * u for v, u in zip(a[r], a[col])]
    return [a[r][k] for r in range(k)]


def _v_element(datum: RootDatum, comp: tuple[int, ...], j: int) -> SignedPermutation:
    if j == 0:
        return datum.identity()
    return datum.longest_element(comp) * datum.longest_element([k for k in comp if k != j])


def z_and_phi(datum: RootDatum, xi: Sequence[int], J: Iterable[int]):
    """The J-adjustment of xi: returns (z_xi, phi_J(xi)) in coroot coordinates.

    For each Dynkin component I_m of J the label j_m in I_m or 0 is the unique
    one for which the system <xi + phi, alpha_j> = -[j = j_m] (j in I_m) has an
    integral solution phi in Q_{I_m}^vee with <xi + phi, alpha> in {-1, 0}
    for every positive root alpha of I_m.
    """
    J = tuple(sorted(set(J)))
    xi_vec = datum.coroot_vector(tuple(xi))
    phi = dict.fromkeys(datum.index_set, 0)
    z = datum.identity()
    for comp in datum.components(J):
        comp_roots = datum.positive_roots_in(comp)
        matrix = [[Fraction(datum.cartan(k, j)) for k in comp] for j in comp]
        found = []
        for jm in (0,) + comp:
            rhs = [Fraction(-(1 if j == jm else 0) - dot(xi_vec, datum.simple_root(j)))
                   for j in comp]
            sol = _solve(matrix, rhs)
            if any(s.denominator != 1 for s in sol):
                continue
            coords = {k: int(s) for k, s in zip(comp, sol)}
            shifted = xi_vec
            for k, c in coords.items():
                shifted = vadd(shifted, vscale(c, datum.simple_coroot(k)))
            if all(dot(shifted, r.vector) in (-1, 0) for r in comp_roots):
                found.append((jm, coords))
        if len(found) != 1:
            raise AssertionError(f"J-adjustment not unique for component {comp}: {found}")
        jm, coords = found[0]
        phi.update(coords)
        z = z * _v_element(datum, comp, jm)
    return z, tuple(phi[i] for i in datum.index_set)


def z_and_phi_search(datum: RootDatum, xi: Sequence[int], J: Iterable[int],
                     require_adjusted: bool = True):
    """Box search for the J-adjustment (independent check of z_and_phi).

    phi ranges over Q_J^vee with |c_j| <= n + max|c_j(xi)| and the labels over
    the affine index sets of the components of J.  A hit is a pair with
    <xi + phi, alpha_j> = -[j = j_m] for all j in J (and, when
    ``require_adjusted``, <xi + phi, alpha> in {-1, 0} on positive roots of J).
    Returns the list of all hits.
    """
    J = tuple(sorted(set(J)))
    xi = tuple(xi)
    bound = datum.n + max((abs(c) for c in xi), default=0)
    comps = datum.components(J)
    J_roots = datum.positive_roots_in(J)
    hits = []
    for labels in product(*[(0,) + c for c in comps]):
        marked = {jm for jm in labels if jm}
        for ph in product(range(-bound, bound + 1), repeat=len(J)):
            coords = dict(zip(J, ph))
            full = tuple(xi[k] + coords.get(i, 0) for k, i in enumerate(datum.index_set))
            vec = datum.coroot_vector(full)
            if any(dot(vec, datum.simple_root(j)) != (-1 if j in marked else 0) for j in J):
                continue
            if require_adjusted and not all(dot(vec, r.vector) in (-1, 0) for r in J_roots):
                continue
            z = datum.identity()
            for comp, jm in zip(comps, labels):
                z = z * _v_element(datum, comp, jm)
            hits.append((z, tuple(coords.get(i, 0) for i in datum.index_set)))
    return hits


def project_pi_J(x: AffineElement, J: Iterable[int]) -> AffineElement:
    """Pi^J(w t_xi) = floor(w) z_xi t_{xi + phi_J(xi)}."""
    J = tuple(sorted(set(J)))
    z, phi = z_and_phi(x.datum, x.xi, J)
    w = min_coset_rep(x.w, J) * z
    return AffineElement(w, tuple(a + b for a, b in zip(x.xi, phi)))


def in_WJ_af(x: AffineElement, J: Iterable[int]) -> bool:
    return project_pi_J(x, J) == x


def coroot_coords_outside(x: AffineElement, J: Iterable[int]) -> tuple[int, ...]:
    J = set(J)
    return tuple(c for c, i in zip(x.xi, x.datum.index_set) if i not in J)


def simple_affine_reflection(datum: RootDatum, i: int) -> AffineElement:
    """r_i for i in I_af; r_0 = r_theta t_{-theta^vee}."""
    if i == 0:
        return affine_reflection(datum, vscale(-1, datum.highest_root()), 1)
    return affine_reflection(datum, datum.simple_root(i), 0)


def pair_affine_coroot(datum: RootDatum, i: int, vec2) -> int:
    """<alpha_i^vee, lambda> for i in I_af on a level-zero weight (doubled input)."""
    if i == 0:
        return -dot(coroot_of(datum.highest_root()), vec2) // 2
    return dot(datum.simple_coroot(i), vec2) // 2


__all__ = [
    "AffineElement", "LevelZeroWeight", "identity", "translation", "finite",
    "parse_affine", "affine_reflection", "semi_infinite_length",
    "coroot_coordinate", "act_level_zero", "z_and_phi", "z_and_phi_search",
    "project_pi_J", "in_WJ_af", "coroot_coords_outside",
    "simple_affine_reflection", "pair_affine_coroot", "weight_vector2",
    "weight_from_vector2", "stabilizer_J",
]

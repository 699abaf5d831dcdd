"""Oracle sweeps: each closed form against its brute-force counterpart.

Every sweep returns a ``SweepResult``.  Failures are written in the text
formats the command line accepts, so each one can be replayed directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable

from . import crystal as cr
from .affine import AffineElement, project_pi_J
from .columns import (
    CannotSplit,
    enumerate_kn,
    enumerate_qkn,
    enumerate_qls,
    format_letters,
    kn_validate,
    ordered_cores,
    qkn_of_qls,
    qls_of_qkn,
    split,
)
from .cst import enumerate_columns
from .qbg import enumerate_edges, maya_leq, maya_leq_reachability
from .siborder import (
    TabVertex,
    deodhar_leq,
    general_key,
    reachable_band,
    reachable_general,
    tableau_leq,
)
from .weyl import RootDatum, WeylError, min_coset_rep


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, text: str) -> None:
        self.failures.append(text)

    def merge(self, other: "SweepResult") -> "SweepResult":
        self.checked += other.checked
        self.failures += other.failures
        return self

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures"


def _flags(datum: RootDatum, i: int | None = None) -> str:
    out = f"--type {datum.family} --rank {datum.n}"
    return out if i is None else out + f" --i {i}"


# -- quantum Bruhat graph ------------------------------------------------------------


def sweep_qbg(datum: RootDatum) -> SweepResult:
    """Generic and classified edge sets agree, kinds included.

    Type A has no classified table, so there is nothing to compare.
    """
    res = SweepResult(f"qbg {datum}")
    if datum.family == "A":
        return res
    for i in datum.index_set:
        gen = {e.key() for e in enumerate_edges(datum, i, "generic")}
        cls = {e.key() for e in enumerate_edges(datum, i, "classified")}
        res.checked += len(gen | cls)
        for key in sorted(gen ^ cls):
            side = "generic only" if key in gen else "classified only"
            res.fail(f"export qbg {_flags(datum, i)}: {side} edge {key}")
    return res


# -- semi-infinite order ---------------------------------------------------------------


def _starts(items: list, sample: int, rng: random.Random | None) -> list:
    """All items, or ``sample`` of them drawn with ``rng`` when sample > 0."""
    if sample <= 0 or sample >= len(items):
        return items
    return (rng or random.Random(0)).sample(items, sample)


def sweep_sib(datum: RootDatum, i: int, window: int | None = None, sample: int = 0,
              rng: random.Random | None = None) -> SweepResult:
    """tableau_leq against band search, c' - c in [-1, window] (default i + 2)."""
    if window is None:
        window = i + 2
    res = SweepResult(f"sib {datum} i={i}")
    cols = enumerate_columns(datum, i)
    for T in _starts(cols, sample, rng):
        start = TabVertex(T, 0)
        reach = reachable_band(datum, i, start, window)
        for Tp in cols:
            for c in range(-1, window + 1):
                b = TabVertex(Tp, c)
                res.checked += 1
                if tableau_leq(datum, i, start, b) != (b in reach):
                    res.fail(f"sib leq {_flags(datum, i)} --lhs=\"{start}\" --rhs=\"{b}\"")
    return res


def deodhar_elements(datum: RootDatum, J: tuple[int, ...], width: int) -> list[AffineElement]:
    """Elements of (W^J)_af whose coordinates outside J lie in [0, width)."""
    I = datum.index_set
    out_idx = [i for i in I if i not in J]
    reps = {}
    for w in datum.elements():
        m = min_coset_rep(w, J)
        reps[m.window] = m
    xs = []
    for w in reps.values():
        for cs in product(range(width), repeat=len(out_idx)):
            co = dict(zip(out_idx, cs))
            xi = tuple(co.get(i, 0) for i in I)
            xs.append(project_pi_J(AffineElement(w, xi), J))
    return xs


def sweep_deodhar(datum: RootDatum, width: int = 3, sample: int = 0,
                  rng: random.Random | None = None) -> SweepResult:
    """deodhar_leq against search in the semi-infinite graph on (W^J)_af, every J."""
    res = SweepResult(f"deodhar {datum}")
    I = datum.index_set
    for r in range(len(I) + 1):
        for J in combinations(I, r):
            xs = deodhar_elements(datum, J, width)
            top = (width - 1,) * (len(I) - len(J))
            keys = [general_key(J, y) for y in xs]
            for x in _starts(xs, sample, rng):
                reach = reachable_general(J, x, top)
                for y, key in zip(xs, keys):
                    res.checked += 1
                    if deodhar_leq(J, x, y) != (key in reach):
                        res.fail(f"sib deodhar {_flags(datum)} --J=\"{','.join(map(str, J))}\" "
                                 f"--x=\"{x}\" --y=\"{y}\"")
    return res


# -- columns and paths -----------------------------------------------------------------


def sweep_split(datum: RootDatum) -> SweepResult:
    """Splitting succeeds exactly on KN columns."""
    res = SweepResult(f"split {datum}")
    fam, n = datum.family, datum.n
    top = {"C": n, "B": n - 1, "D": n - 2}[fam]
    for k in range(2 if fam == "D" else 1, top + 1):
        for core in ordered_cores(datum, k):
            res.checked += 1
            try:
                split(datum, core)
                ok = True
            except CannotSplit:
                ok = False
            if ok != kn_validate(datum, core):
                res.fail(f"tab split {_flags(datum)} --col=\"{format_letters(core)}\"")
    return res


def sweep_bijection(datum: RootDatum, i: int) -> SweepResult:
    """Round trips, counts and intertwining of column operators with path operators."""
    res = SweepResult(f"bijection {datum} i={i}")
    cols = enumerate_qkn(datum, i)
    paths = enumerate_qls(datum, i)
    res.checked += 1
    if len(cols) != len(paths):
        res.fail(f"{_flags(datum, i)}: {len(cols)} columns vs {len(paths)} paths")
    kn_total = None
    if cols and cols[0].flavor == "QKN":
        kn_total = sum(len(enumerate_kn(datum, i - 2 * m)) for m in range(i // 2 + 1))
        res.checked += 1
        if kn_total != len(cols):
            res.fail(f"{_flags(datum, i)}: sum of KN counts {kn_total} vs {len(cols)}")
    images = set()
    for c in cols:
        res.checked += 1
        text = f"{_flags(datum, i)} --col=\"{c}\""
        try:
            p = qls_of_qkn(c)
            back = qkn_of_qls(p)
        except WeylError as exc:
            res.fail(f"tab qkn2qls {text}: {exc}")
            continue
        images.add(p)
        if back != c:
            res.fail(f"tab qkn2qls {text}: comes back as {back}")
        for j in cr.affine_indices(datum):
            for name, col_op, path_op in (("f", cr.f_column, cr.f_qls), ("e", cr.e_column, cr.e_qls)):
                res.checked += 1
                try:
                    a = col_op(j, c)
                except WeylError as exc:
                    res.fail(f"crystal apply {_flags(datum, i)} --elem=\"{c}\" --ops {name}{j}: {exc}")
                    continue
                b = path_op(j, p)
                if (qls_of_qkn(a) if a is not None else None) != b:
                    res.fail(f"crystal apply {_flags(datum, i)} --elem=\"{c}\" --ops {name}{j}: "
                             f"column gives {a}, path gives {b}")
    res.checked += 1
    if images != set(paths):
        res.fail(f"{_flags(datum, i)}: image of the columns is not the set of paths")
    return res


def _weight_step(datum: RootDatum, j: int) -> tuple[int, ...]:
    """Twice alpha_j in the epsilon basis (alpha_0 taken as -theta)."""
    if j == 0:
        return tuple(-2 * x for x in datum.highest_root())
    return tuple(2 * x for x in datum.simple_root(j))


def sweep_axioms(datum: RootDatum, elements: Iterable, label: str) -> SweepResult:
    """(C1)-(C7) and string lengths on a finite crystal given by its elements."""
    res = SweepResult(f"axioms {label}")
    elements = list(elements)
    members = set(elements)
    for b in elements:
        w = cr.weight_vector2(b)
        for j in cr.affine_indices(datum):
            res.checked += 1
            eps, phi = cr.eps_phi(j, b)
            where = f"{label} {b} j={j}"
            if eps < 0 or phi < 0:
                res.fail(f"{where}: negative string length")
            if phi - eps != cr.pairing(j, b):
                res.fail(f"{where}: (C1) phi - eps = {phi - eps}, pairing {cr.pairing(j, b)}")
            if (eps, phi) != cr.string_lengths(j, b):
                res.fail(f"{where}: eps/phi {(eps, phi)} vs strings {cr.string_lengths(j, b)}")
            step = _weight_step(datum, j)
            up, down = cr.e(j, b), cr.f(j, b)
            for x, sign, name in ((up, 1, "e"), (down, -1, "f")):
                if x is None:
                    continue
                if x not in members:
                    res.fail(f"{where}: {name} leaves the set ({x})")
                    continue
                shift = tuple(a - c for a, c in zip(cr.weight_vector2(x), w))
                if shift != tuple(sign * s for s in step):
                    res.fail(f"{where}: weight of {name} moves by {shift}")
                ex, px = cr.eps_phi(j, x)
                if (ex, px) != (eps - sign, phi + sign):
                    res.fail(f"{where}: string lengths after {name} are {(ex, px)}")
                back = cr.f(j, x) if name == "e" else cr.e(j, x)
                if back != b:
                    res.fail(f"{where}: (C6) fails after {name}")
            x = b
            for _ in range(phi):
                x = cr.f(j, x)
                if x is None:
                    res.fail(f"{where}: f string shorter than phi")
                    break
            if x is not None and cr.f(j, x) is not None:
                res.fail(f"{where}: f string longer than phi")
    return res


def sweep_crystal(datum: RootDatum, i: int) -> SweepResult:
    cols = enumerate_qkn(datum, i)
    res = sweep_axioms(datum, cols, f"columns {datum} i={i}")
    res.merge(sweep_axioms(datum, enumerate_qls(datum, i), f"paths {datum} i={i}"))
    res.name = f"crystal {datum} i={i}"
    res.checked += 1
    comp = cr.component(cols[0], cr.affine_indices(datum))
    if comp != set(cols):
        res.fail(f"crystal graph {_flags(datum, i)}: component of {cols[0]} has "
                 f"{len(comp)} of {len(cols)} elements")
    if datum.family == "B" and i == datum.n:
        for c in cols:
            res.checked += 1
            if cr.eps_phi(0, c)[1] > 1 or cr.eps_phi(0, c)[0] > 1:
                res.fail(f"crystal apply {_flags(datum, i)} --elem=\"{c}\" --ops f0: "
                         f"0-string longer than one")
    return res


# -- Maya diagrams ---------------------------------------------------------------------


def longest_segment(family: str, n: int) -> int:
    """The longest segment a column of non-spin shape can produce."""
    return {"A": n, "B": n - 1, "C": n, "D": n - 2}[family]


def sweep_maya(family: str, n: int, max_len: int = 5) -> SweepResult:
    """Closed-form Maya comparison against search in the Maya graph.

    Only segments that a column can produce are swept.  Longer ones (in
    type D, say, an interval holding both 1, 2 and n - 1, n) admit chains
    the closed forms are not meant to describe.
    """
    res = SweepResult(f"maya {family}{n}")
    max_len = min(max_len, longest_segment(family, n))
    for lo in range(1, n + 1):
        for hi in range(lo, min(n, lo + max_len - 1) + 1):
            seg = list(range(lo, hi + 1))
            subsets = [frozenset(c) for r in range(len(seg) + 1) for c in combinations(seg, r)]
            for M in subsets:
                for N in subsets:
                    for prime in (False, True):
                        res.checked += 1
                        a = maya_leq(family, n, (lo, hi), M, N, prime)
                        b = maya_leq_reachability(family, n, (lo, hi), M, N, prime)
                        if a != b:
                            res.fail(f"{family}{n} segment [{lo},{hi}] M={sorted(M)} "
                                     f"N={sorted(N)} prime={prime}: closed {a}, search {b}")
    return res


__all__ = [
    "SweepResult", "sweep_qbg", "sweep_sib", "sweep_deodhar", "deodhar_elements",
    "sweep_split", "sweep_bijection", "sweep_axioms", "sweep_crystal", "sweep_maya",
    "longest_segment",
]

"""Column-strict one-column tableaux (CST) as plain tuples of letters.

A CST column is a tuple of nonzero integers, barred letters negative,
increasing in the order 1 < ... < n < -n < ... < -1.  For the spin nodes of
type D the column has n entries; otherwise it has i entries.  This module
converts between such tuples and minimal coset representatives without
enumerating the Weyl group, so it works at any rank.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .weyl import RootDatum, SignedPermutation, WeylError, letter_rank

Col = tuple[int, ...]


def column_size(datum: RootDatum, i: int) -> int:
    datum.check_index(i)
    if datum.family == "D" and i >= datum.n - 1:
        return datum.n
    return i


def sort_letters(n: int, letters) -> Col:
    return tuple(sorted(letters, key=lambda u: letter_rank(n, u)))


def is_cst(datum: RootDatum, i: int, col: Sequence[int]) -> bool:
    return _is_cst(datum, i, tuple(col))


@lru_cache(maxsize=1 << 16)
def _is_cst(datum: RootDatum, i: int, col: Col) -> bool:
    n = datum.n
    if len(col) != column_size(datum, i):
        return False
    if any(u == 0 or abs(u) > n for u in col):
        return False
    if len({abs(u) for u in col}) != len(col):
        return False
    if any(letter_rank(n, a) >= letter_rank(n, b) for a, b in zip(col, col[1:])):
        return False
    if datum.family == "A" and any(u < 0 for u in col):
        return False
    if datum.family == "D" and i >= n - 1:
        odd = sum(u < 0 for u in col) % 2
        return odd == (1 if i == n - 1 else 0)
    return True


def check_cst(datum: RootDatum, i: int, col: Sequence[int]) -> Col:
    col = tuple(col)
    if not is_cst(datum, i, col):
        raise WeylError(f"{list(col)} is not a column-strict tableau of shape {i} in {datum}")
    return col


@lru_cache(maxsize=1 << 16)
def column_of_window(w: SignedPermutation, i: int) -> Col:
    """The column T_w^(i) of the coset w W_{I minus i} (any coset element works)."""
    datum = w.datum
    n = datum.n
    datum.check_index(i)
    win = w.window
    if datum.family == "D" and i == n - 1:
        return sort_letters(n, win[: n - 1] + (-win[n - 1],))
    if datum.family == "D" and i == n:
        return sort_letters(n, win)
    return sort_letters(n, win[:i])


def window_of_column(datum: RootDatum, i: int, col: Sequence[int]) -> SignedPermutation:
    """The minimal coset representative with column ``col``."""
    col = check_cst(datum, i, col)
    n = datum.n
    if datum.family == "D" and i == n - 1:
        return SignedPermutation(datum, col[:-1] + (-col[-1],))
    if datum.family == "D" and i == n:
        return SignedPermutation(datum, col)
    used = {abs(u) for u in col}
    rest = [k for k in range(1, n + 1) if k not in used]
    if datum.family == "D" and sum(u < 0 for u in col) % 2:
        rest[-1] = -rest[-1]
    return SignedPermutation(datum, col + tuple(rest))


def enumerate_columns(datum: RootDatum, i: int) -> list[Col]:
    """All CST columns of shape i, sorted by letter ranks."""
    n = datum.n
    size = column_size(datum, i)
    out = []
    for absvals in combinations(range(1, n + 1), size):
        signs = [(1,)] * size if datum.family == "A" else [(1, -1)] * size
        for sg in product(*signs):
            col = sort_letters(n, (s * a for s, a in zip(sg, absvals)))
            if is_cst(datum, i, col):
                out.append(col)
    out.sort(key=lambda c: tuple(letter_rank(n, u) for u in c))
    return out


def format_column(col: Sequence[int]) -> str:
    return ",".join(str(u) for u in col)


def letter_leq(datum: RootDatum, a: int, b: int) -> bool:
    """a <= b in the letter order of the family (n, -n incomparable in D)."""
    if a == b:
        return True
    n = datum.n
    if datum.family == "D" and {a, b} == {n, -n}:
        return False
    return letter_rank(n, a) < letter_rank(n, b)

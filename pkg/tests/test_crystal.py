from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sibruhat import crystal as cr
from sibruhat.checks import sweep_bijection, sweep_crystal
from sibruhat.columns import enumerate_qkn, enumerate_qls, parse_column, qls_of_qkn
from sibruhat.weyl import RootDatum, WeylError

B3, B4, B9 = RootDatum("B", 3), RootDatum("B", 4), RootDatum("B", 9)
C2, C3, D4 = RootDatum("C", 2), RootDatum("C", 3), RootDatum("D", 4)
GOLDEN = "2,3,0,-9,-3,!0,!0"


def col(d, text, i=None):
    return parse_column(d, i or len(text.split(",")), text)


def test_table_examples():
    assert str(cr.f(1, col(C3, "1,-2"))) == "2,-2"
    assert str(cr.f(0, col(B3, "-2,-1"))) == "!0,!0"
    assert cr.f(1, col(C3, "3")) is None
    assert str(cr.f(4, col(B4, "4,0,0"))) == "0,0,0"


def test_golden_column_operators():
    c = col(B9, GOLDEN)
    assert str(cr.f(2, c)) == "2,3,0,-9,-2,!0,!0"
    assert str(cr.f(8, c)) == "2,3,0,-8,-3,!0,!0"
    assert str(cr.e(0, c)) == "0,-9,-1,!0,!0,!0,!0"
    assert str(cr.e(9, c)) == "2,3,0,0,-3,!0,!0"
    for j in cr.affine_indices(B9):
        for op, path_op in ((cr.f, cr.f_qls), (cr.e, cr.e_qls)):
            x = op(j, c)
            y = path_op(j, qls_of_qkn(c))
            assert (None if x is None else qls_of_qkn(x)) == y


def test_weights():
    assert cr.weight(col(C3, "1,2")).m == (0, 1, 0)
    w = cr.weight(col(B9, GOLDEN))
    assert cr.weight_vector2(col(B9, GOLDEN)) == (0, 2, 0, 0, 0, 0, 0, 0, -2)
    assert w.delta == 0
    a = cr.AffElem(col(C3, "-1"), 2)
    assert cr.weight(a).delta == -2


def test_string_lengths_examples():
    assert cr.eps_phi(1, col(C3, "1")) == (0, 1)
    for d in (B3, C3, D4):
        for i in d.index_set:
            top = enumerate_qkn(d, i)[0]
            assert all(cr.eps_phi(j, top)[0] == 0 for j in d.index_set)


def test_affinization():
    a = cr.AffElem(col(C3, "-1"), 0)
    assert cr.f(0, a) == cr.AffElem(col(C3, "1"), 1)
    b = cr.AffElem(col(C3, "1"), 0)
    assert cr.f(1, b).c == 0
    assert cr.e(0, cr.f(0, a)) == a
    with pytest.raises(WeylError):
        cr.AffElem(a, 1)


@pytest.mark.parametrize("d", [B3, C2, C3, D4, RootDatum("A", 4)], ids=str)
def test_axioms_on_every_column_crystal(d):
    for i in d.index_set:
        res = sweep_crystal(d, i)
        assert res.passed, res.failures[:5]


@pytest.mark.parametrize("d", [B3, C3, D4, RootDatum("D", 5)], ids=str)
def test_columns_intertwine_with_paths(d):
    for i in d.index_set:
        res = sweep_bijection(d, i)
        assert res.passed, res.failures[:5]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_b_spin_zero_strings_are_short(n):
    d = RootDatum("B", n)
    for c in enumerate_qkn(d, n):
        eps, phi = cr.eps_phi(0, c)
        assert eps <= 1 and phi <= 1


def test_b_spin_zero_rule():
    spin = [x for x in enumerate_qkn(B3, 3) if cr.f(0, x) is not None]
    assert spin
    for x in spin:
        assert -1 in x.core and -2 in x.core
        y = cr.f(0, x)
        assert 1 in y.core and 2 in y.core


def test_degenerate_paths_follow_the_columns():
    for d, i in ((D4, 1), (D4, 4), (RootDatum("A", 4), 2)):
        for c in enumerate_qkn(d, i):
            p = qls_of_qkn(c)
            assert p.degenerate
            for j in cr.affine_indices(d):
                x = cr.f(j, c)
                assert (None if x is None else qls_of_qkn(x)) == cr.f_qls(j, p)


# -- tensor products against the signature rule ---------------------------------------


def signature_f(j, factors):
    """Factors hit by f_j and e_j: write -^eps +^phi per factor, cancel "+-" pairs."""
    word = []
    for k in range(len(factors)):
        eps, phi = cr.string_lengths(j, factors[k])
        word += [("-", k)] * eps + [("+", k)] * phi
    stack = []
    for sign, k in word:
        if sign == "-" and stack and stack[-1][0] == "+":
            stack.pop()
        else:
            stack.append((sign, k))
    plus = [k for s, k in stack if s == "+"]
    minus = [k for s, k in stack if s == "-"]
    return (plus[0] if plus else None), (minus[-1] if minus else None)


def apply_at(op, j, factors, k):
    if k is None:
        return None
    x = op(j, factors[k])
    if x is None:
        return None
    return cr.TensorElem(factors[:k] + (x,) + factors[k + 1:])


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(C3, 1), (C3, 2), (B3, 2), (D4, 2), (D4, 4)]), st.integers(2, 3),
       st.data())
def test_tensor_rule_matches_signature_rule(case, k, data):
    d, i = case
    cols = enumerate_qkn(d, i)
    factors = tuple(data.draw(st.sampled_from(cols)) for _ in range(k))
    t = cr.TensorElem(factors)
    for j in cr.affine_indices(d):
        fk, ek = signature_f(j, factors)
        assert cr.f(j, t) == apply_at(cr.f, j, factors, fk)
        assert cr.e(j, t) == apply_at(cr.e, j, factors, ek)
        assert cr.eps_phi(j, t) == cr.string_lengths(j, t)
        assert cr.weight_vector2(t) == tuple(map(sum, zip(*(cr.weight_vector2(b) for b in factors))))


def test_tensor_acts_on_first_factor_when_phi_exceeds_eps():
    one, two = col(C3, "1"), col(C3, "2")
    assert cr.f(1, cr.TensorElem((one, one))) == cr.TensorElem((two, one))
    # phi(b1) == eps(b2): f moves to b2, e stays on b1
    tie = cr.TensorElem((one, two))
    assert cr.f(1, tie) is None
    assert cr.e(1, tie) is None
    assert cr.e(1, cr.TensorElem((two, two))) == cr.TensorElem((two, one))


# -- semi-infinite KN tableaux ---------------------------------------------------------


def test_sikn_examples():
    one, bar_one = col(C2, "1"), col(C2, "-1")
    assert not cr.sikn_validate(cr.SiKNTableau(C2, 1, (one, bar_one), (0, 0)))
    assert cr.sikn_validate(cr.SiKNTableau(C2, 1, (bar_one, one), (0, 0)))
    assert cr.sikn_validate(cr.SiKNTableau(C2, 1, (one,), (5,)))
    for i in C3.index_set:
        cols = enumerate_qkn(C3, i)
        assert all(cr.sikn_validate(cr.SiKNTableau(C3, i, (x, y), (i, 0)))
                   for x in cols for y in cols)


def test_sikn_embedding():
    c = col(C3, "1,2")
    T = cr.SiKNTableau(C3, 2, (c,), (3,))
    assert cr.sikn_embed(T) == cr.TensorElem((cr.AffElem(c, 3),))
    bad = cr.SiKNTableau(C2, 1, (col(C2, "1"), col(C2, "-1")), (0, 0))
    with pytest.raises(WeylError):
        cr.sikn_embed(bad)


@pytest.mark.parametrize("d,i,width", [(C2, 1, 3), (C2, 2, 3), (B3, 1, 2), (D4, 1, 2)],
                         ids=["C2-1", "C2-2", "B3-1", "D4-1"])
def test_sikn_set_is_closed_under_operators(d, i, width):
    cols = enumerate_qkn(d, i)
    valid = [T for pair in product(cols, repeat=2) for cs in product(range(width), repeat=2)
             if cr.sikn_validate(T := cr.SiKNTableau(d, i, pair, cs))]
    assert valid
    for T in valid:
        x = cr.sikn_embed(T)
        assert cr.weight_vector2(x) == tuple(map(sum, zip(*(cr.weight_vector2(c)
                                                               for c in T.columns))))
        for j in cr.affine_indices(d):
            for op in (cr.f, cr.e):
                y = op(j, x)
                if y is not None:
                    assert cr.sikn_validate(cr.sikn_decode(y)), (str(T), op.__name__, j)


def test_paths_of_all_shapes_satisfy_axioms():
    for d, i in ((B4, 2), (D4, 2)):
        res = sweep_crystal(d, i)
        assert res.passed, res.failures[:5]
        assert len(enumerate_qls(d, i)) == len(enumerate_qkn(d, i))


def test_operator_strings():
    ops = cr.parse_ops("f1, f0,e2")
    assert ops == [("f", 1), ("f", 0), ("e", 2)]
    with pytest.raises(WeylError):
        cr.parse_ops("g1")
    c = col(C3, "1")
    assert cr.apply_ops(cr.parse_ops("f1,f2"), c) == col(C3, "3")
    assert cr.apply_ops(cr.parse_ops("e1"), c) is None

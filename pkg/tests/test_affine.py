from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sibruhat.affine import (
    AffineElement,
    LevelZeroWeight,
    act_level_zero,
    affine_reflection,
    finite,
    identity,
    in_WJ_af,
    parse_affine,
    project_pi_J,
    semi_infinite_length,
    simple_affine_reflection,
    translation,
    z_and_phi,
    z_and_phi_search,
)
from sibruhat.weyl import RootDatum, WeylError, dot, length

DATA = [RootDatum("A", 4), RootDatum("B", 3), RootDatum("C", 2), RootDatum("C", 3)]


def affine_elements(d, bound=1):
    coords = st.tuples(*[st.integers(-bound, bound)] * d.rank)
    return st.builds(AffineElement, st.sampled_from(d.elements()), coords)


@pytest.mark.parametrize("d", DATA, ids=str)
def test_j_adjustment_matches_box_search(d):
    I = d.index_set
    for r in range(1, len(I) + 1):
        for J in combinations(I, r):
            for xi in product((-1, 0, 1), repeat=len(I)):
                hits = z_and_phi_search(d, xi, J)
                assert hits == [z_and_phi(d, xi, J)], (J, xi)


def test_adjustment_filter_is_needed_for_uniqueness():
    d = RootDatum("C", 2)
    loose = [xi for xi in product((-1, 0, 1), repeat=2)
             if len(z_and_phi_search(d, xi, (1, 2), require_adjusted=False)) > 1]
    assert loose


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(DATA), st.data())
def test_group_law(d, data):
    x, y, z = (data.draw(affine_elements(d)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * x.inverse() == identity(d)
    assert x.inverse().inverse() == x


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(DATA), st.data())
def test_semi_infinite_length_formula(d, data):
    x = data.draw(affine_elements(d, 2))
    assert semi_infinite_length(x) == length(x.w) + dot(x.xi_vector, d.rho2())


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(DATA), st.data())
def test_projection_is_idempotent_and_lands_in_the_set(d, data):
    x = data.draw(affine_elements(d))
    J = tuple(j for j in d.index_set if data.draw(st.booleans()))
    p = project_pi_J(x, J)
    assert in_WJ_af(p, J)
    assert project_pi_J(p, J) == p
    outside = [k for k, i in enumerate(d.index_set) if i not in J]
    assert [p.xi[k] for k in outside] == [x.xi[k] for k in outside]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(DATA), st.data())
def test_projection_is_constant_on_right_cosets_of_the_parabolic(d, data):
    """Pi^J(x r_j) = Pi^J(x) for j in J."""
    x = data.draw(affine_elements(d))
    J = tuple(j for j in d.index_set if data.draw(st.booleans()))
    for j in J:
        assert project_pi_J(x * simple_affine_reflection(d, j), J) == project_pi_J(x, J)


def test_projection_with_empty_j_is_the_identity_map():
    d = RootDatum("C", 2)
    for w in d.elements():
        x = AffineElement(w, (1, -1))
        assert project_pi_J(x, ()) == x


@pytest.mark.parametrize("d", DATA, ids=str)
def test_affine_reflections_are_involutions(d):
    for r in d.positive_roots():
        for k in (-1, 0, 2):
            s = affine_reflection(d, r.vector, k)
            assert s * s == identity(d)
    for i in (0,) + d.index_set:
        s = simple_affine_reflection(d, i)
        assert s * s == identity(d)


def test_translations_commute_and_add():
    d = RootDatum("B", 3)
    a, b = translation(d, (1, 0, 2)), translation(d, (0, -1, 1))
    assert a * b == b * a == translation(d, (1, -1, 3))


def test_level_zero_action_on_delta():
    d = RootDatum("C", 2)
    lam = LevelZeroWeight((1, 0))
    moved = act_level_zero(translation(d, (1, 0)), lam)
    assert moved.m == (1, 0)
    assert moved.delta == -1
    assert act_level_zero(finite(d.identity()), lam) == lam


def test_parse_affine_round_trip():
    d = RootDatum("A", 6)
    x = parse_affine(d, "[5,6,4,2,1,3];[1,0,-1,1,2]")
    assert parse_affine(d, str(x)) == x
    with pytest.raises(WeylError):
        parse_affine(d, "[5,6,4,2,1,3]")
    with pytest.raises(WeylError):
        parse_affine(d, "[5,6,4,2,1,3];[1,0]")

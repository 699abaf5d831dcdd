from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sibruhat.weyl import (
    RootDatum,
    SignedPermutation,
    WeylError,
    enumerate_min_reps,
    is_min_rep,
    length,
    length_by_roots,
    min_coset_rep,
    parse_window,
    reflection,
)

SMALL = [RootDatum("A", 4), RootDatum("B", 3), RootDatum("C", 3), RootDatum("D", 4)]


def group_order(d):
    n = d.n
    return {"A": factorial(n), "B": 2**n * factorial(n), "C": 2**n * factorial(n),
            "D": 2 ** (n - 1) * factorial(n)}[d.family]


@pytest.mark.parametrize("d", SMALL, ids=str)
def test_group_order(d):
    assert len(d.elements()) == group_order(d)


@pytest.mark.parametrize("d", SMALL, ids=str)
def test_positive_root_count(d):
    n = d.n
    expected = {"A": n * (n - 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1)}[d.family]
    assert len(d.positive_roots()) == expected


@pytest.mark.parametrize("d", SMALL, ids=str)
def test_length_formula_matches_inversions_by_roots(d):
    for w in d.elements():
        assert length(w) == length_by_roots(w)


def test_type_a_length_is_inversion_count():
    d = RootDatum("A", 6)
    w = parse_window(d, "[5,6,4,2,1,3]")
    inversions = sum(1 for a, b in combinations(w.window, 2) if a > b)
    assert length(w) == inversions == 12


def test_inverse_composes_to_identity():
    d = RootDatum("A", 6)
    w = parse_window(d, "[5,6,4,2,1,3]")
    assert (w * w.inverse()).is_identity()


@pytest.mark.parametrize("d", SMALL, ids=str)
def test_longest_element_has_maximal_length(d):
    top = max(length(w) for w in d.elements())
    assert length(d.longest_element()) == top == len(d.positive_roots())


def test_min_coset_rep_example():
    d = RootDatum("A", 6)
    w = parse_window(d, "[5,6,4,2,1,3]")
    m = min_coset_rep(w, [1, 2, 4, 5])
    assert m.window == (4, 5, 6, 1, 2, 3)


@pytest.mark.parametrize("d", SMALL, ids=str)
def test_min_coset_rep_is_shortest_in_its_coset(d):
    J = d.index_set[:-1]
    gens = [d.simple_reflection(j) for j in J]
    for w in d.elements()[::7]:
        coset, frontier = {w}, [w]
        while frontier:
            frontier = [x * s for x in frontier for s in gens if x * s not in coset]
            coset.update(frontier)
        m = min_coset_rep(w, J)
        assert m in coset
        assert length(m) == min(length(x) for x in coset)
        assert is_min_rep(m, J)


@pytest.mark.parametrize("d", SMALL, ids=str)
def test_min_reps_count_is_index(d):
    from sibruhat.weyl import parabolic_complement

    for i in d.index_set:
        J = parabolic_complement(d, i)
        reps = {min_coset_rep(w, J).window for w in d.elements()}
        assert len(enumerate_min_reps(i, d)) == len(reps)


def test_bad_windows_are_rejected():
    with pytest.raises(WeylError):
        SignedPermutation(RootDatum("A", 3), (1, 1, 2))
    with pytest.raises(WeylError):
        SignedPermutation(RootDatum("A", 3), (1, -2, 3))
    with pytest.raises(WeylError):
        SignedPermutation(RootDatum("D", 4), (1, 2, 3, -4))
    with pytest.raises(WeylError):
        RootDatum("D", 3)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_reflection_is_an_involution_fixing_length_parity(d, data):
    w = data.draw(st.sampled_from(d.elements()))
    r = data.draw(st.sampled_from(d.positive_roots()))
    s = reflection(d, r)
    assert (s * s).is_identity()
    assert (length(w * s) - length(w)) % 2 == 1


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(1, 6)))
def test_type_a_windows_round_trip(p):
    d = RootDatum("A", 5)
    w = SignedPermutation(d, tuple(p))
    assert parse_window(d, str(w)) == w
    assert length(w) == sum(1 for a, b in combinations(p, 2) if a > b)


def test_all_permutations_present():
    d = RootDatum("A", 4)
    assert {w.window for w in d.elements()} == set(permutations(range(1, 5)))

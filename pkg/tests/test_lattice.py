from fractions import Fraction

import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from src.core.errors import DomainError
from src.core.lattice import (
    CENTER, LARGEST, SMALLEST, LpIndex, ScaleIndex, admissible_triplet_point, closure,
    comparable, diagonal_chain, horizontal_chain, involution, involution_closure, is_chain,
    join, leq, meet, one_round, quadrant, vertical_chain
)

coordinates = st.fractions(min_value=0, max_value=1, max_denominator=12)
lp_indices = st.builds(LpIndex, coordinates, coordinates)
scale_indices = st.builds(ScaleIndex, st.integers(min_value=-6, max_value=6))


def test_center_is_fixed_by_involution():
    assert involution(CENTER) == CENTER
    assert involution(ScaleIndex(0)) == ScaleIndex(0)


def test_l2_below_l1_plus_linf():
    l2 = LpIndex.from_exponents(2)
    assert leq(SMALLEST, l2)
    assert leq(l2, LARGEST)
    assert not leq(LARGEST, l2)


def test_meet_of_conjugate_diagonal_points_is_intersection():
    # L^q and L^q̄ for q = 4: meet is the point (1/q, 1/q̄), the space L^q ∩ L^q̄
    lq = LpIndex.from_exponents(4)
    lq_bar = LpIndex.from_exponents(Fraction(4, 3))
    m = meet(lq_bar, lq)
    assert m == LpIndex(Fraction(1, 4), Fraction(3, 4))
    assert m.describe() == "L^4 ∩ L^1.333"
    assert leq(m, lq) and leq(m, lq_bar)


def test_join_of_conjugate_points_is_sum():
    lq = LpIndex.from_exponents(4)
    j = join(lq, involution(lq))
    assert j == LpIndex(Fraction(3, 4), Fraction(1, 4))
    assert "+" in j.describe()


def test_render_unified_notation():
    assert LpIndex.from_exponents(2).render() == "L^2"
    assert LpIndex.from_exponents(1, 'inf').render() == "L^(1,∞)"


def test_exponent_below_one_rejected():
    with pytest.raises(DomainError):
        LpIndex.from_exponents(0.5)


def test_mixed_kinds_rejected():
    with pytest.raises(DomainError):
        meet(CENTER, ScaleIndex(1))


def test_scale_order_and_involution():
    assert leq(ScaleIndex(2), ScaleIndex(1))
    assert not leq(ScaleIndex(-1), ScaleIndex(0))
    assert meet(ScaleIndex(1), ScaleIndex(-2)) == ScaleIndex(1)
    assert join(ScaleIndex(1), ScaleIndex(-2)) == ScaleIndex(-2)
    assert involution(ScaleIndex(3)) == ScaleIndex(-3)


def test_quadrants():
    assert quadrant(CENTER) == "center"
    assert quadrant(LpIndex.from_exponents(4)) == "diagonal"
    assert quadrant(LpIndex.from_exponents(4, Fraction(4, 3))) == "anti-diagonal"
    assert quadrant(LpIndex(Fraction(3, 4), Fraction(2, 3))) == "first"
    assert quadrant(LpIndex(Fraction(1, 4), Fraction(2, 3))) == "second"
    assert quadrant(LpIndex(Fraction(1, 4), Fraction(1, 3))) == "third"
    assert quadrant(LpIndex(Fraction(3, 4), Fraction(1, 3))) == "fourth"


def test_admissible_triplet_points_lie_in_second_quadrant():
    assert admissible_triplet_point(LpIndex.from_exponents(4, Fraction(3, 2)))
    assert admissible_triplet_point(LpIndex.from_exponents(2))
    assert not admissible_triplet_point(LpIndex.from_exponents(Fraction(3, 2), 4))
    assert not admissible_triplet_point(LpIndex.from_exponents('inf', 1))


def test_three_chains_are_total_orders():
    exponents = [1, Fraction(4, 3), 2, 4, 'inf']
    for chain in (diagonal_chain(exponents), horizontal_chain(exponents), vertical_chain(exponents)):
        assert is_chain(chain)
        assert all(leq(a, b) for a, b in zip(chain, chain[1:]))


def test_diagonal_chain_passes_through_center():
    chain = diagonal_chain([1, 2, 4])
    assert CENTER in chain
    assert chain[0] == SMALLEST and chain[-1] == LARGEST


def test_incomparable_points():
    a = LpIndex(Fraction(1, 4), Fraction(1, 4))
    b = LpIndex(Fraction(1, 2), Fraction(3, 4))
    assert not comparable(a, b)
    assert not is_chain([a, b])


def test_one_round_adds_meet_and_join():
    a = LpIndex(Fraction(1, 4), Fraction(1, 4))
    b = LpIndex(Fraction(1, 2), Fraction(3, 4))
    grown = one_round([a, b])
    assert meet(a, b) in grown and join(a, b) in grown


def test_involution_closure_pairs_points():
    points = involution_closure([LpIndex.from_exponents(4)])
    assert LpIndex.from_exponents(Fraction(4, 3)) in points


@seed(20240601)
@settings(max_examples=200, deadline=None)
@given(lp_indices, lp_indices)
def test_de_morgan(a, b):
    assert involution(meet(a, b)) == join(involution(a), involution(b))
    assert involution(join(a, b)) == meet(involution(a), involution(b))


@seed(20240601)
@settings(max_examples=200, deadline=None)
@given(lp_indices, lp_indices)
def test_involution_reverses_order(a, b):
    assert leq(a, b) == leq(involution(b), involution(a))


@seed(20240601)
@settings(max_examples=200, deadline=None)
@given(lp_indices, lp_indices, lp_indices)
def test_meet_is_greatest_lower_bound(a, b, c):
    m = meet(a, b)
    assert leq(m, a) and leq(m, b)
    if leq(c, a) and leq(c, b):
        assert leq(c, m)


@seed(20240601)
@settings(max_examples=100, deadline=None)
@given(scale_indices, scale_indices)
def test_scale_lattice_laws(a, b):
    assert involution(involution(a)) == a
    assert leq(meet(a, b), join(a, b))
    assert involution(meet(a, b)) == join(involution(a), involution(b))


@seed(20240601)
@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from([1, Fraction(6, 5), Fraction(3, 2), 2, 3, 6, 'inf']), min_size=1, max_size=5))
def test_closure_of_diagonal_chain_subset_adds_nothing(exponents):
    chain = set(diagonal_chain(exponents))
    assert closure(chain) == chain


def test_order_needs_left_and_above():
    l_inf, l_one = LpIndex(0, 0), LpIndex(1, 1)
    assert not leq(l_inf, l_one) and not leq(l_one, l_inf)
    assert leq(LpIndex(Fraction(1, 2), Fraction(1, 2)), LpIndex(1, 0))

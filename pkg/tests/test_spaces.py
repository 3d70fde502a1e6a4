from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from src.core.errors import DimensionError, DomainError
from src.core.lattice import CENTER, LARGEST, SMALLEST, LpIndex
from src.core.measure import FiniteMeasureSpace
from src.core.spaces import (
    INTERPOLATION_CONSTANT, Inductive, Lp, Projective, WeightedL2, containment_constant,
    dual_descriptor, dual_norm, finite_measure_constant, holder_bound_check, inductive_norm,
    inductive_split, l1_linf_threshold, norm, realize_lp_index
)

GRID_INDICES = [
    CENTER, SMALLEST, LARGEST,
    LpIndex.from_exponents(4, Fraction(4, 3)),
    LpIndex.from_exponents(Fraction(4, 3), 4),
    LpIndex.from_exponents(4, 2),
    LpIndex.from_exponents(2, Fraction(4, 3)),
    LpIndex.from_exponents(3),
]


def brute_force_inductive(a, b, v, combine='sum', steps=200):
    """Scan the phase-aligned splits s = t·|v| coordinatewise on a grid."""
    magnitude = np.abs(np.asarray(v, dtype=complex))
    grid = np.linspace(0.0, 1.0, steps + 1)
    best = np.inf
    for fractions in product(grid, repeat=len(magnitude)):
        s = np.array(fractions) * magnitude
        fa, fb = a.magnitude_norm(s), b.magnitude_norm(magnitude - s)
        best = min(best, fa + fb if combine == 'sum' else max(fa, fb))
    return best


def test_lp_norms_on_counting_measure(counting2):
    v = [3.0, -4.0]
    assert norm(Lp(counting2, 1), v) == pytest.approx(7.0)
    assert norm(Lp(counting2, 2), v) == pytest.approx(5.0)
    assert norm(Lp(counting2, 'inf'), v) == pytest.approx(4.0)


def test_weighted_l2_example(weighted2):
    # ‖(1, 1)‖ with m = (1, 1), μ = (1, 2) is √3; m = (1, 1/√2) gives √2
    desc = WeightedL2(weighted2, [1.0, 1.0 / np.sqrt(2.0)])
    assert norm(desc, [1.0, 1.0]) == pytest.approx(np.sqrt(2.0))


def test_weighted_l2_rejects_zero_weight(weighted2):
    with pytest.raises(DomainError):
        WeightedL2(weighted2, [1.0, 0.0])


def test_projective_linf_l1_example(counting2):
    desc = Projective(Lp(counting2, 'inf'), Lp(counting2, 1))
    assert norm(desc, [3.0, 1.0]) == pytest.approx(7.0)


def test_inductive_l1_linf_example_matches_threshold(counting2):
    value = inductive_norm(Lp(counting2, 1), Lp(counting2, 'inf'), [3.0, 1.0])
    assert value == pytest.approx(3.0, rel=1e-3)
    assert l1_linf_threshold(counting2, [3.0, 1.0]) == pytest.approx(3.0)


def test_dual_norm_of_l1_linf_intersection_is_exact_supremum(counting2):
    # the unit ball of ‖·‖_∞ + ‖·‖_1 at (3, 1) is supported at (1/2, 0)
    desc = Projective(Lp(counting2, 1), Lp(counting2, 'inf'))
    assert dual_norm(desc, [3.0, 1.0]) == pytest.approx(1.5, rel=2e-3)


def test_sum_and_max_flavours_are_equivalent(counting2):
    v = [3.0, 1.0]
    a, b = Lp(counting2, 1), Lp(counting2, 'inf')
    summed = inductive_norm(a, b, v, 'sum')
    maxed = inductive_norm(a, b, v, 'max')
    assert maxed <= summed * (1 + 1e-3)
    assert summed <= 2 * maxed * (1 + 1e-3)


def test_dual_descriptor_flips_flavour(counting3):
    desc = Projective(Lp(counting3, 1), Lp(counting3, 'inf'))
    dual = dual_descriptor(desc)
    assert isinstance(dual, Inductive)
    assert dual.combine == 'max'
    assert dual_descriptor(dual) == desc


def test_dual_norm_matches_dual_descriptor_on_grid(weighted4, rng):
    for index in GRID_INDICES:
        desc = realize_lp_index(weighted4, index)
        dual = dual_descriptor(desc)
        for _ in range(3):
            v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            exact = norm(dual, v)
            assert abs(dual_norm(desc, v) - exact) <= 0.02 * exact, index


def test_inductive_norm_matches_brute_force(rng):
    space = FiniteMeasureSpace(['1', '2'], [1.0, 0.5])
    a, b = Lp(space, Fraction(4, 3)), Lp(space, 4)
    for combine in ('sum', 'max'):
        for _ in range(3):
            v = rng.standard_normal(2)
            oracle = brute_force_inductive(a, b, v, combine)
            assert inductive_norm(a, b, v, combine) == pytest.approx(oracle, rel=0.01)


def test_threshold_oracle_agrees_with_minimizer(weighted4, rng):
    a, b = Lp(weighted4, 1), Lp(weighted4, 'inf')
    for _ in range(20):
        v = rng.standard_normal(4) * rng.exponential(1.0, 4)
        oracle = l1_linf_threshold(weighted4, v)
        assert inductive_norm(a, b, v) == pytest.approx(oracle, rel=5e-3)


def test_inductive_split_reassembles_v(weighted4, rng):
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    g, h, value, stats = inductive_split(Lp(weighted4, 1), Lp(weighted4, 'inf'), v)
    assert np.allclose(g + h, v)
    assert stats['converged']
    assert value >= stats['lower_bound'] - 1e-12


def test_realize_index_kinds(counting3):
    assert isinstance(realize_lp_index(counting3, CENTER), Lp)
    assert isinstance(realize_lp_index(counting3, SMALLEST), Projective)
    assert isinstance(realize_lp_index(counting3, LARGEST), Inductive)


def test_realized_involution_is_dual(counting3):
    for index in GRID_INDICES:
        desc = realize_lp_index(counting3, index)
        assert realize_lp_index(counting3, index.involution()) == dual_descriptor(desc)


def test_holder_bound(weighted4, rng):
    for index in (CENTER, LpIndex.from_exponents(3), LARGEST):
        desc = realize_lp_index(weighted4, index)
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert holder_bound_check(desc, v, w)


def test_finite_measure_containment_constant(weighted4, rng):
    constant = finite_measure_constant(weighted4, 1, 2)
    assert constant == pytest.approx(np.sqrt(5.0))
    for _ in range(20):
        v = rng.standard_normal(4)
        assert norm(Lp(weighted4, 1), v) <= constant * norm(Lp(weighted4, 2), v) * (1 + 1e-12)


def test_finite_measure_constant_needs_ordered_exponents(weighted4):
    with pytest.raises(DomainError):
        finite_measure_constant(weighted4, 2, 1)


def test_containment_constant_for_comparable_indices(counting3):
    assert containment_constant(counting3, SMALLEST, CENTER) == INTERPOLATION_CONSTANT
    a = LpIndex(Fraction(1, 4), Fraction(1, 4))
    b = LpIndex(Fraction(1, 2), Fraction(3, 4))
    assert containment_constant(counting3, a, b) is None


def test_mismatched_spaces_rejected(counting2, counting3):
    with pytest.raises(DimensionError):
        Projective(Lp(counting2, 1), Lp(counting3, 1))
    with pytest.raises(DimensionError):
        norm(Lp(counting2, 2), [1.0, 2.0, 3.0])

import numpy as np
import pytest

from src.core.errors import DimensionError, DomainError, NotInvertibleError
from src.core.frames import LOWER, UPPER, check_reproducing_pair, make_generator, resolution_operator
from src.core.lattice import ScaleIndex
from src.core.scales import (
    SCALE_PRESETS, DiscreteRKHS, HilbertScale, kernel_preset, multiplication_law,
    range_certificates, rkhs_sample, rkhs_weight_pair, scale_law, scale_preset, scale_space,
    triplet
)
from src.core.spaces import norm

from conftest import random_complex


def test_triplet_norms_are_ordered(rng):
    scale = scale_preset('scale:diag-n', 8)
    top, center, bottom = triplet(scale, 2)
    for _ in range(10):
        v = random_complex(rng, 8)
        assert norm(bottom, v) <= norm(center, v) <= norm(top, v)


def test_triplet_needs_positive_index():
    with pytest.raises(DomainError):
        triplet(scale_preset('scale:diag-n', 4), 0)


def test_scale_space_weights():
    scale = HilbertScale([1.0, 2.0, 4.0])
    assert norm(scale_space(scale, 1), [0.0, 0.0, 1.0]) == pytest.approx(4.0)
    assert norm(scale_space(scale, -2), [0.0, 0.0, 1.0]) == pytest.approx(1 / 16)


def test_scale_index_out_of_range():
    scale = HilbertScale([1.0, 2.0], max_index=2)
    with pytest.raises(DomainError):
        scale.scale_space(3)


def test_generator_below_one_rejected():
    with pytest.raises(DomainError):
        HilbertScale([0.5, 2.0])


def test_presets_produce_valid_generators():
    for name in SCALE_PRESETS:
        a = scale_law(name)(6)
        assert len(a) == 6 and np.all(a >= 1)
    with pytest.raises(DomainError):
        scale_law('scale:unknown')


def test_scale_family_indices():
    family = scale_preset('scale:diag-n', 6).family(ks=(1, 2))
    assert set(family.indices) == {ScaleIndex(k) for k in (-2, -1, 0, 1, 2)}


def test_identity_kernel_pair_is_dual():
    rkhs = rkhs_sample(8)
    for n in (0, 1, 2):
        psi, phi = rkhs_weight_pair(rkhs, n)
        assert np.allclose(resolution_operator(psi, phi), np.eye(8), atol=1e-12)


def test_negative_power_rejected():
    with pytest.raises(DomainError):
        rkhs_weight_pair(rkhs_sample(4), -1)


def test_gaussian_pair_reproduces_with_kernel_spectrum():
    rkhs = rkhs_sample(8, 'rkhs:gaussian(1.0)')
    psi, phi = rkhs_weight_pair(rkhs, 1)
    report = check_reproducing_pair(psi, phi)
    assert report.invertible
    S = resolution_operator(psi, phi)
    # S = L*L shares its spectrum with K = LL*
    assert np.allclose(np.linalg.eigvalsh(S), np.linalg.eigvalsh(rkhs.kernel), atol=1e-10)


def test_multiplication_law(rng):
    for preset in ('rkhs:identity', 'rkhs:gaussian(1.0)'):
        rkhs = rkhs_sample(6, preset)
        xi = random_complex(rng, 6)
        values, predicted = multiplication_law(rkhs, 2, xi)
        assert np.allclose(values, predicted)
    values, _ = multiplication_law(rkhs_sample(6), 2, xi)
    assert np.allclose(values, xi * (np.arange(1, 7) + 1.0) ** 2)


def test_range_certificates_are_isometric_for_identity_kernel():
    certificates = range_certificates(rkhs_sample(6), 1, sweep_sizes=[4, 16, 64])
    assert certificates['psi'].constant == pytest.approx(1.0)
    assert certificates['phi'].constant == pytest.approx(1.0)
    assert certificates['psi'].exact and certificates['phi'].exact
    assert certificates['sweep'].psi_class == UPPER
    assert certificates['sweep'].phi_class == LOWER


def test_registered_rkhs_generator():
    psi, phi = make_generator('rkhs', {'power': 1})(5)
    assert psi.size == 5 and phi.dim == 5


def test_kernel_presets():
    points = np.array([0.0, 1.0])
    assert np.allclose(kernel_preset('rkhs:identity', points), np.eye(2))
    wide = kernel_preset('rkhs:gaussian(2.0)', points)
    assert wide[0, 1].real == pytest.approx(np.exp(-1 / 8))
    with pytest.raises(DomainError):
        kernel_preset('rkhs:laplace', points)


def test_rkhs_weight_must_exceed_one():
    with pytest.raises(DomainError):
        DiscreteRKHS([1.0, 2.0], np.eye(2), [1.0, 3.0])


def test_rkhs_kernel_must_be_positive():
    with pytest.raises(DomainError):
        DiscreteRKHS([1.0, 2.0], [[1.0, 2.0], [2.0, 1.0]], [2.0, 3.0])


def test_rkhs_kernel_shape_checked():
    with pytest.raises(DimensionError):
        DiscreteRKHS([1.0, 2.0], np.eye(3), [2.0, 3.0])


def test_singular_kernel_is_not_invertible():
    rkhs = DiscreteRKHS([1.0, 2.0], np.ones((2, 2)), [2.0, 3.0])
    with pytest.raises(NotInvertibleError):
        rkhs_weight_pair(rkhs, 1)


def test_rkhs_inner_product_matches_isometric_coordinates(rng):
    rkhs = rkhs_sample(5, 'rkhs:gaussian(1.0)')
    c, d = random_complex(rng, 5), random_complex(rng, 5)
    assert rkhs.inner(c, d) == pytest.approx(np.vdot(rkhs.coordinates(d), rkhs.coordinates(c)))

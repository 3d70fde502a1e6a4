"""Hilbert scales from diagonal generators, and a discrete RKHS weight pair"""
import re

import numpy as np

from ..config import (
    DEFAULT_SEED, GAUSSIAN_WIDTH, IDENTITY_TOL, NORM_PROBES, RKHS_PSD_TOL, SCALE_MAX_INDEX
)
from .errors import DimensionError, DomainError, NotInvertibleError, PreconditionError
from .frames import (
    VectorFamily, range_containment, register_generator, semiframe_sweep
)
from .measure import FiniteMeasureSpace, field_values
from .operators import scale_family
from .spaces import WeightedL2, norm


class HilbertScale:
    """
    H_k = ℓ²_{a^k} for a positive diagonal generator a_n ≥ 1, k ∈ [-K, K].
    ‖v‖_k = ‖A^k v‖ is nondecreasing in k.
    """

    def __init__(self, generator, max_index: int = SCALE_MAX_INDEX,
                 space: FiniteMeasureSpace | None = None, name: str = ''):
        a = np.asarray(generator, dtype=float).ravel()
        if np.any(~np.isfinite(a)) or np.any(a < 1):
            raise DomainError("scale generator must satisfy a_n ≥ 1")
        space = FiniteMeasureSpace.counting(len(a), start=1) if space is None else space
        if space.size != len(a):
            raise DimensionError(f"generator of length {len(a)} on a space of {space.size} points")
        self.a = a
        self.max_index = max_index
        self.space = space
        self.name = name

    @property
    def size(self) -> int:
        return len(self.a)

    def scale_space(self, k: int) -> WeightedL2:
        if abs(k) > self.max_index:
            raise DomainError(f"scale index {k} outside [-{self.max_index}, {self.max_index}]")
        return WeightedL2(self.space, self.a ** k)

    def family(self, ks=(1,), law=None, sweep_sizes=None):
        """IndexedSpaceFamily {H_k}; law(n) regenerates a at other truncation sizes."""
        law = law or (lambda n: self.a[:n])
        return scale_family(law, ks, self.size, sweep_sizes, name=self.name or 'scale')

    def __repr__(self):
        return f"HilbertScale({self.name or 'a'}, N={self.size}, K={self.max_index})"


def scale_space(scale: HilbertScale, k: int) -> WeightedL2:
    """H_k with weights a_n^k; its dual descriptor is H_{-k}."""
    return scale.scale_space(k)


def triplet(scale: HilbertScale, k: int, probes: int = 16, seed: int = DEFAULT_SEED):
    """
    (H_k, H_0, H_{-k}) with ‖v‖_{-k} ≤ ‖v‖_0 ≤ ‖v‖_k checked on random probes.

    Raises:
        DomainError: k < 1
    """
    if k < 1:
        raise DomainError("a triplet needs k ≥ 1")
    top, center, bottom = scale.scale_space(k), scale.scale_space(0), scale.scale_space(-k)
    rng = np.random.default_rng(seed)
    for _ in range(probes):
        v = rng.standard_normal(scale.size) + 1j * rng.standard_normal(scale.size)
        n_bottom, n_center, n_top = norm(bottom, v), norm(center, v), norm(top, v)
        if not (n_bottom <= n_center * (1 + IDENTITY_TOL) and n_center <= n_top * (1 + IDENTITY_TOL)):
            raise PreconditionError("triplet norm inequalities failed")
    return top, center, bottom


# === presets ===

SCALE_PRESETS = {
    'scale:diag-n': lambda n: np.arange(1, n + 1, dtype=float),
    'scale:sobolev': lambda n: np.sqrt(1.0 + np.arange(n, dtype=float) ** 2),
    'scale:oscillator': lambda n: 2.0 * np.arange(n, dtype=float) + 1.0,
}


def scale_law(name: str):
    if name not in SCALE_PRESETS:
        raise DomainError(f"unknown scale preset {name!r}; known: {', '.join(SCALE_PRESETS)}")
    return SCALE_PRESETS[name]


def scale_preset(name: str, n: int, max_index: int = SCALE_MAX_INDEX) -> HilbertScale:
    return HilbertScale(scale_law(name)(n), max_index, name=name)


# === discrete RKHS ===

class DiscreteRKHS:
    """
    Span of the kernel functions k_{x_1..x_N}. Coefficients c carry the inner
    product ⟨c, d⟩_K = d* K c; with K = L L*, c -> L* c is an isometry onto ℂ^N,
    so kernel functions become the vectors k_{x_i} = L* e_i.
    """

    def __init__(self, points, kernel, m, measure: FiniteMeasureSpace | None = None):
        points = np.asarray(points, dtype=float).ravel()
        K = np.asarray(kernel, dtype=complex)
        n = len(points)
        if K.shape != (n, n):
            raise DimensionError(f"kernel of shape {K.shape} for {n} points")
        if not np.allclose(K, K.conj().T, atol=RKHS_PSD_TOL):
            raise DomainError("kernel matrix must be Hermitian")
        scale = max(1.0, float(np.max(np.abs(K))))
        if np.linalg.eigvalsh((K + K.conj().T) / 2)[0] < -RKHS_PSD_TOL * scale:
            raise DomainError("kernel matrix must be positive semidefinite")
        m = np.asarray(m, dtype=float).ravel()
        if len(m) != n:
            raise DimensionError(f"{len(m)} weight values for {n} points")
        if np.any(m <= 1):
            raise DomainError("RKHS weight must satisfy m(x) > 1")
        self.points = points
        self.kernel = K
        self.m = m
        self.measure = FiniteMeasureSpace.counting(n) if measure is None else measure
        if self.measure.size != n:
            raise DimensionError("measure and sample points differ in size")
        self._factor = None

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def factor(self) -> np.ndarray:
        """Cholesky factor L of K."""
        if self._factor is None:
            try:
                self._factor = np.linalg.cholesky(self.kernel)
            except np.linalg.LinAlgError:
                smallest = float(np.linalg.eigvalsh(self.kernel)[0])
                raise NotInvertibleError("kernel matrix is singular", max(smallest, 0.0)) from None
        return self._factor

    def kernel_vectors(self) -> np.ndarray:
        """Row i is k_{x_i} in isometric coordinates."""
        return np.conj(self.factor)

    def coordinates(self, coefficients) -> np.ndarray:
        return self.factor.conj().T @ np.asarray(coefficients, dtype=complex)

    def evaluate(self, u) -> np.ndarray:
        """Point values f(x_j) = ⟨f, k_{x_j}⟩ of a vector in isometric coordinates."""
        return self.factor @ np.asarray(u, dtype=complex)

    def inner(self, c, d) -> complex:
        """⟨f_c, f_d⟩_K for coefficient vectors."""
        c, d = np.asarray(c, dtype=complex), np.asarray(d, dtype=complex)
        return complex(np.conj(d) @ self.kernel @ c)


def identity_kernel(points) -> np.ndarray:
    return np.eye(len(np.atleast_1d(points)), dtype=complex)


def gaussian_kernel(points, width: float = GAUSSIAN_WIDTH) -> np.ndarray:
    """K(x, y) = exp(-|x - y|² / (2σ²))"""
    x = np.asarray(points, dtype=float).ravel()
    squared = (x[:, None] - x[None, :]) ** 2
    return np.exp(-0.5 * squared / width ** 2).astype(complex)


_GAUSSIAN = re.compile(r'^rkhs:gaussian(?:\(\s*(?P<width>\d+(?:\.\d+)?)\s*\))?$')


def kernel_preset(name: str, points) -> np.ndarray:
    """'rkhs:identity' or 'rkhs:gaussian(σ)' over the given points."""
    if name == 'rkhs:identity':
        return identity_kernel(points)
    match = _GAUSSIAN.match(name)
    if match:
        width = float(match.group('width')) if match.group('width') else GAUSSIAN_WIDTH
        return gaussian_kernel(points, width)
    raise DomainError(f"unknown kernel preset {name!r}")


def rkhs_weight_pair(rkhs: DiscreteRKHS, n: int) -> tuple[VectorFamily, VectorFamily]:
    """
    ψ_x = m(x)^{-n} k_x and φ_x = m(x)^n k_x. The weights cancel in S_{ψ,φ},
    which is the frame operator of {k_x}.

    Raises:
        NotInvertibleError: singular kernel matrix
    """
    if n < 0:
        raise DomainError("weight power n must be nonnegative")
    vectors = rkhs.kernel_vectors()
    weights = rkhs.m ** n
    psi = VectorFamily(rkhs.measure, vectors / weights[:, None], name='ψ')
    phi = VectorFamily(rkhs.measure, vectors * weights[:, None], name='φ')
    return psi, phi


def multiplication_law(rkhs: DiscreteRKHS, n: int, xi) -> tuple[np.ndarray, np.ndarray]:
    """
    Point values of T_φ ξ next to their prediction K (ξ m^n μ); the two agree
    and reduce to ξ m^n for the identity kernel with counting measure.
    """
    _, phi = rkhs_weight_pair(rkhs, n)
    xi = field_values(rkhs.measure, xi)
    t_phi = phi.members.T @ (xi * rkhs.measure.weights)
    values = rkhs.evaluate(t_phi)
    predicted = rkhs.kernel @ (xi * rkhs.m ** n * rkhs.measure.weights)
    return values, predicted


def range_certificates(rkhs: DiscreteRKHS, n: int, sweep_sizes=None, preset: str | None = None,
                       trials: int = NORM_PROBES, seed: int = DEFAULT_SEED) -> dict:
    """
    Continuity constants of C_ψ into H_n = ℓ²_{m^n} and of C_φ into H_{-n},
    plus, when sweep_sizes is given, the semi-frame trend of the pair on
    growing point sets x = 1..N with m(x) = x + 1.
    """
    psi, phi = rkhs_weight_pair(rkhs, n)
    h_n = WeightedL2(rkhs.measure, rkhs.m ** n)
    cert_psi = range_containment(psi, h_n, trials, seed)
    cert_phi = range_containment(phi, h_n.dual(), trials, seed + 1)
    result = {'psi': cert_psi, 'phi': cert_phi, 'sweep': None}
    if sweep_sizes:
        result['sweep'] = semiframe_sweep(rkhs_generator(n, preset or 'rkhs:identity'), sweep_sizes)
    return result


def rkhs_sample(size: int, preset: str = 'rkhs:identity', power_law=None) -> DiscreteRKHS:
    """Points x = 1..size with m(x) = x + 1 unless a weight law is given."""
    points = np.arange(1, size + 1, dtype=float)
    m = points + 1.0 if power_law is None else np.asarray(power_law(points), dtype=float)
    return DiscreteRKHS(points, kernel_preset(preset, points), m)


def rkhs_generator(n: int, preset: str = 'rkhs:identity'):
    def generate(size: int):
        return rkhs_weight_pair(rkhs_sample(size, preset), n)
    return generate


register_generator('rkhs', lambda params: rkhs_generator(int(params.get('power', 1)),
                                                         params.get('kernel', 'rkhs:identity')))

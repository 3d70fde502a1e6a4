"""Vector families, frame operators and reproducing pairs.

A VectorFamily is the finite stand-in for a weakly measurable map x -> ψ_x
into ℂ^d: row x of `members` is ψ_x. The central Hilbert space uses
⟨f, g⟩ = Σ_k f_k conj(g_k).
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import re

import numpy as np

from ..config import (
    BOUND_TOL, DECAY_RATES, DEFAULT_SEED, GL_RELATIVE_TOL, GROWTH_FACTOR, NORM_PROBES
)
from .errors import DimensionError, DomainError, NotInvertibleError, PreconditionError
from .measure import FiniteMeasureSpace, ScalarField, field_values
from .operators import operator_norm_certificate
from .spaces import Lp, SpaceDescriptor, dual_descriptor


class VectorFamily:
    """N members ψ_x ∈ ℂ^d indexed by the points of a measure space."""

    def __init__(self, space: FiniteMeasureSpace, members, bound: float | None = None, name: str = ''):
        members = np.array(members, dtype=complex)
        if members.ndim != 2:
            raise DimensionError("members must be an N×d array")
        if members.shape[0] != space.size:
            raise DimensionError(f"{members.shape[0]} members on a space of {space.size} points")
        if bound is not None and self._max_member_norm(members) > bound + BOUND_TOL:
            raise DomainError(f"members exceed the claimed uniform bound {bound}")
        members.flags.writeable = False
        self.space = space
        self.members = members
        self.bound = bound
        self.name = name

    @staticmethod
    def _max_member_norm(members) -> float:
        return float(np.max(np.linalg.norm(members, axis=1))) if members.size else 0.0

    @property
    def size(self) -> int:
        return self.members.shape[0]

    @property
    def dim(self) -> int:
        return self.members.shape[1]

    @property
    def is_real(self) -> bool:
        return not np.any(self.members.imag)

    def uniform_bound(self) -> float:
        """sup_x ‖ψ_x‖."""
        return self._max_member_norm(self.members)

    def scaled(self, alpha: complex) -> "VectorFamily":
        return VectorFamily(self.space, alpha * self.members, name=self.name)

    def __repr__(self):
        return f"VectorFamily({self.name or 'ψ'}, N={self.size}, d={self.dim})"


def _vector(f, d: int) -> np.ndarray:
    f = np.asarray(f, dtype=complex).ravel()
    if len(f) != d:
        raise DimensionError(f"vector of length {len(f)} in ℂ^{d}")
    return f


def inner(f, g) -> complex:
    """⟨f, g⟩ in the central Hilbert space."""
    return complex(np.vdot(g, f))


def analysis_matrix(family: VectorFamily) -> np.ndarray:
    """Matrix of C_ψ: f -> (⟨f, ψ_x⟩)_x."""
    return np.conj(family.members)


def synthesis_matrix(family: VectorFamily) -> np.ndarray:
    """Matrix of C_ψ*: ξ -> Σ_x ξ(x) ψ_x μ_x (d×N)."""
    return family.members.T * family.space.weights[None, :]


def analysis(family: VectorFamily, f) -> ScalarField:
    """(C_ψ f)(x) = ⟨f, ψ_x⟩"""
    return ScalarField(family.space, analysis_matrix(family) @ _vector(f, family.dim))


def synthesis(family: VectorFamily, xi) -> np.ndarray:
    """C_ψ* ξ = Σ_x ξ(x) ψ_x μ_x"""
    return synthesis_matrix(family) @ field_values(family.space, xi)


def frame_operator(family: VectorFamily) -> np.ndarray:
    """S = C_ψ* C_ψ"""
    return synthesis_matrix(family) @ analysis_matrix(family)


@dataclass
class FrameBounds:
    lower: float
    upper: float
    lower_witness: np.ndarray = field(repr=False, default=None)
    upper_witness: np.ndarray = field(repr=False, default=None)

    def as_tuple(self) -> tuple[float, float]:
        return self.lower, self.upper


def frame_bounds(family: VectorFamily) -> FrameBounds:
    """Tightest m, M with m‖f‖² ≤ Σ |⟨f, ψ_x⟩|² μ_x ≤ M‖f‖², with eigenvector witnesses."""
    S = frame_operator(family)
    S = (S + S.conj().T) / 2
    eigenvalues, eigenvectors = np.linalg.eigh(S)
    lower = max(float(eigenvalues[0]), 0.0)
    upper = max(float(eigenvalues[-1]), 0.0)
    return FrameBounds(lower, upper, eigenvectors[:, 0], eigenvectors[:, -1])


def _check_compatible(psi: VectorFamily, phi: VectorFamily):
    if psi.space != phi.space:
        raise DimensionError("families live on different measure spaces")
    if psi.dim != phi.dim:
        raise DimensionError(f"families in ℂ^{psi.dim} and ℂ^{phi.dim}")


def resolution_operator(psi: VectorFamily, phi: VectorFamily) -> np.ndarray:
    """S_{ψ,φ} = C_φ* C_ψ: f -> Σ_x ⟨f, ψ_x⟩ φ_x μ_x"""
    _check_compatible(psi, phi)
    return synthesis_matrix(phi) @ analysis_matrix(psi)


# === reproducing pairs ===

FRAME = 'frame'
UPPER = 'upper-semi-frame-tendency'
LOWER = 'lower-semi-frame-tendency'
NEITHER = 'neither'


def classify_single(bounds: FrameBounds, tol: float = GL_RELATIVE_TOL) -> str:
    """At one size a family is a frame or, when not total, neither."""
    if bounds.upper > 0 and bounds.lower > tol * bounds.upper:
        return FRAME
    return NEITHER


@dataclass
class PairReport:
    resolution: np.ndarray = field(repr=False)
    norm: float
    sigma_min: float
    condition: float
    gl_tolerance: float
    invertible: bool
    dual_residual: float | None
    psi_bounds: FrameBounds
    phi_bounds: FrameBounds
    psi_class: str
    phi_class: str
    sweep: "SweepResult | None" = field(default=None, repr=False)

    def identity_residual(self) -> float:
        """‖S_{ψ,φ} - I‖, how far the pair is from being dual."""
        S = self.resolution
        return float(np.linalg.norm(S - np.eye(S.shape[0]), 2))


def check_reproducing_pair(psi: VectorFamily, phi: VectorFamily,
                           gl_tolerance: float | None = None, sweep=None) -> PairReport:
    """
    Boundedness constant ‖S‖, GL membership of S_{ψ,φ} and the canonical dual
    residual. gl_tolerance defaults to GL_RELATIVE_TOL·‖S‖. Sweep evidence,
    when given, overrides the single-size classification.
    """
    S = resolution_operator(psi, phi)
    singular = np.linalg.svd(S, compute_uv=False)
    s_max = float(singular[0]) if singular.size else 0.0
    s_min = float(singular[-1]) if singular.size else 0.0
    tol = GL_RELATIVE_TOL * s_max if gl_tolerance is None else gl_tolerance
    invertible = s_max > 0 and s_min > tol
    condition = s_max / s_min if s_min > 0 else np.inf

    residual = None
    if invertible:
        dual = canonical_dual(psi, phi)
        S_dual = resolution_operator(psi, dual)
        residual = float(np.linalg.norm(S_dual - np.eye(psi.dim), 2))

    psi_bounds, phi_bounds = frame_bounds(psi), frame_bounds(phi)
    psi_class, phi_class = classify_single(psi_bounds), classify_single(phi_bounds)
    if sweep is not None:
        psi_class, phi_class = sweep.psi_class, sweep.phi_class

    return PairReport(S, s_max, s_min, condition, tol, invertible, residual,
                      psi_bounds, phi_bounds, psi_class, phi_class, sweep)


def canonical_dual(psi: VectorFamily, phi: VectorFamily,
                   gl_tolerance: float | None = None) -> VectorFamily:
    """φ'_x = S_{ψ,φ}⁻¹ φ_x, so that S_{ψ,φ'} = I."""
    S = resolution_operator(psi, phi)
    singular = np.linalg.svd(S, compute_uv=False)
    tol = GL_RELATIVE_TOL * singular[0] if gl_tolerance is None else gl_tolerance
    if singular[0] == 0 or singular[-1] <= tol:
        raise NotInvertibleError("S_{ψ,φ} is not invertible", float(singular[-1]))
    members = np.linalg.solve(S, phi.members.T).T
    return VectorFamily(phi.space, members, name=f"S⁻¹{phi.name or 'φ'}")


# === constructions ===

def orthonormal_basis(d: int, space: FiniteMeasureSpace | None = None) -> VectorFamily:
    """Standard basis of ℂ^d on counting measure over 1..d."""
    space = FiniteMeasureSpace.counting(d, start=1) if space is None else space
    return VectorFamily(space, np.eye(d, dtype=complex), bound=1.0, name='θ')


def fourier_family(n: int) -> VectorFamily:
    """ψ_x = n^{-1/2} (e^{2πi xk/n})_k, a Parseval family on counting measure."""
    x = np.arange(n)
    members = np.exp(2j * np.pi * np.outer(x, x) / n) / np.sqrt(n)
    return VectorFamily(FiniteMeasureSpace.counting(n), members,
                        bound=1.0 + BOUND_TOL, name='ψ_fourier')


def weighted_pair(m, theta: VectorFamily, tol: float = GL_RELATIVE_TOL) -> tuple[VectorFamily, VectorFamily]:
    """ψ_n = m_n θ_n and φ_n = θ_n / conj(m_n)."""
    m = np.asarray(m, dtype=complex).ravel()
    if len(m) != theta.size:
        raise DimensionError(f"{len(m)} weights for {theta.size} members")
    if np.any(m == 0):
        raise DomainError("weights of a weighted pair must be nonzero")
    bounds = frame_bounds(theta)
    if not bounds.lower > tol * bounds.upper:
        raise PreconditionError("θ must be a frame (positive lower frame bound)")
    psi = VectorFamily(theta.space, m[:, None] * theta.members, name='ψ')
    phi = VectorFamily(theta.space, theta.members / np.conj(m)[:, None], name='φ')
    return psi, phi


def minmax_pair(theta1: VectorFamily, theta2: VectorFamily) -> tuple[VectorFamily, VectorFamily]:
    """ψ = θ¹ ∧ θ², φ = θ¹ ∨ θ² componentwise; real families only."""
    _check_compatible(theta1, theta2)
    if not (theta1.is_real and theta2.is_real):
        raise DomainError("min/max pairs are defined for real-valued families only")
    a, b = theta1.members.real, theta2.members.real
    psi = VectorFamily(theta1.space, np.minimum(a, b), name='θ¹∧θ²')
    phi = VectorFamily(theta1.space, np.maximum(a, b), name='θ¹∨θ²')
    return psi, phi


_LAW = re.compile(r'^\s*(?:(?P<one>1)|(?P<inv>1\s*/\s*)?n(?:\s*\^\s*(?P<exp>-?\d+(?:\.\d+)?))?)\s*$')


def parse_weight_law(law: str):
    """'1', 'n', '1/n', 'n^s', '1/n^s' -> function n -> weights m_1..m_n."""
    match = _LAW.match(str(law))
    if not match:
        raise DomainError(f"unknown weight law {law!r}")
    if match.group('one'):
        return lambda n: np.ones(n)
    exponent = float(match.group('exp')) if match.group('exp') else 1.0
    if match.group('inv'):
        exponent = -exponent
    return lambda n: np.arange(1, n + 1, dtype=float) ** exponent


def onb_generator(n: int):
    theta = orthonormal_basis(n)
    return theta, theta


def weighted_generator(law: str):
    weights = parse_weight_law(law)

    def generate(n: int):
        return weighted_pair(weights(n), orthonormal_basis(n))

    return generate


def fourier_generator(n: int):
    family = fourier_family(n)
    return family, family


PAIR_GENERATORS = {
    'onb': lambda params: onb_generator,
    'weighted': lambda params: weighted_generator(params.get('weights', '1')),
    'fourier': lambda params: fourier_generator,
}


def make_generator(key: str, params: dict | None = None):
    """Sweep generator by string key ('onb', 'weighted', 'fourier', plus registered ones)."""
    params = params or {}
    if key not in PAIR_GENERATORS:
        raise DomainError(f"unknown sweep generator {key!r}; known: {', '.join(sorted(PAIR_GENERATORS))}")
    return PAIR_GENERATORS[key](params)


def register_generator(key: str, factory):
    PAIR_GENERATORS[key] = factory


# === truncation sweeps ===

@dataclass
class SweepRow:
    n: int
    psi_bounds: tuple[float, float]
    phi_bounds: tuple[float, float]
    identity_residual: float
    sigma_min: float
    phi_probe_energy: list


@dataclass
class SweepResult:
    rows: list
    psi_class: str
    phi_class: str
    domain_fraction: float
    decay_rates: tuple


def _non_increasing(values, slack=1e-9) -> bool:
    return all(b <= a * (1 + slack) + slack for a, b in zip(values, values[1:]))


def _non_decreasing(values, slack=1e-9) -> bool:
    return all(b >= a * (1 - slack) - slack for a, b in zip(values, values[1:]))


def classify_trajectory(lowers, uppers, growth: float = GROWTH_FACTOR) -> str:
    """
    Upper tendency: M bounded while m decays monotonically. Lower tendency:
    m bounded away from 0 while M grows monotonically. Frame: both bounded.
    """
    upper_bounded = uppers[-1] <= growth * uppers[0]
    lower_bounded = lowers[-1] * growth >= lowers[0] and lowers[-1] > 0
    if upper_bounded and lower_bounded:
        return FRAME
    if upper_bounded and _non_increasing(lowers) and lowers[-1] * growth < lowers[0]:
        return UPPER
    if lower_bounded and _non_decreasing(uppers) and uppers[-1] > growth * uppers[0]:
        return LOWER
    return NEITHER


def _probe(dim: int, rate: float) -> np.ndarray:
    return np.arange(1, dim + 1, dtype=float) ** (-rate)


def semiframe_sweep(generator, sizes, decay_rates=DECAY_RATES, jobs: int = 1) -> SweepResult:
    """
    Frame bounds of (Ψ_N, Φ_N) along a truncation sweep, the semi-frame
    classification of each family, and the fraction of decaying probes
    f = (n^{-s}) whose analysis energy under Φ stays bounded (the share of
    D(C_φ) the probes see).
    """
    sizes = sorted(int(n) for n in sizes)

    def evaluate(n):
        psi, phi = generator(n)
        S = resolution_operator(psi, phi)
        singular = np.linalg.svd(S, compute_uv=False)
        energies = []
        for rate in decay_rates:
            coefficients = analysis(phi, _probe(phi.dim, rate)).values
            energies.append(float(np.sum(np.abs(coefficients) ** 2 * phi.space.weights)))
        return SweepRow(n, frame_bounds(psi).as_tuple(), frame_bounds(phi).as_tuple(),
                        float(np.linalg.norm(S - np.eye(S.shape[0]), 2)),
                        float(singular[-1]), energies)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(evaluate, sizes))
    else:
        rows = [evaluate(n) for n in sizes]

    psi_class = classify_trajectory([r.psi_bounds[0] for r in rows], [r.psi_bounds[1] for r in rows])
    phi_class = classify_trajectory([r.phi_bounds[0] for r in rows], [r.phi_bounds[1] for r in rows])

    bounded = 0
    for i in range(len(decay_rates)):
        first, last = rows[0].phi_probe_energy[i], rows[-1].phi_probe_energy[i]
        if last <= GROWTH_FACTOR * first:
            bounded += 1
    fraction = bounded / len(decay_rates) if decay_rates else 1.0
    return SweepResult(rows, psi_class, phi_class, fraction, tuple(decay_rates))


# === range containment ===

@dataclass
class RangeCertificate:
    target: str
    constant: float
    exact: bool
    method: str
    uniform_bound: float | None = None


def hilbert_descriptor(d: int) -> Lp:
    return Lp(FiniteMeasureSpace.counting(d), 2)


def range_containment(family: VectorFamily, desc: SpaceDescriptor,
                      trials: int = NORM_PROBES, seed: int = DEFAULT_SEED) -> RangeCertificate:
    """Continuity constant of C_ψ: ℂ^d -> V_desc, i.e. sup over ‖f‖ = 1 of norm(desc, C_ψ f)."""
    if desc.space != family.space:
        raise DimensionError("descriptor and family live on different measure spaces")
    constant, stats = operator_norm_certificate(
        analysis_matrix(family), hilbert_descriptor(family.dim), desc, probes=trials, seed=seed)
    uniform = family.uniform_bound() if isinstance(desc, Lp) and desc.inv_p == 0 else None
    return RangeCertificate(desc.describe(), constant, stats['exact'], stats['method'], uniform)


@dataclass
class PairCertificates:
    psi: RangeCertificate
    phi: RangeCertificate
    omega_bound: float
    resolution_norm: float
    holds: bool
    psi_family: VectorFamily | None = field(default=None, repr=False, compare=False)
    phi_family: VectorFamily | None = field(default=None, repr=False, compare=False)

    def issued_for(self, psi: VectorFamily, phi: VectorFamily) -> bool:
        """True when these certificates were computed for (psi, phi)."""
        return all(
            ours is not None and (ours is theirs or (
                ours.space == theirs.space and np.array_equal(ours.members, theirs.members)))
            for ours, theirs in ((self.psi_family, psi), (self.phi_family, phi)))


def pair_certificates(psi: VectorFamily, phi: VectorFamily, desc: SpaceDescriptor,
                      trials: int = NORM_PROBES, seed: int = DEFAULT_SEED,
                      rel_tol: float = 1e-9) -> PairCertificates:
    """
    C_ψ into V_p and C_φ into V_p̄; their product bounds |Ω_{ψ,φ}(f, g)| and
    hence ‖S_{ψ,φ}‖ by Hölder.
    """
    cert_psi = range_containment(psi, desc, trials, seed)
    cert_phi = range_containment(phi, dual_descriptor(desc), trials, seed + 1)
    bound = cert_psi.constant * cert_phi.constant
    s_norm = float(np.linalg.norm(resolution_operator(psi, phi), 2))
    exact = cert_psi.exact and cert_phi.exact
    slack = rel_tol if exact else max(rel_tol, 0.02)
    holds = s_norm <= bound * (1 + slack) + rel_tol
    return PairCertificates(cert_psi, cert_phi, bound, s_norm, holds, psi, phi)

"""The spaces V_φ = 𝒱_φ / Ker T_φ and the duality between V_φ and V_ψ."""
from dataclasses import dataclass, field

import numpy as np

from ..config import GL_RELATIVE_TOL, IDENTITY_TOL, RANK_RELATIVE_TOL
from .errors import DimensionError, PreconditionError
from .frames import (
    VectorFamily, analysis, check_reproducing_pair, pair_certificates, synthesis_matrix
)
from .measure import field_values, pair
from .spaces import SpaceDescriptor, dual_descriptor


@dataclass
class SynthesisMap:
    """T_φ: ξ -> Σ_x ξ(x) φ_x μ_x, a d×N matrix."""
    family: VectorFamily
    matrix: np.ndarray = field(repr=False)

    def apply(self, xi) -> np.ndarray:
        return self.matrix @ field_values(self.family.space, xi)


def synthesis_map(family: VectorFamily) -> SynthesisMap:
    # in finite dimension T_φ is C_φ* on all of ℂ^N
    return SynthesisMap(family, synthesis_matrix(family))


@dataclass
class RankDecision:
    rank: int
    singular_values: np.ndarray = field(repr=False)
    tolerance: float
    gap: float   # ratio σ_rank / σ_{rank+1}; inf when nothing was cut

    def as_dict(self) -> dict:
        return {
            'rank': self.rank,
            'tolerance': self.tolerance,
            'gap': self.gap,
            'singular_values': [float(s) for s in self.singular_values],
        }


def rank_decision(matrix, rel_tol: float = RANK_RELATIVE_TOL) -> RankDecision:
    singular = np.linalg.svd(np.asarray(matrix, dtype=complex), compute_uv=False)
    top = float(singular[0]) if singular.size else 0.0
    tol = rel_tol * top
    rank = int(np.sum(singular > tol)) if top > 0 else 0
    if 0 < rank < len(singular):
        gap = float(singular[rank - 1] / singular[rank]) if singular[rank] > 0 else np.inf
    else:
        gap = np.inf
    return RankDecision(rank, singular, tol, gap)


class QuotientSpace:
    """
    V_φ with the class norm ‖[ξ]_φ‖ = ‖T_φ ξ‖. The kernel basis is orthonormal
    in the coordinates of ℂ^N.
    """

    def __init__(self, family: VectorFamily, rel_tol: float = RANK_RELATIVE_TOL):
        self.map = synthesis_map(family)
        self.family = family
        self.decision = rank_decision(self.map.matrix, rel_tol)
        _, _, vh = np.linalg.svd(self.map.matrix, full_matrices=True)
        self.kernel_basis = vh[self.decision.rank:].conj().T
        self.range_rows = vh[:self.decision.rank]
        self.ambient_dim = family.size

    @property
    def rank_tolerance(self) -> float:
        return self.decision.tolerance

    @property
    def kernel_dim(self) -> int:
        return self.kernel_basis.shape[1]

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.kernel_dim

    def kernel_element(self, coefficients) -> np.ndarray:
        return self.kernel_basis @ np.asarray(coefficients, dtype=complex)

    def __repr__(self):
        return f"QuotientSpace(dim={self.dim}, kernel={self.kernel_dim}, N={self.ambient_dim})"


def quotient_space(family: VectorFamily, rel_tol: float = RANK_RELATIVE_TOL) -> QuotientSpace:
    return QuotientSpace(family, rel_tol)


def class_norm(Q: QuotientSpace, xi) -> float:
    """‖[ξ]_φ‖ = ‖T_φ ξ‖"""
    return float(np.linalg.norm(Q.map.apply(xi)))


def class_norm_sup(Q: QuotientSpace, xi) -> float:
    """
    sup over ‖g‖ ≤ 1 of |∫ ξ(x)⟨φ_x, g⟩ dμ|. The functional is conjugate
    linear in g with representer h_j = pair(ξ, C_φ e_j), so the sup is ‖h‖.
    """
    d = Q.family.dim
    h = np.array([pair(Q.family.space, xi, analysis(Q.family, e)) for e in np.eye(d)])
    return float(np.linalg.norm(h))


def class_norm_spectral(Q: QuotientSpace, xi) -> float:
    """‖[ξ]_φ‖ from the kept singular triplets: ‖diag(σ_1..σ_r) V_r^H ξ‖."""
    sigma = Q.decision.singular_values[:Q.decision.rank]
    return float(np.linalg.norm(sigma * (Q.range_rows @ field_values(Q.family.space, xi))))


def class_inner(Q: QuotientSpace, xi, eta) -> complex:
    """⟨[ξ]_φ, [η]_φ⟩ = ⟨T_φ ξ, T_φ η⟩"""
    return complex(np.vdot(Q.map.apply(eta), Q.map.apply(xi)))


def same_class(Q: QuotientSpace, xi, eta) -> bool:
    difference = field_values(Q.family.space, xi) - field_values(Q.family.space, eta)
    scale = max(class_norm(Q, xi), class_norm(Q, eta), 1.0)
    return class_norm(Q, difference) <= IDENTITY_TOL * scale


def best_constant(Q: QuotientSpace, xi) -> float:
    """Best c with |∫ ξ(x)⟨φ_x, g⟩ dμ| ≤ c‖g‖ (membership of ξ in 𝒱_φ)."""
    return class_norm(Q, xi)


def _require_pair(q_phi: QuotientSpace, q_psi: QuotientSpace, report=None):
    psi, phi = q_psi.family, q_phi.family
    if report is None:
        report = check_reproducing_pair(psi, phi)
    if not report.invertible:
        raise PreconditionError(
            f"(ψ, φ) is not a reproducing pair: σ_min(S) = {report.sigma_min:.3e} "
            f"≤ {report.gl_tolerance:.3e}")
    return report


def duality_pairing(q_phi: QuotientSpace, q_psi: QuotientSpace, xi, g, report=None) -> complex:
    """
    ⟨[ξ]_φ, [η]_ψ⟩ with the V_ψ class given through η = C_φ g; equals
    ⟨T_φ ξ, g⟩.

    Raises:
        PreconditionError: (ψ, φ) is not a reproducing pair
    """
    _require_pair(q_phi, q_psi, report)
    return pair(q_phi.family.space, xi, analysis(q_phi.family, g))


def represent_functional(q_phi: QuotientSpace, g):
    """
    F([ξ]_φ) = ∫ ξ(x)⟨φ_x, g⟩ dμ and its V_ψ representative η(x) = ⟨g, φ_x⟩.

    Returns:
        Tuple of (evaluator, eta)
    """
    phi = q_phi.family
    g = np.asarray(g, dtype=complex).ravel()
    if len(g) != phi.dim:
        raise DimensionError(f"vector of length {len(g)} in ℂ^{phi.dim}")
    eta = analysis(phi, g)

    def evaluate(xi) -> complex:
        return complex(np.vdot(g, q_phi.map.apply(xi)))

    return evaluate, eta


def is_mu_total(family: VectorFamily, rel_tol: float = RANK_RELATIVE_TOL) -> bool:
    """Ker C_φ = {0}, i.e. rank T_φ = d."""
    return rank_decision(synthesis_matrix(family), rel_tol).rank == family.dim


def is_mu_independent(family: VectorFamily, rel_tol: float = RANK_RELATIVE_TOL) -> bool:
    """Ker T_φ = {0}, i.e. rank T_φ = N."""
    return rank_decision(synthesis_matrix(family), rel_tol).rank == family.size


@dataclass
class QuotientReport:
    dim_phi: int
    dim_psi: int
    kernel_phi: int
    kernel_psi: int
    hilbert_dim: int
    sigma_min: float
    isomorphic: bool
    rank_phi: RankDecision = field(repr=False)
    rank_psi: RankDecision = field(repr=False)


def certify_pair(psi: VectorFamily, phi: VectorFamily, p_desc: SpaceDescriptor, **kwargs):
    """Range certificates C_ψ: H -> V_p and C_φ: H -> V_p̄."""
    return pair_certificates(psi, phi, p_desc, **kwargs)


def quotient_dimensions(psi: VectorFamily, phi: VectorFamily, p_desc: SpaceDescriptor,
                        certificates=None, rel_tol: float = RANK_RELATIVE_TOL) -> QuotientReport:
    """
    dim V_φ = N - dim Ker T_φ and dim V_ψ = N - dim Ker T_ψ. Both equal d for a
    reproducing pair; [C_ψ f]_φ has matrix T_φ C_ψ = S_{ψ,φ}, so the quotient
    maps are isomorphisms exactly when S is invertible.

    Raises:
        PreconditionError: certificates missing, issued for another space or pair,
            or not bounding S; or the pair is not reproducing
    """
    if certificates is None:
        raise PreconditionError("range certificates for (ψ, V_p) and (φ, V_p̄) are required")
    if (certificates.psi.target != p_desc.describe()
            or certificates.phi.target != dual_descriptor(p_desc).describe()):
        raise PreconditionError("certificates were issued for a different space")
    if not certificates.issued_for(psi, phi):
        raise PreconditionError("certificates were issued for a different pair")
    if not certificates.holds:
        raise PreconditionError("range certificates do not bound S_{ψ,φ}")
    report = check_reproducing_pair(psi, phi)
    if not report.invertible:
        raise PreconditionError("(ψ, φ) is not a reproducing pair")

    q_phi, q_psi = QuotientSpace(phi, rel_tol), QuotientSpace(psi, rel_tol)
    isomorphic = (q_phi.dim == psi.dim and q_psi.dim == psi.dim
                  and report.sigma_min > GL_RELATIVE_TOL * report.norm)
    return QuotientReport(q_phi.dim, q_psi.dim, q_phi.kernel_dim, q_psi.kernel_dim, psi.dim,
                          report.sigma_min, isomorphic, q_phi.decision, q_psi.decision)


@dataclass
class DualityCheck:
    keystone: float
    slot1_shift: float
    slot2_shift: float
    nondegenerate: bool


def check_duality(q_phi: QuotientSpace, q_psi: QuotientSpace, f, g, kernel_phi=None,
                  kernel_psi=None, report=None) -> DualityCheck:
    """
    Residuals of the keystone identity pair(C_ψ f, C_φ g) = ⟨S f, g⟩ and of
    the kernel shifts ξ -> ξ + κ_φ, η -> η + κ_ψ (with ξ = C_ψ f, η = C_φ g).
    """
    report = _require_pair(q_phi, q_psi, report)
    psi, phi = q_psi.family, q_phi.family
    space = phi.space
    xi = analysis(psi, f)
    eta = analysis(phi, g)
    base = pair(space, xi, eta)
    keystone = abs(base - np.vdot(np.asarray(g, dtype=complex), report.resolution @ np.asarray(f, dtype=complex)))

    slot1 = slot2 = 0.0
    if kernel_phi is not None and q_phi.kernel_dim:
        shifted = xi.values + q_phi.kernel_element(kernel_phi)
        slot1 = abs(duality_pairing(q_phi, q_psi, shifted, g, report) - base)
    if kernel_psi is not None and q_psi.kernel_dim:
        shifted = eta.values + q_psi.kernel_element(kernel_psi)
        slot2 = abs(pair(space, xi, shifted) - base)

    # pairing ≡ 0 against every basis vector implies the class is zero
    candidates = [xi.values]
    if kernel_phi is not None and q_phi.kernel_dim:
        candidates.append(q_phi.kernel_element(kernel_phi))
    nondegenerate = True
    for candidate in candidates:
        tol = q_phi.rank_tolerance * max(1.0, float(np.linalg.norm(candidate)))
        row = np.array([duality_pairing(q_phi, q_psi, candidate, e, report) for e in np.eye(phi.dim)])
        if np.linalg.norm(row) <= tol and class_norm_spectral(q_phi, candidate) > tol:
            nondegenerate = False
    return DualityCheck(float(keystone), float(slot1), float(slot2), bool(nondegenerate))

"""Built-in scenarios and their explanations"""
from ..core.errors import ConfigError
from ..utils.config_io import Scenario, validate_scenario


BUILTIN_SCENARIOS = {
    'onb-sanity': {
        'description': 'Orthonormal basis paired with itself',
        'construction': 'weighted_pair',
        'parameters': {'weights': '1', 'dim': 8, 'trials': 20},
    },
    'paper-weighted-1-over-n': {
        'description': 'Weighted pair m_n = 1/n on an orthonormal basis',
        'construction': 'weighted_pair',
        'parameters': {'weights': '1/n', 'dim': 64, 'sweep': [4, 16, 64, 256], 'trials': 20},
    },
    'paper-weighted-n': {
        'description': 'Weighted pair m_n = n, the roles of ψ and φ swapped',
        'construction': 'weighted_pair',
        'parameters': {'weights': 'n', 'dim': 64, 'sweep': [4, 16, 64, 256], 'trials': 20},
    },
    'fourier-plane-waves': {
        'description': 'Discrete Fourier family paired with itself',
        'construction': 'fourier_pair',
        'parameters': {'dim': 16, 'sweep': [4, 8, 16, 32, 64], 'trials': 20},
    },
    'rkhs-identity-kernel': {
        'description': 'Weight pair m(x)^∓n k_x in an RKHS with identity kernel',
        'construction': 'rkhs_weight_pair',
        'parameters': {'kernel': 'rkhs:identity', 'power': 1, 'dim': 16,
                       'sweep': [4, 8, 16, 32, 64], 'trials': 20},
    },
    'rkhs-gaussian-kernel': {
        'description': 'Weight pair m(x)^∓n k_x in an RKHS with Gaussian kernel',
        'construction': 'rkhs_weight_pair',
        'parameters': {'kernel': 'rkhs:gaussian(1.0)', 'power': 1, 'dim': 8, 'trials': 20},
    },
    'minmax-probe': {
        'description': 'Pointwise min/max of two nonnegative real families',
        'construction': 'minmax_pair',
        'parameters': {'dim': 6, 'trials': 20},
    },
    'lp-duality-grid': {
        'description': 'Conjugate duality of L^(p,q) norms on a weighted 4-point space',
        'construction': 'lp_duality',
        'parameters': {
            'dim': 4, 'trials': 6,
            'indices': [[2, 2], [1, 1], ['inf', 'inf'], [1, 'inf'], ['inf', 1],
                        [4, '4/3'], ['4/3', 4], [4, 2], [2, '4/3']],
        },
    },
    'scale-triplet': {
        'description': 'Hilbert scale of diag(n) and its triplet H_1 ⊂ H_0 ⊂ H_-1',
        'construction': 'scale_triplet',
        'parameters': {'scale': 'scale:diag-n', 'dim': 16, 'k': 1, 'trials': 20},
    },
    'operator-algebra-fuzz': {
        'description': 'Adjoint, products and j(A) on random operators over {H_1, H_0, H_-1}',
        'construction': 'operator_algebra',
        'parameters': {'scale': 'scale:diag-n', 'dim': 6, 'trials': 200},
    },
}


EXPLANATIONS = {
    'onb-sanity': """\
A single orthonormal basis θ used as both ψ and φ (weights m_n = 1).
  1. S_{ψ,φ} = C_θ* C_θ is the identity, so the pair is dual.
  2. Both frame bounds equal (1, 1): θ is a Parseval frame.
  3. C_θ maps ℂ^d isometrically onto L², so V_θ = L² with trivial Ker T_θ.
  4. The pairing ⟨[ξ]_φ, [η]_ψ⟩ reduces to the L² inner product.""",

    'paper-weighted-1-over-n': """\
Discrete weighted pair ψ_n = m_n θ_n, φ_n = θ_n / conj(m_n) with m_n = 1/n.
  1. The weights cancel in S_{ψ,φ} = Σ m_n conj(m_n)^{-1} θ_n ⊗ θ_n = I:
     a dual pair although neither family is a frame.
  2. Frame bounds of ψ are (1/N², 1): the upper bound stays fixed while the
     lower bound decays, an upper semi-frame in the limit.
  3. Frame bounds of φ are (1, N²): a lower semi-frame whose analysis operator
     is unbounded in the limit, so D(C_φ) is a proper subspace (probed with
     decaying vectors n^-s).
  4. V_φ and V_ψ are the weighted sequence spaces ℓ²_{1/m} and ℓ²_m, dual to
     each other through the L² pairing.""",

    'paper-weighted-n': """\
Weighted pair with m_n = n: the mirror image of the 1/n example.
  1. S_{ψ,φ} = I again, the weights cancel.
  2. Now ψ has bounds (1, N²) and tends to a lower semi-frame, while φ has
     bounds (1/N², 1) and tends to an upper semi-frame.
  3. The quotient spaces swap roles: V_φ is ℓ²_n and V_ψ is ℓ²_{1/n}.""",

    'fourier-plane-waves': """\
Discrete plane waves ψ_x = N^{-1/2} e^{2πi xk/N} on counting measure.
  1. The family is a Parseval frame for every N, so S_{ψ,ψ} = I.
  2. The truncation sweep shows bounded frame bounds: a frame, not a semi-frame.
  3. V_ψ coincides with L² and the kernels of T_ψ are trivial.""",

    'rkhs-identity-kernel': """\
Weight pair in a reproducing kernel Hilbert space with kernel K = I.
  1. Kernel functions k_x are the canonical basis; ψ_x = m(x)^{-n} k_x and
     φ_x = m(x)^n k_x with m(x) = x + 1 > 1.
  2. T_φ ξ is multiplication by m^n: T_φ ξ = ξ m^n, checked pointwise.
  3. The weights cancel in S_{ψ,φ} = I.
  4. C_ψ maps into H_n = ℓ²_{m^n} and C_φ into its dual H_{-n} with
     constant 1; V_φ and V_ψ have full dimension N.""",

    'rkhs-gaussian-kernel': """\
Weight pair in the RKHS of a Gaussian kernel on the points 1..N.
  1. K = L L* is factored by Cholesky; kernel functions become rows of conj(L).
  2. Point values of T_φ ξ match the prediction K(ξ m^n μ).
  3. S_{ψ,φ} is the kernel frame operator L* L, not the identity; ‖S − I‖ is
     reported, the pair is checked for invertibility and the quotient
     dimensions are computed.""",

    'minmax-probe': """\
Pointwise min/max pair of two nonnegative real families θ¹ (a basis) and θ²
(random entries in [0, 1)).
  1. ψ = θ¹ ∧ θ² and φ = θ¹ ∨ θ² componentwise, so ψ ≤ φ.
  2. For nonnegative h: C_ψ h ≤ min(C_θ¹ h, C_θ² h) and
     C_φ h ≤ C_θ¹ h + C_θ² h pointwise.
  3. The range certificates bound |Ω_{ψ,φ}| and hence ‖S_{ψ,φ}‖.
  4. Invertibility of S_{ψ,φ} is reported; quotients are built when it holds.""",

    'lp-duality-grid': """\
Lattice of L^(p,q) spaces over a weighted finite measure space.
  1. Indices (1/p, 1/q) above the diagonal realize L^p ∩ L^q (projective
     norm), those below realize L^p + L^q (inductive norm).
  2. For every index the dual norm sup |⟨⟨ξ, v⟩⟩| over the unit ball equals
     the norm of the involuted index (1 − 1/p, 1 − 1/q): conjugate duality.
  3. The L¹ + L^∞ inductive norm agrees with the threshold formula
     inf_t Σ(|v| − t)_+ μ + t.
  4. Involution, De Morgan laws and the diagonal, horizontal (q = 2) and
     vertical (p = 2) chains are checked as total orders closed under meet
     and join; L^r ⊂ L^s holds with constant M^{1/r − 1/s} on total mass M.""",

    'scale-triplet': """\
Hilbert scale H_k = ℓ²_{a^k} generated by a = diag(n).
  1. ‖v‖_{-k} ≤ ‖v‖_0 ≤ ‖v‖_k: the triplet H_k ⊂ H_0 ⊂ H_{-k}.
  2. H_{-k} is the conjugate dual of H_k under the L² pairing.
  3. The generator A maps H_q into H_p exactly when q − p ≥ 1; j(A) is
     decided from operator norms along a truncation sweep.""",

    'operator-algebra-fuzz': """\
Random operators over the scale family {H_1, H_0, H_-1}.
  1. The adjoint A^× = M⁻¹ A* M is an involution: (A^×)^× = A.
  2. j(A^×) = {(p̄, q̄) : (q, p) ∈ j(A)}.
  3. A^× A is symmetric whenever the product is defined.
  4. B·A is defined exactly when i(A) ∩ d(B) is nonempty, and its matrix does
     not depend on the middle index.""",
}


def list_scenarios() -> list[tuple[str, str]]:
    """(name, description) for every built-in scenario, sorted by name."""
    return [(name, BUILTIN_SCENARIOS[name]['description']) for name in sorted(BUILTIN_SCENARIOS)]


def builtin_scenario(name: str) -> Scenario:
    """
    Raises:
        ConfigError: unknown scenario name
    """
    if name not in BUILTIN_SCENARIOS:
        raise ConfigError(f"unknown scenario; known: {', '.join(sorted(BUILTIN_SCENARIOS))}",
                          key=name)
    return validate_scenario({'name': name, **BUILTIN_SCENARIOS[name]})


def explain(name: str) -> str:
    scenario = builtin_scenario(name)
    return f"{scenario.name}: {scenario.description}\n{EXPLANATIONS[name]}\n"

"""Scenario steps: each runs one verification and returns (result, stats)"""
from itertools import product

import numpy as np

from ..config import (
    DECAY_RATES, DEFAULT_SEED, DEFAULT_TRIALS, DUALITY_REL_TOL, GROWTH_FACTOR,
    IDENTITY_TOL, RANK_RELATIVE_TOL, SWEEP_SIZES
)
from ..core.errors import PreconditionError, UndefinedProductError
from ..core.frames import (
    PairCertificates, analysis, check_reproducing_pair, pair_certificates, semiframe_sweep
)
from ..core.lattice import (
    CENTER, diagonal_chain, horizontal_chain, involution, is_chain, join, meet,
    closure, vertical_chain
)
from ..core.measure import FiniteMeasureSpace, pair
from ..core.operators import (
    PipOperator, adjoint, factorizations, is_symmetric, multiply, weighted_adjoint
)
from ..core.scales import HilbertScale, triplet
from ..core.spaces import (
    Lp, dual_descriptor, dual_norm, finite_measure_constant, holder_bound_check,
    inductive_norm, l1_linf_threshold, norm, realize_lp_index
)
from ..core.vspace import QuotientSpace, check_duality, quotient_dimensions, represent_functional


def check(name: str, residual: float, tolerance: float, passed: bool | None = None,
          relation: str = '≤') -> dict:
    """A verdict with the residual and tolerance behind it."""
    residual, tolerance = float(residual), float(tolerance)
    if passed is None:
        passed = residual <= tolerance if relation == '≤' else residual > tolerance
    return {'name': name, 'passed': bool(passed), 'residual': residual,
            'tolerance': tolerance, 'relation': relation}


def _bounds(bounds) -> list:
    return [float(bounds.lower), float(bounds.upper)]


class PairStep:
    """Boundedness, invertibility of S_{ψ,φ} and frame bounds of both families"""

    def __init__(self, gl_tolerance: float | None = None):
        self.gl_tolerance = gl_tolerance

    def run(self, psi, phi, sweep=None) -> tuple:
        """
        Check (ψ, φ) as a reproducing pair.

        Args:
            psi: Analysis family
            phi: Synthesis family
            sweep: Optional SweepResult whose classes override single-size ones

        Returns:
            Tuple of (PairReport, stats_dict)
        """
        print("🧮 Checking reproducing pair...")
        report = check_reproducing_pair(psi, phi, self.gl_tolerance, sweep)
        stats = {
            'norm': report.norm,
            'sigma_min': report.sigma_min,
            'condition': report.condition,
            'gl_tolerance': report.gl_tolerance,
            'invertible': report.invertible,
            'identity_residual': report.identity_residual(),
            'dual_residual': report.dual_residual,
            'psi_bounds': _bounds(report.psi_bounds),
            'phi_bounds': _bounds(report.phi_bounds),
            'psi_class': report.psi_class,
            'phi_class': report.phi_class,
        }
        print(f"   ‖S_{{ψ,φ}}‖ = {report.norm:.4e}, σ_min = {report.sigma_min:.4e} "
              f"(tol {report.gl_tolerance:.1e})")
        print(f"   ψ: bounds ({stats['psi_bounds'][0]:.3e}, {stats['psi_bounds'][1]:.3e}) {report.psi_class}")
        print(f"   φ: bounds ({stats['phi_bounds'][0]:.3e}, {stats['phi_bounds'][1]:.3e}) {report.phi_class}")
        return report, stats


class SweepStep:
    """Frame bounds along a truncation sweep N ∈ sizes"""

    def __init__(self, sizes=SWEEP_SIZES, decay_rates=DECAY_RATES, jobs: int = 1):
        self.sizes = tuple(sizes)
        self.decay_rates = tuple(decay_rates)
        self.jobs = jobs

    def run(self, generator) -> tuple:
        print(f"📈 Sweeping truncations N = {', '.join(map(str, self.sizes))}...")
        result = semiframe_sweep(generator, self.sizes, self.decay_rates, self.jobs)
        stats = {
            'psi_class': result.psi_class,
            'phi_class': result.phi_class,
            'domain_fraction': result.domain_fraction,
            'decay_rates': list(result.decay_rates),
            'rows': [{
                'n': row.n,
                'psi_lower': row.psi_bounds[0], 'psi_upper': row.psi_bounds[1],
                'phi_lower': row.phi_bounds[0], 'phi_upper': row.phi_bounds[1],
                'identity_residual': row.identity_residual,
                'sigma_min': row.sigma_min,
            } for row in result.rows],
        }
        print(f"   ψ: {result.psi_class} | φ: {result.phi_class} | "
              f"D(C_φ) probes bounded: {result.domain_fraction:.0%}")
        return result, stats


class CertificateStep:
    """Range certificates C_ψ: H -> V_p and C_φ: H -> V_p̄"""

    def __init__(self, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED):
        self.trials = trials
        self.seed = seed

    def run(self, psi, phi, desc) -> tuple:
        print(f"📜 Certifying ranges in {desc.describe()} and its dual...")
        certificates = pair_certificates(psi, phi, desc, trials=self.trials, seed=self.seed)
        stats = {
            'psi': self._certificate(certificates.psi),
            'phi': self._certificate(certificates.phi),
            'omega_bound': certificates.omega_bound,
            'resolution_norm': certificates.resolution_norm,
            'holds': certificates.holds,
        }
        print(f"   ‖C_ψ‖ ≤ {certificates.psi.constant:.4e} ({certificates.psi.method}), "
              f"‖C_φ‖ ≤ {certificates.phi.constant:.4e} ({certificates.phi.method})")
        print(f"   ‖S_{{ψ,φ}}‖ = {certificates.resolution_norm:.4e} ≤ {certificates.omega_bound:.4e}")
        return certificates, stats

    @staticmethod
    def _certificate(cert) -> dict:
        return {'target': cert.target, 'constant': cert.constant, 'exact': cert.exact,
                'method': cert.method, 'uniform_bound': cert.uniform_bound}


class QuotientStep:
    """V_φ, V_ψ dimensions and the duality pairing between them"""

    def __init__(self, rank_tolerance: float = RANK_RELATIVE_TOL, trials: int = DEFAULT_TRIALS,
                 seed: int = DEFAULT_SEED):
        self.rank_tolerance = rank_tolerance
        self.trials = trials
        self.seed = seed

    def run(self, psi, phi, p_desc, certificates: PairCertificates, report) -> tuple:
        """
        Quotient dimensions, then residuals of the pairing identities on random f, g.

        Returns:
            Tuple of (QuotientReport, stats_dict)
        """
        print("🧩 Building quotient spaces V_φ and V_ψ...")
        dims = quotient_dimensions(psi, phi, p_desc, certificates, self.rank_tolerance)
        q_phi, q_psi = QuotientSpace(phi, self.rank_tolerance), QuotientSpace(psi, self.rank_tolerance)

        rng = np.random.default_rng(self.seed)
        d = psi.dim
        keystone = slot1 = slot2 = represent = 0.0
        degenerate = 0
        scale = max(1.0, report.norm)
        for _ in range(self.trials):
            f = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            k_phi = rng.standard_normal(q_phi.kernel_dim) if q_phi.kernel_dim else None
            k_psi = rng.standard_normal(q_psi.kernel_dim) if q_psi.kernel_dim else None
            result = check_duality(q_phi, q_psi, f, g, k_phi, k_psi, report)
            size = scale * np.linalg.norm(f) * np.linalg.norm(g)
            keystone = max(keystone, result.keystone / size)
            slot1 = max(slot1, result.slot1_shift / size)
            slot2 = max(slot2, result.slot2_shift / size)
            degenerate += not result.nondegenerate

            evaluate, eta = represent_functional(q_phi, g)
            xi = analysis(psi, f)
            represent = max(represent, abs(evaluate(xi) - pair(phi.space, xi, eta)) / size)

        stats = {
            'dim_phi': dims.dim_phi, 'dim_psi': dims.dim_psi,
            'kernel_phi': dims.kernel_phi, 'kernel_psi': dims.kernel_psi,
            'hilbert_dim': dims.hilbert_dim, 'isomorphic': dims.isomorphic,
            'rank_phi': dims.rank_phi.as_dict(), 'rank_psi': dims.rank_psi.as_dict(),
            'keystone_residual': keystone, 'slot1_shift_residual': slot1,
            'slot2_shift_residual': slot2, 'degenerate_trials': degenerate,
            'representation_residual': represent, 'trials': self.trials,
        }
        print(f"   dim V_φ = {dims.dim_phi} (Ker T_φ: {dims.kernel_phi}), "
              f"dim V_ψ = {dims.dim_psi} (Ker T_ψ: {dims.kernel_psi})")
        print(f"   keystone {keystone:.2e}, kernel shifts {max(slot1, slot2):.2e}")
        return dims, stats


class LatticeStep:
    """Involution, De Morgan, the three chains and meet/join closure"""

    def run(self, indices, exponents) -> tuple:
        print("🔷 Checking the L^p index lattice...")
        indices = list(indices)
        de_morgan = sum(
            involution(meet(a, b)) != join(involution(a), involution(b))
            or involution(join(a, b)) != meet(involution(a), involution(b))
            for a, b in product(indices, repeat=2))
        chains = {
            'diagonal': diagonal_chain(exponents),
            'horizontal': horizontal_chain(exponents),
            'vertical': vertical_chain(exponents),
        }
        broken = [name for name, chain in chains.items() if not is_chain(chain)]
        grown = sum(len(closure(chain)) - len(chain) for chain in chains.values())
        stats = {
            'center_fixed': involution(CENTER) == CENTER,
            'de_morgan_violations': int(de_morgan),
            'chains': {name: [str(index) for index in chain] for name, chain in chains.items()},
            'broken_chains': broken,
            'closure_growth': int(grown),
        }
        print(f"   {len(indices)} indices, De Morgan violations: {de_morgan}, "
              f"closure growth on chains: {grown}")
        return chains, stats


class DualityGridStep:
    """dual_norm against the norm of the dual descriptor over a set of lattice indices"""

    def __init__(self, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
                 tolerance: float = DUALITY_REL_TOL):
        self.trials = trials
        self.seed = seed
        self.tolerance = tolerance

    def run(self, space: FiniteMeasureSpace, indices, combine: str = 'sum') -> tuple:
        print(f"📐 Checking conjugate duality on {len(indices)} indices (N = {space.size})...")
        rng = np.random.default_rng(self.seed)
        rows = []
        for index in indices:
            desc = realize_lp_index(space, index, combine)
            dual = dual_descriptor(desc)
            worst, holder_failures = 0.0, 0
            for _ in range(self.trials):
                v = rng.standard_normal(space.size) + 1j * rng.standard_normal(space.size)
                w = rng.standard_normal(space.size) + 1j * rng.standard_normal(space.size)
                exact = norm(dual, v)
                worst = max(worst, abs(dual_norm(desc, v) - exact) / exact)
                holder_failures += not holder_bound_check(desc, w, v)
            rows.append({'index': str(index), 'descriptor': desc.describe(),
                         'dual': dual.describe(), 'max_relative_gap': worst,
                         'holder_failures': holder_failures})
            print(f"   {index.describe():<16} gap {worst:.2e}")

        threshold_gap = 0.0
        l1, linf = Lp(space, 1), Lp(space, np.inf)
        for _ in range(self.trials):
            v = rng.standard_normal(space.size) * rng.exponential(1.0, space.size)
            oracle = l1_linf_threshold(space, v)
            threshold_gap = max(threshold_gap, abs(inductive_norm(l1, linf, v) - oracle) / oracle)

        containment_gap = 0.0
        mass_space = FiniteMeasureSpace(space.labels, rng.uniform(0.5, 2.0, space.size))
        for r, s in ((1, 2), (2, 4), (1, np.inf)):
            constant = finite_measure_constant(mass_space, r, s)
            for _ in range(self.trials):
                v = rng.standard_normal(space.size)
                excess = norm(Lp(mass_space, r), v) - constant * norm(Lp(mass_space, s), v)
                containment_gap = max(containment_gap, excess / norm(Lp(mass_space, r), v))

        stats = {
            'rows': rows,
            'max_relative_gap': max(row['max_relative_gap'] for row in rows),
            'holder_failures': sum(row['holder_failures'] for row in rows),
            'threshold_gap': threshold_gap,
            'containment_excess': containment_gap,
            'combine': combine,
            'trials': self.trials,
        }
        print(f"   L¹ + L^∞ threshold oracle gap {threshold_gap:.2e}")
        return rows, stats


class ScaleStep:
    """Triplet H_k ⊂ H_0 ⊂ H_{-k} and the continuity pairs of the generator"""

    def __init__(self, probes: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
                 sweep_sizes=SWEEP_SIZES, jobs: int = 1):
        self.probes = probes
        self.seed = seed
        self.sweep_sizes = tuple(sweep_sizes)
        self.jobs = jobs

    def run(self, scale: HilbertScale, k: int, law) -> tuple:
        print(f"🪜 Checking Hilbert scale {scale.name or 'a'} at k = {k}...")
        try:
            top, center, bottom = triplet(scale, k, self.probes, self.seed)
            ordered = True
        except PreconditionError:
            top, center, bottom = scale.scale_space(k), scale.scale_space(0), scale.scale_space(-k)
            ordered = False
        dual_ok = dual_descriptor(top) == bottom and dual_descriptor(center) == center

        rng = np.random.default_rng(self.seed)
        dual_gap = 0.0
        for _ in range(self.probes):
            v = rng.standard_normal(scale.size) + 1j * rng.standard_normal(scale.size)
            exact = norm(bottom, v)
            dual_gap = max(dual_gap, abs(dual_norm(top, v) - exact) / exact)

        family = scale.family(ks=(1,), law=law, sweep_sizes=self.sweep_sizes)
        generator = PipOperator(family, generator=lambda n: np.diag(law(n)), name='A', jobs=self.jobs)
        jset = generator.jset
        expected = self._expected_jset(family, law)
        stats = {
            'triplet_ordered': ordered,
            'dual_descriptors': dual_ok,
            'dual_norm_gap': dual_gap,
            'jset': sorted(f"{q}→{p}" for q, p in jset),
            'expected_jset': sorted(f"{q}→{p}" for q, p in expected),
            'continuity_norms': {f"{q}→{p}": norms for (q, p), norms in
                                 sorted(generator.continuity_norms.items(),
                                        key=lambda item: (item[0][0].k, item[0][1].k))},
        }
        print(f"   triplet ordered: {ordered}, j(A) = {{{', '.join(stats['jset'])}}}")
        return (jset, expected), stats

    def _expected_jset(self, family, law) -> set:
        """Diagonal A maps H_q into H_p with norm max a^(1+p-q); bounded across the sweep or not."""
        first, last = self.sweep_sizes[0], self.sweep_sizes[-1]
        growth = float(np.max(law(last)) / np.max(law(first)))
        expected = set()
        for q, p in product(family.indices, repeat=2):
            order = 1 + p.k - q.k
            if order <= 0 or growth ** order <= GROWTH_FACTOR:
                expected.add((q, p))
        return expected


class OperatorAlgebraStep:
    """Adjoint involution, symmetric products and definedness of B·A on random operators"""

    def __init__(self, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
                 tolerance: float = IDENTITY_TOL):
        self.trials = trials
        self.seed = seed
        self.tolerance = tolerance

    def _random_operator(self, family, rng, name: str) -> PipOperator:
        n = family.size
        matrix = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        pairs = list(product(family.indices, repeat=2))
        count = min(int(rng.integers(1, 4)), len(pairs))
        chosen = rng.choice(len(pairs), size=count, replace=False)
        return PipOperator(family, matrix, jset={pairs[i] for i in chosen}, name=name)

    def run(self, family) -> tuple:
        print(f"🔧 Fuzzing operator algebra on {len(family.indices)} indices ({self.trials} trials)...")
        rng = np.random.default_rng(self.seed)
        mu = family.space().weights
        counts = {'involution': 0, 'jset_symmetry': 0, 'symmetric_products': 0,
                  'definedness': 0, 'middle_index': 0, 'associativity': 0}
        defined = undefined = associated = 0
        matrix_gap = 0.0
        for trial in range(self.trials):
            A = self._random_operator(family, rng, f"A{trial}")
            B = self._random_operator(family, rng, f"B{trial}")

            if adjoint(adjoint(A)) is not A:
                counts['involution'] += 1
            twice = weighted_adjoint(weighted_adjoint(A.matrix, mu), mu)
            matrix_gap = max(matrix_gap, float(np.max(np.abs(twice - A.matrix))))
            if adjoint(A).jset != {(involution(p), involution(q)) for q, p in A.jset}:
                counts['jset_symmetry'] += 1

            try:
                gram = multiply(adjoint(A), A)
            except UndefinedProductError:
                gram = None
            if gram is not None and not is_symmetric(gram):
                counts['symmetric_products'] += 1

            middle = factorizations(B, A)
            try:
                product_ba = multiply(B, A)
            except UndefinedProductError:
                product_ba = None
            if (product_ba is not None) != bool(middle):
                counts['definedness'] += 1
            if product_ba is None:
                undefined += 1
                continue
            defined += 1
            for r in middle:
                if not np.array_equal(multiply(B, A, through=r).matrix, product_ba.matrix):
                    counts['middle_index'] += 1
                    break

            C = self._random_operator(family, rng, f"C{trial}")
            try:
                left, right = multiply(multiply(C, B), A), multiply(C, product_ba)
            except UndefinedProductError:
                continue
            associated += 1
            scale = max(1.0, float(np.max(np.abs(right.matrix))))
            if left.jset != right.jset or not np.allclose(left.matrix, right.matrix, rtol=0.0,
                                                          atol=self.tolerance * scale):
                counts['associativity'] += 1

        stats = {
            'trials': self.trials,
            'violations': counts,
            'double_adjoint_gap': matrix_gap,
            'defined_products': defined,
            'undefined_products': undefined,
            'associative_triples': associated,
        }
        print(f"   products defined {defined}, undefined {undefined}, "
              f"violations {sum(counts.values())}")
        return counts, stats

"""Main entry point for pipframe"""
import argparse
import os
import sys
import time
import traceback
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import (
    DEFAULT_JOBS, GROWTH_FACTOR, IDENTITY_TOL, RANK_RELATIVE_TOL, REPORT_FORMATS, REPORTS_DIR,
    SCENARIOS_DIR, SWEEP_SIZES, DUALITY_REL_TOL
)
from .core.errors import ConfigError, DimensionError, DomainError
from .core.frames import (
    FRAME, VectorFamily, classify_trajectory, fourier_family, make_generator, minmax_pair,
    orthonormal_basis, parse_weight_law, weighted_pair
)
from .core.lattice import LpIndex
from .core.measure import FiniteMeasureSpace
from .core.operators import scale_family
from .core.scales import HilbertScale, multiplication_law, rkhs_generator, rkhs_sample, rkhs_weight_pair, scale_law
from .core.spaces import Lp, WeightedL2
from .scenarios import (
    CertificateStep, DualityGridStep, LatticeStep, OperatorAlgebraStep, PairStep,
    QuotientStep, ScaleStep, SweepStep, builtin_scenario, check, explain, list_scenarios
)
from .scenarios.catalog import BUILTIN_SCENARIOS
from .utils import ReportWriter, load_families, load_scenario

CHAIN_EXPONENTS = (1, '4/3', 2, 4, 'inf')
THRESHOLD_TOL = 5e-3


class ScenarioRunner:
    """Runs one scenario through its steps and collects stats, checks and timings"""

    def __init__(self, scenario, jobs: int = 1):
        self.scenario = scenario
        self.jobs = jobs
        self.sections = {}
        self.checks = []
        self.timings = {}

    def _step(self, name: str, step, *args):
        start = time.perf_counter()
        result, stats = step.run(*args)
        self.timings[name] = time.perf_counter() - start
        self.sections[name] = stats
        return result, stats

    def _tolerance(self, key: str, default):
        return self.scenario.tolerances.get(key, default)

    def run(self) -> tuple[dict, list, dict]:
        """
        Dispatch on the construction.

        Returns:
            Tuple of (sections, checks, timings)
        """
        build = getattr(self, f"_run_{self.scenario.construction}")
        build()
        return self.sections, self.checks, self.timings

    # === reproducing pairs ===

    def _pair_pipeline(self, psi, phi, generator=None, desc=None, dual_expected=False,
                       expect_invertible: bool | None = True):
        params = self.scenario.parameters
        seed, trials = self.scenario.seed, self.scenario.trials

        sweep = None
        if generator is not None:
            sizes = params.get('sweep', SWEEP_SIZES)
            sweep, _ = self._step('sweep', SweepStep(sizes, jobs=self.jobs), generator)

        report, pair_stats = self._step(
            'pair', PairStep(self._tolerance('gl_tolerance', None)), psi, phi, sweep)
        if expect_invertible is not None:
            self.checks.append(check('S_{ψ,φ} invertible' if expect_invertible else 'S_{ψ,φ} singular',
                                     report.sigma_min, report.gl_tolerance,
                                     passed=report.invertible == expect_invertible, relation='>'))
        if dual_expected:
            self.checks.append(check('‖S_{ψ,φ} − I‖', report.identity_residual(), 1e-12))
        if report.invertible:
            self.checks.append(check('canonical dual ‖S_{ψ,S⁻¹φ} − I‖', report.dual_residual, IDENTITY_TOL))

        desc = Lp(psi.space, 2) if desc is None else desc
        certificates, cert_stats = self._step('certificates', CertificateStep(trials, seed), psi, phi, desc)
        self.checks.append(check('‖S_{ψ,φ}‖ ≤ ‖C_ψ‖‖C_φ‖',
                                 cert_stats['resolution_norm'] - cert_stats['omega_bound'], 0.0,
                                 passed=certificates.holds))

        if report.invertible and certificates.holds:
            rank_tol = self._tolerance('rank_tolerance', RANK_RELATIVE_TOL)
            _, q = self._step('quotient', QuotientStep(rank_tol, trials, seed),
                              psi, phi, desc, certificates, report)
            dim_gap = abs(q['dim_phi'] - q['hilbert_dim']) + abs(q['dim_psi'] - q['hilbert_dim'])
            self.checks.append(check('dim V_φ = dim V_ψ = dim H', dim_gap, 0))
            self.checks.append(check('dim V_φ + dim Ker T_φ = N',
                                     abs(q['dim_phi'] + q['kernel_phi'] - phi.size), 0))
            self.checks.append(check('keystone pair(C_ψf, C_φg) = ⟨Sf, g⟩', q['keystone_residual'], IDENTITY_TOL))
            self.checks.append(check('pairing invariant under Ker T_φ',
                                     q['slot1_shift_residual'], IDENTITY_TOL))
            self.checks.append(check('pairing invariant under Ker T_ψ',
                                     q['slot2_shift_residual'], IDENTITY_TOL))
            self.checks.append(check('pairing nondegenerate on V_φ', q['degenerate_trials'], 0))
            self.checks.append(check('functional F([ξ]_φ) = ⟨⟨ξ, η⟩⟩', q['representation_residual'], IDENTITY_TOL))
        return report, sweep

    def _check_classes(self, sweep, psi_class: str, phi_class: str):
        mismatch = (sweep.psi_class != psi_class) + (sweep.phi_class != phi_class)
        self.checks.append(check(f'sweep classes ψ: {psi_class}, φ: {phi_class}', mismatch, 0))

    def _run_weighted_pair(self):
        params = self.scenario.parameters
        law = params.get('weights', '1')
        if isinstance(law, str):
            d = params.get('dim', 8)
            m = parse_weight_law(law)(d)
        else:
            m = np.asarray(law, dtype=float)
            if 'dim' in params and params['dim'] != len(m):
                raise ConfigError(f"dim {params['dim']} disagrees with {len(m)} weights",
                                  self.scenario.source, key='dim')
            d = len(m)
        psi, phi = weighted_pair(m, orthonormal_basis(d))
        generator = make_generator('weighted', {'weights': law}) \
            if 'sweep' in params and isinstance(law, str) else None
        report, sweep = self._pair_pipeline(psi, phi, generator, dual_expected=True)

        squared = np.abs(m) ** 2
        expected = {
            'psi': (squared.min(), squared.max()),
            'phi': (1 / squared.max(), 1 / squared.min()),
        }
        gap = 0.0
        for got, want in ((report.psi_bounds.as_tuple(), expected['psi']),
                          (report.phi_bounds.as_tuple(), expected['phi'])):
            gap = max(gap, *(abs(g - w) / w for g, w in zip(got, want)))
        self.checks.append(check('frame bounds (min|m|², max|m|²) and reciprocals', gap, 1e-8))

        if sweep is not None:
            weights = parse_weight_law(law)
            rows = [np.abs(weights(n)) ** 2 for n in params['sweep']]
            self._check_classes(
                sweep,
                classify_trajectory([r.min() for r in rows], [r.max() for r in rows]),
                classify_trajectory([1 / r.max() for r in rows], [1 / r.min() for r in rows]))

    def _run_fourier_pair(self):
        params = self.scenario.parameters
        family = fourier_family(params.get('dim', 16))
        generator = make_generator('fourier') if 'sweep' in params else None
        report, sweep = self._pair_pipeline(family, family, generator, dual_expected=True)
        gap = max(abs(b - 1.0) for b in report.psi_bounds.as_tuple())
        self.checks.append(check('Parseval frame bounds (1, 1)', gap, IDENTITY_TOL))
        if sweep is not None:
            self._check_classes(sweep, FRAME, FRAME)

    def _run_rkhs_weight_pair(self):
        params = self.scenario.parameters
        preset = params.get('kernel', 'rkhs:identity')
        n = params.get('power', 1)
        rkhs = rkhs_sample(params.get('dim', 16), preset)
        psi, phi = rkhs_weight_pair(rkhs, n)

        rng = np.random.default_rng(self.scenario.seed)
        law_gap = identity_gap = 0.0
        for _ in range(self.scenario.trials):
            xi = rng.standard_normal(rkhs.size) + 1j * rng.standard_normal(rkhs.size)
            values, predicted = multiplication_law(rkhs, n, xi)
            scale = max(1.0, float(np.max(np.abs(predicted))))
            law_gap = max(law_gap, float(np.max(np.abs(values - predicted))) / scale)
            if preset == 'rkhs:identity':
                direct = xi * rkhs.m ** n * rkhs.measure.weights
                identity_gap = max(identity_gap, float(np.max(np.abs(values - direct))) / scale)
        self.sections['multiplication_law'] = {'prediction_gap': law_gap, 'pointwise_gap': identity_gap}
        self.checks.append(check('T_φ ξ point values = K(ξ m^n μ)', law_gap, IDENTITY_TOL))
        if preset == 'rkhs:identity':
            self.checks.append(check('T_φ ξ = ξ m^n', identity_gap, IDENTITY_TOL))

        generator = rkhs_generator(n, preset) if 'sweep' in params else None
        h_n = WeightedL2(rkhs.measure, rkhs.m ** n)
        self._pair_pipeline(psi, phi, generator, desc=h_n, dual_expected=preset == 'rkhs:identity')

    def _random_nonnegative_families(self):
        d = self.scenario.parameters.get('dim', 6)
        rng = np.random.default_rng(self.scenario.seed)
        theta1 = orthonormal_basis(d)
        theta2 = VectorFamily(theta1.space, rng.uniform(0.0, 1.0, (d, d)), name='θ²')
        return theta1, theta2, rng

    def _run_minmax_pair(self):
        theta1, theta2, rng = self._random_nonnegative_families()
        psi, phi = minmax_pair(theta1, theta2)
        order_gap = float(np.max(psi.members.real - phi.members.real))
        below = above = 0.0
        for _ in range(self.scenario.trials):
            h = rng.uniform(0.0, 1.0, psi.dim)
            c1, c2 = theta1.members.real @ h, theta2.members.real @ h
            below = max(below, float(np.max(psi.members.real @ h - np.minimum(c1, c2))))
            above = max(above, float(np.max(phi.members.real @ h - (c1 + c2))))
        self.sections['ordering'] = {'psi_minus_phi': order_gap, 'min_excess': below, 'sum_excess': above}
        self.checks.append(check('ψ ≤ φ componentwise', max(order_gap, 0.0), 0.0))
        self.checks.append(check('C_ψ h ≤ min(C_θ¹ h, C_θ² h)', max(below, 0.0), IDENTITY_TOL))
        self.checks.append(check('C_φ h ≤ C_θ¹ h + C_θ² h', max(above, 0.0), IDENTITY_TOL))

        expect = self.scenario.parameters.get('expect')
        self._pair_pipeline(psi, phi, expect_invertible=None if expect is None else expect == 'pass')

    def _run_custom_families(self):
        params = self.scenario.parameters
        try:
            psi, phi = load_families(params['file'])
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"malformed families file: {exc}", params['file']) from None
        self._pair_pipeline(psi, phi, expect_invertible=params.get('expect', 'pass') == 'pass')

    # === lattices, scales, operators ===

    def _run_lp_duality(self):
        params = self.scenario.parameters
        d = params.get('dim', 4)
        rng = np.random.default_rng(self.scenario.seed)
        space = FiniteMeasureSpace([str(i) for i in range(1, d + 1)], rng.uniform(0.5, 2.0, d))
        indices = [LpIndex.from_exponents(p, q) for p, q in params.get('indices', [[1, 'inf']])]

        _, lattice = self._step('lattice', LatticeStep(), indices, CHAIN_EXPONENTS)
        self.checks.append(check('involution fixes L²', 0 if lattice['center_fixed'] else 1, 0))
        self.checks.append(check('De Morgan laws', lattice['de_morgan_violations'], 0))
        self.checks.append(check('three chains totally ordered', len(lattice['broken_chains']), 0))
        self.checks.append(check('closure adds nothing to chains', lattice['closure_growth'], 0))

        step = DualityGridStep(self.scenario.trials, self.scenario.seed,
                               self._tolerance('duality_tolerance', DUALITY_REL_TOL))
        _, grid = self._step('duality', step, space, indices, params.get('combine', 'sum'))
        self.checks.append(check('dual_norm = norm of dual descriptor', grid['max_relative_gap'], step.tolerance))
        self.checks.append(check('Hölder bound', grid['holder_failures'], 0))
        self.checks.append(check('L¹ + L^∞ threshold oracle', grid['threshold_gap'], THRESHOLD_TOL))
        self.checks.append(check('L^r ⊂ L^s with constant M^{1/r−1/s}', max(grid['containment_excess'], 0.0),
                                 IDENTITY_TOL))

    def _run_scale_triplet(self):
        params = self.scenario.parameters
        name = params.get('scale', 'scale:diag-n')
        law = scale_law(name)
        scale = HilbertScale(law(params.get('dim', 16)), name=name)
        step = ScaleStep(self.scenario.trials, self.scenario.seed, params.get('sweep', SWEEP_SIZES),
                         jobs=self.jobs)
        (jset, expected), stats = self._step('scale', step, scale, params.get('k', 1), law)
        self.checks.append(check('‖v‖_{-k} ≤ ‖v‖_0 ≤ ‖v‖_k', 0 if stats['triplet_ordered'] else 1, 0))
        self.checks.append(check('H_{-k} dual of H_k', 0 if stats['dual_descriptors'] else 1, 0))
        self.checks.append(check('dual_norm on H_k = norm on H_{-k}', stats['dual_norm_gap'], IDENTITY_TOL))
        self.checks.append(check(f'j(A) from sweep growth ≤ {GROWTH_FACTOR:g}', len(jset ^ expected), 0))

    def _run_operator_algebra(self):
        params = self.scenario.parameters
        law = scale_law(params.get('scale', 'scale:diag-n'))
        family = scale_family(law, ks=(1,), size=params.get('dim', 6), name='scale')
        _, stats = self._step('operators', OperatorAlgebraStep(self.scenario.trials, self.scenario.seed),
                              family)
        for name, count in sorted(stats['violations'].items()):
            self.checks.append(check(f'operator algebra: {name}', count, 0))
        self.checks.append(check('(A^×)^× matrix', stats['double_adjoint_gap'], IDENTITY_TOL))


def run_scenario(scenario, out_dir: str | None = None, formats: str | None = None,
                 jobs: int = 1) -> tuple[bool, dict]:
    """
    Run one scenario and write its reports.

    Returns:
        Tuple of (passed, paths_dict)
    """
    print("=" * 60)
    print(f"🧪 Scenario: {scenario.name} ({scenario.construction}, seed {scenario.seed})")
    print("=" * 60)
    runner = ScenarioRunner(scenario, jobs)
    sections, checks, timings = runner.run()
    writer = ReportWriter(out_dir or scenario.outputs.get('directory', REPORTS_DIR),
                          formats or scenario.formats)
    report = writer.build(scenario.echo(), sections, checks)
    paths = writer.write(report, scenario.basename, timings)

    failed = [c for c in checks if not c['passed']]
    if failed:
        print(f"❌ {scenario.name}: {len(failed)} of {len(checks)} checks failed")
        for c in failed[:5]:
            print(f"   ✗ {c['name']}: residual {c['residual']:.3e} (tolerance {c['tolerance']:.1e})")
    else:
        print(f"✅ {scenario.name}: all {len(checks)} checks passed")
    for kind, path in sorted(paths.items()):
        print(f"   {kind}: {path}")
    return report['passed'], paths


def _resolve(target: str):
    if os.path.isfile(target):
        return load_scenario(target)
    if target.endswith(('.toml', '.json')):
        raise ConfigError("config file not found", target)
    for extension in ('.toml', '.json'):
        candidate = os.path.join(SCENARIOS_DIR, target + extension)
        if os.path.isfile(candidate):
            return load_scenario(candidate)
    return builtin_scenario(target)


def _command_run(args) -> int:
    targets = sorted(BUILTIN_SCENARIOS) if args.all else args.targets
    if not targets:
        print("❌ run needs a config path, a scenario name or --all", file=sys.stderr)
        return 2
    scenarios = [_resolve(target).with_seed(args.seed) for target in targets]

    # one target gets the threads for its sweep; several targets share them as a pool
    sweep_jobs = args.jobs if len(scenarios) == 1 else 1

    def execute(scenario):
        return run_scenario(scenario, args.out, args.format, sweep_jobs)[0]

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(execute, scenarios))
    else:
        outcomes = [execute(scenario) for scenario in scenarios]

    failed = [s.name for s, ok in zip(scenarios, outcomes) if not ok]
    print(f"\n📊 {len(outcomes) - len(failed)}/{len(outcomes)} scenarios passed")
    if failed:
        print(f"   failed: {', '.join(failed)}")
        return 1
    return 0


def _command_list(args) -> int:
    entries = list_scenarios()
    width = max(len(name) for name, _ in entries)
    for name, description in entries:
        print(f"{name:<{width}}  {description}")
    return 0


def _command_explain(args) -> int:
    print(explain(args.name), end='')
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='pipframe',
                                     description='Reproducing pairs and pip-space checks')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='run scenarios from config files or the catalog')
    run.add_argument('targets', nargs='*', help='config paths (.toml/.json) or built-in names')
    run.add_argument('--all', action='store_true', help='run every built-in scenario')
    run.add_argument('--seed', type=int, default=None, help='override the scenario seed')
    run.add_argument('--out', default=None, help='report directory')
    run.add_argument('--format', choices=REPORT_FORMATS, default=None)
    run.add_argument('--jobs', type=int, default=DEFAULT_JOBS,
                     help='threads: scenarios run concurrently, or one scenario sweeps in parallel')
    run.set_defaults(handler=_command_run)

    listing = commands.add_parser('list', help='list built-in scenarios')
    listing.set_defaults(handler=_command_list)

    explainer = commands.add_parser('explain', help='describe what a built-in scenario checks')
    explainer.add_argument('name')
    explainer.set_defaults(handler=_command_explain)
    return parser


def main(argv=None) -> int:
    """Exit status: 0 all checks pass, 1 a check failed, 2 usage or config error."""
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"❌ Config error: {exc}", file=sys.stderr)
        return 2
    except (DimensionError, DomainError) as exc:
        print(f"❌ {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())

import json
import os

import pytest

from src.config import REPORT_SCHEMA, SCENARIOS_DIR
import src.main as cli
from src.main import main
from src.scenarios import builtin_scenario, list_scenarios
from src.core.errors import ConfigError
from src.utils import save_families
from src.core.frames import VectorFamily
from src.core.measure import FiniteMeasureSpace


def test_list_shows_catalog(capsys):
    assert main(['list']) == 0
    out = capsys.readouterr().out
    assert len(out.strip().splitlines()) == len(list_scenarios()) >= 8
    assert 'paper-weighted-1-over-n' in out


def test_explain_describes_scenario(capsys):
    assert main(['explain', 'paper-weighted-1-over-n']) == 0
    assert 'semi-frame' in capsys.readouterr().out


def test_explain_unknown_scenario():
    assert main(['explain', 'no-such-scenario']) == 2


def test_builtin_scenario_unknown_name():
    with pytest.raises(ConfigError) as info:
        builtin_scenario('no-such-scenario')
    assert info.value.key == 'no-such-scenario'


def test_run_writes_reports(tmp_path):
    assert main(['run', 'onb-sanity', '--out', str(tmp_path)]) == 0
    with open(tmp_path / 'onb-sanity.json', encoding='utf-8') as handle:
        report = json.load(handle)
    assert report['schema'] == REPORT_SCHEMA
    assert report['passed']
    assert report['scenario']['name'] == 'onb-sanity'
    assert all(check['passed'] for check in report['checks'])
    text = (tmp_path / 'onb-sanity.txt').read_text(encoding='utf-8')
    assert 'verdict: PASS' in text
    assert sum(line.startswith('  PASS ') for line in text.splitlines()) == len(report['checks'])
    timings = json.loads((tmp_path / 'onb-sanity.timings.json').read_text(encoding='utf-8'))
    assert 'pair' in timings['timings']


def test_reports_are_deterministic(tmp_path):
    first, second = tmp_path / 'first', tmp_path / 'second'
    assert main(['run', 'onb-sanity', '--out', str(first), '--format', 'json']) == 0
    assert main(['run', 'onb-sanity', '--out', str(second), '--format', 'json']) == 0
    assert (first / 'onb-sanity.json').read_bytes() == (second / 'onb-sanity.json').read_bytes()
    assert not (first / 'onb-sanity.txt').exists()


def test_seed_override_is_echoed(tmp_path):
    assert main(['run', 'onb-sanity', '--out', str(tmp_path), '--seed', '11', '--format', 'json']) == 0
    report = json.loads((tmp_path / 'onb-sanity.json').read_text(encoding='utf-8'))
    assert report['scenario']['seed'] == 11


def test_run_config_files(tmp_path):
    config = os.path.join(SCENARIOS_DIR, 'weighted-1-over-n-squared.toml')
    assert main(['run', config, 'mercedes-frame', '--out', str(tmp_path), '--jobs', '2']) == 0
    assert (tmp_path / 'weighted-1-over-n-squared.json').exists()
    assert (tmp_path / 'mercedes-frame.json').exists()


def test_negative_weight_config_exits_with_usage_error(tmp_path):
    config = tmp_path / 'negative.toml'
    config.write_text('name = "neg"\nconstruction = "weighted_pair"\n\n'
                      '[parameters]\nweights = [1.0, -1.0]\n', encoding='utf-8')
    assert main(['run', str(config), '--out', str(tmp_path)]) == 2


def test_unknown_scenario_exits_with_usage_error(tmp_path):
    assert main(['run', 'no-such-scenario', '--out', str(tmp_path)]) == 2
    assert main(['run', 'missing.toml', '--out', str(tmp_path)]) == 2


def test_run_needs_a_target():
    assert main(['run']) == 2


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def singular_pair_config(tmp_path, expect):
    space = FiniteMeasureSpace.counting(2)
    family = VectorFamily(space, [[1.0, 0.0], [1.0, 0.0]])
    save_families(str(tmp_path / 'singular.json'), family, family)
    config = tmp_path / f'singular-{expect}.toml'
    config.write_text(f'name = "singular-{expect}"\nconstruction = "custom_families"\n\n'
                      f'[parameters]\nfile = "singular.json"\nexpect = "{expect}"\n', encoding='utf-8')
    return str(config)


def test_failed_check_exits_with_one(tmp_path):
    assert main(['run', singular_pair_config(tmp_path, 'pass'), '--out', str(tmp_path)]) == 1
    report = json.loads((tmp_path / 'singular-pass.json').read_text(encoding='utf-8'))
    assert not report['passed']


def test_expected_failure_passes(tmp_path):
    assert main(['run', singular_pair_config(tmp_path, 'fail'), '--out', str(tmp_path)]) == 0


def test_jobs_reach_the_sweep_of_a_single_scenario(tmp_path, monkeypatch):
    seen = []

    class RecordingSweep(cli.SweepStep):
        def __init__(self, *args, **kwargs):
            seen.append(kwargs.get('jobs'))
            super().__init__(*args, **kwargs)

    monkeypatch.setattr(cli, 'SweepStep', RecordingSweep)
    sequential, parallel = tmp_path / 'sequential', tmp_path / 'parallel'
    name = 'weighted-1-over-n-squared'
    assert main(['run', name, '--out', str(sequential), '--format', 'json']) == 0
    assert main(['run', name, '--out', str(parallel), '--format', 'json', '--jobs', '3']) == 0
    assert seen == [1, 3]
    assert (sequential / f'{name}.json').read_bytes() == (parallel / f'{name}.json').read_bytes()

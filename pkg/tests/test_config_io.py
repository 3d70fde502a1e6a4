import os

import pytest
from jsonschema import Draft202012Validator

from src.config import DEFAULT_SEED, SCENARIOS_DIR
from src.core.errors import ConfigError
from src.scenarios import BUILTIN_SCENARIOS
from src.utils.config_io import SCENARIO_SCHEMA, load_scenario, validate_scenario

VALID_TOML = """\
name = "weighted-demo"
construction = "weighted_pair"
seed = 7

[parameters]
weights = "1/n"
dim = 8
sweep = [16, 4, 4]

[outputs]
formats = "json"
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    return str(path)


def test_load_valid_toml(tmp_path):
    scenario = load_scenario(write(tmp_path, 'demo.toml', VALID_TOML))
    assert scenario.name == 'weighted-demo'
    assert scenario.seed == 7
    assert scenario.parameters['sweep'] == [4, 16]
    assert scenario.formats == 'json'
    assert scenario.basename == 'weighted-demo'
    assert scenario.echo()['parameters']['weights'] == '1/n'


def test_load_valid_json(tmp_path):
    text = '{"name": "grid", "construction": "lp_duality", "parameters": {"indices": [[1, "inf"]]}}'
    scenario = load_scenario(write(tmp_path, 'grid.json', text))
    assert scenario.construction == 'lp_duality'
    assert scenario.seed == DEFAULT_SEED


def test_seed_override():
    scenario = validate_scenario({'name': 'a', 'construction': 'fourier_pair'})
    assert scenario.with_seed(None) is scenario
    assert scenario.with_seed(3).seed == 3


def test_unknown_key_reports_line(tmp_path):
    text = VALID_TOML.replace('dim = 8', 'dim = 8\ncolour = "red"')
    with pytest.raises(ConfigError) as info:
        load_scenario(write(tmp_path, 'bad.toml', text))
    assert info.value.key == 'colour'
    assert info.value.line == 8
    assert 'bad.toml' in str(info.value)


def test_negative_weight_rejected(tmp_path):
    text = VALID_TOML.replace('weights = "1/n"', 'weights = [1.0, -2.0, 3.0]')
    with pytest.raises(ConfigError) as info:
        load_scenario(write(tmp_path, 'negative.toml', text))
    assert info.value.key == 'weights'
    assert info.value.line == 6


def test_unknown_weight_law_rejected():
    with pytest.raises(ConfigError):
        validate_scenario({'name': 'a', 'construction': 'weighted_pair',
                           'parameters': {'weights': 'log n'}})


def test_missing_required_key():
    with pytest.raises(ConfigError):
        validate_scenario({'construction': 'weighted_pair'})


def test_unknown_construction():
    with pytest.raises(ConfigError) as info:
        validate_scenario({'name': 'a', 'construction': 'wavelets'})
    assert info.value.key == 'construction'


@pytest.mark.parametrize('construction, parameters, key', [
    ('weighted_pair', {'sweep': [8]}, 'sweep'),
    ('weighted_pair', {'sweep': [8, 8]}, 'sweep'),
    ('weighted_pair', {'dim': 0}, 'dim'),
    ('weighted_pair', {'weights': []}, 'weights'),
    ('rkhs_weight_pair', {'kernel': 'rkhs:laplace'}, 'kernel'),
    ('scale_triplet', {'scale': 'scale:unknown'}, 'scale'),
    ('lp_duality', {'combine': 'min'}, 'combine'),
    ('lp_duality', {'indices': [[0.5, 2]]}, 'indices'),
    ('lp_duality', {'indices': [[1, 2, 3]]}, 'indices'),
    ('minmax_pair', {'expect': 'maybe'}, 'expect'),
    ('minmax_pair', {'trials': True}, 'trials'),
])
def test_bad_parameter_values(construction, parameters, key):
    with pytest.raises(ConfigError) as info:
        validate_scenario({'name': 'a', 'construction': construction, 'parameters': parameters})
    assert info.value.key == key


def test_parameter_not_read_by_construction_is_unknown():
    with pytest.raises(ConfigError) as info:
        validate_scenario({'name': 'a', 'construction': 'weighted_pair',
                           'parameters': {'kernel': 'rkhs:identity'}})
    assert info.value.key == 'kernel'
    assert 'unknown key' in str(info.value)


def test_nonpositive_tolerance_rejected():
    with pytest.raises(ConfigError) as info:
        validate_scenario({'name': 'a', 'construction': 'fourier_pair',
                           'tolerances': {'gl_tolerance': 0.0}})
    assert info.value.key == 'gl_tolerance'


def test_bad_scenario_name():
    with pytest.raises(ConfigError) as info:
        validate_scenario({'name': 'has space', 'construction': 'fourier_pair'})
    assert info.value.key == 'name'


def test_scenario_schema_is_valid_draft_2020_12():
    Draft202012Validator.check_schema(SCENARIO_SCHEMA)


def test_builtin_catalog_matches_schema():
    for name, entry in BUILTIN_SCENARIOS.items():
        assert Draft202012Validator(SCENARIO_SCHEMA).is_valid({'name': name, **entry})


def test_bad_output_format():
    with pytest.raises(ConfigError):
        validate_scenario({'name': 'a', 'construction': 'fourier_pair', 'outputs': {'formats': 'xml'}})


def test_toml_syntax_error_has_line(tmp_path):
    with pytest.raises(ConfigError) as info:
        load_scenario(write(tmp_path, 'broken.toml', 'name = "a"\nconstruction =\n'))
    assert info.value.line == 2


def test_json_syntax_error_has_line(tmp_path):
    with pytest.raises(ConfigError) as info:
        load_scenario(write(tmp_path, 'broken.json', '{\n  "name": "a",\n  oops\n}'))
    assert info.value.line == 3


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_scenario(str(tmp_path / 'absent.toml'))


def test_custom_families_file_resolved_relative_to_config():
    scenario = load_scenario(os.path.join(SCENARIOS_DIR, 'mercedes-frame.toml'))
    assert scenario.parameters['file'] == os.path.join(SCENARIOS_DIR, 'data', 'mercedes.json')


def test_custom_families_file_must_exist(tmp_path):
    text = 'name = "c"\nconstruction = "custom_families"\n[parameters]\nfile = "missing.json"\n'
    with pytest.raises(ConfigError) as info:
        load_scenario(write(tmp_path, 'custom.toml', text))
    assert info.value.key == 'file'

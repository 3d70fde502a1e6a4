"""Scenario configuration: loading and validating TOML or JSON files"""
import json
import os
import re

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, replace

from jsonschema import Draft202012Validator

from ..config import DEFAULT_FORMAT, DEFAULT_SEED, DEFAULT_TRIALS, REPORT_FORMATS
from ..core.errors import ConfigError, DomainError
from ..core.frames import parse_weight_law
from ..core.lattice import LpIndex
from ..core.scales import SCALE_PRESETS, kernel_preset


# parameter keys each construction reads
CONSTRUCTION_PARAMETERS = {
    'weighted_pair': ('weights', 'dim', 'sweep', 'trials'),
    'minmax_pair': ('dim', 'trials', 'expect'),
    'rkhs_weight_pair': ('kernel', 'power', 'dim', 'sweep', 'trials'),
    'custom_families': ('file', 'expect', 'trials'),
    'fourier_pair': ('dim', 'sweep', 'trials'),
    'lp_duality': ('dim', 'indices', 'combine', 'trials'),
    'scale_triplet': ('scale', 'dim', 'sweep', 'k', 'trials'),
    'operator_algebra': ('scale', 'dim', 'trials'),
}
CONSTRUCTIONS = tuple(CONSTRUCTION_PARAMETERS)

_COUNT = {'type': 'integer', 'minimum': 1}
_POSITIVE = {'type': 'number', 'exclusiveMinimum': 0}


def _closed(properties: dict, **extra) -> dict:
    """Object schema whose keys must be among `properties`."""
    return {'type': 'object', 'properties': properties,
            'propertyNames': {'enum': sorted(properties)}, **extra}


SCENARIO_SCHEMA = {
    '$schema': 'https://json-schema.org/draft/2020-12/schema',
    **_closed({
        'name': {'type': 'string', 'pattern': r'^[A-Za-z0-9._-]+$'},
        'construction': {'enum': list(CONSTRUCTIONS)},
        'seed': {'type': 'integer', 'minimum': 0},
        'description': {'type': 'string'},
        'parameters': _closed({
            'weights': {'type': ['string', 'array'], 'minItems': 1, 'items': _POSITIVE},
            'dim': _COUNT,
            'trials': _COUNT,
            'k': _COUNT,
            'power': {'type': 'integer', 'minimum': 0},
            'sweep': {'type': 'array', 'minItems': 2, 'items': _COUNT},
            'kernel': {'type': 'string'},
            'scale': {'enum': sorted(SCALE_PRESETS)},
            'combine': {'enum': ['sum', 'max']},
            'expect': {'enum': ['pass', 'fail']},
            'indices': {'type': 'array', 'items': {
                'type': 'array', 'minItems': 2, 'maxItems': 2,
                'items': {'type': ['number', 'string']}}},
            'file': {'type': 'string'},
        }),
        'tolerances': _closed({
            'gl_tolerance': _POSITIVE,
            'rank_tolerance': _POSITIVE,
            'duality_tolerance': _POSITIVE,
        }),
        'outputs': _closed({
            'directory': {'type': 'string'},
            'formats': {'enum': list(REPORT_FORMATS)},
            'basename': {'type': 'string', 'minLength': 1},
        }),
    }, required=['name', 'construction']),
    'allOf': [
        {'if': {'required': ['construction'], 'properties': {'construction': {'const': name}}},
         'then': {'properties': {'parameters': {'propertyNames': {'enum': list(keys)}}}}}
        for name, keys in CONSTRUCTION_PARAMETERS.items()
    ],
}

_SCHEMA_VALIDATOR = Draft202012Validator(SCENARIO_SCHEMA)


@dataclass(frozen=True)
class Scenario:
    """A validated scenario; `source` is the config path or '<builtin>'."""
    name: str
    construction: str
    seed: int = DEFAULT_SEED
    description: str = ''
    parameters: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    source: str = '<builtin>'

    @property
    def trials(self) -> int:
        return int(self.parameters.get('trials', DEFAULT_TRIALS))

    @property
    def basename(self) -> str:
        return self.outputs.get('basename', self.name)

    @property
    def formats(self) -> str:
        return self.outputs.get('formats', DEFAULT_FORMAT)

    def with_seed(self, seed: int | None) -> "Scenario":
        return self if seed is None else replace(self, seed=int(seed))

    def echo(self) -> dict:
        """Everything that determines the run, for the report header."""
        return {
            'name': self.name,
            'construction': self.construction,
            'seed': self.seed,
            'parameters': dict(self.parameters),
            'tolerances': dict(self.tolerances),
        }




def _line_of(text: str | None, key: str | None) -> int | None:
    """First line that assigns `key` or opens a `[key]` table."""
    if not text or not key:
        return None
    pattern = re.compile(
        rf'^\s*(?:["\']?{re.escape(key)}["\']?\s*[=:]|\[\s*{re.escape(key)}\s*\])', re.MULTILINE)
    match = pattern.search(text)
    return text.count('\n', 0, match.start()) + 1 if match else None


def _schema_failure(error, path: str, text: str | None) -> ConfigError:
    """ConfigError for a jsonschema error, keyed by the innermost table key."""
    location = '.'.join(str(part) for part in error.absolute_path)
    if 'propertyNames' in error.absolute_schema_path:
        key = str(error.instance)
        message = f"unknown key in [{location or 'scenario'}]"
    else:
        names = [part for part in error.absolute_path if isinstance(part, str)]
        key = names[-1] if names else None
        message = f"{location}: {error.message}" if location else error.message
    return ConfigError(message, path, _line_of(text, key), key)


def _check_parameters(params: dict, construction: str, path: str, text: str | None) -> dict:
    """Checks the schema cannot state: weight laws, presets, exponents and the families file."""
    def fail(message: str, key: str):
        raise ConfigError(message, path, _line_of(text, key), key)

    out = dict(params)
    weights = params.get('weights')
    if isinstance(weights, str):
        try:
            parse_weight_law(weights)
        except DomainError as exc:
            fail(str(exc), 'weights')
    elif weights is not None:
        out['weights'] = [float(w) for w in weights]
    for key in ('dim', 'trials', 'k', 'power'):
        if key in params:
            out[key] = int(params[key])
    if 'sweep' in params:
        out['sweep'] = sorted({int(n) for n in params['sweep']})
        if len(out['sweep']) < 2:
            fail("sweep needs at least two distinct truncation sizes", 'sweep')
    if 'kernel' in params:
        try:
            kernel_preset(params['kernel'], [1.0])
        except DomainError as exc:
            fail(str(exc), 'kernel')
    if 'indices' in params:
        for entry in params['indices']:
            try:
                LpIndex.from_exponents(*entry)
            except (DomainError, ValueError, ZeroDivisionError) as exc:
                fail(f"index {entry!r}: {exc}", 'indices')
        out['indices'] = [list(entry) for entry in params['indices']]
    if construction == 'custom_families':
        if 'file' not in params:
            fail("custom_families needs a families file", 'parameters')
        base = os.path.dirname(os.path.abspath(path)) if path != '<builtin>' else os.getcwd()
        resolved = os.path.normpath(os.path.join(base, params['file']))
        if not os.path.isfile(resolved):
            fail(f"families file not found: {resolved}", 'file')
        out['file'] = resolved
    return out


def validate_scenario(data: dict, path: str = '<builtin>', text: str | None = None) -> Scenario:
    """
    Check a parsed config against SCENARIO_SCHEMA, then the domain rules, and build a Scenario.

    Raises:
        ConfigError: unknown key, missing field or bad value, with path and line
    """
    errors = sorted(_SCHEMA_VALIDATOR.iter_errors(data),
                    key=lambda error: [str(part) for part in error.absolute_path])
    if errors:
        raise _schema_failure(errors[0], path, text)

    construction = data['construction']
    params = _check_parameters(data.get('parameters', {}), construction, path, text)
    tolerances = {key: float(value) for key, value in data.get('tolerances', {}).items()}
    return Scenario(data['name'], construction, int(data.get('seed', DEFAULT_SEED)),
                    data.get('description', ''), params, tolerances,
                    dict(data.get('outputs', {})), path)


def load_scenario(path: str) -> Scenario:
    """
    Read a .toml or .json scenario file.

    Raises:
        ConfigError: unreadable file, syntax error or invalid content
    """
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", path) from None

    if path.endswith('.json'):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(exc.msg, path, exc.lineno) from None
    else:
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            match = re.search(r'line (\d+)', str(exc))
            raise ConfigError(str(exc), path, int(match.group(1)) if match else None) from None
    return validate_scenario(data, path, text)

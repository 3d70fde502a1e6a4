"""JSON codecs for spaces, fields, descriptors, families and operators"""
import json
import math
from fractions import Fraction

import numpy as np

from ..core.errors import DomainError
from ..core.frames import VectorFamily
from ..core.lattice import LpIndex, ScaleIndex, as_fraction
from ..core.measure import FiniteMeasureSpace, ScalarField
from ..core.spaces import Inductive, Lp, Projective, WeightedL2


# === plain values ===

def to_plain(value):
    """numpy scalars/arrays, complex numbers and infinities into JSON-safe values."""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [to_plain(float(value.real)), to_plain(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, Fraction):
        return str(value)
    return value


def dumps(document: dict) -> str:
    """Deterministic JSON: sorted keys, fixed indentation."""
    return json.dumps(to_plain(document), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# === spaces and fields ===

def space_to_dict(space: FiniteMeasureSpace) -> dict:
    return {'labels': list(space.labels), 'weights': [float(w) for w in space.weights]}


def space_from_dict(data: dict) -> FiniteMeasureSpace:
    return FiniteMeasureSpace(data['labels'], data['weights'])


def field_to_dict(field: ScalarField, space_id: str) -> dict:
    return {'space': space_id,
            're': [float(v) for v in field.values.real],
            'im': [float(v) for v in field.values.imag]}


def field_from_dict(data: dict, spaces: dict) -> ScalarField:
    space = spaces[data['space']]
    values = np.asarray(data['re'], dtype=float) + 1j * np.asarray(data.get('im', [0.0] * len(data['re'])))
    return ScalarField(space, values)


# === descriptors ===

def _exponent(inv: Fraction):
    """p as an int, a fraction string such as '3/2', or 'inf'."""
    if inv == 0:
        return "inf"
    p = 1 / inv
    return p.numerator if p.denominator == 1 else str(p)


def descriptor_to_dict(desc) -> dict:
    if isinstance(desc, Lp):
        return {'kind': 'Lp', 'p': _exponent(desc.inv_p)}
    if isinstance(desc, WeightedL2):
        return {'kind': 'WeightedL2', 'm': [float(x) for x in desc.m]}
    if isinstance(desc, (Projective, Inductive)):
        return {'kind': type(desc).__name__, 'a': descriptor_to_dict(desc.a),
                'b': descriptor_to_dict(desc.b), 'combine': desc.combine}
    raise DomainError(f"cannot serialize descriptor {desc!r}")


def descriptor_from_dict(data: dict, space: FiniteMeasureSpace):
    kind = data.get('kind')
    if kind == 'Lp':
        p = data.get('p', 2)
        return Lp(space, float('inf') if str(p).lower() in ('inf', '∞') else p)
    if kind == 'WeightedL2':
        return WeightedL2(space, data['m'])
    if kind in ('Projective', 'Inductive'):
        cls = Projective if kind == 'Projective' else Inductive
        return cls(descriptor_from_dict(data['a'], space), descriptor_from_dict(data['b'], space),
                   data.get('combine', 'sum'))
    raise DomainError(f"unknown descriptor kind {kind!r}")


# === indices ===

def index_to_json(index):
    if isinstance(index, ScaleIndex):
        return index.k
    return [str(index.inv_p), str(index.inv_q)]


def index_from_json(data):
    if isinstance(data, int):
        return ScaleIndex(data)
    return LpIndex(as_fraction(data[0]), as_fraction(data[1]))


# === families and operators ===

def family_to_dict(family: VectorFamily, space_id: str) -> dict:
    members = [[[float(z.real), float(z.imag)] for z in row] for row in family.members]
    data = {'space': space_id, 'dim': family.dim, 'members': members}
    if family.bound is not None:
        data['bound'] = float(family.bound)
    return data


def family_from_dict(data: dict, spaces: dict, name: str = '') -> VectorFamily:
    space = spaces[data['space']]
    rows = data['members']
    members = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
    if members.size == 0:
        members = members.reshape(len(rows), int(data['dim']))
    if members.shape[1] != int(data['dim']):
        raise DomainError(f"family '{name}' declares dim {data['dim']} but has {members.shape[1]} columns")
    return VectorFamily(space, members, bound=data.get('bound'), name=name)


def operator_to_dict(operator, family_id: str) -> dict:
    return {
        'matrix_re': operator.matrix.real.tolist(),
        'matrix_im': operator.matrix.imag.tolist(),
        'family': family_id,
        'jset': [[index_to_json(q), index_to_json(p)] for q, p in operator.sorted_jset()],
    }


def load_families(path: str) -> tuple[VectorFamily, VectorFamily]:
    """
    Read {"spaces": {id: space}, "families": {"psi": family, "phi": family}}.
    """
    with open(path, encoding='utf-8') as handle:
        document = json.load(handle)
    spaces = {key: space_from_dict(value) for key, value in document['spaces'].items()}
    families = document['families']
    return (family_from_dict(families['psi'], spaces, 'ψ'),
            family_from_dict(families['phi'], spaces, 'φ'))


def save_families(path: str, psi: VectorFamily, phi: VectorFamily, space_id: str = 'X') -> str:
    document = {
        'spaces': {space_id: space_to_dict(psi.space)},
        'families': {'psi': family_to_dict(psi, space_id), 'phi': family_to_dict(phi, space_id)},
    }
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(dumps(document))
    return path

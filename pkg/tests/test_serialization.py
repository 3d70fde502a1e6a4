import json
from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import DomainError
from src.core.frames import VectorFamily, fourier_family
from src.core.lattice import LpIndex, ScaleIndex
from src.core.measure import ScalarField
from src.core.operators import PipOperator, scale_family
from src.core.spaces import Inductive, Lp, Projective, WeightedL2
from src.utils.serialization import (
    descriptor_from_dict, descriptor_to_dict, dumps, family_from_dict, field_from_dict,
    field_to_dict, index_from_json, index_to_json, load_families, operator_to_dict,
    save_families, to_plain
)


def test_to_plain_handles_numpy_and_special_values():
    plain = to_plain({
        'int': np.int64(3), 'float': np.float32(0.5), 'flag': np.bool_(True),
        'z': 1 + 2j, 'inf': float('inf'), 'nan': float('nan'),
        'array': np.array([1.0, 2.0]), 'ratio': Fraction(4, 3), 1: 'key',
    })
    assert plain == {
        'int': 3, 'float': 0.5, 'flag': True, 'z': [1.0, 2.0], 'inf': 'inf',
        'nan': 'nan', 'array': [1.0, 2.0], 'ratio': '4/3', '1': 'key',
    }
    assert type(plain['int']) is int and type(plain['flag']) is bool


def test_dumps_is_sorted_and_newline_terminated():
    text = dumps({'b': 1, 'a': {'d': 2, 'c': 3}})
    assert text.endswith('\n')
    assert text.index('"a"') < text.index('"b"')
    assert text.index('"c"') < text.index('"d"')
    assert dumps({'a': 1, 'b': 2}) == dumps({'b': 2, 'a': 1})


def test_lp_exponents_serialize_exactly(counting3):
    assert descriptor_to_dict(Lp(counting3, 'inf')) == {'kind': 'Lp', 'p': 'inf'}
    assert descriptor_to_dict(Lp(counting3, 2)) == {'kind': 'Lp', 'p': 2}
    assert descriptor_to_dict(Lp(counting3, Fraction(4, 3))) == {'kind': 'Lp', 'p': '4/3'}


def test_nested_descriptor_survives_codec(counting3):
    desc = Inductive(Lp(counting3, 1), Lp(counting3, 'inf'), 'max')
    data = json.loads(dumps(descriptor_to_dict(desc)))
    assert descriptor_from_dict(data, counting3) == desc
    projective = Projective(WeightedL2(counting3, [1.0, 2.0, 3.0]), Lp(counting3, 4))
    assert descriptor_from_dict(descriptor_to_dict(projective), counting3) == projective


def test_unknown_descriptor_kind(counting3):
    with pytest.raises(DomainError):
        descriptor_from_dict({'kind': 'Orlicz'}, counting3)


def test_field_codec_keeps_complex_values(weighted2):
    field = ScalarField(weighted2, [1 + 1j, -2.0])
    data = field_to_dict(field, 'X')
    assert data == {'space': 'X', 're': [1.0, -2.0], 'im': [1.0, 0.0]}
    assert np.array_equal(field_from_dict(data, {'X': weighted2}).values, field.values)


def test_index_json_forms():
    assert index_to_json(ScaleIndex(-2)) == -2
    assert index_to_json(LpIndex.from_exponents(4, 'inf')) == ['1/4', '0']
    assert index_from_json(['1/4', '0']) == LpIndex.from_exponents(4, 'inf')
    assert index_from_json(3) == ScaleIndex(3)


def test_save_and_load_families(tmp_path):
    psi = fourier_family(4)
    space = psi.space
    phi = VectorFamily(space, 2.0 * psi.members, name='φ')
    path = save_families(str(tmp_path / 'pair.json'), psi, phi)
    loaded_psi, loaded_phi = load_families(path)
    assert loaded_psi.space == space
    assert np.array_equal(loaded_psi.members, psi.members)
    assert np.array_equal(loaded_phi.members, phi.members)
    assert loaded_psi.bound == psi.bound


def test_family_dim_mismatch_rejected(counting2):
    data = {'space': 'X', 'dim': 3, 'members': [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]}
    with pytest.raises(DomainError):
        family_from_dict(data, {'X': counting2})


def test_operator_dict_lists_sorted_jset():
    family = scale_family(lambda n: np.arange(1, n + 1, dtype=float), ks=(1,), size=4)
    A = PipOperator(family, generator=lambda n: np.diag(np.arange(1, n + 1, dtype=float)))
    data = operator_to_dict(A, 'scale')
    assert data['family'] == 'scale'
    assert len(data['jset']) == len(A.jset)
    assert data['matrix_im'] == np.zeros((4, 4)).tolist()

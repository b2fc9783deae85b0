import json
from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from qvar.extended import INF
from qvar.generate import generate_random_instance
from qvar.instance import CountableInstance, dumps, instance_from_dict, load, loads, save
from qvar.spaces import QVarError


def test_roundtrip_preserves_everything(tmp_path):
    inst = generate_random_instance(4, 6, 3, "caristi-valid")
    path = tmp_path / "i.json"
    save(inst, path)
    back = load(path)
    assert back == inst
    assert dumps(back) == dumps(inst)


def test_values_are_exact_strings():
    inst = generate_random_instance(2, 4, 1, "T1")
    data = json.loads(dumps(inst))
    flat = [v for row in data["gauge"][0]["matrix"] for v in row]
    assert all(isinstance(v, (int, str)) for v in flat)


def test_countable_instance_roundtrip():
    data = {
        "points": {"countable": {"catalog": "q4-grid", "limits": ["0", "1"]}},
        "gauge": [{"name": "q4", "catalog": "q4", "relax": "q4"}],
    }
    inst = instance_from_dict(data)
    assert isinstance(inst, CountableInstance)
    assert loads(dumps(inst)) == inst


def test_objective_domain_and_infimum(chain4):
    f = chain4.objective("f")
    assert f.infimum() == 0
    assert f.domain() == [0, 1, 2, 3]


def test_unknown_point_rejected(chain4):
    with pytest.raises((QVarError, KeyError)):
        chain4.idx("nope")


@given(st.integers(0, 10**6), st.integers(1, 7), st.integers(1, 3))
def test_generated_instances_roundtrip(seed, n, k):
    inst = generate_random_instance(seed, n, k)
    assert loads(dumps(inst)) == inst
    f = inst.objective("f")
    assert any(v is not INF for v in f.values)

import json

import pytest
from hypothesis import given, strategies as st

from qvar.generate import PROFILES, ProfileError, generate_random_instance, twin_instance
from qvar.principles import caristi_choices
from qvar.spaces import validate_f_quasi_gauge
from qvar.suite import run_suite
from qvar.topology import separation_class


def test_seed1_t1():
    inst = generate_random_instance(1, 5, 1, "T1")
    assert separation_class(inst.gauge).value == "T1"


def test_generation_is_deterministic():
    for p in PROFILES:
        assert generate_random_instance(7, 5, 2, p) == generate_random_instance(7, 5, 2, p)


def test_profile_errors():
    with pytest.raises(ProfileError):
        generate_random_instance(0, 1, 1, "T0-not-T1")
    with pytest.raises(ProfileError):
        generate_random_instance(0, 3, 1, "bogus")
    with pytest.raises(ProfileError):
        twin_instance(0, 1)


@given(st.integers(0, 10**6), st.integers(2, 8), st.integers(1, 3), st.sampled_from(PROFILES))
def test_profiles_meet_their_contract(seed, n, k, profile):
    inst = generate_random_instance(seed, n, k, profile)
    assert validate_f_quasi_gauge(inst.gauge).valid
    want = "T0" if profile == "T0-not-T1" else "T1"
    assert separation_class(inst.gauge).value == want
    if profile == "caristi-valid":
        f = inst.objective("f")
        for x, choices in enumerate(caristi_choices(inst, f)):
            assert set(choices) & set(inst.maps["T"].images[x])


@given(st.integers(0, 10**6), st.integers(2, 8), st.integers(1, 3))
def test_twin_is_neither(seed, n, k):
    inst = twin_instance(seed, n, k)
    assert separation_class(inst.gauge).value == "neither"
    assert validate_f_quasi_gauge(inst.gauge).valid


def test_suite_report_and_exit_codes():
    rep = run_suite("T1", 10, ["ekeland", "caristi"], seed=2)
    assert rep.totals["FAILED"] == 0 and rep.exit_code == 0
    assert "caristi-strong" in rep.table()
    data = json.loads(rep.to_json())
    assert data["totals"]["verified"] == 30


def test_suite_refusals_only():
    # T0-not-T1 instances are refused by every solver that needs T1
    rep = run_suite("T0-not-T1", 5, ["ekeland"], seed=0)
    assert rep.totals["solved"] == 0 and rep.exit_code == 2


def test_suite_parallel_matches_sequential():
    a = run_suite("takahashi-valid", 12, ["takahashi", "arutyunov"], seed=5).to_json()
    b = run_suite("takahashi-valid", 12, ["takahashi", "arutyunov"], seed=5, jobs=3).to_json()
    assert a == b


def test_suite_unknown_principle():
    with pytest.raises(ValueError):
        run_suite("T1", 1, ["nope"])


def test_empty_principle_list():
    rep = run_suite("T1", 5, [])
    assert rep.cases == [] and rep.summary == {} and rep.exit_code == 0


def test_chain_profile_matches_hand_built(chain4):
    inst = generate_random_instance(0, 4, 1, "chain")
    assert inst.objective("f").values == chain4.objective("f").values
    d, e = inst.gauge.members[0], chain4.gauge.members[0]
    assert all(d(i + 1, i) == e(i + 1, i) == 1 for i in range(3))

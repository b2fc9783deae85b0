import json
from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from qvar import catalog as cat
from qvar.instance import make_instance
from qvar.iteration import (
    EtaSpec,
    TableRule,
    check_declared_limit,
    eta_iterate,
    gelman_reduce,
)
from qvar.spaces import HypothesisError

HALF = Fr(1, 2)


@pytest.fixture
def halving_chain():
    f = [Fr(1), HALF, Fr(1, 4), Fr(0)]
    d = [[abs(f[i] - f[j]) for j in range(4)] for i in range(4)]
    inst = make_instance(["p0", "p1", "p2", "p3"], {"d": d}, objectives={"f": f})
    rule = TableRule.from_names(inst, {"p0": "p1", "p1": "p2", "p2": "p3"})
    return inst, rule


def test_finite_chain_terminates(halving_chain):
    inst, rule = halving_chain
    out = eta_iterate(inst.objective("f"), 1, EtaSpec.linear(HALF), rule, "p0", space=inst)
    assert out.kind == "terminated" and out.steps == 3 and out.point == 3
    d = inst.gauge.members[0]
    assert d(3, 0) <= out.values[0] / 1
    assert out.checks["bound_holds"]


def test_finite_rule_audit_rejects_bad_step(halving_chain):
    inst, _ = halving_chain
    rule = TableRule.from_names(inst, {"p0": "p3", "p1": "p2", "p2": "p3"})
    # f(p3) = 0 <= eta(1) but gamma d(p3, p0) = 2 > 1
    with pytest.raises(HypothesisError) as exc:
        eta_iterate(inst.objective("f"), 2, EtaSpec.linear(HALF), rule, "p0", space=inst)
    assert exc.value.witness


def test_rule_missing_at_positive_point(halving_chain):
    inst, _ = halving_chain
    rule = TableRule.from_names(inst, {"p0": "p1"})
    with pytest.raises(HypothesisError):
        eta_iterate(inst.objective("f"), 1, EtaSpec.linear(HALF), rule, "p0", space=inst)


def test_non_quasi_pseudometric_member_rejected():
    inst = make_instance(["a", "b", "c"], {"d": [[0, 1, 5], [1, 0, 1], [1, 1, 0]]}, objectives={"f": [0, 0, 0]})
    with pytest.raises(HypothesisError):
        eta_iterate(inst.objective("f"), 1, EtaSpec.linear(HALF), TableRule({}), "a", space=inst)


def test_gelman_halving():
    e = cat.entry("gelman-halving")
    out = gelman_reduce(e.objective, 1, HALF, e.params["rule"], 1, 21, e.id)
    assert out.kind == "converging"
    assert out.values[-1] < Fr(1, 2**20)
    assert out.gamma == HALF
    twin = eta_iterate(e.objective, HALF, EtaSpec.linear(HALF), e.params["rule"], 1, 21, e.id)
    assert twin.iterates == out.iterates
    lim = check_declared_limit(out, e, out.gamma)
    assert lim["ok"] and lim["abs:d(limit, x0)"] == 1
    assert out.checks["gelman"]["factor"] == 2


def test_gelman_reduce_rejects_mu():
    e = cat.entry("gelman-halving")
    for mu in (Fr(1), Fr(3, 2), Fr(0)):
        with pytest.raises(HypothesisError):
            gelman_reduce(e.objective, 1, mu, e.params["rule"], 1, 5, e.id)


def test_catalog_audit_failure_on_wrong_gamma():
    e = cat.entry("gelman-halving")
    with pytest.raises(HypothesisError):
        eta_iterate(e.objective, Fr(3), EtaSpec.linear(HALF), e.params["rule"], 1, 5, e.id)


def test_eta_specs(tmp_path):
    with pytest.raises(HypothesisError):
        EtaSpec.linear(1).check()
    pw = EtaSpec.piecewise([(0, 0), (1, HALF), (2, Fr(3, 2))], 1)
    pw.check()
    assert pw(Fr(3, 2)) == 1 and pw(Fr(4)) == Fr(7, 2)
    with pytest.raises(HypothesisError):
        EtaSpec.piecewise([(0, 0), (1, 1)], 0).check()
    with pytest.raises(HypothesisError):
        EtaSpec.piecewise([(0, 0)], 1).check()
    path = tmp_path / "eta.json"
    path.write_text(json.dumps({"points": [[0, 0], [2, 1]], "final_slope": "1/2"}))
    assert EtaSpec.parse(f"pwl:{path}")(Fr(4)) == 2
    assert EtaSpec.parse("linear:1/3")(Fr(3)) == 1


@given(st.fractions(min_value=Fr(1, 100), max_value=Fr(99, 100), max_denominator=100), st.fractions(min_value=Fr(1, 100), max_value=50, max_denominator=100))
def test_linear_eta_below_identity(mu, t):
    eta = EtaSpec.linear(mu)
    eta.check()
    assert eta(t) < t


@given(st.lists(st.fractions(min_value=Fr(1, 10), max_value=Fr(9, 10), max_denominator=20), min_size=1, max_size=5), st.fractions(min_value=0, max_value=1, max_denominator=10), st.fractions(min_value=0, max_value=20, max_denominator=10))
def test_accepted_pwl_eta_has_no_positive_fixed_point(ratios, slope, t):
    pts = [(Fr(0), Fr(0))] + [(Fr(k + 1), r * (k + 1)) for k, r in enumerate(ratios)]
    eta = EtaSpec.piecewise(pts, slope)
    eta.check()
    if t > 0:
        assert eta(t) < t


@given(st.fractions(min_value=Fr(1, 10), max_value=Fr(9, 10), max_denominator=20), st.fractions(min_value=0, max_value=4, max_denominator=8), st.integers(1, 60))
def test_gelman_equals_eta_form(mu, extra, cap):
    lam = 1 - mu + extra  # the step d(x', x) = (1 - mu) x must be at most lam x
    e = cat.entry("gelman-halving")
    rule = cat.CatalogRule("scale", lambda x, m=mu: m * x)
    g = gelman_reduce(e.objective, lam, mu, rule, 1, cap, e.id)
    eta = eta_iterate(e.objective, (1 - mu) / lam, EtaSpec.linear(mu), rule, 1, cap, e.id)
    assert g.iterates == eta.iterates
    assert all(b < a for a, b in zip(g.values, g.values[1:]))

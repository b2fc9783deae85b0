from hypothesis import given, strategies as st

import pytest

from qvar.extended import INF
from qvar.generate import generate_random_instance
from qvar.instance import make_instance
from qvar.oracle import enumerate_minimal
from qvar.order import PhiOrder, leq_phi, lower_section, minimal_element
from qvar.spaces import HypothesisError


def test_two_point_order(two_point):
    phi = two_point.objective("phi")
    assert leq_phi(two_point, phi, "a", "b")
    assert not leq_phi(two_point, phi, "b", "a")
    assert leq_phi(two_point, phi, "a", "a")
    assert lower_section(two_point, phi, "a") == [0, 1]
    assert lower_section(two_point, phi, "b") == [1]


def test_descent_two_point(two_point):
    order = PhiOrder(two_point, two_point.objective("phi"))
    z, trace = minimal_element(order, 0)
    assert z == 1 and trace.chain() == [0, 1]
    z, trace = minimal_element(order, 1)
    assert z == 1 and trace.steps == []


def test_infinite_value_rules():
    inst = make_instance(["a", "b"], {"d": [[0, 1], [1, 0]]}, objectives={"f": [INF, 3]})
    order = PhiOrder(inst, inst.objective("f"))
    assert order.leq_phi(0, 1)  # inf on the right always holds
    assert not order.leq_phi(1, 0)


def test_descent_refuses_non_t1(du01):
    with pytest.raises(HypothesisError) as exc:
        minimal_element(PhiOrder(du01, du01.objective("f")), 0)
    assert exc.value.witness


def test_descent_refuses_start_outside_domain():
    inst = make_instance(["a", "b"], {"d": [[0, 1], [1, 0]]}, objectives={"f": [INF, 3]})
    with pytest.raises(HypothesisError):
        minimal_element(PhiOrder(inst, inst.objective("f")), 0)


def test_constant_phi_all_points_minimal():
    inst = make_instance(["a", "b", "c"], {"d": [[0, 1, 2], [1, 0, 1], [1, 1, 0]]}, objectives={"f": [5, 5, 5]})
    assert enumerate_minimal(inst, inst.objective("f")) == [0, 1, 2]


@given(st.integers(0, 10**6), st.integers(1, 8), st.integers(1, 3))
def test_order_properties(seed, n, k):
    inst = generate_random_instance(seed, n, k, "T1")
    f = inst.objective("f")
    order = PhiOrder(inst, f)
    rel = order.relation()
    dom = f.domain()
    for x in range(n):
        assert (x, x) in rel
        for y in range(n):
            for z in range(n):
                if (x, y) in rel and (y, z) in rel:
                    assert (x, z) in rel
    for x in dom:
        for y in dom:
            if x != y and (x, y) in rel and (y, x) in rel:
                raise AssertionError("antisymmetry fails on dom f")


@given(st.integers(0, 10**6), st.integers(1, 8), st.integers(1, 3))
def test_descent_reaches_minimal_and_decreases(seed, n, k):
    inst = generate_random_instance(seed, n, k, "T1")
    f = inst.objective("f")
    order = PhiOrder(inst, f)
    minimal = enumerate_minimal(inst, f)
    for x in f.domain():
        z, trace = minimal_element(order, x)
        assert z in minimal
        assert order.leq_phi(x, z)
        assert all(b < a for a, b in zip(trace.values, trace.values[1:]))
        assert len(trace.steps) <= n - 1

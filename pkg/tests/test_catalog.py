from fractions import Fraction as Fr
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from qvar import catalog as cat
from qvar.extended import INF
from qvar.iteration import closed_graph_residual

unit = st.fractions(min_value=0, max_value=1, max_denominator=30)
rat = st.fractions(min_value=-5, max_value=5, max_denominator=30)


def test_registry_names():
    assert set(cat.ENTRIES) == {
        "q4-grid",
        "du-line",
        "example-a-phi",
        "example-a-phi1",
        "dirichlet",
        "gelman-halving",
        "closed-graph-residual",
    }
    with pytest.raises(KeyError):
        cat.entry("nope")


def test_q4_values():
    q4 = cat.distance("q4")
    n = Fr(1, 7)
    assert q4(0, n) == n
    assert q4(1, n) == n  # 1 + 1/7 - 1
    assert q4(1, 0) == 1


@given(unit, unit, unit)
def test_q4_triangle(x, y, z):
    q4 = cat.distance("q4")
    assert q4(x, z) <= q4(x, y) + q4(y, z)
    assert (q4(x, y) > 0) == (x != y)


@given(rat, rat, rat)
def test_du_triangle_and_conjugate(x, y, z):
    du, ab = cat.distance("du"), cat.distance("abs")
    assert du(x, z) <= du(x, y) + du(y, z)
    assert du(x, y) == max(y - x, 0)
    assert max(du(x, y), du(y, x)) == ab(x, y)


def test_sequences():
    assert cat.INV_N.limit() == 0 and cat.INV_N.trend() == "dec"
    assert cat.NEG_INV_N.trend() == "inc"
    assert cat.HALVES.prefix(3) == [1, Fr(1, 2), Fr(1, 4)]


def test_phi_examples():
    phi = cat.entry("example-a-phi").objective
    assert phi(Fr(-1, 3)) == -1 and phi(Fr(2)) == 2 and phi(0) == 0
    phi1 = cat.entry("example-a-phi1").objective
    assert phi1(Fr(1, 2)) == Fr(-1, 2) and phi1(0) == 1 and phi1(Fr(-3)) == 1


def test_residual_zeros_and_closed_form():
    f = cat.entry("closed-graph-residual").objective
    assert f(0) == 0 and f(1) == 0 and f(Fr(1, 2)) == Fr(1, 4)
    assert f(Fr(2)) is INF
    expr = sympy.simplify(f.along(cat.INV_N) - (1 / cat.N - 1 / cat.N**2))
    assert expr == 0 or sympy.simplify(expr.rewrite(sympy.Piecewise)) == 0
    assert cat.entry("closed-graph-residual").limits == (0,) or 0 in cat.entry("closed-graph-residual").limits


def test_residual_identical_maps():
    g_id = cat.CatalogMap("g", lambda x: x, cat.UNIT)
    f = closed_graph_residual(cat.H_IDENTITY, g_id, cat.distance("abs"))
    assert all(f(Fr(k, 9)) == 0 for k in range(10))
    assert f(Fr(3, 2)) is INF


def test_stored_closed_forms_hold():
    f = cat.entry("closed-graph-residual").objective
    cat.check_closed_form(cat.INV_N, f, 1 / cat.N - 1 / cat.N**2)
    cat.check_closed_form(cat.HALVES, lambda x: x / 2, cat.HALVES.term / 2)
    with pytest.raises(cat.CertificateError):
        cat.check_closed_form(cat.INV_N, f, 1 / cat.N)

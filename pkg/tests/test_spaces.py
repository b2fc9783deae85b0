from fractions import Fraction as Fr
from itertools import product

import pytest
from hypothesis import given, strategies as st

from qvar import catalog as cat
from qvar.spaces import (
    DimensionError,
    FQuasiGauge,
    PointSet,
    QuasiPseudometric,
    check_entourage_basis,
    compose,
    conjugate,
    diagonal,
    discrete_metric,
    entourage,
    gauge_compatibility,
    invert,
    single_gauge,
    symmetrize,
    tabulate,
    validate_f_quasi_gauge,
    validate_quasi_pseudometric,
    zero_distance,
)

small = st.integers(min_value=0, max_value=6)


@st.composite
def matrices(draw, n_max=5):
    n = draw(st.integers(1, n_max))
    rows = [[0 if i == j else draw(small) for j in range(n)] for i in range(n)]
    return QuasiPseudometric("d", tuple(tuple(Fr(v) for v in r) for r in rows))


def test_discrete_metric_is_valid_quasi_metric():
    rep = validate_quasi_pseudometric(discrete_metric(3))
    assert rep.valid and rep.is_quasi_metric


def test_q4_on_grid():
    grid = [Fr(0), Fr(1, 2), Fr(1)]
    q4 = tabulate("q4", cat.distance("q4"), grid)
    # all 27 triples by hand
    for i, j, k in product(range(3), repeat=3):
        assert q4(i, k) <= q4(i, j) + q4(j, k)
    rep = validate_quasi_pseudometric(q4)
    assert rep.valid and rep.is_quasi_metric


def test_triangle_violation_witness():
    d = QuasiPseudometric("d", ((0, 1, 5), (1, 0, 1), (1, 1, 0)))
    rep = validate_quasi_pseudometric(d)
    assert not rep.valid
    assert rep.violations[0].axiom == "QM2"
    assert rep.violations[0].witness == (0, 1, 2)
    assert validate_quasi_pseudometric(d, "gauge-relaxed").valid


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        validate_quasi_pseudometric(discrete_metric(3), points=PointSet(("a", "b")))


def test_singleton_and_scaled_gauges():
    d = discrete_metric(3, "d")
    assert validate_f_quasi_gauge(single_gauge(d)).valid
    D = FQuasiGauge((d, d.scaled(2, "2d")), {"d": "2d", "2d": "2d"})
    assert validate_f_quasi_gauge(D).valid


def test_qf1_flags_incomparable_members():
    d1 = QuasiPseudometric("d1", ((0, 1), (2, 0)))
    d2 = QuasiPseudometric("d2", ((0, 2), (1, 0)))
    rep = validate_f_quasi_gauge(FQuasiGauge((d1, d2), {}))
    assert "QF1" in rep.axioms_violated()
    assert next(v for v in rep.violations if v.axiom == "QF1").witness == ("d1", "d2")


def test_conjugate_and_symmetrize_of_du():
    grid = [Fr(-1), Fr(0), Fr(1)]
    du = tabulate("du", lambda a, b: max(b - a, Fr(0)), grid)
    conj = conjugate(du)
    sym = symmetrize(du)
    for i, j in product(range(3), repeat=2):
        assert conj(i, j) == max(grid[i] - grid[j], 0)
        assert sym(i, j) == abs(grid[j] - grid[i])


def test_entourage_relations():
    d = discrete_metric(3)
    assert entourage(d, Fr(1, 2)) == diagonal(3)
    du = QuasiPseudometric("du", ((0, 1, 2), (0, 0, 1), (0, 0, 0)))
    eps = Fr(3, 2)
    assert invert(entourage(du, eps)) == entourage(conjugate(du), eps)
    D = FQuasiGauge((du, du.scaled(2, "big")), {"du": "big", "big": "big"})
    for name in ("du", "big"):
        dd = D.member(name)
        rel = D.partner(dd)
        for e in (Fr(1, 2), Fr(1), Fr(3)):
            assert compose(entourage(rel, e / 2), entourage(rel, e / 2)) <= entourage(dd, e)


def test_entourage_basis_of_valid_gauge():
    d = discrete_metric(3, "d")
    assert check_entourage_basis([(d, Fr(1, 2)), (d, Fr(2))], 3).valid


def test_gauge_compatibility():
    d0 = QuasiPseudometric("d0", ((0, 1, 3), (2, 0, 1), (1, 1, 0)))
    D = single_gauge(d0)
    assert gauge_compatibility(d0, D)
    assert gauge_compatibility(d0.scaled(2, "2d0"), D)
    assert not gauge_compatibility(discrete_metric(3), single_gauge(zero_distance(3)))


@given(matrices())
def test_validator_matches_triple_loop(d):
    n = d.n
    m = d.matrix
    ok = all(m[i][k] <= m[i][j] + m[j][k] for i in range(n) for j in range(n) for k in range(n))
    assert validate_quasi_pseudometric(d).valid == ok


@given(matrices(), st.integers(1, 4))
def test_rescaled_gauge_stays_valid(d, c):
    # replace d by its shortest-path closure so the gauge is valid
    n = d.n
    m = [list(r) for r in d.matrix]
    for k, i, j in product(range(n), repeat=3):
        m[i][j] = min(m[i][j], m[i][k] + m[k][j])
    base = QuasiPseudometric("d", tuple(tuple(r) for r in m))
    D = FQuasiGauge((base, base.scaled(2, "top")), {"d": "top", "top": "top"})
    assert validate_f_quasi_gauge(D).valid
    assert validate_f_quasi_gauge(D.rescaled({"d": Fr(c), "top": Fr(c)})).valid


@given(matrices())
def test_conjugate_is_involution(d):
    assert conjugate(conjugate(d)).matrix == d.matrix
    s = symmetrize(d)
    assert all(s(i, j) == s(j, i) for i in range(d.n) for j in range(d.n))

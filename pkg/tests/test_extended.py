from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from qvar.extended import INF, dump_ext, is_finite, scale, to_ext, to_rational

rationals = st.fractions(max_denominator=50)


def test_inf_orders_above_rationals():
    assert Fr(10**9) < INF
    assert not INF < INF
    assert INF <= INF
    assert max(Fr(3), INF) is INF


def test_inf_arithmetic():
    assert INF + 3 is INF
    assert Fr(1, 2) + INF is INF
    assert 2 * INF is INF
    with pytest.raises(ArithmeticError):
        _ = 0 * INF


def test_to_ext_parses_text_and_rejects_floats():
    assert to_ext("3/4") == Fr(3, 4)
    assert to_ext("inf") is INF
    with pytest.raises((TypeError, ValueError)):
        to_ext(0.5)
    with pytest.raises((TypeError, ValueError)):
        to_ext(True)
    with pytest.raises((TypeError, ValueError)):
        to_rational("inf")


def test_scale_zero_times_finite():
    assert scale(Fr(0), Fr(5)) == 0


@given(rationals)
def test_dump_roundtrip(x):
    assert to_ext(dump_ext(x)) == x
    assert is_finite(x)


@given(rationals, rationals)
def test_inf_absorbs_sums(a, b):
    assert a + b < INF
    assert a + INF is INF

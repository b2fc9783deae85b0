"""Exact values in Q united with {+inf}.

Finite values are plain :class:`fractions.Fraction` objects; the only
non-finite value is the singleton :data:`INF`.  Keeping finite values as
Fractions means ordinary arithmetic stays exact and fast, while mixed
expressions such as ``Fraction(1) + INF`` fall through to the reflected
methods of :class:`Infinity`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union


class Infinity:
    """The element +inf of the extended rationals."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("qvar-inf")

    def __reduce__(self):
        return (Infinity, ())

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        _check_operand(other)
        return False

    def __le__(self, other):
        _check_operand(other)
        return other is self

    def __gt__(self, other):
        _check_operand(other)
        return other is not self

    def __ge__(self, other):
        _check_operand(other)
        return True

    def __add__(self, other):
        _check_operand(other)
        return self

    __radd__ = __add__

    def __sub__(self, other):
        _check_operand(other)
        if other is self:
            raise ArithmeticError("inf - inf is undefined")
        return self

    def __rsub__(self, other):
        raise ArithmeticError("finite - inf leaves the extended rationals")

    def __mul__(self, other):
        _check_operand(other)
        if other is self:
            return self
        if other == 0:
            raise ArithmeticError("0 * inf is undefined")
        if other < 0:
            raise ArithmeticError("negative multiple of inf leaves the extended rationals")
        return self

    __rmul__ = __mul__

    def __neg__(self):
        raise ArithmeticError("-inf is not representable")


INF = Infinity()

ExtendedRational = Union[Fraction, Infinity]


def _check_operand(other):
    if other is INF or isinstance(other, (Fraction, int)):
        return
    raise TypeError(f"unsupported operand for extended rational: {other!r}")


def is_finite(x: ExtendedRational) -> bool:
    return x is not INF


def to_ext(value) -> ExtendedRational:
    """Parse an int, Fraction, ``"p/q"`` string or ``"inf"`` into an exact value.

    Floats are rejected on purpose: every input must be exact.
    """
    if value is INF:
        return INF
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in ("inf", "+inf", "infinity"):
            return INF
        return Fraction(text)
    raise TypeError(f"cannot read {value!r} as an exact rational (floats are not accepted)")


def to_rational(value) -> Fraction:
    """Like :func:`to_ext` but refuses +inf."""
    x = to_ext(value)
    if x is INF:
        raise ValueError("expected a finite rational, got inf")
    return x


def dump_ext(x: ExtendedRational):
    """JSON-compatible form: int when integral, ``"p/q"`` otherwise, ``"inf"``."""
    if x is INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def fmt(x: ExtendedRational) -> str:
    return str(dump_ext(x))


def scale(c: Fraction, x: ExtendedRational) -> ExtendedRational:
    """c * x with the convention that c must be positive when x is inf."""
    if x is INF:
        if c <= 0:
            raise ArithmeticError("0 * inf is undefined" if c == 0 else "negative multiple of inf")
        return INF
    return c * x

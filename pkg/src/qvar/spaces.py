"""Finite point sets, asymmetric distances, F-quasi-gauges and entourages.

Everything here works on exact rationals.  Points of a finite instance are
addressed by index ``0..n-1``; names are only for I/O and reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from .extended import INF, ExtendedRational, fmt, to_rational

Relation = frozenset  # of (i, j) index pairs


class QVarError(Exception):
    """Base class for errors raised by qvar."""


class DimensionError(QVarError):
    pass


class HypothesisError(QVarError):
    """A theorem's hypothesis does not hold on the given data.

    ``witness`` names the offending point(s) or member(s).
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class PointSet:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) < 1:
            raise ValueError("a finite point set needs at least one point")
        if len(set(self.names)) != len(self.names):
            raise ValueError("point names must be unique")

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown point {name!r}") from None

    def resolve(self, point) -> int:
        """Accept either an index or a name."""
        if isinstance(point, int) and not isinstance(point, bool):
            if not 0 <= point < len(self.names):
                raise KeyError(f"point index {point} out of range")
            return point
        return self.index(point)


@dataclass(frozen=True)
class QuasiPseudometric:
    """A distance given by its full ``n x n`` matrix of finite rationals."""

    name: str
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_rational(v) for v in row) for row in self.matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError(f"matrix of {self.name!r} is not square")
        object.__setattr__(self, "matrix", rows)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __call__(self, i: int, j: int) -> Fraction:
        return self.matrix[i][j]

    def leq(self, other: "QuasiPseudometric") -> bool:
        """Pointwise ``self <= other``."""
        return all(a <= b for ra, rb in zip(self.matrix, other.matrix) for a, b in zip(ra, rb))

    def scaled(self, c: Fraction, name: Optional[str] = None) -> "QuasiPseudometric":
        return QuasiPseudometric(name or self.name, tuple(tuple(c * v for v in row) for row in self.matrix))

    def values(self) -> set:
        return {v for row in self.matrix for v in row}


def conjugate(d: QuasiPseudometric, name: Optional[str] = None) -> QuasiPseudometric:
    """The conjugate distance (x, y) -> d(y, x)."""
    return QuasiPseudometric(name or f"{d.name}~", tuple(zip(*d.matrix)))


def symmetrize(d: QuasiPseudometric, name: Optional[str] = None) -> QuasiPseudometric:
    """Pointwise max of d and its conjugate."""
    n = d.n
    return QuasiPseudometric(
        name or f"{d.name}^s",
        tuple(tuple(max(d(i, j), d(j, i)) for j in range(n)) for i in range(n)),
    )


def discrete_metric(n: int, name: str = "discrete") -> QuasiPseudometric:
    return QuasiPseudometric(name, tuple(tuple(Fraction(int(i != j)) for j in range(n)) for i in range(n)))


def zero_distance(n: int, name: str = "zero") -> QuasiPseudometric:
    return QuasiPseudometric(name, tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)))


def tabulate(name: str, func, coords: Sequence[Fraction]) -> QuasiPseudometric:
    """Matrix of ``func`` evaluated on the given coordinates."""
    return QuasiPseudometric(name, tuple(tuple(func(x, y) for y in coords) for x in coords))


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def to_dict(self):
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


@dataclass
class ValidationReport:
    subject: str
    violations: list = field(default_factory=list)
    is_quasi_metric: Optional[bool] = None

    @property
    def valid(self) -> bool:
        return not self.violations

    def axioms_violated(self) -> set:
        return {v.axiom for v in self.violations}

    def to_dict(self):
        out = {"subject": self.subject, "valid": self.valid, "violations": [v.to_dict() for v in self.violations]}
        if self.is_quasi_metric is not None:
            out["quasi_metric"] = self.is_quasi_metric
        return out


def validate_quasi_pseudometric(d: QuasiPseudometric, mode: str = "strict-triangle", points: Optional[PointSet] = None) -> ValidationReport:
    """Check the quasi-pseudometric axioms on every point, pair and triple.

    ``strict-triangle`` checks (QM1), nonnegativity and the triangle
    inequality (QM2).  ``gauge-relaxed`` drops (QM2), which gauge members
    only satisfy through their relaxation partner.  The report also says
    whether (QM3) holds, i.e. whether d separates points.
    """
    if mode not in ("strict-triangle", "gauge-relaxed"):
        raise ValueError(f"unknown mode {mode!r}")
    n = d.n
    if points is not None and len(points) != n:
        raise DimensionError(f"{d.name!r} is {n}x{n} but the point set has {len(points)} points")
    rep = ValidationReport(subject=d.name)
    for i in range(n):
        if d(i, i) != 0:
            rep.violations.append(Violation("QM1", (i,), f"d({i},{i}) = {fmt(d(i, i))}"))
    for i, j in product(range(n), repeat=2):
        if d(i, j) < 0:
            rep.violations.append(Violation("nonnegativity", (i, j), f"d({i},{j}) = {fmt(d(i, j))}"))
    if mode == "strict-triangle":
        for i, j, k in product(range(n), repeat=3):
            if d(i, k) > d(i, j) + d(j, k):
                rep.violations.append(Violation("QM2", (i, j, k), f"d({i},{k}) > d({i},{j}) + d({j},{k})"))
    rep.is_quasi_metric = all(d(i, j) > 0 or d(j, i) > 0 for i in range(n) for j in range(i + 1, n))
    return rep


@dataclass(frozen=True)
class FQuasiGauge:
    """A finite directed family of distances with explicit relaxation partners.

    ``relax[name]`` is the member d' that witnesses the relaxed triangle
    inequality ``d(x, y) <= d'(x, z) + d'(z, y)`` for member ``name``.
    """

    members: tuple[QuasiPseudometric, ...]
    relax: dict
    symmetric: bool = False

    def __post_init__(self):
        if not self.members:
            raise ValueError("a gauge needs at least one member")
        names = [d.name for d in self.members]
        if len(set(names)) != len(names):
            raise ValueError("gauge member names must be unique")
        sizes = {d.n for d in self.members}
        if len(sizes) != 1:
            raise DimensionError("gauge members live on different point sets")
        relax = dict(self.relax)
        for name in names:
            relax.setdefault(name, name)
        unknown = set(relax.values()) - set(names)
        if unknown:
            raise KeyError(f"relax map points at unknown members {sorted(unknown)}")
        object.__setattr__(self, "relax", relax)

    def __hash__(self):
        return hash((self.members, tuple(sorted(self.relax.items())), self.symmetric))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def n(self) -> int:
        return self.members[0].n

    def member(self, name: str) -> QuasiPseudometric:
        for d in self.members:
            if d.name == name:
                return d
        raise KeyError(f"unknown gauge member {name!r}")

    def partner(self, d: QuasiPseudometric) -> QuasiPseudometric:
        return self.member(self.relax[d.name])

    def names(self) -> list:
        return [d.name for d in self.members]

    def rescaled(self, factors: dict) -> "FQuasiGauge":
        """Member d becomes ``factors[d.name] * d``; names and relax map are kept."""
        return FQuasiGauge(tuple(d.scaled(factors[d.name]) for d in self.members), dict(self.relax), self.symmetric)


def single_gauge(d: QuasiPseudometric) -> FQuasiGauge:
    return FQuasiGauge((d,), {d.name: d.name})


def validate_f_quasi_gauge(D: FQuasiGauge) -> ValidationReport:
    """Exhaustive check of (QF1)-(QF3), plus (QF4) for gauges flagged symmetric.

    Only the first witness per violated axiom (and member) is reported.
    """
    if not D.members:
        raise ValueError("empty gauge")
    n = D.n
    rep = ValidationReport(subject="gauge")
    members = D.members
    unbounded = next(
        (
            (d1, d2)
            for a, d1 in enumerate(members)
            for d2 in members[a + 1 :]
            if not any(d1.leq(u) and d2.leq(u) for u in members)
        ),
        None,
    )
    if unbounded is not None:
        rep.violations.append(Violation("QF1", (unbounded[0].name, unbounded[1].name), "no upper bound in the gauge"))
    for d in members:
        bad = next(((i, j) for i, j in product(range(n), repeat=2) if d(i, j) < 0 or (i == j and d(i, j) != 0)), None)
        if bad is not None:
            rep.violations.append(Violation("QF2", (d.name,) + bad))
    for d in members:
        dp = D.partner(d)
        if not d.leq(dp):
            i, j = next((i, j) for i, j in product(range(n), repeat=2) if d(i, j) > dp(i, j))
            rep.violations.append(Violation("QF3", (d.name, dp.name, i, j), "relaxation partner is not pointwise larger"))
            continue
        bad = next(((i, j, k) for i, j, k in product(range(n), repeat=3) if d(i, j) > dp(i, k) + dp(k, j)), None)
        if bad is not None:
            rep.violations.append(Violation("QF3", (d.name, dp.name) + bad, "relaxed triangle inequality fails"))
    if D.symmetric:
        for d in members:
            bad = next(((i, j) for i in range(n) for j in range(i + 1, n) if d(i, j) != d(j, i)), None)
            if bad is not None:
                rep.violations.append(Violation("QF4", (d.name,) + bad))
    return rep


def conjugate_gauge(D: FQuasiGauge) -> FQuasiGauge:
    """Every member replaced by its conjugate, names and relax map kept."""
    return FQuasiGauge(tuple(conjugate(d, d.name) for d in D.members), dict(D.relax), D.symmetric)


# -- relations -------------------------------------------------------------


def entourage(d: QuasiPseudometric, eps) -> Relation:
    """V_{d,eps} = {(x, y) : d(x, y) < eps} (strict)."""
    eps = to_rational(eps)
    if eps <= 0:
        raise ValueError("entourage threshold must be positive")
    n = d.n
    return frozenset((i, j) for i, j in product(range(n), repeat=2) if d(i, j) < eps)


def compose(R: Iterable, S: Iterable) -> Relation:
    """R o S = {(x, z) : (x, y) in R and (y, z) in S for some y}."""
    by_first: dict = {}
    for y, z in S:
        by_first.setdefault(y, set()).add(z)
    return frozenset((x, z) for x, y in R for z in by_first.get(y, ()))


def invert(R: Iterable) -> Relation:
    return frozenset((y, x) for x, y in R)


def section(R: Iterable, x: int) -> list:
    """R(x) = {y : (x, y) in R}, ascending."""
    return sorted(y for a, y in R if a == x)


def diagonal(n: int) -> Relation:
    return frozenset((i, i) for i in range(n))


def check_entourage_basis(generators: Sequence[tuple], n: int) -> ValidationReport:
    """Check (BQU1)-(BQU3) for the relations V_{d,eps} of the given (d, eps) pairs."""
    rels = [(f"V[{d.name},{fmt(eps)}]", entourage(d, eps)) for d, eps in generators]
    rep = ValidationReport(subject="entourage-basis")
    diag = diagonal(n)
    for label, B in rels:
        if not diag <= B:
            rep.violations.append(Violation("BQU1", (label,)))
        if not any(compose(C, C) <= B for _, C in rels):
            rep.violations.append(Violation("BQU2", (label,)))
    for (l1, B1), (l2, B2) in product(rels, repeat=2):
        if not any(B <= (B1 & B2) for _, B in rels):
            rep.violations.append(Violation("BQU3", (l1, l2)))
            break
    return rep


def gauge_compatibility(d: QuasiPseudometric, D: FQuasiGauge, with_witness: bool = False):
    """Is V_{d,eps} in the quasi-uniformity generated by D for every eps > 0?

    On a finite instance V_{d,eps} only changes when eps crosses a value of
    d, so the thresholds tested are the distinct positive values of d plus
    one value above the maximum.  For a member d0 the smallest basic
    entourage V_{d0,delta} is reached at delta = least positive value of d0.
    """
    thresholds = sorted(v for v in d.values() if v > 0)
    thresholds.append((thresholds[-1] if thresholds else Fraction(0)) + 1)
    witnesses = {}
    for eps in thresholds:
        target = entourage(d, eps)
        found = None
        for d0 in D.members:
            positives = [v for v in d0.values() if v > 0]
            delta = min(positives) if positives else Fraction(1)
            if entourage(d0, delta) <= target:
                found = (d0.name, delta)
                break
        if found is None:
            return (False, {"failing_threshold": eps}) if with_witness else False
        witnesses[eps] = found
    return (True, witnesses) if with_witness else True


def max_distance(members: Sequence[QuasiPseudometric], name: str = "max") -> QuasiPseudometric:
    n = members[0].n
    return QuasiPseudometric(name, tuple(tuple(max(d(i, j) for d in members) for j in range(n)) for i in range(n)))


__all__ = [
    "INF",
    "ExtendedRational",
    "PointSet",
    "QuasiPseudometric",
    "FQuasiGauge",
    "ValidationReport",
    "Violation",
    "QVarError",
    "HypothesisError",
    "DimensionError",
]

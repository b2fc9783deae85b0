"""Built-in countable instances with exact closed forms.

Every catalog distance is piecewise affine with one branch for ``x <= y``
and one for ``x > y`` (plus finitely many exceptional pairs).  Catalog
sequences are sympy expressions in the integer symbol ``N`` that are
strictly monotone or constant from their start index on.  Together these
two facts let convergence and Cauchy questions be answered by exact
symbolic limits instead of numerics:

* for a fixed point p, ``d(p, x_n)`` eventually sits on a single branch,
  chosen by comparing p with the limit of the sequence and the side from
  which the sequence approaches it;
* along a monotone tail the pairs ``(x_{n+k}, x_n)`` all sit on one
  branch, and an affine function of ``x_{n+k}`` attains its supremum over
  the tail at ``x_{n+1}`` or at the limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import sympy

from .extended import INF, to_rational

N = sympy.Symbol("n", integer=True, positive=True)
_M = sympy.Symbol("m", integer=True, nonnegative=True)


class CertificateError(Exception):
    """A stored closed form or tail certificate could not be confirmed."""


def as_sympy(x):
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, int):
        return sympy.Integer(x)
    return x


def as_fraction(expr) -> Fraction:
    expr = sympy.nsimplify(expr) if not isinstance(expr, sympy.Rational) else expr
    if not isinstance(expr, sympy.Rational):
        raise CertificateError(f"{expr} is not rational")
    return Fraction(int(expr.p), int(expr.q))


@dataclass(frozen=True)
class Interval:
    lo: Optional[Fraction] = None  # None = unbounded
    hi: Optional[Fraction] = None
    lo_closed: bool = True
    hi_closed: bool = True

    def __contains__(self, x) -> bool:
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def contains_tail(self, limit: Fraction, side: str) -> bool:
        """Does the interval contain every point close to ``limit`` on ``side``?

        side is ``"above"`` (approach from the right), ``"below"``, or
        ``"at"`` (constant sequence sitting on the limit).
        """
        if side == "at":
            return limit in self
        if side == "above":
            lo_ok = self.lo is None or self.lo < limit or (self.lo == limit)
            hi_ok = self.hi is None or self.hi > limit
            return lo_ok and hi_ok
        lo_ok = self.lo is None or self.lo < limit
        hi_ok = self.hi is None or self.hi > limit or self.hi == limit
        return lo_ok and hi_ok


RATIONALS = Interval()
UNIT = Interval(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class CatalogDistance:
    """A piecewise-affine distance on a rational interval.

    ``le`` gives d(x, y) for x <= y and ``gt`` for x > y; both work on
    Fractions and on sympy expressions.
    """

    id: str
    le: Callable
    gt: Callable
    domain: Interval = RATIONALS
    exceptional: tuple = ()  # ((x, y, value), ...)
    quasi_metric: bool = True
    certificate: str = ""

    def __call__(self, x, y) -> Fraction:
        x, y = to_rational(x), to_rational(y)
        if x not in self.domain or y not in self.domain:
            raise ValueError(f"({x}, {y}) outside the domain of {self.id}")
        for ex, ey, v in self.exceptional:
            if (x, y) == (ex, ey):
                return v
        return self.le(x, y) if x <= y else self.gt(x, y)

    def branch(self, relation: str) -> Callable:
        return self.le if relation == "le" else self.gt


def _pos(t):
    return t if t > 0 else Fraction(0) * t


DISTANCES = {
    "q4": CatalogDistance(
        "q4",
        le=lambda x, y: y - x,
        gt=lambda x, y: 1 + y - x,
        domain=UNIT,
        exceptional=((Fraction(1), Fraction(0), Fraction(1)),),
        certificate=(
            "quasi-metric on [0,1]: triangle inequality checked by cases on the order of x, y, z; "
            "q4(x,y) > 0 for x != y since 1 + y - x > 0 unless (x,y) = (1,0), where the value is 1"
        ),
    ),
    "du": CatalogDistance(
        "du",
        le=lambda x, y: y - x,
        gt=lambda x, y: 0 * x,
        quasi_metric=False,
        certificate="d_u(a,b) = (b-a)^+ ; (s+t)^+ <= s^+ + t^+ gives the triangle inequality; T0 but not T1",
    ),
    "abs": CatalogDistance(
        "abs",
        le=lambda x, y: y - x,
        gt=lambda x, y: x - y,
        certificate="the usual metric |x - y| on Q",
    ),
}


def distance(id_: str) -> CatalogDistance:
    try:
        return DISTANCES[id_]
    except KeyError:
        raise KeyError(f"unknown catalog distance {id_!r}; known: {sorted(DISTANCES)}") from None


@dataclass(frozen=True)
class CatalogSequence:
    """x_n = term(n) for n >= start, strictly monotone or constant."""

    name: str
    term: object  # sympy expression in N
    start: int = 1

    def value(self, n: int) -> Fraction:
        return as_fraction(self.term.subs(N, n))

    def prefix(self, length: int) -> list:
        return [self.value(self.start + k) for k in range(length)]

    def limit(self) -> Fraction:
        L = sympy.limit(self.term, N, sympy.oo)
        if not L.is_rational:
            raise CertificateError(f"sequence {self.name} has no rational limit ({L})")
        return as_fraction(L)

    def trend(self) -> str:
        """``"dec"``, ``"inc"`` or ``"const"``, certified symbolically from ``start`` on."""
        return _trend(self.term, self.start)

    def side(self) -> str:
        return {"dec": "above", "inc": "below", "const": "at"}[self.trend()]


def _trend(expr, start: int) -> str:
    diff = sympy.simplify(expr.subs(N, N + 1) - expr)
    if diff == 0:
        return "const"
    shifted = sympy.simplify(diff.subs(N, _M + start))
    if shifted.is_negative:
        return "dec"
    if shifted.is_positive:
        return "inc"
    raise CertificateError(f"cannot certify a monotone tail for {expr}")


def _relation(p: Fraction, seq: CatalogSequence, p_first: bool) -> str:
    """Eventual branch for the pair (p, x_n) (or (x_n, p) when not p_first)."""
    L = seq.limit()
    side = seq.side()
    if side == "at":
        c = seq.value(seq.start)
        first, second = (p, c) if p_first else (c, p)
        return "le" if first <= second else "gt"
    if p != L:
        p_below = p < L
    else:
        p_below = side == "above"  # the terms sit strictly above p
    # p_below: p < x_n eventually
    if p_first:
        return "le" if p_below else "gt"
    return "gt" if p_below else "le"


def limit_distance_to(dist: CatalogDistance, p, seq: CatalogSequence) -> Fraction:
    """lim_n d(p, x_n), exactly."""
    p = to_rational(p)
    if seq.side() == "at":
        return dist(p, seq.value(seq.start))
    g = dist.branch(_relation(p, seq, p_first=True))
    return as_fraction(sympy.limit(g(as_sympy(p), seq.term), N, sympy.oo))


def limit_distance_from(dist: CatalogDistance, seq: CatalogSequence, p) -> Fraction:
    """lim_n d(x_n, p), exactly."""
    p = to_rational(p)
    if seq.side() == "at":
        return dist(seq.value(seq.start), p)
    g = dist.branch(_relation(p, seq, p_first=False))
    return as_fraction(sympy.limit(g(seq.term, as_sympy(p)), N, sympy.oo))


def limit_tail_sup(dist: CatalogDistance, seq: CatalogSequence, direction: str) -> Fraction:
    """lim_n sup_k d(pair_{n,k}) with pair (x_{n+k}, x_n) for ``right``, (x_n, x_{n+k}) for ``left``."""
    trend = seq.trend()
    if trend == "const":
        c = seq.value(seq.start)
        return dist(c, c)
    L = as_sympy(seq.limit())
    t, t_next = seq.term, seq.term.subs(N, N + 1)
    later_is_smaller = trend == "dec"
    if direction == "right":
        g = dist.branch("le" if later_is_smaller else "gt")
        ends = [g(t_next, t), g(L, t)]
    elif direction == "left":
        g = dist.branch("gt" if later_is_smaller else "le")
        ends = [g(t, t_next), g(t, L)]
    else:
        raise ValueError("direction must be 'left' or 'right'")
    return max(as_fraction(sympy.limit(e, N, sympy.oo)) for e in ends)


# -- functions ----------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    interval: Interval
    expr: Callable  # x -> value; may return INF


@dataclass(frozen=True)
class CatalogFunction:
    """Piecewise function on Q given by (interval, expression) pieces."""

    id: str
    pieces: tuple
    description: str = ""
    finite_range: Optional[tuple] = None  # exact range when finite (certificate)

    def piece_at(self, x) -> Piece:
        for piece in self.pieces:
            if x in piece.interval:
                return piece
        raise ValueError(f"{self.id} is not defined at {x}")

    def __call__(self, x):
        x = to_rational(x)
        v = self.piece_at(x).expr(x)
        return v if v is INF else to_rational(v) if not isinstance(v, Fraction) else v

    def eventual_piece(self, seq: CatalogSequence) -> Piece:
        if seq.side() == "at":
            return self.piece_at(seq.value(seq.start))
        L, side = seq.limit(), seq.side()
        for piece in self.pieces:
            if piece.interval.contains_tail(L, side):
                return piece
        raise CertificateError(f"no single piece of {self.id} contains the tail of {seq.name}")

    def along(self, seq: CatalogSequence):
        """Closed form of f(x_n) on the tail (sympy expression, or INF)."""
        piece = self.eventual_piece(seq)
        return piece.expr(seq.term) if seq.side() != "at" else piece.expr(seq.value(seq.start))


def _q(s: str) -> Fraction:
    return Fraction(s)


PHI_A = CatalogFunction(
    "example-a-phi",
    (
        Piece(Interval(lo=Fraction(0)), lambda x: x),
        Piece(Interval(hi=Fraction(0), hi_closed=False), lambda x: 0 * x - 1),
    ),
    "phi(x) = x for x >= 0, -1 for x < 0",
)

PHI_A1 = CatalogFunction(
    "example-a-phi1",
    (
        Piece(Interval(lo=Fraction(0), lo_closed=False), lambda x: -x),
        Piece(Interval(hi=Fraction(0)), lambda x: 0 * x + 1),
    ),
    "phi1(x) = -x for x > 0, 1 for x <= 0",
)

DIRICHLET = CatalogFunction(
    "dirichlet",
    (Piece(RATIONALS, lambda x: 0 * x),),
    "0 on Q, 1 off Q; catalog points are rational so only the value 0 is ever evaluated",
    finite_range=(Fraction(0), Fraction(1)),
)

IDENTITY_UNIT = CatalogFunction("identity", (Piece(UNIT, lambda x: x),), "f(x) = x on [0,1]")


@dataclass(frozen=True)
class CatalogMap:
    id: str
    func: Callable
    domain: Interval = UNIT


def closed_graph_residual_function(h: CatalogMap, g: CatalogMap, metric2: CatalogDistance, name: str = "residual") -> CatalogFunction:
    """f(x) = metric2(h(x), g(x)) on the domain of g and +inf elsewhere."""

    def on_domain(x):
        hx, gx = h.func(x), g.func(x)
        if isinstance(x, Fraction):
            return metric2(hx, gx)
        return sympy.Abs(hx - gx) if metric2.id == "abs" else sympy.Piecewise(
            (metric2.le(hx, gx), hx <= gx), (metric2.gt(hx, gx), True)
        )

    pieces = [Piece(g.domain, on_domain)]
    if g.domain.lo is not None:
        pieces.append(Piece(Interval(hi=g.domain.lo, hi_closed=not g.domain.lo_closed), lambda x: INF))
    if g.domain.hi is not None:
        pieces.append(Piece(Interval(lo=g.domain.hi, lo_closed=not g.domain.hi_closed), lambda x: INF))
    return CatalogFunction(name, tuple(pieces), f"{metric2.id}({h.id}(x), {g.id}(x)) on dom {g.id}, +inf elsewhere")


H_IDENTITY = CatalogMap("h", lambda x: x, RATIONALS)
G_SQUARE = CatalogMap("g", lambda x: x * x, UNIT)


@dataclass(frozen=True)
class CatalogRule:
    """Successor rule x -> x' on a countable instance."""

    id: str
    func: Callable

    def __call__(self, x: Fraction) -> Fraction:
        return to_rational(self.func(x))


HALVING = CatalogRule("halving", lambda x: x / 2)


# -- named entries -------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    description: str
    distance: str
    domain: Interval = RATIONALS
    objective: Optional[CatalogFunction] = None
    sequences: dict = field(default_factory=dict)
    limits: tuple = ()
    params: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)

    @property
    def dist(self) -> CatalogDistance:
        return distance(self.distance)

    def sequence(self, name: Optional[str] = None) -> CatalogSequence:
        if name is None:
            return next(iter(self.sequences.values()))
        try:
            return self.sequences[name]
        except KeyError:
            raise KeyError(f"{self.id} has no sequence {name!r}; known: {sorted(self.sequences)}") from None


INV_N = CatalogSequence("1/n", 1 / N)
NEG_INV_N = CatalogSequence("-1/n", -1 / N)
HALVES = CatalogSequence("2^-n", sympy.Integer(2) ** (-N), start=0)

ENTRIES = {
    "q4-grid": CatalogEntry(
        "q4-grid",
        "[0,1] with the quasi-metric q4; x_n = 1/n has the two limits 0 and 1",
        "q4",
        domain=UNIT,
        objective=IDENTITY_UNIT,
        sequences={"1/n": INV_N},
        limits=(Fraction(0), Fraction(1)),
        certificates={"separation": "T1", "sequence": "1/n strictly decreasing to 0 from n=1"},
    ),
    "du-line": CatalogEntry(
        "du-line",
        "Q with d_u(a,b) = (b-a)^+",
        "du",
        sequences={"1/n": INV_N, "-1/n": NEG_INV_N},
        limits=(Fraction(0), Fraction(-1)),
        certificates={"separation": "T0 not T1"},
    ),
    "example-a-phi": CatalogEntry(
        "example-a-phi",
        "(Q, |.|) with phi = x (x >= 0), -1 (x < 0)",
        "abs",
        objective=PHI_A,
        sequences={"-1/n": NEG_INV_N, "1/n": INV_N},
        limits=(Fraction(0),),
        certificates={
            "strict-decreasingly-lsc": "at 0: a strictly phi-decreasing sequence converging to 0 has its tail in [0, oo), "
            "where phi(x) = x >= 0 = phi(0)",
            "decreasingly-lsc": "fails at 0, witness x_n = -1/n",
        },
    ),
    "example-a-phi1": CatalogEntry(
        "example-a-phi1",
        "(Q, |.|) with phi1 = -x (x > 0), 1 (x <= 0)",
        "abs",
        objective=PHI_A1,
        sequences={"-1/n": NEG_INV_N, "1/n": INV_N},
        limits=(Fraction(0),),
        certificates={
            "decreasingly-lsc": "at 0: a phi1-nonincreasing sequence converging to 0 is eventually in (-oo, 0], where phi1 = 1",
            "lsc": "fails at 0, witness x_n = 1/n",
        },
    ),
    "dirichlet": CatalogEntry(
        "dirichlet",
        "(Q, |.|) with the Dirichlet-type function (0 on Q)",
        "abs",
        objective=DIRICHLET,
        sequences={"1/n": INV_N, "-1/n": NEG_INV_N},
        limits=(Fraction(0),),
        certificates={
            "strict-decreasingly-lsc": "vacuous: the range {0, 1} is finite, so no infinite strictly decreasing value sequence exists",
        },
    ),
    "gelman-halving": CatalogEntry(
        "gelman-halving",
        "[0,1] with |.|, f(x) = x, successor x' = x/2",
        "abs",
        domain=UNIT,
        objective=IDENTITY_UNIT,
        sequences={"2^-n": HALVES},
        limits=(Fraction(0),),
        params={"rule": HALVING, "lambda": Fraction(1), "mu": Fraction(1, 2), "x0": Fraction(1), "limit": Fraction(0)},
        certificates={"condition-a": "f(x) = x is continuous, so x_n -> x and f(x_n) -> 0 force f(x) = 0"},
    ),
    "closed-graph-residual": CatalogEntry(
        "closed-graph-residual",
        "[0,1] with |.|, f(x) = |h(x) - g(x)| for h(x) = x, g(x) = x^2",
        "abs",
        domain=UNIT,
        objective=closed_graph_residual_function(H_IDENTITY, G_SQUARE, DISTANCES["abs"]),
        sequences={"1/n": INV_N},
        limits=(Fraction(0),),
        params={"h": H_IDENTITY, "g": G_SQUARE},
        certificates={"condition-a": "h continuous and g with closed graph"},
    ),
}


def entry(id_: str) -> CatalogEntry:
    try:
        return ENTRIES[id_]
    except KeyError:
        raise KeyError(f"unknown catalog entry {id_!r}; known: {sorted(ENTRIES)}") from None


def check_closed_form(seq: CatalogSequence, func: Callable, closed, samples: int = 64) -> None:
    """Compare a closed form in N with direct exact evaluation on sampled indices."""
    for k in range(samples):
        n = seq.start + 1 + k
        direct = func(seq.value(n))
        stored = as_fraction(sympy.sympify(closed).subs(N, n))
        if direct != stored:
            raise CertificateError(f"closed form {closed} disagrees with direct evaluation at n={n}")

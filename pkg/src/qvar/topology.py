"""Convergence, Cauchy sequences, separation and semicontinuity, decided exactly.

Two kinds of sequences are supported.

* :class:`LassoSequence` on a finite instance: an explicit prefix followed by
  an optional cycle repeated forever.  With a cycle every verdict is exact;
  without one the sequence is only known up to its length, and verdicts are
  labelled ``consistent-up-to-N``.
* :class:`~qvar.catalog.CatalogSequence` on a catalog space: verdicts come
  from exact symbolic limits of the piecewise-affine catalog distances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import catalog as cat
from .extended import INF, ExtendedRational, dump_ext, is_finite
from .spaces import FQuasiGauge, QVarError, Relation

DEFAULT_SCHEDULE = tuple(Fraction(1, 2**k) for k in range(11))


# -- spaces and sequences -----------------------------------------------------


@dataclass(frozen=True)
class CatalogSpace:
    """A countable instance: rationals in a catalog domain with catalog distances."""

    members: tuple  # of CatalogDistance

    @classmethod
    def of(cls, *ids: str) -> "CatalogSpace":
        return cls(tuple(cat.distance(i) for i in ids))

    @classmethod
    def for_entry(cls, entry_id: str) -> "CatalogSpace":
        return cls.of(cat.entry(entry_id).distance)

    def check_point(self, x) -> Fraction:
        x = Fraction(x) if not isinstance(x, Fraction) else x
        for d in self.members:
            if x not in d.domain:
                raise QVarError(f"point {x} is not in the domain of {d.id}")
        return x


@dataclass(frozen=True)
class LassoSequence:
    """prefix, then cycle, cycle, ...  (point indices)."""

    prefix: tuple = ()
    cycle: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.prefix and not self.cycle:
            raise ValueError("a sequence needs at least one term")

    @classmethod
    def constant(cls, a: int) -> "LassoSequence":
        return cls((), (a,))

    @property
    def exact(self) -> bool:
        return bool(self.cycle)

    def terms(self, length: Optional[int] = None) -> list:
        """The first ``length`` terms (default: prefix plus one pass of the cycle)."""
        if length is None:
            length = len(self.prefix) + len(self.cycle)
        out = list(self.prefix[:length])
        k = 0
        while len(out) < length and self.cycle:
            out.append(self.cycle[k % len(self.cycle)])
            k += 1
        return out

    def tail(self) -> tuple:
        """Points visited infinitely often (exact sequences only)."""
        return tuple(sorted(set(self.cycle)))


# -- verdicts -----------------------------------------------------------------


@dataclass
class Verdict:
    value: bool
    exact: bool
    depth: Optional[int] = None
    schedule: dict = field(default_factory=dict)  # eps -> first index or None
    detail: dict = field(default_factory=dict)

    @property
    def qualifier(self) -> str:
        return "exact" if self.exact else f"consistent-up-to-{self.depth}"

    def __bool__(self):
        return self.value

    def to_dict(self) -> dict:
        out = {"value": self.value, "qualifier": self.qualifier}
        if self.schedule:
            out["schedule"] = {str(dump_ext(e)): i for e, i in self.schedule.items()}
        if self.detail:
            out["detail"] = self.detail
        return out


def _first_index(ok: Sequence[bool]) -> Optional[int]:
    """Smallest m with ok[m:] all true, or None when the last entry fails."""
    m = len(ok)
    while m > 0 and ok[m - 1]:
        m -= 1
    return m if m < len(ok) else None


def _schedule_verdict(schedule, good_from, depth) -> Verdict:
    table = {eps: good_from(eps) for eps in schedule}
    return Verdict(all(v is not None for v in table.values()), False, depth, table)


# -- separation -----------------------------------------------------------------


@dataclass(frozen=True)
class SeparationClass:
    value: str  # "T1", "T0" or "neither"
    witness: Optional[tuple] = None  # failing pair (x, y): d(x, y) = 0 for every d
    t0_witness: Optional[tuple] = None  # pair with zero distance both ways

    @property
    def is_t1(self) -> bool:
        return self.value == "T1"

    @property
    def is_t0(self) -> bool:
        return self.value in ("T0", "T1")


def separation_class(D: FQuasiGauge) -> SeparationClass:
    n = D.n
    zero = [[all(d(x, y) == 0 for d in D) for y in range(n)] for x in range(n)]
    t1_fail = next(((x, y) for x in range(n) for y in range(n) if x != y and zero[x][y]), None)
    if t1_fail is None:
        return SeparationClass("T1")
    t0_fail = next(((x, y) for x in range(n) for y in range(x + 1, n) if zero[x][y] and zero[y][x]), None)
    if t0_fail is None:
        return SeparationClass("T0", t1_fail)
    return SeparationClass("neither", t0_fail, t0_fail)


def specialization_preorder(D: FQuasiGauge) -> Relation:
    """{(s, t) : s lies in the closure of {t}} = {(s, t) : d(s, t) = 0 for all d}."""
    n = D.n
    return frozenset((s, t) for s in range(n) for t in range(n) if all(d(s, t) == 0 for d in D))


# -- convergence ----------------------------------------------------------------


def converges_to(seq, x, space, schedule=DEFAULT_SCHEDULE) -> Verdict:
    """Does ``seq`` converge to ``x``, i.e. d(x, x_n) -> 0 for every member d?"""
    if isinstance(seq, cat.CatalogSequence):
        x = _catalog_space(space).check_point(x)
        lims = {d.id: cat.limit_distance_to(d, x, seq) for d in _catalog_space(space).members}
        return Verdict(all(v == 0 for v in lims.values()), True, detail={"lim d(x, x_n)": {k: dump_ext(v) for k, v in lims.items()}})
    D = _gauge(space)
    _check_index(x, D.n)
    if seq.exact:
        bad = [(d.name, c) for d in D for c in seq.tail() if d(x, c) != 0]
        return Verdict(not bad, True, detail={"tail": list(seq.tail()), "nonzero": bad[:1]})
    terms = seq.terms()
    gaps = [max(d(x, t) for d in D) for t in terms]
    return _schedule_verdict(schedule, lambda eps: _first_index([g < eps for g in gaps]), len(terms))


def limit_set(seq, space, candidates) -> list:
    return [c for c in candidates if converges_to(seq, c, space).value]


def _cauchy(seq, space, direction: str, schedule) -> Verdict:
    if isinstance(seq, cat.CatalogSequence):
        sups = {d.id: cat.limit_tail_sup(d, seq, direction) for d in _catalog_space(space).members}
        return Verdict(all(v == 0 for v in sups.values()), True, detail={"lim sup_k": {k: dump_ext(v) for k, v in sups.items()}})
    D = _gauge(space)
    if seq.exact:
        tail = seq.tail()
        bad = [(d.name, a, b) for d in D for a in tail for b in tail if d(a, b) != 0]
        return Verdict(not bad, True, detail={"tail": list(tail), "nonzero": bad[:1]})
    terms = seq.terms()
    L = len(terms)

    def pair(n, m):  # n < m
        return (terms[m], terms[n]) if direction == "right" else (terms[n], terms[m])

    # worst[n] = largest increment among pairs starting at index >= n
    worst = [Fraction(0)] * (L + 1)
    for n in range(L - 1, -1, -1):
        here = max((d(*pair(n, m)) for d in D for m in range(n + 1, L)), default=Fraction(0))
        worst[n] = max(here, worst[n + 1])
    return _schedule_verdict(
        schedule, lambda eps: next((n for n in range(L) if worst[n] < eps), None), L
    )


def is_left_k_cauchy(seq, space, schedule=DEFAULT_SCHEDULE) -> Verdict:
    """Left K-Cauchy: d(x_n, x_{n+k}) eventually below every epsilon."""
    return _cauchy(seq, space, "left", schedule)


def is_right_k_cauchy(seq, space, schedule=DEFAULT_SCHEDULE) -> Verdict:
    """Right K-Cauchy: d(x_{n+k}, x_n) eventually below every epsilon."""
    return _cauchy(seq, space, "right", schedule)


def _gauge(space) -> FQuasiGauge:
    if isinstance(space, FQuasiGauge):
        return space
    gauge = getattr(space, "gauge", None)
    if isinstance(gauge, FQuasiGauge):
        return gauge
    raise TypeError("finite sequences need a gauge or an instance")


def _catalog_space(space) -> CatalogSpace:
    if isinstance(space, CatalogSpace):
        return space
    if isinstance(space, cat.CatalogDistance):
        return CatalogSpace((space,))
    if isinstance(space, str):
        return CatalogSpace.for_entry(space)
    raise TypeError("catalog sequences need a CatalogSpace")


def _check_index(x, n):
    if not isinstance(x, int) or not 0 <= x < n:
        raise QVarError(f"point {x!r} is not in the instance")


# -- semicontinuity ------------------------------------------------------------------


CLASSES = ("lsc", "decreasingly-lsc", "strict-decreasingly-lsc", "nearly-lsc")


@dataclass
class ClassReport:
    limit_point: object
    converges: Verdict
    f_limit_point: ExtendedRational
    liminf: ExtendedRational
    lim: Optional[ExtendedRational]  # None when f(x_n) has no limit
    hypotheses: dict  # strictly-decreasing / nonincreasing / pairwise-distinct
    inequalities: dict  # class -> "holds" | "fails" | "not-applicable"
    global_certificates: dict = field(default_factory=dict)

    def holds(self, klass: str) -> bool:
        return self.inequalities[klass] != "fails"

    def to_dict(self) -> dict:
        return {
            "limit_point": dump_ext(self.limit_point) if isinstance(self.limit_point, Fraction) else self.limit_point,
            "converges": self.converges.to_dict(),
            "f(y)": dump_ext(self.f_limit_point),
            "liminf f(x_n)": _dump_opt(self.liminf),
            "lim f(x_n)": _dump_opt(self.lim),
            "hypotheses": dict(self.hypotheses),
            "inequalities": dict(self.inequalities),
            "global": dict(self.global_certificates),
        }


def _dump_opt(v):
    if v is None:
        return None
    if v == "-inf":
        return "-inf"
    return dump_ext(v)


def _le(a, b) -> bool:
    """a <= b over Q u {+inf} u {"-inf"} (the latter only as a liminf)."""
    if b == "-inf":
        return a == "-inf"
    if a == "-inf":
        return True
    return a <= b


def _judge(fy, liminf, lim, hyp) -> dict:
    out = {"lsc": "holds" if _le(fy, liminf) else "fails"}
    for klass, key in (
        ("decreasingly-lsc", "nonincreasing"),
        ("strict-decreasingly-lsc", "strictly-decreasing"),
        ("nearly-lsc", "pairwise-distinct"),
    ):
        if not hyp[key]:
            out[klass] = "not-applicable"
        else:
            # the monotone classes use lim, which exists for monotone values and equals liminf
            out[klass] = "holds" if _le(fy, liminf) else "fails"
    return out


def classify_semicontinuity(f, seq, y, space=None) -> ClassReport:
    """Semicontinuity inequalities of ``f`` along one convergent sequence.

    For a finite instance pass an :class:`~qvar.instance.Objective` and a
    lasso with a cycle; for the catalog pass a
    :class:`~qvar.catalog.CatalogFunction` and a catalog sequence.  The
    report says which hypotheses the sequence satisfies and, for each
    class, whether its inequality f(y) <= lim f(x_n) holds, fails, or is
    not applicable to this sequence.
    """
    if isinstance(seq, cat.CatalogSequence):
        return _classify_catalog(f, seq, y, space)
    if not seq.exact:
        raise QVarError("classification needs an exact limit verdict; give the sequence a cycle")
    verdict = converges_to(seq, y, space)
    if not verdict.value:
        raise QVarError("the sequence does not converge to the given point")
    cyc_vals = [f(c) for c in seq.cycle]
    liminf = min(cyc_vals)
    lim = liminf if all(v == liminf for v in cyc_vals) else None
    vals = [f(t) for t in seq.terms(len(seq.prefix) + len(seq.cycle) + 1)]
    nonincreasing = all(a >= b for a, b in zip(vals, vals[1:]))
    hyp = {"strictly-decreasing": False, "nonincreasing": nonincreasing, "pairwise-distinct": False}
    return ClassReport(y, verdict, f(y), liminf, lim, hyp, _judge(f(y), liminf, lim, hyp))


def _classify_catalog(f: cat.CatalogFunction, seq: cat.CatalogSequence, y, space) -> ClassReport:
    import sympy

    space = _catalog_space(space) if space is not None else CatalogSpace.of("abs")
    verdict = converges_to(seq, y, space)
    if not verdict.value:
        raise QVarError("the sequence does not converge to the given point")
    y = Fraction(y)
    along = f.along(seq)
    if along is INF:
        raise QVarError(f"{f.id} is +inf on the whole tail of {seq.name}")
    value_trend = cat._trend(sympy.sympify(along), seq.start) if seq.side() != "at" else "const"
    lim = cat.as_fraction(sympy.limit(sympy.sympify(along), cat.N, sympy.oo)) if seq.side() != "at" else along
    seq_trend = seq.trend()
    hyp = {
        "strictly-decreasing": value_trend == "dec",
        "nonincreasing": value_trend in ("dec", "const"),
        "pairwise-distinct": seq_trend != "const",
    }
    fy = f(y)
    report = ClassReport(y, verdict, fy, lim, lim, hyp, _judge(fy, lim, lim, hyp))
    report.global_certificates = _global_classes(f)
    return report


def _global_classes(f: cat.CatalogFunction) -> dict:
    out = {}
    if f.finite_range is not None:
        out["strict-decreasingly-lsc"] = (
            "vacuous: the range is finite, so no sequence has strictly decreasing values"
        )
    for e in cat.ENTRIES.values():
        if e.objective is f:
            out.update({k: v for k, v in e.certificates.items() if k in CLASSES})
    return out


__all__ = [
    "CatalogSpace",
    "LassoSequence",
    "Verdict",
    "SeparationClass",
    "ClassReport",
    "DEFAULT_SCHEDULE",
    "separation_class",
    "specialization_preorder",
    "converges_to",
    "limit_set",
    "is_left_k_cauchy",
    "is_right_k_cauchy",
    "classify_semicontinuity",
    "is_finite",
]

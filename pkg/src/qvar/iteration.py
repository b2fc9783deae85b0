"""The eta-iteration that drives f to zero, and its (lambda, mu) special case.

Starting from x0 the iteration repeatedly applies a user-supplied successor
rule x -> x' that must satisfy

    (i)  f(x') + gamma * d(x', x) <= f(x)   for every member d,
    (ii) f(x') <= eta(f(x)),

wherever f(x) > 0.  Rules are data, never searched for: a table on a finite
instance (audited entirely before the first step) or a catalog rule
(audited at every visited pair).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import catalog as cat
from .extended import INF, dump_ext, is_finite, to_ext, to_rational
from .instance import Instance, Objective
from .spaces import HypothesisError, validate_quasi_pseudometric
from .topology import CatalogSpace, converges_to

DEFAULT_CATALOG_CAP = 10_000
ALL_PAIRS_LIMIT = 256  # runs with at most this many iterates check every (n, k)


# -- eta ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EtaSpec:
    """eta(t) = mu * t, or the continuous piecewise-linear interpolation of breakpoints.

    Piecewise-linear specs list ``(t, eta(t))`` breakpoints starting at t = 0
    and continue with ``final_slope`` after the last one.  Continuity makes
    eta upper semicontinuous.
    """

    kind: str
    mu: Optional[Fraction] = None
    points: tuple = ()
    final_slope: Fraction = Fraction(0)

    @classmethod
    def linear(cls, mu) -> "EtaSpec":
        return cls("linear", mu=to_rational(mu))

    @classmethod
    def piecewise(cls, points, final_slope) -> "EtaSpec":
        pts = tuple((to_rational(t), to_rational(v)) for t, v in points)
        return cls("pwl", points=pts, final_slope=to_rational(final_slope))

    @classmethod
    def parse(cls, text: str) -> "EtaSpec":
        """``linear:<mu>`` or ``pwl:<json file>`` with keys ``points`` and ``final_slope``."""
        kind, _, arg = text.partition(":")
        if kind == "linear":
            return cls.linear(arg)
        if kind == "pwl":
            data = json.loads(Path(arg).read_text(encoding="utf-8"))
            return cls.piecewise(data["points"], data.get("final_slope", 0))
        raise ValueError(f"unknown eta form {text!r}")

    def __call__(self, t: Fraction) -> Fraction:
        if self.kind == "linear":
            return self.mu * t
        pts = self.points
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t0 <= t <= t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        t_last, v_last = pts[-1]
        return v_last + self.final_slope * (t - t_last)

    def check(self) -> None:
        """eta >= 0 and eta(t) < t for t > 0; hence eta(a) >= a forces a = 0."""
        if self.kind == "linear":
            if not 0 < self.mu < 1:
                raise HypothesisError(f"linear eta needs 0 < mu < 1, got {self.mu}", witness=dump_ext(self.mu))
            return
        pts = self.points
        if not pts or pts[0][0] != 0:
            raise HypothesisError("piecewise eta must start with a breakpoint at t = 0")
        if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
            raise HypothesisError("breakpoints must be strictly increasing in t")
        if pts[0][1] != 0:
            raise HypothesisError("eta(0) must be 0, otherwise eta(t) < t fails near 0", witness=0)
        for t, v in pts:
            if v < 0:
                raise HypothesisError(f"eta({t}) = {v} is negative", witness=dump_ext(t))
            if t > 0 and not v < t:
                raise HypothesisError(f"eta({t}) = {v} is not below t", witness=dump_ext(t))
        # eta - id is affine on each segment, so negativity at the endpoints covers the segment;
        # after the last breakpoint it stays negative iff the slope is at most 1.
        if self.final_slope < 0 or self.final_slope > 1:
            raise HypothesisError(f"final slope {self.final_slope} must lie in [0, 1]")
        if len(pts) == 1 and self.final_slope >= 1:
            raise HypothesisError("eta(t) = t on the first segment")

    def describe(self) -> str:
        if self.kind == "linear":
            return f"linear:{dump_ext(self.mu)}"
        return "pwl:" + ",".join(f"({dump_ext(t)},{dump_ext(v)})" for t, v in self.points) + f";slope {dump_ext(self.final_slope)}"


# -- rules --------------------------------------------------------------------------


@dataclass(frozen=True)
class TableRule:
    """x -> x' on a finite instance (point indices); partial where f(x) = 0."""

    table: dict

    @classmethod
    def from_names(cls, inst: Instance, mapping: dict) -> "TableRule":
        return cls({inst.idx(k): inst.idx(v) for k, v in mapping.items()})

    @classmethod
    def load(cls, inst: Instance, path) -> "TableRule":
        return cls.from_names(inst, json.loads(Path(path).read_text(encoding="utf-8")))

    def __call__(self, x: int) -> int:
        try:
            return self.table[x]
        except KeyError:
            raise HypothesisError(f"the rule is undefined at point {x}", witness=x) from None


SuccessorRule = (TableRule, cat.CatalogRule)


# -- outcomes -----------------------------------------------------------------------


@dataclass
class Outcome:
    iterates: list
    values: list
    gamma: Fraction
    eta: EtaSpec
    pairs_checked: int = 0
    step_audits: int = 0
    checks: dict = field(default_factory=dict)

    @property
    def steps(self) -> int:
        return len(self.iterates) - 1

    def to_dict(self, name=str) -> dict:
        return {
            "outcome": self.kind,
            "steps": self.steps,
            "iterates": [name(x) for x in self.iterates],
            "values": [dump_ext(v) for v in self.values],
            "gamma": dump_ext(self.gamma),
            "eta": self.eta.describe(),
            "pairs_checked": self.pairs_checked,
            "checks": self.checks,
        }


@dataclass
class Terminated(Outcome):
    kind: str = "terminated"

    @property
    def point(self):
        return self.iterates[-1]


@dataclass
class Converging(Outcome):
    kind: str = "converging"

    @property
    def residuals(self) -> list:
        return self.values


# -- iteration ------------------------------------------------------------------------


class _Finite:
    def __init__(self, inst: Instance, f: Objective):
        for d in inst.gauge:
            rep = validate_quasi_pseudometric(d, "strict-triangle")
            if not rep.valid:
                v = rep.violations[0]
                raise HypothesisError(f"member {d.name} is not a quasi-pseudometric ({v.axiom})", witness=v.witness)
        self.inst, self.f = inst, f
        self.members = list(inst.gauge)

    def dist(self, d, x, y):
        return d(x, y)

    def value(self, x):
        return self.f(x)


class _Catalog:
    def __init__(self, space: CatalogSpace, f: cat.CatalogFunction):
        for d in space.members:
            if not d.certificate:
                raise HypothesisError(f"catalog distance {d.id} carries no certificate")
        self.space, self.f = space, f
        self.members = list(space.members)

    def dist(self, d, x, y):
        return d(x, y)

    def value(self, x):
        return self.f(x)


def _audit_pair(ctx, gamma, eta, x, x_next, gelman=None):
    fx, fn = ctx.value(x), ctx.value(x_next)
    if fn is INF:
        raise HypothesisError(f"successor of {x} leaves dom f", witness=[_show(x), _show(x_next)])
    for d in ctx.members:
        dv = ctx.dist(d, x_next, x)
        if gelman is not None:
            lam, mu = gelman
            if not dv <= lam * fx:
                raise HypothesisError("(lambda, mu) step bound d(x', x) <= lambda f(x) fails", witness=[_show(x), _show(x_next)])
            if not fn <= mu * fx:
                raise HypothesisError("(lambda, mu) decrease f(x') <= mu f(x) fails", witness=[_show(x), _show(x_next)])
        if not fn + gamma * dv <= fx:
            raise HypothesisError(f"step ({_show(x)} -> {_show(x_next)}) fails f(x') + gamma d(x', x) <= f(x) for {_name(d)}",
                                  witness=[_show(x), _show(x_next)])
    if not fn <= eta(fx):
        raise HypothesisError(f"step ({_show(x)} -> {_show(x_next)}) fails f(x') <= eta(f(x))", witness=[_show(x), _show(x_next)])


def _show(x):
    return dump_ext(x) if isinstance(x, Fraction) else x


def _name(d):
    return getattr(d, "name", None) or getattr(d, "id", "?")


def _pairs(count: int, seed: int = 0):
    if count <= ALL_PAIRS_LIMIT:
        return list(itertools.combinations(range(count), 2))
    rng = random.Random(seed)
    chosen = {(0, m) for m in range(1, count)}
    while len(chosen) < 4 * count:
        n, m = sorted(rng.sample(range(count), 2))
        chosen.add((n, m))
    return sorted(chosen)


def eta_iterate(f, gamma, eta: EtaSpec, rule, x0, cap: Optional[int] = None, space=None, gelman=None) -> Outcome:
    """Run the eta-iteration from x0 until f = 0 (Terminated) or ``cap`` steps (Converging).

    Finite runs pass an :class:`Instance` as ``space`` and a :class:`TableRule`;
    catalog runs pass a :class:`CatalogSpace` (or catalog entry id) and a
    :class:`~qvar.catalog.CatalogRule`.
    """
    gamma = to_rational(gamma)
    if gamma <= 0:
        raise HypothesisError(f"gamma must be positive, got {gamma}")
    eta.check()
    if isinstance(space, Instance):
        ctx = _Finite(space, f)
        x0 = space.idx(x0)
        if cap is None:
            cap = space.n
        for x in range(space.n):
            fx = f(x)
            if fx is not INF and fx < 0:
                raise HypothesisError(f"f is negative at {space.name(x)}", witness=space.name(x))
            if fx is not INF and fx > 0:
                _audit_pair(ctx, gamma, eta, x, rule(x), gelman)
    else:
        if isinstance(space, str):
            space = CatalogSpace.for_entry(space)
        ctx = _Catalog(space, f)
        x0 = space.check_point(to_rational(x0))
        if cap is None:
            cap = DEFAULT_CATALOG_CAP
    if not is_finite(ctx.value(x0)):
        raise HypothesisError("x0 is outside dom f", witness=_show(x0))
    if ctx.value(x0) < 0:
        raise HypothesisError("f is negative at x0", witness=_show(x0))

    xs, vals = [x0], [ctx.value(x0)]
    audits = 0
    while vals[-1] > 0 and len(xs) - 1 < cap:
        x = xs[-1]
        nxt = rule(x)
        if isinstance(ctx, _Catalog):
            nxt = ctx.space.check_point(nxt)
            _audit_pair(ctx, gamma, eta, x, nxt, gelman)
            audits += 1
        xs.append(nxt)
        vals.append(ctx.value(nxt))

    if any(b > a for a, b in zip(vals, vals[1:])):
        raise HypothesisError("f(x_k) increased along the iteration")
    pairs = _pairs(len(xs))
    for n, m in pairs:
        for d in ctx.members:
            if not gamma * ctx.dist(d, xs[m], xs[n]) <= vals[n] - vals[m]:
                raise HypothesisError(f"telescoped bound fails for (n, k) = ({n}, {m - n}) and {_name(d)}", witness=[n, m - n])

    if vals[-1] == 0:
        out = Terminated(xs, vals, gamma, eta, len(pairs), audits)
        out.checks["bound"] = {
            _name(d): {"d(xbar, x0)": dump_ext(ctx.dist(d, xs[-1], x0)), "f(x0)/gamma": dump_ext(vals[0] / gamma)}
            for d in ctx.members
        }
        out.checks["bound_holds"] = all(gamma * ctx.dist(d, xs[-1], x0) <= vals[0] for d in ctx.members)
        return out
    out = Converging(xs, vals, gamma, eta, len(pairs), audits)
    out.checks["partial_bounds"] = {
        _name(d): dump_ext(max(ctx.dist(d, x, x0) for x in xs)) for d in ctx.members
    }
    return out


def check_declared_limit(outcome: Outcome, entry: cat.CatalogEntry, gamma: Fraction) -> dict:
    """For a catalog run with a declared limit: decay of d(xbar, x_k), f(xbar) = 0 and bound (ii)."""
    space = CatalogSpace.for_entry(entry.id)
    xbar = entry.params["limit"]
    f = entry.objective
    xs = outcome.iterates
    x0 = xs[0]
    report = {"limit": dump_ext(xbar), "f(limit)": dump_ext(f(xbar))}
    for d in space.members:
        dist_to = [d(xbar, x) for x in xs]
        report[f"{d.id}:decay"] = all(b <= a for a, b in zip(dist_to, dist_to[1:]))
        report[f"{d.id}:bound"] = gamma * d(xbar, x0) <= f(x0)
        report[f"{d.id}:d(limit, x0)"] = dump_ext(d(xbar, x0))
    seq = next((s for s in entry.sequences.values() if s.prefix(len(xs)) == list(xs)), None)
    if seq is not None:
        report["sequence"] = seq.name
        report["converges (exact)"] = converges_to(seq, xbar, space).value
    report["ok"] = all(v for k, v in report.items() if k.endswith((":decay", ":bound", "(exact)"))) and f(xbar) == 0
    return report


def gelman_reduce(f, lam, mu, rule, x0, cap: Optional[int] = None, space=None) -> Outcome:
    """(lambda, mu) version: gamma = (1 - mu) / lambda and eta(t) = mu t.

    Every visited pair is also audited in the original form
    d(x', x) <= lambda f(x), f(x') <= mu f(x).  The bound on the result
    reads d(xbar, x0) <= lambda / (1 - mu) * f(x0).
    """
    lam, mu = to_rational(lam), to_rational(mu)
    if lam <= 0:
        raise HypothesisError(f"lambda must be positive, got {lam}")
    if not 0 < mu < 1:
        raise HypothesisError(f"mu must lie in (0, 1), got {mu}")
    gamma = (1 - mu) / lam
    out = eta_iterate(f, gamma, EtaSpec.linear(mu), rule, x0, cap, space, gelman=(lam, mu))
    out.checks["gelman"] = {"lambda": dump_ext(lam), "mu": dump_ext(mu), "gamma": dump_ext(gamma), "factor": dump_ext(lam / (1 - mu))}
    return out


def closed_graph_residual(h: cat.CatalogMap, g: cat.CatalogMap, metric2: cat.CatalogDistance, points=None):
    """f(x) = metric2(h(x), g(x)) on dom g, +inf elsewhere.

    Returns the catalog function, or an :class:`Objective` over ``points``
    (rational coordinates) when they are given.
    """
    func = cat.closed_graph_residual_function(h, g, metric2)
    if points is None:
        return func
    return Objective(func.id, tuple(func(to_ext(p)) for p in points))


__all__ = [
    "EtaSpec",
    "TableRule",
    "SuccessorRule",
    "Outcome",
    "Terminated",
    "Converging",
    "eta_iterate",
    "gelman_reduce",
    "check_declared_limit",
    "closed_graph_residual",
    "DEFAULT_CATALOG_CAP",
]

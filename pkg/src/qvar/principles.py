"""Constructive variational principles on finite instances.

Every solver first audits the hypotheses of its principle exhaustively and
raises :class:`~qvar.spaces.HypothesisError` (a refusal) when one fails.
Otherwise it computes a point the way the corresponding proof does, and
returns it together with a :class:`~qvar.certificates.Certificate` whose
inequalities can be re-checked from raw data alone.

All solvers ultimately reduce to :func:`ekeland_point`: descend the order
``<=_f`` from the start to a minimal element, then pick for every other
point the first gauge member that separates it strictly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .certificates import Certificate, Inequality, F_, const, d_, f_, inf_
from .extended import INF, is_finite
from .instance import Bivariate, Instance, Objective, SetValuedMap
from .order import DescentTrace, PhiOrder, ineq_holds, minimal_element
from .spaces import FQuasiGauge, HypothesisError, QVarError, validate_f_quasi_gauge
from .topology import separation_class

PRINCIPLES = ("ekeland", "ekeland-scaled", "caristi", "takahashi", "arutyunov", "oettli-thera")


class TheoremViolation(QVarError):
    """A conclusion failed although every audited hypothesis held (a bug or a counterexample)."""


# -- shared pieces ----------------------------------------------------------------------


def _objective(inst: Instance, f: Union[Objective, str, None]) -> Objective:
    if isinstance(f, Objective):
        return f
    return inst.objective(f)


def _with_objective(inst: Instance, f: Objective) -> Instance:
    if inst.objectives.get(f.name) is f:
        return inst
    return inst.with_objective(f)


def audit_space(inst: Instance) -> None:
    """F-quasi-gauge axioms and T1 separation; completeness is automatic on finite sets."""
    report = validate_f_quasi_gauge(inst.gauge)
    if not report.valid:
        v = report.violations[0]
        raise HypothesisError(f"gauge fails {v.axiom}: {v.detail}", witness=_names(inst, v.witness))
    sep = separation_class(inst.gauge)
    if not sep.is_t1:
        raise HypothesisError(f"gauge topology is {sep.value}, the principle needs T1", witness=_names(inst, sep.witness))


def _names(inst, witness):
    if isinstance(witness, (tuple, list)) and all(isinstance(i, int) for i in witness):
        return [inst.name(i) for i in witness]
    return witness


def audit_objective(inst: Instance, f: Objective, start: Optional[int] = None) -> Fraction:
    if not f.proper:
        raise HypothesisError(f"objective {f.name!r} is not proper", witness=f.name)
    if start is not None and not is_finite(f(start)):
        raise HypothesisError(f"start {inst.name(start)!r} is outside dom {f.name}", witness=inst.name(start))
    return f.infimum()


def strict_witness(gauge: FQuasiGauge, lhs, rhs_base, x: int, z: int, coef=None) -> Optional[str]:
    """First member d with lhs < rhs_base + c_d * d(x, z), where c_d = coef[d] (default 1)."""
    for d in gauge:
        c = Fraction(1) if coef is None else coef[d.name]
        rhs = rhs_base if rhs_base is INF else rhs_base + c * d(x, z)
        if lhs < rhs:
            return d.name
    return None


@dataclass
class SolverReport:
    principle: str
    point: int
    point_name: str
    certificate: Certificate
    start: Optional[int] = None
    witnesses: dict = field(default_factory=dict)  # point index -> member name
    trace: Optional[DescentTrace] = None
    details: dict = field(default_factory=dict)


@dataclass
class EkelandCertificate(SolverReport):
    """Ekeland output: part I inequalities against x0 and part II strict witnesses."""

    @property
    def z(self) -> int:
        return self.point

    @property
    def x0(self) -> int:
        return self.start

    @property
    def part_i(self) -> list:
        return [q for q in self.certificate.inequalities if q.label.startswith("i:")]

    @property
    def part_ii(self) -> dict:
        return dict(self.witnesses)


def _ekeland_inequalities(inst, fname, z, x0, witnesses, coef=None) -> list:
    name = inst.name
    c = (lambda m: 1) if coef is None else (lambda m: coef[m])
    out = [
        Inequality(f"i:{d.name}", (f_(fname, name(z)), d_(d.name, name(z), name(x0), c(d.name))), "<=", (f_(fname, name(x0)),))
        for d in inst.gauge
    ]
    for x in sorted(witnesses):
        m = witnesses[x]
        out.append(Inequality(f"ii:{name(x)}", (f_(fname, name(z)),), "<", (f_(fname, name(x)), d_(m, name(x), name(z), c(m)))))
    return out


# -- Ekeland ---------------------------------------------------------------------------


def ekeland_point(inst: Instance, x0, objective=None, audit: bool = True) -> EkelandCertificate:
    """Point z with f(z) + d(z, x0) <= f(x0) for all d and, for x != z, f(z) < f(x) + d_x(x, z)."""
    f = _objective(inst, objective)
    x0 = inst.idx(x0)
    if audit:
        audit_space(inst)
        audit_objective(inst, f, x0)
    z, trace = minimal_element(PhiOrder(inst, f), x0, check=False)
    witnesses = {}
    for x in range(inst.n):
        if x == z:
            continue
        m = strict_witness(inst.gauge, f(z), f(x), x, z)
        if m is None:
            raise TheoremViolation(f"no gauge member separates {inst.name(x)} from the minimal point {inst.name(z)}")
        witnesses[x] = m
    cert = Certificate(
        "ekeland",
        _with_objective(inst, f),
        inst.name(z),
        objective=f.name,
        start=inst.name(x0),
        witnesses={inst.name(x): m for x, m in witnesses.items()},
        inequalities=_ekeland_inequalities(inst, f.name, z, x0, witnesses),
        trace=[inst.name(p) for p in trace.chain()],
    )
    return EkelandCertificate("ekeland", z, inst.name(z), cert, x0, witnesses, trace)


@dataclass(frozen=True)
class ScalingSpec:
    """epsilon and an increasing weight xi on the gauge members."""

    xi: dict
    epsilon: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "xi", {k: Fraction(v) for k, v in self.xi.items()})
        if self.epsilon is not None:
            object.__setattr__(self, "epsilon", Fraction(self.epsilon))
            if self.epsilon <= 0:
                raise ValueError("epsilon must be positive")

    @classmethod
    def uniform(cls, gauge: FQuasiGauge, value=1, epsilon=None) -> "ScalingSpec":
        return cls({d.name: Fraction(value) for d in gauge}, epsilon)

    @classmethod
    def ranked(cls, gauge: FQuasiGauge, c=1, epsilon=None) -> "ScalingSpec":
        """xi(d) = c * #{members e with e <= d pointwise}; increasing by construction."""
        return cls({d.name: Fraction(c) * sum(1 for e in gauge if e.leq(d)) for d in gauge}, epsilon)

    def check(self, gauge: FQuasiGauge) -> None:
        missing = set(gauge.names()) - set(self.xi)
        if missing:
            raise HypothesisError(f"xi is missing members {sorted(missing)}", witness=sorted(missing))
        for name, v in self.xi.items():
            if v <= 0:
                raise HypothesisError(f"xi({name}) = {v} is not positive", witness=name)
        for d1 in gauge:
            for d2 in gauge:
                if d1.leq(d2) and self.xi[d1.name] > self.xi[d2.name]:
                    raise HypothesisError(f"xi is not increasing: {d1.name} <= {d2.name}", witness=[d1.name, d2.name])


def ekeland_scaled(inst: Instance, x0, scaling: ScalingSpec, objective=None) -> EkelandCertificate:
    """Ekeland on the gauge {eps * xi(d) * d}, plus the bound d(z, x0) <= 1/xi(d)."""
    f = _objective(inst, objective)
    x0 = inst.idx(x0)
    audit_space(inst)
    alpha = audit_objective(inst, f, x0)
    scaling.check(inst.gauge)
    gap = f(x0) - alpha
    eps = scaling.epsilon if scaling.epsilon is not None else gap
    if gap > eps:
        raise HypothesisError(f"not-epsilon-minimal: f(x0) - inf f = {gap} > epsilon = {eps}", witness=inst.name(x0))
    xi = scaling.xi
    coef = {name: eps * v for name, v in xi.items()}
    if eps == 0:
        z, witnesses, trace = x0, {}, DescentTrace(x0, values=[f(x0)])
    else:
        scaled = inst.with_gauge(inst.gauge.rescaled(coef))
        base = ekeland_point(scaled, x0, f, audit=False)
        z, witnesses, trace = base.point, base.witnesses, base.trace
    nm = inst.name
    ineqs = [Inequality("epsilon-minimal", (f_(f.name, nm(x0)),), "<=", (inf_(f.name), const(eps)))]
    ineqs += _ekeland_inequalities(inst, f.name, z, x0, witnesses, coef)
    ineqs += [Inequality(f"jj:{d.name}", (d_(d.name, nm(z), nm(x0)),), "<=", (const(1 / xi[d.name]),)) for d in inst.gauge]
    cert = Certificate(
        "ekeland-scaled",
        _with_objective(inst, f),
        nm(z),
        objective=f.name,
        start=nm(x0),
        params={"epsilon": eps, "xi": dict(xi)},
        witnesses={nm(x): m for x, m in witnesses.items()},
        inequalities=ineqs,
        claims={"degenerate": True} if eps == 0 else {},
        trace=[nm(p) for p in trace.chain()],
    )
    return EkelandCertificate("ekeland-scaled", z, nm(z), cert, x0, witnesses, trace, {"epsilon": eps})


# -- Caristi, Takahashi, Arutyunov ---------------------------------------------------------


def lower_section_map(inst: Instance, f: Objective, name: Optional[str] = None) -> SetValuedMap:
    order = PhiOrder(inst, f)
    return SetValuedMap(name or f"S_{f.name}", tuple(tuple(order.lower_section(x)) for x in range(inst.n)))


def audit_caristi(inst: Instance, F: SetValuedMap, phi: Objective, variant: str) -> None:
    order = PhiOrder(inst, phi)
    for x in range(inst.n):
        section = set(order.lower_section(x))
        img = F(x)
        if variant == "weak" and not section.intersection(img):
            raise HypothesisError(f"no y in {F.name}({inst.name(x)}) lies in S_{phi.name}({inst.name(x)})", witness=inst.name(x))
        if variant == "strong":
            bad = [y for y in img if y not in section]
            if bad:
                raise HypothesisError(
                    f"{inst.name(bad[0])} in {F.name}({inst.name(x)}) is not in S_{phi.name}({inst.name(x)})",
                    witness=inst.name(x),
                )


def default_start(f: Objective) -> int:
    return f.domain()[0]


def caristi_fixed_point(inst: Instance, F, objective=None, variant: str = "weak", start=None) -> SolverReport:
    """Fixed point (weak: z in F(z)) or stationary point (strong: F(z) = {z}) of F."""
    if variant not in ("weak", "strong"):
        raise ValueError("variant must be 'weak' or 'strong'")
    phi = _objective(inst, objective)
    if isinstance(F, str):
        F = inst.maps[F]
    audit_space(inst)
    audit_objective(inst, phi)
    audit_caristi(inst, F, phi, variant)
    x0 = default_start(phi) if start is None else inst.idx(start)
    inst = _with_objective(inst, phi)
    if inst.maps.get(F.name) is not F:
        inst = inst.with_map(F)
    ek = ekeland_point(inst, x0, phi, audit=False)
    z = ek.point
    ok = z in F(z) if variant == "weak" else F(z) == (z,)
    if not ok:
        raise TheoremViolation(f"Ekeland point {inst.name(z)} is not a {variant} fixed point of {F.name}")
    cert = ek.certificate
    cert.principle = "caristi"
    cert.instance = inst
    cert.params = {"variant": variant, "map": F.name}
    return SolverReport("caristi", z, inst.name(z), cert, x0, ek.witnesses, ek.trace, {"variant": variant})


def audit_takahashi(inst: Instance, f: Objective, gamma: Fraction = Fraction(1)) -> Fraction:
    """Every x with f(x) > inf f has some x' != x with f(x') + gamma d(x', x) <= f(x) for all d."""
    alpha = f.infimum()
    for x in range(inst.n):
        if f(x) is not INF and f(x) <= alpha:
            continue
        if not any(
            y != x and all(_scaled_ineq(f, d, x, y, gamma) for d in inst.gauge) for y in range(inst.n)
        ):
            raise HypothesisError(f"{inst.name(x)} has f > inf f but nothing below it in the order", witness=inst.name(x))
    return alpha


def _scaled_ineq(f, d, x, y, gamma) -> bool:
    if f(x) is INF:
        return True
    if f(y) is INF:
        return False
    return f(y) + gamma * d(y, x) <= f(x)


def takahashi_minimize(inst: Instance, objective=None, start=None) -> SolverReport:
    """Exact minimizer, found as the stationary point of F = S_f."""
    f = _objective(inst, objective)
    audit_space(inst)
    audit_objective(inst, f)
    alpha = audit_takahashi(inst, f)
    S = lower_section_map(inst, f)
    car = caristi_fixed_point(inst, S, f, "strong", start)
    z = car.point
    if f(z) != alpha:
        raise TheoremViolation(f"Takahashi point {inst.name(z)} has f = {f(z)} != inf f = {alpha}")
    cert = car.certificate
    cert.principle = "takahashi"
    cert.instance = _with_objective(inst, f)
    cert.params = {}
    cert.inequalities = cert.inequalities + [Inequality("minimum", (f_(f.name, inst.name(z)),), "=", (inf_(f.name),))]
    return SolverReport("takahashi", z, inst.name(z), cert, car.start, car.witnesses, car.trace, {"alpha": alpha})


def arutyunov_minimize(inst: Instance, gamma, x0, objective=None) -> SolverReport:
    """x with f(x) = inf f and gamma d(x, x0) <= f(x0) - inf f for every member d."""
    f = _objective(inst, objective)
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    x0 = inst.idx(x0)
    audit_space(inst)
    alpha = audit_objective(inst, f, x0)
    audit_takahashi(inst, f, gamma)
    eps = f(x0) - alpha
    coef = {d.name: gamma for d in inst.gauge}
    if eps == 0:
        z, trace = x0, DescentTrace(x0, values=[f(x0)])
        witnesses = {}
        for x in range(inst.n):
            if x != z:
                m = strict_witness(inst.gauge, f(z), f(x), x, z, coef)
                if m is None:
                    raise TheoremViolation("T1 gauge without a separating member")
                witnesses[x] = m
    else:
        ek = ekeland_scaled(inst, x0, ScalingSpec({d.name: gamma / eps for d in inst.gauge}, eps), f)
        z, witnesses, trace = ek.point, ek.witnesses, ek.trace
    if f(z) != alpha:
        raise TheoremViolation(f"Arutyunov point {inst.name(z)} has f = {f(z)} != inf f = {alpha}")
    nm = inst.name
    ineqs = [Inequality("a", (f_(f.name, nm(z)),), "=", (inf_(f.name),))]
    ineqs += [
        Inequality(f"b:{d.name}", (d_(d.name, nm(z), nm(x0)),), "<=", (f_(f.name, nm(x0), 1 / gamma), inf_(f.name, -1 / gamma)))
        for d in inst.gauge
    ]
    ineqs += _ekeland_inequalities(inst, f.name, z, x0, witnesses, coef)
    cert = Certificate(
        "arutyunov",
        _with_objective(inst, f),
        nm(z),
        objective=f.name,
        start=nm(x0),
        params={"gamma": gamma},
        witnesses={nm(x): m for x, m in witnesses.items()},
        inequalities=ineqs,
        trace=[nm(p) for p in trace.chain()],
    )
    return SolverReport("arutyunov", z, nm(z), cert, x0, witnesses, trace, {"alpha": alpha, "bound": eps / gamma})


# -- Oettli-Thera ----------------------------------------------------------------------


def audit_bivariate(inst: Instance, F: Bivariate, x0: int) -> None:
    n = inst.n
    for x in range(n):
        if F(x, x) != 0:
            raise HypothesisError(f"(E1) fails: {F.name}({inst.name(x)}, {inst.name(x)}) = {F(x, x)}", witness=inst.name(x))
    for x, y, z in itertools.product(range(n), repeat=3):
        if F(x, z) > F(x, y) + F(y, z):
            raise HypothesisError("(E2) fails", witness=[inst.name(x), inst.name(y), inst.name(z)])
    # (E4): a finite row of values in Q u {+inf} is bounded below, so inf_y F(x0, y) > -inf holds.


def oettli_thera(inst: Instance, F, x0) -> SolverReport:
    """z in S(x0) with F(z, x) + d_x(x, z) > 0 for every x != z."""
    if isinstance(F, str):
        F = inst.bivariates[F]
    x0 = inst.idx(x0)
    audit_space(inst)
    audit_bivariate(inst, F, x0)
    g = Objective(f"{F.name}({inst.name(x0)},.)", tuple(F(x0, y) for y in range(inst.n)))
    ek = ekeland_point(inst, x0, g, audit=False)
    z = ek.point
    witnesses = {}
    for x in range(inst.n):
        if x == z:
            continue
        if F(z, x) is INF:
            witnesses[x] = inst.gauge.members[0].name
            continue
        m = next((d.name for d in inst.gauge if F(z, x) + d(x, z) > 0), None)
        if m is None:
            raise TheoremViolation(f"no member certifies {inst.name(x)} against {inst.name(z)}")
        witnesses[x] = m
    nm = inst.name
    ineqs = [
        Inequality(f"S:{d.name}", (F_(F.name, nm(x0), nm(z)), d_(d.name, nm(z), nm(x0))), "<=", (const(0),))
        for d in inst.gauge
    ]
    ineqs += [
        Inequality(f"ot:{nm(x)}", (F_(F.name, nm(z), nm(x)), d_(witnesses[x], nm(x), nm(z))), ">", (const(0),))
        for x in sorted(witnesses)
    ]
    cinst = inst if inst.bivariates.get(F.name) is F else inst.with_bivariate(F)
    cert = Certificate(
        "oettli-thera",
        cinst,
        nm(z),
        start=nm(x0),
        params={"bivariate": F.name},
        witnesses={nm(x): m for x, m in witnesses.items()},
        inequalities=ineqs,
        trace=list(ek.certificate.trace),
    )
    return SolverReport("oettli-thera", z, nm(z), cert, x0, witnesses, ek.trace)


def difference_bivariate(f: Objective, name: str = "F") -> Bivariate:
    """F(x, y) = f(y) - f(x); for f(x) = +inf, F(x, x) = 0 and F(x, y) = +inf otherwise."""
    n = len(f.values)

    def entry(x, y):
        if x == y:
            return Fraction(0)
        if f(x) is INF or f(y) is INF:
            return INF
        return f(y) - f(x)

    return Bivariate(name, tuple(tuple(entry(x, y) for y in range(n)) for x in range(n)))


def level_set(inst: Instance, F: Bivariate, x: int) -> list:
    """S(x) = {y : F(x, y) + d(y, x) <= 0 for all d}."""
    return [y for y in range(inst.n) if all(F(x, y) is not INF and F(x, y) + d(y, x) <= 0 for d in inst.gauge)]


# -- equivalence constructions -------------------------------------------------------------


DIRECTIONS = {
    "ek->car": "Ek->Car",
    "ek→car": "Ek->Car",
    "notek->notcar": "notEk->notCar",
    "¬ek→¬car": "notEk->notCar",
    "ek->tak": "Ek->Tak",
    "ek→tak": "Ek->Tak",
    "notek->nottak": "notEk->notTak",
    "¬ek→¬tak": "notEk->notTak",
    "ek<->ot": "Ek<->OT",
    "ek↔ot": "Ek<->OT",
}


@dataclass
class EquivalenceReport:
    direction: str
    applicable: bool
    verdict: str
    construction: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "direction": self.direction,
            "applicable": self.applicable,
            "verdict": self.verdict,
            "construction": self.construction,
            "checks": self.checks,
        }


def ekeland_condition(inst: Instance, phi: Objective, z: int) -> Optional[dict]:
    """Witnesses d_x with phi(z) < phi(x) + d_x(x, z) for all x != z, or None if some x has none."""
    out = {}
    for x in range(inst.n):
        if x == z:
            continue
        m = strict_witness(inst.gauge, phi(z), phi(x), x, z)
        if m is None:
            return None
        out[x] = m
    return out


def _ekeland_points(inst, phi) -> list:
    return [z for z in range(inst.n) if ekeland_condition(inst, phi, z) is not None]


def caristi_choices(inst: Instance, phi: Objective) -> list:
    """For each x, the admissible values f(x) of a Caristi selector: S_phi(x)."""
    order = PhiOrder(inst, phi)
    return [order.lower_section(x) for x in range(inst.n)]


def _descent_map(inst, phi) -> list:
    order = PhiOrder(inst, phi)
    out = []
    for z in range(inst.n):
        below = [y for y in order.lower_section(z) if y != z]
        out.append(min(below, key=lambda y: (phi(y), y)) if below else None)
    return out


def equivalence_witness(direction: str, inst: Instance, objective=None, seed: int = 0, max_selectors: int = 4096) -> EquivalenceReport:
    """Run one step of the Ekeland / Caristi / Takahashi / Oettli-Thera equivalences on an instance."""
    key = DIRECTIONS.get(direction.lower().replace(" ", ""))
    if key is None:
        raise ValueError(f"unknown direction {direction!r}")
    phi = _objective(inst, objective)
    nm = inst.name
    points = _ekeland_points(inst, phi)

    if key == "Ek->Car":
        if not points:
            return EquivalenceReport(key, False, "construction-not-applicable: no point satisfies the Ekeland condition")
        z = points[0]
        choices = caristi_choices(inst, phi)
        total = 1
        for c in choices:
            total *= len(c)
        if total <= max_selectors:
            selectors = itertools.product(*choices)
            mode = "exhaustive"
        else:
            rng = random.Random(seed)
            selectors = (tuple(rng.choice(c) for c in choices) for _ in range(max_selectors))
            mode = f"sampled-{max_selectors}"
        count, bad = 0, None
        for sel in selectors:
            count += 1
            if sel[z] != z and bad is None:
                bad = [nm(y) for y in sel]
        verdict = "2 holds: every Caristi selector fixes z" if bad is None else "FAILED: selector without fixed point at z"
        return EquivalenceReport(key, True, verdict, {"z": nm(z), "selectors": count, "mode": mode}, {"counterexample": bad})

    if key in ("notEk->notCar", "notEk->notTak"):
        if points:
            return EquivalenceReport(
                key, False, "construction-not-applicable: the Ekeland condition holds", {"ekeland_points": [nm(z) for z in points]}
            )
        y = _descent_map(inst, phi)
        if any(v is None for v in y):
            raise TheoremViolation("Ekeland condition fails but some S(z) is {z}")
        caristi_ok = all(ineq_holds(phi, d, x, y[x]) for x in range(inst.n) for d in inst.gauge)
        fixed = [nm(x) for x in range(inst.n) if y[x] == x]
        construction = {"selector": {nm(x): nm(y[x]) for x in range(inst.n)}}
        if key == "notEk->notCar":
            ok = caristi_ok and not fixed
            return EquivalenceReport(
                key, True, "2 fails: Caristi selector without a fixed point" if ok else "FAILED",
                construction, {"caristi_condition": caristi_ok, "fixed_points": fixed},
            )
        not_strict = [nm(x) for x in range(inst.n) if not (phi(y[x]) < phi(x))]
        sep = separation_class(inst.gauge)
        alpha = phi.infimum()
        checks = {
            "separation": sep.value,
            "takahashi_hypothesis": caristi_ok,
            "strict_decrease_fails_at": not_strict,
            "minimizers": [nm(x) for x in range(inst.n) if phi(x) == alpha],
        }
        if not sep.is_t1 or not_strict:
            return EquivalenceReport(
                key, False,
                "construction-not-applicable: phi does not strictly decrease along the selector without T1",
                construction, checks,
            )
        return EquivalenceReport(key, True, "3 fails: no point attains inf phi", construction, checks)

    if key == "Ek->Tak":
        if not points:
            return EquivalenceReport(key, False, "construction-not-applicable: no point satisfies the Ekeland condition")
        z = points[0]
        alpha = phi.infimum()
        try:
            audit_takahashi(inst, phi)
        except HypothesisError as exc:
            return EquivalenceReport(key, True, "3 holds vacuously: the Takahashi hypothesis fails", {"z": nm(z)}, {"hypothesis_fails_at": exc.witness})
        ok = phi(z) == alpha
        return EquivalenceReport(key, True, "3 holds: z attains inf phi" if ok else "FAILED", {"z": nm(z)}, {"phi(z) = inf": ok})

    # Ek<->OT
    F = difference_bivariate(phi)
    order = PhiOrder(inst, phi)
    equal, skipped = {}, []
    for x in range(inst.n):
        if phi(x) is INF:
            skipped.append(nm(x))
            continue
        equal[nm(x)] = level_set(inst, F, x) == order.lower_section(x)
    try:
        audit_bivariate(inst, F, default_start(phi))
        e_ok = True
    except HypothesisError:
        e_ok = False
    ok = all(equal.values()) and e_ok
    return EquivalenceReport(
        key, True, "S(x) = S_f(x) on dom f" if ok else "FAILED",
        {"bivariate": F.name}, {"E1-E2": e_ok, "equal": equal, "outside_dom": skipped},
    )


__all__ = [
    "PRINCIPLES",
    "TheoremViolation",
    "SolverReport",
    "EkelandCertificate",
    "ScalingSpec",
    "EquivalenceReport",
    "ekeland_point",
    "ekeland_scaled",
    "caristi_fixed_point",
    "takahashi_minimize",
    "arutyunov_minimize",
    "oettli_thera",
    "equivalence_witness",
    "difference_bivariate",
    "level_set",
    "lower_section_map",
    "audit_space",
    "audit_takahashi",
    "audit_caristi",
    "audit_bivariate",
    "ekeland_condition",
]

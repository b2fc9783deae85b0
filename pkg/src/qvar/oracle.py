"""Brute-force ground truth for finite instances.

Nothing here calls the solvers or the descent code: every set is computed
by unfolding its definition over all points, and certificates are checked
by rebuilding the inequalities each principle must contain and evaluating
them from the raw instance data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .certificates import Certificate, DanglingReference, Inequality, Term, evaluate_side, holds
from .extended import INF
from .instance import Instance, Objective
from .spaces import QVarError

MAX_POINTS = 64


def _le_section(inst: Instance, f, x: int, y: int) -> bool:
    """f(y) + d(y, x) <= f(x) for every member d, unfolded."""
    for d in inst.gauge.members:
        fx, fy = f(x), f(y)
        if fx is INF:
            continue
        if fy is INF or fy + d.matrix[y][x] > fx:
            return False
    return True


def _check_size(inst: Instance):
    if inst.n > MAX_POINTS:
        raise QVarError(f"oracle enumeration is capped at {MAX_POINTS} points")


def section(inst: Instance, f, x: int) -> list:
    return [y for y in range(inst.n) if _le_section(inst, f, x, y)]


def enumerate_minimal(inst: Instance, f: Objective) -> list:
    """All z whose lower section is exactly {z}."""
    _check_size(inst)
    return [z for z in range(inst.n) if section(inst, f, z) == [z]]


def _separated(inst: Instance, f, z: int, coef=None) -> bool:
    """For every x != z some member d has f(z) < f(x) + c_d d(x, z)."""
    for x in range(inst.n):
        if x == z:
            continue
        ok = False
        for d in inst.gauge.members:
            c = 1 if coef is None else coef[d.name]
            fx = f(x)
            if fx is INF or f(z) < fx + c * d.matrix[x][z]:
                ok = True
                break
        if not ok:
            return False
    return True


def enumerate_ekeland(inst: Instance, f: Objective, x0) -> list:
    """All z with f(z) + d(z, x0) <= f(x0) for all d and the strict separation property."""
    _check_size(inst)
    x0 = inst.idx(x0)
    return [z for z in range(inst.n) if _le_section(inst, f, x0, z) and _separated(inst, f, z)]


def enumerate_takahashi(inst: Instance, f: Objective) -> list:
    """All exact minimizers of f."""
    _check_size(inst)
    alpha = min(v for v in f.values if v is not INF)
    return [z for z in range(inst.n) if f(z) == alpha]


def enumerate_caristi_fixed(inst: Instance, F, variant: str = "weak") -> list:
    """Fixed points z in F(z) (weak) or stationary points F(z) = {z} (strong)."""
    _check_size(inst)
    if isinstance(F, str):
        F = inst.maps[F]
    if variant == "weak":
        return [z for z in range(inst.n) if z in F.images[z]]
    return [z for z in range(inst.n) if tuple(F.images[z]) == (z,)]


def level_set(inst: Instance, F, x: int) -> list:
    return [
        y
        for y in range(inst.n)
        if all(F.matrix[x][y] is not INF and F.matrix[x][y] + d.matrix[y][x] <= 0 for d in inst.gauge.members)
    ]


def enumerate_oettli_thera(inst: Instance, F, x0) -> list:
    """All z in S(x0) with, for every x != z, some d making F(z, x) + d(x, z) > 0."""
    _check_size(inst)
    if isinstance(F, str):
        F = inst.bivariates[F]
    x0 = inst.idx(x0)
    out = []
    for z in level_set(inst, F, x0):
        if all(
            F.matrix[z][x] is INF or any(F.matrix[z][x] + d.matrix[x][z] > 0 for d in inst.gauge.members)
            for x in range(inst.n)
            if x != z
        ):
            out.append(z)
    return out


def difference_bivariate(f: Objective, name: str = "F"):
    """F(x, y) = f(y) - f(x) with F(x, x) = 0 and +inf next to points outside dom f."""
    from .instance import Bivariate

    n = len(f.values)
    rows = []
    for x in range(n):
        row = []
        for y in range(n):
            if x == y:
                row.append(Fraction(0))
            elif f.values[x] is INF or f.values[y] is INF:
                row.append(INF)
            else:
                row.append(f.values[y] - f.values[x])
        rows.append(tuple(row))
    return Bivariate(name, tuple(rows))


# -- certificate checking -------------------------------------------------------------------


@dataclass
class Verdict:
    passed: bool
    reasons: list = field(default_factory=list)
    checked: int = 0

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {"verdict": "PASS" if self.passed else "FAIL", "checked": self.checked, "reasons": list(self.reasons)}


def _T(kind, name, args, coef=1):
    return Term(kind, name, tuple(args), Fraction(coef))


def _ek_template(inst, fname, z, x0, witnesses, coef=None):
    c = (lambda m: 1) if coef is None else (lambda m: coef[m])
    out = [
        Inequality(f"i:{d.name}", (_T("f", fname, [z]), _T("d", d.name, [z, x0], c(d.name))), "<=", (_T("f", fname, [x0]),))
        for d in inst.gauge.members
    ]
    for x in inst.points.names:
        if x == z:
            continue
        m = witnesses.get(x)
        if m is None:
            raise _Missing(f"no witness for point {x}")
        out.append(Inequality(f"ii:{x}", (_T("f", fname, [z]),), "<", (_T("f", fname, [x]), _T("d", m, [x, z], c(m)))))
    return out


class _Missing(Exception):
    pass


def expected_inequalities(cert: Certificate, inst: Instance) -> list:
    """The inequality list a certificate of this principle must carry."""
    p, z, x0, f, w = cert.principle, cert.point, cert.start, cert.objective, cert.witnesses
    members = inst.gauge.members
    if p in ("ekeland", "caristi"):
        return _ek_template(inst, f, z, x0, w)
    if p == "takahashi":
        return _ek_template(inst, f, z, x0, w) + [Inequality("minimum", (_T("f", f, [z]),), "=", (_T("inf", f, []),))]
    if p == "ekeland-scaled":
        eps, xi = Fraction(cert.params["epsilon"]), {k: Fraction(v) for k, v in cert.params["xi"].items()}
        coef = {d.name: eps * xi[d.name] for d in members}
        out = [Inequality("epsilon-minimal", (_T("f", f, [x0]),), "<=", (_T("inf", f, []), _T("const", None, [], eps)))]
        if eps == 0:
            out += [
                Inequality(f"i:{d.name}", (_T("f", f, [z]), _T("d", d.name, [z, x0], 0)), "<=", (_T("f", f, [x0]),))
                for d in members
            ]
        else:
            out += _ek_template(inst, f, z, x0, w, coef)
        out += [Inequality(f"jj:{d.name}", (_T("d", d.name, [z, x0]),), "<=", (_T("const", None, [], 1 / xi[d.name]),)) for d in members]
        return out
    if p == "arutyunov":
        g = Fraction(cert.params["gamma"])
        out = [Inequality("a", (_T("f", f, [z]),), "=", (_T("inf", f, []),))]
        out += [
            Inequality(f"b:{d.name}", (_T("d", d.name, [z, x0]),), "<=", (_T("f", f, [x0], 1 / g), _T("inf", f, [], -1 / g)))
            for d in members
        ]
        return out + _ek_template(inst, f, z, x0, w, {d.name: g for d in members})
    if p == "oettli-thera":
        F = cert.params["bivariate"]
        out = [
            Inequality(f"S:{d.name}", (_T("F", F, [x0, z]), _T("d", d.name, [z, x0])), "<=", (_T("const", None, [], 0),))
            for d in members
        ]
        for x in inst.points.names:
            if x == z:
                continue
            if x not in w:
                raise _Missing(f"no witness for point {x}")
            out.append(Inequality(f"ot:{x}", (_T("F", F, [z, x]), _T("d", w[x], [x, z])), ">", (_T("const", None, [], 0),)))
        return out
    raise QVarError(f"unknown principle {p!r}")


def _check_refs(cert: Certificate, inst: Instance):
    names = set(inst.points.names)
    for label, pt in (("point", cert.point), ("start", cert.start)):
        if pt is not None and pt not in names:
            raise DanglingReference(f"{label} {pt!r} is not a point of the instance")
    if cert.objective is not None and cert.objective not in inst.objectives:
        raise DanglingReference(f"objective {cert.objective!r} is not in the instance")
    members = set(inst.gauge.names())
    for x, m in cert.witnesses.items():
        if x not in names:
            raise DanglingReference(f"witness for unknown point {x!r}")
        if m not in members:
            raise DanglingReference(f"witness member {m!r} is not in the gauge")
    for key, table in (("map", inst.maps), ("bivariate", inst.bivariates)):
        ref = cert.params.get(key)
        if ref is not None and ref not in table:
            raise DanglingReference(f"{key} {ref!r} is not in the instance")


def verify_certificate(cert: Certificate, base=None) -> Verdict:
    """Re-derive and re-evaluate everything a certificate claims.

    Raises :class:`DanglingReference` when the certificate names something
    that does not exist; returns a FAIL verdict for anything else that does
    not check out.
    """
    inst = cert.resolve_instance(base)
    _check_refs(cert, inst)
    reasons = []
    try:
        expected = expected_inequalities(cert, inst)
    except _Missing as exc:
        return Verdict(False, [f"structure: {exc}"])
    got = list(cert.inequalities)
    if got != expected:
        missing = [q.label for q in expected if q not in got]
        extra = [q.label for q in got if q not in expected]
        reasons.append(f"structure: missing {missing[:5]}, unexpected {extra[:5]}")
    checked = 0
    for q in expected:
        checked += 1
        try:
            if not holds(inst, q):
                lhs, rhs = evaluate_side(inst, q.lhs), evaluate_side(inst, q.rhs)
                reasons.append(f"[{q.label}] {q.render()} is false ({lhs} vs {rhs})")
        except ArithmeticError as exc:
            reasons.append(f"[{q.label}] cannot evaluate: {exc}")
    reasons += _claims(cert, inst)
    return Verdict(not reasons, reasons, checked)


def _claims(cert: Certificate, inst: Instance) -> list:
    out = []
    z = inst.idx(cert.point)
    if cert.principle == "caristi":
        F = inst.maps[cert.params["map"]]
        variant = cert.params.get("variant", "weak")
        if variant == "weak" and z not in F.images[z]:
            out.append(f"{cert.point} is not in {F.name}({cert.point})")
        if variant == "strong" and tuple(F.images[z]) != (z,):
            out.append(f"{F.name}({cert.point}) is not {{{cert.point}}}")
    if cert.principle == "ekeland-scaled":
        xi = {k: Fraction(v) for k, v in cert.params["xi"].items()}
        if set(xi) != set(inst.gauge.names()) or any(v <= 0 for v in xi.values()):
            out.append("xi must be positive on every member")
        for d1, d2 in itertools.product(inst.gauge.members, repeat=2):
            if all(a <= b for r1, r2 in zip(d1.matrix, d2.matrix) for a, b in zip(r1, r2)) and xi.get(d1.name, 0) > xi.get(d2.name, 0):
                out.append(f"xi decreases from {d1.name} to {d2.name}")
        eps = Fraction(cert.params["epsilon"])
        if eps < 0:
            out.append("epsilon is negative")
        if eps == 0 and cert.point != cert.start:
            out.append("a degenerate run must return the start point")
    if cert.principle == "arutyunov" and Fraction(cert.params["gamma"]) <= 0:
        out.append("gamma must be positive")
    return out


__all__ = [
    "enumerate_minimal",
    "enumerate_ekeland",
    "enumerate_takahashi",
    "enumerate_caristi_fixed",
    "enumerate_oettli_thera",
    "difference_bivariate",
    "level_set",
    "section",
    "verify_certificate",
    "expected_inequalities",
    "Verdict",
    "MAX_POINTS",
]

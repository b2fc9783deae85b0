"""Sweeps: generate instances, run solvers, check every output with the oracle."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import oracle
from .generate import ProfileError, generate_random_instance, pick_start
from .instance import SetValuedMap
from .principles import (
    PRINCIPLES,
    ScalingSpec,
    TheoremViolation,
    arutyunov_minimize,
    caristi_choices,
    caristi_fixed_point,
    difference_bivariate,
    ekeland_point,
    ekeland_scaled,
    lower_section_map,
    oettli_thera,
    takahashi_minimize,
)
from .spaces import HypothesisError

CASES = {
    "ekeland": ("ekeland",),
    "ekeland-scaled": ("ekeland-scaled",),
    "caristi": ("caristi-weak", "caristi-strong"),
    "takahashi": ("takahashi",),
    "arutyunov": ("arutyunov",),
    "oettli-thera": ("oettli-thera",),
}


@dataclass
class SuiteReport:
    profile: str
    count: int
    seed: int
    principles: list
    cases: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        out = {}
        for c in self.cases:
            row = out.setdefault(c["case"], {"solved": 0, "refused": 0, "verified": 0, "FAILED": 0})
            status = c["status"]
            if status == "refused":
                row["refused"] += 1
            else:
                row["solved"] += 1
                row["verified" if status == "verified" else "FAILED"] += 1
        return out

    @property
    def totals(self) -> dict:
        tot = {"solved": 0, "refused": 0, "verified": 0, "FAILED": 0}
        for row in self.summary.values():
            for k in tot:
                tot[k] += row[k]
        return tot

    @property
    def exit_code(self) -> int:
        t = self.totals
        if t["FAILED"]:
            return 1
        if t["refused"] and not t["solved"]:
            return 2
        return 0

    def to_dict(self) -> dict:
        return {
            "profile": self.profile,
            "count": self.count,
            "seed": self.seed,
            "principles": list(self.principles),
            "summary": self.summary,
            "totals": self.totals,
            "cases": self.cases,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def table(self) -> str:
        lines = [f"{'case':<16}{'solved':>8}{'refused':>9}{'verified':>10}{'FAILED':>8}"]
        for name, row in self.summary.items():
            lines.append(f"{name:<16}{row['solved']:>8}{row['refused']:>9}{row['verified']:>10}{row['FAILED']:>8}")
        t = self.totals
        lines.append(f"{'total':<16}{t['solved']:>8}{t['refused']:>9}{t['verified']:>10}{t['FAILED']:>8}")
        return "\n".join(lines) + "\n"


def _random_selector(inst, f, seed) -> SetValuedMap:
    rng = random.Random(f"selector:{seed}")
    return SetValuedMap.selector("sel", [rng.choice(c) for c in caristi_choices(inst, f)])


def _run_case(case: str, inst, seed: int) -> dict:
    f = inst.objective("f")
    x0 = pick_start(seed, f)
    record = {"case": case, "start": inst.name(x0)}
    try:
        if case == "ekeland":
            rep = ekeland_point(inst, x0)
            members = oracle.enumerate_ekeland(inst, f, x0)
        elif case == "ekeland-scaled":
            scaling = ScalingSpec.ranked(inst.gauge)
            rep = ekeland_scaled(inst, x0, scaling)
            eps = rep.details["epsilon"]
            if eps == 0:
                members = [x0]
            else:
                scaled = inst.with_gauge(inst.gauge.rescaled({k: eps * v for k, v in scaling.xi.items()}))
                members = oracle.enumerate_ekeland(scaled, f, x0)
        elif case == "caristi-weak":
            F = inst.maps.get("T") or _random_selector(inst, f, seed)
            rep = caristi_fixed_point(inst, F, f, "weak")
            members = oracle.enumerate_caristi_fixed(rep.certificate.instance, F.name, "weak")
        elif case == "caristi-strong":
            F = lower_section_map(inst, f)
            rep = caristi_fixed_point(inst, F, f, "strong")
            members = oracle.enumerate_caristi_fixed(rep.certificate.instance, F.name, "strong")
        elif case == "takahashi":
            rep = takahashi_minimize(inst, f)
            members = oracle.enumerate_takahashi(inst, f)
        elif case == "arutyunov":
            rep = arutyunov_minimize(inst, 1, x0, f)
            members = oracle.enumerate_takahashi(inst, f)
        elif case == "oettli-thera":
            F = difference_bivariate(f)
            rep = oettli_thera(inst, F, x0)
            members = oracle.enumerate_oettli_thera(rep.certificate.instance, F.name, x0)
            if members != oracle.enumerate_ekeland(inst, f, x0):
                record.update(status="FAILED", reason="Oettli-Thera and Ekeland solution sets differ")
                return record
        else:
            raise ValueError(case)
    except HypothesisError as exc:
        record.update(status="refused", reason=str(exc))
        return record
    except TheoremViolation as exc:
        record.update(status="FAILED", reason=str(exc))
        return record
    record["point"] = rep.point_name
    verdict = oracle.verify_certificate(rep.certificate)
    if not verdict.passed:
        record.update(status="FAILED", reason="; ".join(verdict.reasons))
    elif rep.point not in members:
        record.update(status="FAILED", reason="point is not in the oracle enumeration")
    else:
        record["status"] = "verified"
    return record


def _run_instance(job) -> list:
    profile, seed, i, principles, max_n, max_gauge = job
    rng = random.Random(f"suite:{profile}:{seed}:{i}")
    n = rng.randint(2 if profile == "T0-not-T1" else 1, max_n)
    k = rng.randint(1, max_gauge)
    inst_seed = rng.randrange(2**31)
    try:
        inst = generate_random_instance(inst_seed, n, k, profile)
    except ProfileError as exc:
        return [{"case": "generate", "instance": i, "status": "refused", "reason": str(exc)}]
    out = []
    for p in principles:
        for case in CASES[p]:
            rec = _run_case(case, inst, inst_seed)
            rec.update(instance=i, n=n, gauge=k)
            out.append(rec)
    return out


def run_suite(
    profile: str, count: int, principles, seed: int = 0, max_n: int = 8, max_gauge: int = 3, jobs: int = 1
) -> SuiteReport:
    """Generate ``count`` instances and run every requested principle on each.

    With ``jobs > 1`` instances are processed in a process pool; results are
    collected in instance order, so the report does not depend on ``jobs``.
    """
    unknown = [p for p in principles if p not in CASES]
    if unknown:
        raise ValueError(f"unknown principles {unknown}; known: {', '.join(PRINCIPLES)}")
    report = SuiteReport(profile, count, seed, list(principles))
    if not principles:
        return report
    work = [(profile, seed, i, tuple(principles), max_n, max_gauge) for i in range(count)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_instance, work, chunksize=max(1, count // (4 * jobs))))
    else:
        results = [_run_instance(w) for w in work]
    for recs in results:
        report.cases.extend(recs)
    return report


__all__ = ["run_suite", "SuiteReport", "CASES"]

"""qvar: command-line front end.

Exit codes: 0 success, 1 verification failure (or invalid input data),
2 refusal because a hypothesis does not hold.  ``QVAR_SEED`` sets the
default seed for ``generate`` and ``suite``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog as cat
from . import certificates, oracle
from .extended import dump_ext, to_rational
from .generate import PROFILES, ProfileError, generate_random_instance, twin_instance
from .instance import CountableInstance, dumps, load
from .iteration import EtaSpec, TableRule, check_declared_limit, eta_iterate, gelman_reduce
from .principles import (
    ScalingSpec,
    TheoremViolation,
    arutyunov_minimize,
    caristi_fixed_point,
    default_start,
    difference_bivariate,
    ekeland_point,
    ekeland_scaled,
    equivalence_witness,
    lower_section_map,
    oettli_thera,
    takahashi_minimize,
)
from .spaces import HypothesisError, QVarError, validate_f_quasi_gauge, validate_quasi_pseudometric
from .suite import CASES, run_suite
from .topology import (
    CatalogSpace,
    LassoSequence,
    classify_semicontinuity,
    converges_to,
    is_left_k_cauchy,
    is_right_k_cauchy,
    limit_set,
    separation_class,
    specialization_preorder,
)

EXIT_OK, EXIT_FAIL, EXIT_REFUSED = 0, 1, 2


def _default_seed() -> int:
    return int(os.environ.get("QVAR_SEED", "0"))


def _emit(data, out=None) -> None:
    text = data if isinstance(data, str) else json.dumps(data, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _finite(path):
    inst = load(path)
    if isinstance(inst, CountableInstance):
        raise QVarError("this command needs a finite instance")
    return inst


def _points(inst, text):
    return [inst.idx(p) for p in text.split(",") if p] if text else []


# -- validate --------------------------------------------------------------------------------


def cmd_validate(args) -> int:
    inst = load(args.instance)
    if isinstance(inst, CountableInstance):
        out = {"members": {}}
        for name, cid, _ in inst.gauge:
            d = cat.distance(cid)
            out["members"][name] = {"catalog": cid, "certificate": d.certificate, "quasi_metric": d.quasi_metric}
        _emit(out)
        return EXIT_OK
    members = {d.name: validate_quasi_pseudometric(d, args.mode, inst.points).to_dict() for d in inst.gauge}
    gauge = validate_f_quasi_gauge(inst.gauge)
    sep = separation_class(inst.gauge)
    ok = gauge.valid and (args.mode == "gauge-relaxed" or all(m["valid"] for m in members.values()) or args.gauge_only)
    _emit({"members": members, "gauge": gauge.to_dict(), "separation": sep.value})
    return EXIT_OK if ok else EXIT_FAIL


# -- topo ----------------------------------------------------------------------------------


def cmd_topo(args) -> int:
    if args.catalog:
        entry = cat.entry(args.catalog)
        space = CatalogSpace.for_entry(entry.id)
        seq = entry.sequence(args.sequence)
        point = to_rational(args.point) if args.point is not None else None
        cands = [to_rational(c) for c in args.candidates.split(",")] if args.candidates else list(entry.limits)
        name = dump_ext
    else:
        inst = _finite(args.instance)
        space = inst
        seq = LassoSequence(_points(inst, args.prefix), _points(inst, args.cycle)) if (args.prefix or args.cycle) else None
        point = inst.idx(args.point) if args.point is not None else None
        cands = _points(inst, args.candidates) if args.candidates else list(range(inst.n))
        name = inst.name
    op = args.op
    if args.catalog and op in ("separation", "specialization"):
        _emit({d.id: {"quasi_metric": d.quasi_metric, "certificate": d.certificate} for d in space.members})
    elif op == "separation":
        sep = separation_class(space.gauge)
        _emit({"separation": sep.value, "witness": [name(i) for i in sep.witness] if sep.witness else None})
    elif op == "specialization":
        rel = sorted(specialization_preorder(space.gauge))
        _emit({"specialization": [[name(s), name(t)] for s, t in rel]})
    else:
        if seq is None:
            raise QVarError("this operation needs a sequence (--prefix/--cycle or --catalog/--sequence)")
        if op == "converges":
            _emit({"converges": converges_to(seq, point, space).to_dict()})
        elif op == "limits":
            _emit({"limits": [name(c) for c in limit_set(seq, space, cands)]})
        elif op == "cauchy":
            _emit({"left": is_left_k_cauchy(seq, space).to_dict(), "right": is_right_k_cauchy(seq, space).to_dict()})
        elif op == "classify":
            if args.catalog:
                rep = classify_semicontinuity(cat.entry(args.catalog).objective, seq, point, space)
            else:
                rep = classify_semicontinuity(inst.objective(args.objective), seq, point, space)
            _emit({"classification": rep.to_dict()})
    return EXIT_OK


# -- solve / verify / enumerate -----------------------------------------------------------------


def _scaling(args, inst):
    if args.xi:
        xi = json.loads(Path(args.xi).read_text(encoding="utf-8"))
        return ScalingSpec({k: to_rational(v) for k, v in xi.items()}, to_rational(args.epsilon) if args.epsilon else None)
    return ScalingSpec.uniform(inst.gauge, 1, to_rational(args.epsilon) if args.epsilon else None)


def solve(args):
    inst = _finite(args.instance)
    p = args.principle
    obj = args.objective
    if args.start is None and p in ("ekeland", "ekeland-scaled", "arutyunov", "oettli-thera"):
        args.start = default_start(inst.objective(obj))
    if p == "ekeland":
        return ekeland_point(inst, args.start, obj)
    if p == "ekeland-scaled":
        return ekeland_scaled(inst, args.start, _scaling(args, inst), obj)
    if p == "caristi":
        F = inst.maps[args.map] if args.map else lower_section_map(inst, inst.objective(obj))
        return caristi_fixed_point(inst, F, obj, args.variant, args.start)
    if p == "takahashi":
        return takahashi_minimize(inst, obj, args.start)
    if p == "arutyunov":
        return arutyunov_minimize(inst, to_rational(args.gamma or 1), args.start, obj)
    if p == "oettli-thera":
        F = inst.bivariates[args.bivariate] if args.bivariate else difference_bivariate(inst.objective(obj))
        return oettli_thera(inst, F, args.start)
    raise QVarError(f"unknown principle {p!r}")


def cmd_solve(args) -> int:
    try:
        rep = solve(args)
    except HypothesisError as exc:
        _emit({"refused": str(exc), "witness": exc.witness})
        return EXIT_REFUSED
    except TheoremViolation as exc:
        _emit({"failed": str(exc)})
        return EXIT_FAIL
    _emit(rep.certificate.dumps(), args.output)
    verdict = oracle.verify_certificate(rep.certificate)
    sys.stderr.write(f"{rep.principle}: {rep.point_name} ({'PASS' if verdict.passed else 'FAIL'})\n")
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        cert = certificates.load(args.certificate)
        verdict = oracle.verify_certificate(cert, Path(args.certificate).parent)
    except certificates.DanglingReference as exc:
        _emit({"verdict": "FAIL", "reasons": [f"dangling reference: {exc}"]})
        return EXIT_FAIL
    _emit(verdict.to_dict())
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_enumerate(args) -> int:
    inst = _finite(args.instance)
    p = args.principle
    if p == "minimal":
        pts = oracle.enumerate_minimal(inst, inst.objective(args.objective))
    elif p == "ekeland":
        pts = oracle.enumerate_ekeland(inst, inst.objective(args.objective), args.start)
    elif p == "takahashi":
        pts = oracle.enumerate_takahashi(inst, inst.objective(args.objective))
    elif p == "caristi":
        pts = oracle.enumerate_caristi_fixed(inst, args.map, args.variant)
    else:
        F = inst.bivariates[args.bivariate] if args.bivariate else oracle.difference_bivariate(inst.objective(args.objective))
        pts = oracle.enumerate_oettli_thera(inst, F, args.start)
    _emit({"principle": p, "points": [inst.name(i) for i in pts]})
    return EXIT_OK


def cmd_equivalence(args) -> int:
    inst = _finite(args.instance)
    rep = equivalence_witness(args.direction, inst, args.objective, seed=args.seed)
    _emit(rep.to_dict())
    if rep.verdict.startswith("FAILED"):
        return EXIT_FAIL
    return EXIT_OK if rep.applicable else EXIT_REFUSED


# -- iterate -----------------------------------------------------------------------------------


def cmd_iterate(args) -> int:
    try:
        if args.catalog:
            entry = cat.entry(args.catalog)
            rule = entry.params.get("rule")
            if rule is None:
                raise QVarError(f"catalog entry {entry.id} has no successor rule")
            f, space = entry.objective, entry.id
            x0 = to_rational(args.start) if args.start is not None else entry.params["x0"]
            name = dump_ext
        else:
            inst = _finite(args.instance)
            f, space = inst.objective(args.objective), inst
            rule = TableRule.load(inst, args.rule)
            x0 = args.start
            name = inst.name
        if args.lam is not None or args.mu is not None:
            out = gelman_reduce(f, args.lam, args.mu, rule, x0, args.cap, space)
            gamma = out.gamma
        else:
            gamma = to_rational(args.gamma)
            out = eta_iterate(f, gamma, EtaSpec.parse(args.eta), rule, x0, args.cap, space)
    except HypothesisError as exc:
        _emit({"refused": str(exc), "witness": exc.witness})
        return EXIT_REFUSED
    data = out.to_dict(name)
    ok = True
    if args.catalog and "limit" in cat.entry(args.catalog).params and out.kind == "converging":
        data["limit_check"] = check_declared_limit(out, cat.entry(args.catalog), gamma)
        ok = data["limit_check"]["ok"]
    elif out.kind == "terminated":
        ok = out.checks["bound_holds"]
    _emit(data)
    return EXIT_OK if ok else EXIT_FAIL


# -- generate / suite / catalog -----------------------------------------------------------------


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        inst = twin_instance(seed, args.n, args.gauge_size) if args.twin else generate_random_instance(seed, args.n, args.gauge_size, args.profile)
    except ProfileError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_REFUSED
    _emit(dumps(inst), args.output)
    return EXIT_OK


def cmd_suite(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    principles = [p for p in args.principles.split(",") if p] if args.principles else []
    rep = run_suite(args.profile, args.count, principles, seed, args.max_n, args.max_gauge, args.jobs)
    if args.output:
        Path(args.output).write_text(rep.to_json(), encoding="utf-8")
    sys.stdout.write(rep.table())
    return rep.exit_code


def cmd_catalog(args) -> int:
    if args.id is None:
        _emit({"entries": {k: e.description for k, e in cat.ENTRIES.items()}, "distances": sorted(cat.DISTANCES)})
        return EXIT_OK
    e = cat.entry(args.id)
    _emit(
        {
            "id": e.id,
            "description": e.description,
            "distance": e.distance,
            "distance_certificate": e.dist.certificate,
            "objective": e.objective.description if e.objective else None,
            "sequences": {k: str(s.term) for k, s in e.sequences.items()},
            "limits": [dump_ext(x) for x in e.limits],
            "params": {k: dump_ext(v) if isinstance(v, Fraction) else getattr(v, "id", str(v)) for k, v in e.params.items()},
            "certificates": e.certificates,
        }
    )
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qvar", description="Exact variational principles on quasi-uniform spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check axioms of every gauge member and of the gauge")
    p.add_argument("--instance", required=True)
    p.add_argument("--mode", choices=("strict-triangle", "gauge-relaxed"), default="strict-triangle")
    p.add_argument("--gauge-only", action="store_true", help="exit 0 when the gauge is valid even if members fail the triangle")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("topo", help="separation, specialization, convergence, Cauchy, semicontinuity")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--instance")
    src.add_argument("--catalog")
    p.add_argument("--op", required=True, choices=("separation", "specialization", "converges", "limits", "cauchy", "classify"))
    p.add_argument("--prefix", help="comma-separated point names")
    p.add_argument("--cycle", help="comma-separated point names repeated forever")
    p.add_argument("--sequence", help="catalog sequence name")
    p.add_argument("--point")
    p.add_argument("--candidates")
    p.add_argument("--objective")
    p.set_defaults(func=cmd_topo)

    p = sub.add_parser("solve", help="run a principle and print its certificate")
    p.add_argument("principle", choices=("ekeland", "ekeland-scaled", "caristi", "takahashi", "arutyunov", "oettli-thera"))
    p.add_argument("--instance", required=True)
    p.add_argument("--objective")
    p.add_argument("--start")
    p.add_argument("--gamma")
    p.add_argument("--epsilon")
    p.add_argument("--xi", help="JSON file mapping member names to weights")
    p.add_argument("--variant", choices=("weak", "strong"), default="weak")
    p.add_argument("--map", help="set-valued map name (caristi)")
    p.add_argument("--bivariate", help="bivariate name (oettli-thera)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("iterate", help="eta-iteration (or the lambda/mu form)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--instance")
    src.add_argument("--catalog")
    p.add_argument("--objective")
    p.add_argument("--rule", help="JSON file mapping point names to successors")
    p.add_argument("--gamma", default="1")
    p.add_argument("--eta", default="linear:1/2", help="linear:<mu> or pwl:<file>")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--start")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("verify", help="re-check a certificate from raw data")
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="brute-force solution sets")
    p.add_argument("principle", choices=("minimal", "ekeland", "takahashi", "caristi", "oettli-thera"))
    p.add_argument("--instance", required=True)
    p.add_argument("--objective")
    p.add_argument("--start")
    p.add_argument("--map")
    p.add_argument("--variant", choices=("weak", "strong"), default="weak")
    p.add_argument("--bivariate")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("equivalence", help="run one equivalence construction on an instance")
    p.add_argument("direction", help="Ek->Car, notEk->notCar, Ek->Tak, notEk->notTak or Ek<->OT")
    p.add_argument("--instance", required=True)
    p.add_argument("--objective")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_equivalence)

    p = sub.add_parser("generate", help="seeded random instance")
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gauge-size", type=int, default=1)
    p.add_argument("--profile", choices=PROFILES, default="T1")
    p.add_argument("--twin", action="store_true", help="twin-pair instance where the Ekeland condition fails everywhere")
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("suite", help="sweep: generate, solve, verify")
    p.add_argument("--profile", choices=PROFILES, default="T1")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--principles", default="ekeland", help=f"comma-separated subset of {','.join(CASES)}")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-gauge", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (the report does not depend on this)")
    p.add_argument("--output", help="write the JSON report here")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("catalog", help="list or show built-in countable instances")
    p.add_argument("id", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QVarError, KeyError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

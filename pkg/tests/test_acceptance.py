"""Acceptance gate: ten end-to-end criteria at their stated tolerances.

Each check prints one ``criterion N: PASS|FAIL`` line (collected into the
pytest terminal summary, or printed directly when run as a script).
"""

import random
import time
from fractions import Fraction as Fr
from itertools import product

from qvar import catalog as cat
from qvar import oracle
from qvar.generate import generate_random_instance, twin_instance
from qvar.iteration import EtaSpec, check_declared_limit, eta_iterate, gelman_reduce
from qvar.principles import (
    ScalingSpec,
    arutyunov_minimize,
    caristi_choices,
    caristi_fixed_point,
    default_start,
    difference_bivariate,
    ekeland_point,
    ekeland_scaled,
    equivalence_witness,
    lower_section_map,
    takahashi_minimize,
)
from qvar.instance import SetValuedMap
from qvar.spaces import QuasiPseudometric, validate_quasi_pseudometric
from qvar.suite import CASES, run_suite
from qvar.topology import CatalogSpace, classify_semicontinuity, is_right_k_cauchy, limit_set

RESULTS = []


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def sweep(count, profile="T1", tag="sweep"):
    """Seeded instances with n <= 8 and |D| <= 3."""
    rng = random.Random(f"acceptance:{tag}:{profile}")
    for _ in range(count):
        seed = rng.randrange(2**31)
        yield seed, generate_random_instance(seed, rng.randint(1, 8), rng.randint(1, 3), profile)


# -- 1 ---------------------------------------------------------------------------------------


def _triple_loop(m):
    n = len(m)
    if any(m[i][i] != 0 for i in range(n)):
        return False
    if any(m[i][j] < 0 for i in range(n) for j in range(n)):
        return False
    return all(m[i][k] <= m[i][j] + m[j][k] for i in range(n) for j in range(n) for k in range(n))


def test_criterion_1_axiom_suite():
    rng = random.Random("acceptance:matrices")
    start = time.perf_counter()
    disagreements = valid = 0
    for _ in range(500):
        n = rng.randint(1, 8)
        m = [[Fr(0) if i == j else Fr(rng.randint(0, 9), rng.choice((1, 2))) for j in range(n)] for i in range(n)]
        if rng.random() < 0.3:  # shortest-path closure, so valid cases are common
            for k, i, j in product(range(n), repeat=3):
                m[i][j] = min(m[i][j], m[i][k] + m[k][j])
        if rng.random() < 0.05:
            i = rng.randrange(n)
            m[i][i] = Fr(1)
        if rng.random() < 0.05 and n > 1:
            m[0][n - 1] = Fr(-1)
        got = validate_quasi_pseudometric(QuasiPseudometric("d", tuple(map(tuple, m)))).valid
        want = _triple_loop(m)
        disagreements += got != want
        valid += want
    elapsed = time.perf_counter() - start
    record(1, disagreements == 0 and elapsed < 5, f"{disagreements} disagreements on 500 matrices ({valid} valid), {elapsed:.2f}s")


# -- 2 ---------------------------------------------------------------------------------------


def test_criterion_2_q4_pathology():
    space = CatalogSpace.for_entry("q4-grid")
    lims = limit_set(cat.INV_N, space, [Fr(0), Fr(1)])
    right = is_right_k_cauchy(cat.INV_N, space)
    ok = lims == [0, 1] and right.value is True and right.exact
    record(2, ok, f"limit set {[str(x) for x in lims]}, right K-Cauchy {right.value} ({right.qualifier})")


# -- 3 ---------------------------------------------------------------------------------------


def test_criterion_3_ekeland_sweep():
    start = time.perf_counter()
    passed = 0
    for seed, inst in sweep(200):
        f = inst.objective("f")
        x0 = random.Random(seed).choice(f.domain())
        rep = ekeland_point(inst, x0)
        if oracle.verify_certificate(rep.certificate) and rep.point in oracle.enumerate_ekeland(inst, f, x0):
            passed += 1
    elapsed = time.perf_counter() - start
    record(3, passed == 200 and elapsed < 30, f"{passed}/200 verified and enumerated, {elapsed:.2f}s")


# -- 4 ---------------------------------------------------------------------------------------


def test_criterion_4_scaled_bound():
    checked = failures = 0
    for seed, inst in sweep(200):
        f = inst.objective("f")
        alpha = f.infimum()
        x0 = random.Random(seed).choice(f.domain())
        for eps in (None, f(x0) - alpha + Fr(1, 2)):
            sc = ScalingSpec.ranked(inst.gauge, epsilon=eps)
            if eps is not None and not f(x0) <= alpha + eps:
                continue
            rep = ekeland_scaled(inst, x0, sc)
            checked += 1
            ok = all(d(rep.point, x0) <= 1 / sc.xi[d.name] for d in inst.gauge)
            failures += not (ok and oracle.verify_certificate(rep.certificate))
    record(4, failures == 0, f"{checked - failures}/{checked} runs satisfy d(z, x0) <= 1/xi(d) for every member")


# -- 5 ---------------------------------------------------------------------------------------


def test_criterion_5_caristi():
    failures = selectors = 0
    for seed, inst in sweep(200):
        f = inst.objective("f")
        z = ekeland_point(inst, default_start(f)).point
        choices = caristi_choices(inst, f)
        rng = random.Random(f"selectors:{seed}")
        for k in range(10):
            F = SetValuedMap.selector(f"s{k}", [rng.choice(c) for c in choices])
            rep = caristi_fixed_point(inst, F, f, "weak")
            selectors += 1
            ok = rep.point == z and F.images[z] == (z,) and oracle.verify_certificate(rep.certificate)
            failures += not ok
        strong = caristi_fixed_point(inst, lower_section_map(inst, f), f, "strong")
        failures += not (strong.certificate.instance.maps[strong.certificate.params["map"]].images[strong.point] == (strong.point,))
    record(5, failures == 0, f"{selectors} selectors and 200 strong runs, {failures} failures")


# -- 6 ---------------------------------------------------------------------------------------


def test_criterion_6_takahashi_arutyunov():
    failures = 0
    for seed, inst in sweep(100, "takahashi-valid"):
        f = inst.objective("f")
        alpha = f.infimum()
        tak = takahashi_minimize(inst, f)
        failures += not (f(tak.point) == alpha and oracle.verify_certificate(tak.certificate))
        x0 = random.Random(seed).choice(f.domain())
        for gamma in (Fr(1), Fr(1, 2)):
            ar = arutyunov_minimize(inst, gamma, x0, f)
            bound = all(d(ar.point, x0) <= (f(x0) - alpha) / gamma for d in inst.gauge)
            failures += not (f(ar.point) == alpha and bound and oracle.verify_certificate(ar.certificate))
    record(6, failures == 0, f"100 instances, {failures} failures (exact minimum and distance bound)")


# -- 7 ---------------------------------------------------------------------------------------


def test_criterion_7_equivalences():
    equal = 0
    for seed, inst in sweep(100, tag="ot"):
        f = inst.objective("f")
        F = difference_bivariate(f)
        probe = inst.with_bivariate(F)
        same = all(
            oracle.enumerate_ekeland(inst, f, x0) == oracle.enumerate_oettli_thera(probe, F.name, x0) for x0 in f.domain()
        )
        rep = equivalence_witness("Ek<->OT", inst, f)
        equal += same and not rep.verdict.startswith("FAILED")
    broken = 0
    for seed in range(10):
        inst = twin_instance(seed, 3 + seed % 6, 1 + seed % 3)
        rep = equivalence_witness("notEk->notCar", inst, "f")
        F = SetValuedMap.selector("y", [inst.idx(rep.construction["selector"][p]) for p in inst.points.names])
        no_fixed = oracle.enumerate_caristi_fixed(inst.with_map(F), "y", "weak") == []
        in_sections = all(y in oracle.section(inst, inst.objective("f"), x) for x, (y,) in enumerate(F.images))
        broken += rep.applicable and no_fixed and in_sections
    record(7, equal == 100 and broken == 10, f"Ek<->OT equal on {equal}/100; fixed-point-free selectors {broken}/10")


# -- 8 ---------------------------------------------------------------------------------------


def test_criterion_8_gelman_halving():
    e = cat.entry("gelman-halving")
    lam, mu = e.params["lambda"], e.params["mu"]
    g = gelman_reduce(e.objective, lam, mu, e.params["rule"], e.params["x0"], 21, e.id)
    eta = eta_iterate(e.objective, Fr(1, 2), EtaSpec.linear(Fr(1, 2)), e.params["rule"], e.params["x0"], 21, e.id)
    lim = check_declared_limit(g, e, g.gamma)
    small = g.values[-1] < Fr(1, 2**20) and g.steps <= 21
    bound = e.dist(0, e.params["x0"]) == 1 <= lam / (1 - mu) * e.objective(e.params["x0"]) == 2
    ok = small and bound and lim["ok"] and g.iterates == eta.iterates and g.pairs_checked == 22 * 21 // 2
    record(8, ok, f"f(x_{g.steps}) = {g.values[-1]}, {g.pairs_checked} telescoped pairs exact, identical iterates {g.iterates == eta.iterates}")


# -- 9 ---------------------------------------------------------------------------------------


def test_criterion_9_semicontinuity():
    a = cat.entry("example-a-phi")
    rep = classify_semicontinuity(a.objective, cat.NEG_INV_N, Fr(0), a.id)
    not_dec = rep.inequalities["decreasingly-lsc"] == "fails" and rep.lim == -1 and rep.f_limit_point == 0
    d = cat.entry("dirichlet")
    vac = [classify_semicontinuity(d.objective, s, Fr(0), d.id) for s in (cat.INV_N, cat.NEG_INV_N)]
    vacuous = all(r.inequalities["strict-decreasingly-lsc"] == "not-applicable" for r in vac)
    vacuous = vacuous and "strict-decreasingly-lsc" in vac[0].global_certificates
    record(9, not_dec and vacuous, f"example-a-phi decreasingly-lsc: {rep.inequalities['decreasingly-lsc']} (lim -1 < 0); dirichlet strict class vacuous: {vacuous}")


# -- 10 --------------------------------------------------------------------------------------


def test_criterion_10_determinism():
    principles = list(CASES)
    a = run_suite("T1", 40, principles, seed=17).to_json()
    b = run_suite("T1", 40, principles, seed=17).to_json()
    record(10, a == b, f"two runs of 40 instances x {len(principles)} principles, {len(a)} bytes, identical {a == b}")


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in sorted(tests, key=lambda fn: int(fn.__name__.split("_")[2])):
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)

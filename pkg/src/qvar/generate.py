"""Seeded random instances for sweeps.

Profiles:

``T1``
    Random positive weights closed under shortest paths give quasi-metrics
    d_1, ...; the gauge adds their pointwise maximum as a top member and,
    for three or more members, a "relaxed" member below the top that need
    not satisfy the triangle inequality itself.
``T0-not-T1``
    Scaled copies of (b - a)^+ on distinct rational positions, plus their max.
``chain``
    Points p_0..p_{n-1}, f(p_i) = n-1-i, d(p_j, p_i) = j - i for j >= i and
    2n in the other direction.
``takahashi-valid``
    A T1 gauge and an objective grown along a random tree so that every
    point above the minimum has a strictly better point in its lower section.
``caristi-valid``
    A T1 gauge, an objective and a set-valued map whose value at x always
    meets the lower section of x.

Every instance is re-checked with the gauge validator and the separation
test before it is returned.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .extended import INF
from .instance import Instance, Objective, SetValuedMap
from .spaces import FQuasiGauge, PointSet, QuasiPseudometric, max_distance, validate_f_quasi_gauge
from .topology import separation_class

PROFILES = ("T1", "T0-not-T1", "chain", "takahashi-valid", "caristi-valid")


class ProfileError(ValueError):
    """The requested profile cannot be realised with the given size."""


def _names(n: int) -> tuple:
    return tuple(f"p{i}" for i in range(n))


def _closure(w):
    n = len(w)
    d = [row[:] for row in w]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def random_quasi_metric(rng: random.Random, n: int, name: str, zero_prob: float = 0.0) -> QuasiPseudometric:
    """Shortest-path closure of random positive rational weights (a T1 quasi-metric)."""
    w = [[Fraction(0) if i == j else Fraction(rng.randint(1, 8), rng.choice((1, 2))) for j in range(n)] for i in range(n)]
    return QuasiPseudometric(name, tuple(tuple(r) for r in _closure(w)))


def t1_gauge(rng: random.Random, n: int, size: int) -> FQuasiGauge:
    if size == 1:
        return FQuasiGauge((random_quasi_metric(rng, n, "d1"),), {})
    base_count = size - 1 if size < 3 else size - 2
    base = [random_quasi_metric(rng, n, f"d{i + 1}") for i in range(base_count)]
    hidden = random_quasi_metric(rng, n, "hidden")  # keeps top strictly above the base members
    top = max_distance(base + [hidden], "top")
    members = list(base)
    relax = {d.name: "top" for d in base}
    if size >= 3:
        e = [
            [Fraction(0) if i == j else top(i, j) * Fraction(rng.randint(2, 4), 4) for j in range(n)]
            for i in range(n)
        ]
        members.append(QuasiPseudometric("e", tuple(tuple(r) for r in e)))
        relax["e"] = "top"
    members.append(top)
    relax["top"] = "top"
    return FQuasiGauge(tuple(members), relax)


def random_objective(rng: random.Random, n: int, name: str = "f", inf_prob: float = 0.15) -> Objective:
    vals = [Fraction(rng.randint(0, 24), rng.choice((1, 2))) for _ in range(n)]
    for i in range(n):
        if rng.random() < inf_prob:
            vals[i] = INF
    if all(v is INF for v in vals):
        vals[rng.randrange(n)] = Fraction(0)
    return Objective(name, tuple(vals))


def chain_instance(n: int) -> Instance:
    L = 2 * n
    d = tuple(tuple(Fraction(a - b) if a >= b else Fraction(L) for b in range(n)) for a in range(n))
    gauge = FQuasiGauge((QuasiPseudometric("d", d),), {"d": "d"})
    f = Objective("f", tuple(Fraction(n - 1 - i) for i in range(n)))
    return Instance(PointSet(_names(n)), gauge, {"f": f})


def t0_not_t1_instance(rng: random.Random, n: int, size: int) -> Instance:
    if n < 2:
        raise ProfileError("T0-not-T1 needs at least two points")
    pos = rng.sample(range(-3 * n, 3 * n), n)
    pos = [Fraction(p, 2) for p in pos]
    unit = [[max(pos[j] - pos[i], Fraction(0)) for j in range(n)] for i in range(n)]
    scales = sorted({Fraction(rng.randint(1, 4), rng.choice((1, 2))) for _ in range(size)})
    members = [
        QuasiPseudometric(f"u{k + 1}", tuple(tuple(c * v for v in row) for row in unit)) for k, c in enumerate(scales)
    ]
    if len(members) > 1:
        members.append(max_distance(members, "top"))
        relax = {d.name: "top" for d in members}
    else:
        relax = {}
    gauge = FQuasiGauge(tuple(members), relax)
    return Instance(PointSet(_names(n)), gauge, {"f": random_objective(rng, n)})


def takahashi_objective(rng: random.Random, gauge: FQuasiGauge, name: str = "f", inf_prob: float = 0.1) -> Objective:
    n = gauge.n
    order = list(range(n))
    rng.shuffle(order)
    vals = [None] * n
    vals[order[0]] = Fraction(rng.randint(0, 4))
    for k, c in enumerate(order[1:], start=1):
        parent = order[rng.randrange(k)]
        step = max(d(parent, c) for d in gauge)
        vals[c] = vals[parent] + step + Fraction(rng.randint(0, 2), 2)
    for c in order[1:]:
        if rng.random() < inf_prob:
            vals[c] = INF
    return Objective(name, tuple(vals))


def _section(gauge, f, x):
    out = []
    for y in range(gauge.n):
        if f(x) is INF or (f(y) is not INF and all(f(y) + d(y, x) <= f(x) for d in gauge)):
            out.append(y)
    return out


def generate_random_instance(seed: int, n: int, gauge_size: int = 1, profile: str = "T1") -> Instance:
    if n < 1 or gauge_size < 1:
        raise ProfileError("n and the gauge size must be at least 1")
    if profile not in PROFILES:
        raise ProfileError(f"unknown profile {profile!r}; known: {', '.join(PROFILES)}")
    rng = random.Random(f"{profile}:{seed}:{n}:{gauge_size}")
    if profile == "chain":
        inst = chain_instance(n)
    elif profile == "T0-not-T1":
        inst = t0_not_t1_instance(rng, n, gauge_size)
    else:
        gauge = t1_gauge(rng, n, gauge_size)
        if profile == "takahashi-valid":
            f = takahashi_objective(rng, gauge)
        else:
            f = random_objective(rng, n)
        inst = Instance(PointSet(_names(n)), gauge, {"f": f})
        if profile == "caristi-valid":
            images = []
            for x in range(n):
                sec = _section(gauge, f, x)
                img = {rng.choice(sec)}
                img.update(y for y in range(n) if rng.random() < 0.25)
                images.append(tuple(sorted(img)))
            inst = inst.with_map(SetValuedMap("T", tuple(images)))
    _post_check(inst, profile)
    return inst


def _post_check(inst: Instance, profile: str) -> None:
    rep = validate_f_quasi_gauge(inst.gauge)
    if not rep.valid:
        raise AssertionError(f"generator produced an invalid gauge: {rep.violations[0]}")
    sep = separation_class(inst.gauge).value
    want = "T0" if profile == "T0-not-T1" else "T1"
    if inst.n > 1 and sep != want:
        raise AssertionError(f"generator produced a {sep} gauge for profile {profile}")


def twin_instance(seed: int, n: int, gauge_size: int = 1) -> Instance:
    """A gauge space where no point satisfies the Ekeland separation condition.

    Built from a Takahashi-valid instance on n - 1 points by adding an exact
    twin of the minimizer: same distances to everything else, distance 0 in
    both directions, same objective value.  Every point then has another
    point in its lower section, so the topology is not T0.
    """
    if n < 2:
        raise ProfileError("a twin pair needs two points")
    rng = random.Random(f"twin:{seed}:{n}:{gauge_size}")
    m = n - 1
    if m == 1:
        base_gauge = FQuasiGauge((QuasiPseudometric("d1", ((0,),)),), {})
        f = Objective("f", (Fraction(rng.randint(0, 4)),))
    else:
        base_gauge = t1_gauge(rng, m, gauge_size)
        f = takahashi_objective(rng, base_gauge, inf_prob=0.0)
    r = min(range(m), key=lambda i: (f(i), i))

    def twin(d: QuasiPseudometric) -> QuasiPseudometric:
        src = lambda i: r if i == m else i  # noqa: E731
        return QuasiPseudometric(d.name, tuple(tuple(d(src(i), src(j)) for j in range(n)) for i in range(n)))

    gauge = FQuasiGauge(tuple(twin(d) for d in base_gauge), dict(base_gauge.relax))
    vals = tuple(f.values) + (f(r),)
    names = _names(m) + (f"p{r}'",)
    inst = Instance(PointSet(names), gauge, {"f": Objective("f", vals)})
    rep = validate_f_quasi_gauge(gauge)
    if not rep.valid:
        raise AssertionError(f"twin construction broke the gauge: {rep.violations[0]}")
    return inst


def pick_start(seed: int, f: Objective, salt: str = "") -> int:
    dom = f.domain()
    return random.Random(f"start:{seed}:{salt}").choice(dom)


__all__ = [
    "PROFILES",
    "ProfileError",
    "generate_random_instance",
    "twin_instance",
    "chain_instance",
    "random_quasi_metric",
    "random_objective",
    "takahashi_objective",
    "t1_gauge",
    "pick_start",
]

"""Solve, certify, re-check: the Ekeland point of a random finite instance.

The certificate lists every inequality the point must satisfy.  The oracle
rebuilds that list from scratch and evaluates it on the raw data, so a
tampered certificate is caught.
"""

import dataclasses

from qvar import oracle
from qvar.generate import generate_random_instance
from qvar.principles import ScalingSpec, arutyunov_minimize, ekeland_point, ekeland_scaled, takahashi_minimize

inst = generate_random_instance(seed=42, n=6, gauge_size=3, profile="takahashi-valid")
f = inst.objective("f")
print("points:", inst.points.names)
print("gauge: ", inst.gauge.names(), "relax:", inst.gauge.relax)
print("f:     ", [str(v) for v in f.values])

x0 = max(f.domain(), key=f)
print(f"\n== Ekeland point from {inst.name(x0)} ==")
rep = ekeland_point(inst, x0)
print("descent:", " -> ".join(rep.certificate.trace))
print(rep.certificate.render())
print("oracle:", oracle.verify_certificate(rep.certificate).to_dict())
print("all Ekeland points from x0:", [inst.name(z) for z in oracle.enumerate_ekeland(inst, f, x0)])

print("\n== a forged certificate ==")
q = rep.certificate.inequalities[0]
forged = dataclasses.replace(rep.certificate, inequalities=[dataclasses.replace(q, lhs=q.rhs, rhs=q.lhs)] + rep.certificate.inequalities[1:])
print("oracle:", oracle.verify_certificate(forged).to_dict()["verdict"])

print("\n== scaled version: d(z, x0) <= 1 / xi(d) ==")
sc = ScalingSpec.ranked(inst.gauge)
srep = ekeland_scaled(inst, x0, sc)
for d in inst.gauge:
    print(f"  {d.name}: d(z, x0) = {d(srep.point, x0)}  <=  {1 / sc.xi[d.name]}")

print("\n== exact minimizers ==")
t = takahashi_minimize(inst)
a = arutyunov_minimize(inst, 1, x0)
print(f"takahashi: {t.point_name} with f = {f(t.point)} = inf f = {f.infimum()}")
print(f"arutyunov: {a.point_name}, bound (f(x0) - inf f) / gamma = {a.details['bound']}")

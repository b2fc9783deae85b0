"""The equivalence constructions, run on concrete instances.

On a valid instance the Ekeland point is a fixed point of every Caristi
selector, and the Oettli-Thera solution set under F(x, y) = f(y) - f(x)
equals the Ekeland solution set.  On an instance with a twin pair no point
satisfies the Ekeland condition, and the construction produces a Caristi
selector with no fixed point.
"""

from qvar import oracle
from qvar.generate import generate_random_instance, twin_instance
from qvar.principles import difference_bivariate, equivalence_witness
from qvar.topology import separation_class

inst = generate_random_instance(seed=7, n=5, gauge_size=2)
f = inst.objective("f")
print("== valid instance ==")
for direction in ("Ek->Car", "Ek->Tak", "Ek<->OT"):
    rep = equivalence_witness(direction, inst, f)
    print(f"{direction:8} applicable={rep.applicable}  {rep.verdict}")

F = difference_bivariate(f)
probe = inst.with_bivariate(F)
for x0 in f.domain():
    ek = oracle.enumerate_ekeland(inst, f, x0)
    ot = oracle.enumerate_oettli_thera(probe, F.name, x0)
    print(f"  from {inst.name(x0)}: Ekeland {[inst.name(z) for z in ek]}  Oettli-Thera {[inst.name(z) for z in ot]}")

print("\n== twin pair ==")
twin = twin_instance(seed=3, n=4)
print("points:", twin.points.names, "| separation:", separation_class(twin.gauge).value)
rep = equivalence_witness("notEk->notCar", twin, "f")
print(rep.verdict)
print("selector:", rep.construction["selector"])
print("checks:  ", rep.checks)
rep = equivalence_witness("notEk->notTak", twin, "f")
print("notEk->notTak:", rep.verdict)

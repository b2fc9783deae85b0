"""The eta-iteration: drive f to zero with audited successor steps.

First a finite chain that terminates, then the halving rule on [0, 1]
which converges to 0 and is cut off at 21 steps.
"""

from fractions import Fraction

from qvar import catalog as cat
from qvar.instance import make_instance
from qvar.iteration import EtaSpec, TableRule, check_declared_limit, eta_iterate, gelman_reduce

print("== finite chain ==")
vals = [Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(0)]
d = [[abs(a - b) for b in vals] for a in vals]
inst = make_instance(["p0", "p1", "p2", "p3"], {"d": d}, objectives={"f": vals})
rule = TableRule.from_names(inst, {"p0": "p1", "p1": "p2", "p2": "p3"})
out = eta_iterate(inst.objective("f"), 1, EtaSpec.linear(Fraction(1, 2)), rule, "p0", space=inst)
print(out.kind, "after", out.steps, "steps:", [inst.name(x) for x in out.iterates])
print("bound:", out.checks["bound"])

print("\n== halving on [0, 1] ==")
e = cat.entry("gelman-halving")
g = gelman_reduce(e.objective, 1, Fraction(1, 2), e.params["rule"], 1, 21, e.id)
print(f"gamma = {g.gamma}, f(x_21) = {g.values[-1]}, telescoped pairs checked: {g.pairs_checked}")
print("limit check:", check_declared_limit(g, e, g.gamma))
same = eta_iterate(e.objective, Fraction(1, 2), EtaSpec.linear(Fraction(1, 2)), e.params["rule"], 1, 21, e.id)
print("eta form gives the same iterates:", same.iterates == g.iterates)

print("\n== a piecewise-linear eta ==")
eta = EtaSpec.piecewise([(0, 0), (1, Fraction(1, 2)), (2, Fraction(3, 2))], 1)
eta.check()
print(eta.describe(), "| eta(3) =", eta(Fraction(3)))

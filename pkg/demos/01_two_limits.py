"""A sequence with two limits, and which Cauchy notion it satisfies.

On [0, 1] take q4(x, y) = y - x for x <= y, 1 + y - x for x > y, and
q4(1, 0) = 1.  The sequence 1/n converges to both 0 and 1.
"""

from fractions import Fraction

from qvar import catalog as cat
from qvar.spaces import tabulate, validate_quasi_pseudometric
from qvar.topology import CatalogSpace, converges_to, is_left_k_cauchy, is_right_k_cauchy, limit_set

space = CatalogSpace.for_entry("q4-grid")
q4 = cat.distance("q4")

print("== q4 on a small grid ==")
grid = [Fraction(k, 4) for k in range(5)]
rep = validate_quasi_pseudometric(tabulate("q4", q4, grid))
print("triangle inequality on 125 triples:", rep.valid, "| separates points:", rep.is_quasi_metric)

print("\n== distances to the first terms ==")
for n in range(1, 6):
    x = Fraction(1, n)
    print(f"n={n}: q4(0, x_n) = {q4(0, x)}   q4(1, x_n) = {q4(1, x)}")

print("\n== exact limits (sympy) ==")
for p in (0, Fraction(1, 2), 1):
    v = converges_to(cat.INV_N, p, space)
    print(f"x_n -> {p}: {v.value}  {v.detail}")
print("limit set over {0, 1/2, 1}:", [str(x) for x in limit_set(cat.INV_N, space, [0, Fraction(1, 2), 1])])

print("\n== Cauchy ==")
print("right K-Cauchy:", is_right_k_cauchy(cat.INV_N, space).to_dict())
print("left K-Cauchy: ", is_left_k_cauchy(cat.INV_N, space).to_dict())

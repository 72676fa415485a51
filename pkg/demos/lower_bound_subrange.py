"""Walk one pattern-C sub-range through the lower-bound chain.

Case 3 assumes b55 >= b11 and b33 >= b44. This sub-range takes
b33 in [12/100, 26/100] and b55 in [18/100, 21/100]. Every entry of the
resulting lower-bound matrix is certified, and det(I - Bmin) < 0 rules
out spectral radius at most one on the whole box.
"""

from sniep5.exact import Surd, format_rational
from sniep5.pattern_c import apply_relations, build_bmin_and_eval, derive_diag_bounds, offdiag_lower_bounds

GIVEN = ("12/100", "26/100", "18/100", "21/100")

bounds = derive_diag_bounds(3, GIVEN)
for name, lo, hi in zip(("b11", "b22", "b33", "b44", "b55"), bounds.lower, bounds.upper):
    print(f"{name} in [{format_rational(lo)}, {format_rational(hi)}]")

res = offdiag_lower_bounds(bounds)
print("\nradicand 12:", format_rational(res.radicand_12), " root lower bound:", format_rational(res.radicand_root_12))
print("b12 upper bound:", Surd(res.b12_sq_upper))
print("radicand 24:", format_rational(res.radicand_24), " root lower bound:", format_rational(res.radicand_root_24))
print("b24 upper bound:", Surd(res.b24_sq_upper))

print("\nexact squares and two-digit lower bounds:")
for key, sq in res.exact_squares.items():
    print(f"  {key:<12} {format_rational(sq):>28}  ->  {format_rational(res.decimal[key])}")

res = apply_relations(3, res)
print("\nafter ordering relations:", {k: format_rational(v) for k, v in res.improved.items()})
print("b35 bound taken from:", res.b35_side)

bmin, det = build_bmin_and_eval(res)
print("\nBmin:")
print(bmin.to_text())
print("det(I - Bmin) =", format_rational(det), "< 0" if det < 0 else ">= 0")

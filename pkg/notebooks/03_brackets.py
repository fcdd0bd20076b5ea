"""
Brackets in the central extension
=================================

[x (x) f, y (x) g] = [x, y] (x) fg + (x, y) * class(f dg), with the Killing
form as (x, y).
"""

from hypercurrent import CoefficientTables, bracket, parse_curve, parse_loop_element, sl, sl2, verify_jacobi

spec = parse_curve("t^6 - 2*b*t^3 + 1")
tables = CoefficientTables(spec)
g = sl2()

for left, right in [("e⊗t", "f⊗t^-1"), ("e⊗u", "f⊗u"), ("e⊗u", "f⊗t^3"), ("h⊗t^-2*u", "h⊗t^-4*u")]:
    A = parse_loop_element(left, g, spec)
    B = parse_loop_element(right, g, spec)
    print(f"[{A}, {B}] = {bracket(A, B, g, spec, tables)}")

for alg in (sl2(), sl(3)):
    print(alg.name, verify_jacobi(100, 0, spec.n, alg, spec, tables).summary())

# dropping the form factor in the odd-odd central term breaks Jacobi
print("without form:", verify_jacobi(100, 0, spec.n, g, spec, tables, omit_form_in_odd_odd=True).summary())

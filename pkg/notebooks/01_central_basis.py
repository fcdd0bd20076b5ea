"""
Reducing 1-forms to the central basis
=====================================

Every 1-form on the affine curve u^2 = p(t) is, modulo exact forms, a
combination of t^-1 dt and t^-k u dt for k = 1..n.
"""

from fractions import Fraction

from hypercurrent import CoefficientTables, KaehlerOracle, ReductionWindow, parse_curve, parse_one_form, reduce_form

spec = parse_curve("t^6 - 2*b*t^3 + 1")
tables = CoefficientTables(spec)

# closed forms keep b symbolic
for text in ["t^-1 dt", "t^2*u dt", "t^5*u dt", "t^-8*u dt", "t^3 du"]:
    print(f"{text:>12} = {reduce_form(parse_one_form(text, spec), spec, tables)}")

# exact linear algebra needs numbers; pick b = 2 and compare
point = {"b": Fraction(2)}
oracle = KaehlerOracle(spec, ReductionWindow(18, point))
print("quotient dimension:", oracle.quotient_dimension())
form = parse_one_form("t^5*u dt", spec)
print("elimination:", oracle.reduce(form), " closed form:", reduce_form(form, spec, tables).substitute(point))

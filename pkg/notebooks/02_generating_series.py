"""
Coefficient families and their generating series
================================================

P_i(z) is built two ways: from the linear recursion, and by integrating the
first-order ODE with Faa di Bruno expansions of sqrt(p_bar) and p_bar^(-3/2).
"""

from hypercurrent import CoefficientTables, integral_p_series, p_coeff, p_series, parse_curve, q_series

hexic = parse_curve("t^6 - 2*b*t^3 + 1")
tables = CoefficientTables(hexic)

for k in (2, 5, 8, 11, 14):
    print(f"P_{{{k},-1}} =", p_coeff(k, -1, hexic, tables))

rec = p_series(-1, 24, hexic, tables)
print("P_-1(z) =", rec)
print("integral route agrees:", integral_p_series(-1, 24, hexic, tables) == rec)
print("Q_-1(z) =", q_series(-1, 14, hexic, tables))

# the quartic family; note the sign of the z^12 coefficient
quartic = parse_curve("t^4 - 2*c*t^2 + 1")
print("P_-4(z) =", p_series(-4, 14, quartic))

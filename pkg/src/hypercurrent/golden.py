"""Printed values for the two worked curves, stored exactly as displayed.

Series are keyed by the exponent of ``z``; polynomials are strings in the
package's expression syntax.  Nothing here is computed.
"""

from __future__ import annotations

QUARTIC_CURVE = "t^4 - 2*c*t^2 + 1"
HEXIC_CURVE = "t^6 - 2*b*t^3 + 1"

# P_{-4}(c, z) through z^12, displayed with remainder O(z^14)
QUARTIC_P_MINUS4 = {
    0: "1",
    4: "1",
    6: "4*c/5",
    8: "(1/35)*(32*c^2 - 5)",
    10: "(16/105)*c*(8*c^2 - 3)",
    12: "-(2048*c^4 - 1248*c^2 + 75)/1155",
}
QUARTIC_P_MINUS4_ORDER = 14

# P_{k,-1} for the hexic, keyed by k
HEXIC_P_K_MINUS1 = {
    2: "b/2",
    5: "b^2/2",
    8: "(1/8)*b*(5*b^2 - 1)",
    11: "(1/8)*b^2*(7*b^2 - 3)",
    14: "(1/16)*(21*b^5 - 14*b^3 + b)",
}

# P_{-1}(z) for the hexic, displayed with remainder O(z^24)
HEXIC_P_MINUS1 = {
    5: "1",
    8: "b/2",
    11: "b^2/2",
    14: "(1/8)*b*(5*b^2 - 1)",
    17: "(1/8)*b^2*(7*b^2 - 3)",
    20: "(1/16)*(21*b^5 - 14*b^3 + b)",
    23: "(1/16)*b^2*(33*b^4 - 30*b^2 + 5)",
}
HEXIC_P_MINUS1_ORDER = 24

# R_i(z) for the hexic, as {exponent: coefficient}
HEXIC_R = {
    -1: {5: "6"},
    -2: {4: "4"},
    -3: {3: "2"},
    -4: {5: "6*b"},
    -5: {4: "10*b", 1: "-2"},
    -6: {3: "14*b", 0: "-4"},
}


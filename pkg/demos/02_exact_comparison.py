"""Sign-certain comparison of sums of e-powers.

Values like e**25 + 8*e**5 cannot be compared through floats once exponents
grow, but an integer combination of distinct e-powers is never zero, so the
sign of a difference is always decidable: evaluate an interval enclosure and
double the precision until the interval excludes zero.
"""

from zext import BigExpValue, approx_log, compare
from zext.indices import exact_sign

a = BigExpValue.exact({9: 1, 3: 4})     # e^9 + 4 e^3, the balanced double star on 6
b = BigExpValue.exact({5: 5})           # 5 e^5, the star on 6
print("a =", a.terms, " log:", approx_log(a))
print("b =", b.terms, " log:", approx_log(b))
print("compare(a, b):", compare(a, b).value)
print()

# near ties force the adaptive precision to act: e^10 vs its integer neighbor
close = {10: 1, 0: -22026}               # e^10 - 22026 = 0.4657...
print("sign of e^10 - 22026:", exact_sign(close))

closer = {20: 1, 10: -22026, 0: -10259}  # e^20 - 22026 e^10 - 10259 = 0.8133...
print("sign of e^20 - 22026 e^10 - 10259:", exact_sign(closer))

# equal maps subtract to nothing; no precision is ever enough to split a tie,
# which is why equality is decided structurally
print("compare(a, a):", compare(a, BigExpValue.exact({3: 4, 9: 1})).value)

# huge exponents stay printable through logs
huge = BigExpValue.exact({250_000: 1, 500: 998})
print("log(e^250000 + 998 e^500) =", approx_log(huge))

"""Direct beta_l(n) against -c_n(l).

The two agree for 0 < l < n except at l = n/2, where the odd indices
contribute (-1)^i = -1 each: beta = phi(n) - n/2 while -c_n(n/2) = phi(n).
"""

from qnrnp.arith import euler_phi
from qnrnp.charsums import lemma21_mismatches

for n in (4, 12, 30, 60, 210):
    for m in lemma21_mismatches(n):
        print(f"n={n:>4} l={m.ell:>4}  direct beta={m.direct:8.3f}  -c_n(l)={m.minus_ramanujan:>4}  "
              f"phi(n)-n/2={euler_phi(n) - n // 2}")

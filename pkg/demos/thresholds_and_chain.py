"""How large p must be before the size hypothesis holds, and the numeric
constants the argument leans on."""

from fractions import Fraction

from qnrnp import threshold, verify_inequality_chain

for eps in (Fraction(1, 11), Fraction(1, 5), Fraction(1, 3), Fraction(9, 20)):
    info = threshold(eps)
    print(f"eps={str(eps):>5}  log log p > {info.min_loglog:8.4f}  "
          f"log p > {info.min_log:12.4g}  p has >= {info.min_p_decimal_digits} digits")

print()
for link in verify_inequality_chain():
    print(f"({link.name}) {'ok ' if link.passed else 'BAD'} margin {link.margin:.5g}  {link.statement}")

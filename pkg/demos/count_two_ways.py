"""Count QNRNPs coprime to (p-1)/q by enumeration and by the character-sum
formula, and show how far the count sits from its main term."""

from qnrnp import count_qnrnp_coprime_formula, factorize

for p in (13, 61, 421, 2311):
    for q in factorize(p - 1).divisors()[:4]:
        r = count_qnrnp_coprime_formula(p, q)
        print(f"p={p:>5} q={q:>3}  brute={r.n_brute:>4} formula={r.n_formula:>4}  "
              f"main={float(r.main_term):9.3f}  error={r.e_p_actual:+9.3f}  bound={r.e_p_bound:10.1f}")

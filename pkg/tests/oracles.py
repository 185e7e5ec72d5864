"""Slow, obviously-correct reference implementations used only by tests.

Nothing here imports the package under test.
"""

import cmath
import math


def trial_division_is_prime(n):
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def brute_phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def brute_order(a, p):
    x, k = a % p, 1
    while x != 1:
        x = x * a % p
        k += 1
    return k


def brute_qnrnp_set(p):
    squares = {x * x % p for x in range(1, p)}
    return [a for a in range(1, p) if a not in squares and brute_order(a, p) != p - 1]


def eta_sum(n, indices, ell):
    return sum(cmath.exp(2j * math.pi * i * ell / n) for i in indices)


def ramanujan_direct(n, ell):
    return eta_sum(n, [i for i in range(1, n + 1) if math.gcd(i, n) == 1], ell)


def beta_direct(n, ell):
    return eta_sum(n, [i for i in range(1, n + 1, 2) if math.gcd(i, n) > 1], ell)


def discrete_logs(g, p):
    return {pow(g, k, p): k for k in range(p - 1)}


def chi(logs, n, ell, m):
    if m % (n + 1) == 0:
        return 0
    return cmath.exp(2j * math.pi * ell * logs[m] / n)

"""Ramanujan sums, the odd-index beta sums, Dirichlet characters built from
an index table, and the character-sum estimates used to count QNRNPs.

Integer-valued quantities have an exact closed-form path and a direct
complex-summation path; the latter is the oracle and carries an explicit
absolute error budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .arith import Factorization, euler_phi, factorize, mobius
from .errors import DomainError, PrecisionError
from .residues import IndexTable, classify_by_index


def error_budget(n: int) -> float:
    """Absolute budget for a sum of ``n`` unit-modulus float terms."""
    return max(1e-6, n * 2.0**-40)


@dataclass(frozen=True)
class ComplexSum:
    re: float
    im: float
    abs_error_budget: float

    @property
    def modulus(self) -> float:
        return math.hypot(self.re, self.im)

    def to_int(self) -> int:
        """Round to the nearest rational integer, checking the budget."""
        k = round(self.re)
        if abs(self.re - k) > self.abs_error_budget or abs(self.im) > self.abs_error_budget:
            raise PrecisionError(
                f"sum {self.re}+{self.im}j is not within {self.abs_error_budget} of an integer")
        return int(k)

    @classmethod
    def from_complex(cls, z: complex, budget: float) -> "ComplexSum":
        return cls(float(z.real), float(z.imag), budget)


class RamanujanValue(NamedTuple):
    n: int
    ell: int
    value: int


class BetaValue(NamedTuple):
    n: int
    ell: int
    value: int


def roots_of_unity(n: int) -> np.ndarray:
    """exp(2*pi*i*k/n) for k = 0..n-1."""
    return np.exp(2j * np.pi * np.arange(n) / n)


# ---------------------------------------------------------------------------
# Ramanujan sums

def ramanujan_sum(n: int, ell: int) -> RamanujanValue:
    """c_n(ell) = mu(n/d) phi(n) / phi(n/d) with d = gcd(ell, n).

    >>> ramanujan_sum(12, 6).value
    -4
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    d = math.gcd(ell, n)
    m = factorize(n // d)
    return RamanujanValue(n, ell, mobius(m) * euler_phi(n) // euler_phi(m))


def ramanujan_sums(n: int, f: Optional[Factorization] = None) -> np.ndarray:
    """Exact c_n(ell) for ell = 0..n-1 as an int64 array."""
    f = f or factorize(n)
    phi_n = euler_phi(f)
    by_quotient = {}
    for m in f.divisors():
        fm = f.quotient(n // m)
        by_quotient[m] = mobius(fm) * phi_n // euler_phi(fm)
    d = np.gcd(np.arange(n, dtype=np.int64), n)
    quot = n // d
    values = np.zeros(n, dtype=np.int64)
    for m, c in by_quotient.items():
        if c:
            values[quot == m] = c
    return values


def ramanujan_sum_direct(n: int, ell: int) -> ComplexSum:
    i = np.array([k for k in range(1, n + 1) if math.gcd(k, n) == 1], dtype=np.int64)
    roots = roots_of_unity(n)
    return ComplexSum.from_complex(roots[(i * ell) % n].sum(), error_budget(n))


# ---------------------------------------------------------------------------
# beta sums over odd indices sharing a factor with n

def _check_even(n: int) -> None:
    if n < 2 or n % 2:
        raise DomainError(f"beta sums need an even n >= 2, got {n}")


def beta_index_set(n: int) -> np.ndarray:
    """Odd i in [1, n] with gcd(i, n) > 1."""
    _check_even(n)
    i = np.arange(1, n + 1, 2, dtype=np.int64)
    return i[np.gcd(i, n) > 1]


def odd_power_sum(n: int, ell: int) -> int:
    """Sum of eta^(i*ell) over all odd i in [1, n].

    The odd powers of eta form a coset of the subgroup of (n/2)-th roots,
    so the sum vanishes unless n/2 divides ell, where it is +-n/2.
    """
    _check_even(n)
    half = n // 2
    if ell % half:
        return 0
    return half if (ell // half) % 2 == 0 else -half


def beta_sum(n: int, ell: int) -> BetaValue:
    """beta_ell(n) from the odd-power sum minus the Ramanujan sum.

    Every i coprime to the even n is odd, so the odd i sharing a factor
    with n are all odd i minus the coprime ones.  For 0 < ell < n this is
    -c_n(ell) except at ell = n/2, where beta = phi(n) - n/2.
    """
    _check_even(n)
    ell %= n
    return BetaValue(n, ell, odd_power_sum(n, ell) - ramanujan_sum(n, ell).value)


def beta_sums(n: int, f: Optional[Factorization] = None) -> np.ndarray:
    """Exact beta_ell(n) for ell = 0..n-1."""
    _check_even(n)
    values = -ramanujan_sums(n, f)
    values[0] += n // 2
    values[n // 2] -= n // 2
    return values


def beta_sum_direct(n: int, ell: int) -> ComplexSum:
    i = beta_index_set(n)
    roots = roots_of_unity(n)
    return ComplexSum.from_complex(roots[(i * ell) % n].sum(), error_budget(n))


def beta_sums_direct(n: int, chunk: int = 1 << 22) -> np.ndarray:
    """Direct complex sums of eta^(i*ell) over the beta index set, for
    every ell = 0..n-1 (one root-table lookup per term)."""
    i = beta_index_set(n)
    roots = roots_of_unity(n)
    out = np.zeros(n, dtype=complex)
    if i.size == 0:
        return out
    rows = max(1, chunk // i.size)
    for start in range(0, n, rows):
        ell = np.arange(start, min(start + rows, n), dtype=np.int64)
        out[start:start + ell.size] = roots[np.outer(ell, i) % n].sum(axis=1)
    return out


class Lemma21Mismatch(NamedTuple):
    ell: int
    direct: float
    minus_ramanujan: int


def lemma21_mismatches(n: int) -> list[Lemma21Mismatch]:
    """Every 0 < ell < n where direct beta_ell(n) differs from -c_n(ell)."""
    direct = beta_sums_direct(n)
    closed = ramanujan_sums(n)
    budget = error_budget(n)
    bad = np.nonzero(np.abs(direct[1:] + closed[1:]) > budget)[0] + 1
    return [Lemma21Mismatch(int(l), float(direct[l].real), int(-closed[l])) for l in bad]


def verify_lemma21(n: int) -> bool:
    """True iff beta_ell(n) == -c_n(ell) for all 0 < ell < n by direct summation."""
    return not lemma21_mismatches(n)


# ---------------------------------------------------------------------------
# characters mod p

def pv_bound(p: int) -> float:
    """sqrt(p) * log p."""
    return math.sqrt(p) * math.log(p)


def character_values(table: IndexTable, ell: int) -> np.ndarray:
    """chi_ell(m) for m = 0..p-1, with chi_ell(0) = 0."""
    n = table.order
    roots = roots_of_unity(n)
    out = np.zeros(table.p, dtype=complex)
    out[1:] = roots[(ell % n) * table.index[1:] % n]
    return out


def character_matrix(table: IndexTable) -> np.ndarray:
    """Rows ell = 0..p-2, columns m = 0..p-1 of chi_ell(m)."""
    n = table.order
    roots = roots_of_unity(n)
    out = np.zeros((n, table.p), dtype=complex)
    out[:, 1:] = roots[np.outer(np.arange(n, dtype=np.int64), table.index[1:]) % n]
    return out


def characteristic_values(table: IndexTable) -> np.ndarray:
    """Sum over ell of beta_ell(p-1) chi_ell(x), for x = 1..p-1 (complex).

    Direct summation: one row of the character matrix per ell.
    """
    n = table.order
    beta = beta_sums(n).astype(float)
    roots = roots_of_unity(n)
    k = table.index[1:]
    ells = np.arange(n, dtype=np.int64)
    return (beta[:, None] * roots[np.outer(ells, k) % n]).sum(axis=0)


def characteristic_value(table: IndexTable, x: int) -> int:
    """Sum over ell of beta_ell(p-1) chi_ell(x); p-1 for a QNRNP, else 0."""
    x %= table.p
    if x == 0:
        raise DomainError(f"0 is not a unit modulo {table.p}")
    n = table.order
    beta = beta_sums(n)
    chi_x = roots_of_unity(n)[np.arange(n, dtype=np.int64) * table.ind(x) % n]
    # terms have modulus up to max|beta| rather than 1
    budget = max(error_budget(n), n * float(np.abs(beta).max()) * 2.0**-40)
    return ComplexSum.from_complex((beta * chi_x).sum(), budget).to_int()


def interval_character_sum(table: IndexTable, ell: int, M: int, N: int) -> ComplexSum:
    """Sum of chi_ell(m) for M <= m <= N (chi_ell(0) = 0)."""
    p, n = table.p, table.order
    if ell % n == 0:
        raise DomainError("the principal character is excluded")
    if not 0 <= M <= N <= p - 1:
        raise DomainError(f"need 0 <= M <= N <= p-1, got M={M}, N={N}")
    chi = character_values(table, ell)
    return ComplexSum.from_complex(chi[M:N + 1].sum(), error_budget(N - M + 1))


class RestrictedSum(NamedTuple):
    direct: ComplexSum
    expanded: ComplexSum
    bound: float


def restricted_sum_paths(table: IndexTable, ell: int, q: int) -> RestrictedSum:
    """Sum of chi_ell(m) over m in [1, p-1] coprime to (p-1)/q, evaluated
    by filtering and by the Moebius expansion
    sum_{d | (p-1)/q} mu(d) chi_ell(d) sum_{t <= (p-1)/d} chi_ell(t)."""
    p, n = table.p, table.order
    if q < 1 or n % q:
        raise DomainError(f"q = {q} does not divide p - 1 = {n}")
    if not 1 <= ell <= n - 1:
        raise DomainError(f"ell must lie in [1, p-2], got {ell}")
    r = n // q
    fr = factorize(r)
    chi = character_values(table, ell)
    m = np.arange(p, dtype=np.int64)
    keep = m > 0
    for prime in fr.primes:
        keep &= m % prime != 0
    direct = chi[keep].sum()
    prefix = np.cumsum(chi)
    expanded = 0j
    for d in fr.squarefree_divisors():
        expanded += mobius(factorize(d)) * chi[d] * prefix[n // d]
    budget = error_budget(p) * (1 + len(fr.squarefree_divisors()))
    return RestrictedSum(ComplexSum.from_complex(direct, budget),
                         ComplexSum.from_complex(expanded, budget),
                         2**fr.omega * pv_bound(p))


def coprime_restricted_sum(table: IndexTable, ell: int, q: int) -> ComplexSum:
    paths = restricted_sum_paths(table, ell, q)
    a, b = paths.direct, paths.expanded
    if abs(complex(a.re, a.im) - complex(b.re, b.im)) > a.abs_error_budget:
        raise PrecisionError("direct and Moebius-expanded sums disagree")
    return a


# ---------------------------------------------------------------------------
# sums of |c_n(ell)|

@dataclass(frozen=True)
class AlphaAbsSums:
    """Sums of |c_n(ell)| over three ranges of ell, against 2^omega(n) phi(n).

    With n = p - 1, ``sum_1_to_nminus1`` is the range l = 1..p-2 and
    ``sum_0_to_nminus1`` is l = 0..p-2.
    """

    n: int
    sum_1_to_nminus1: int
    sum_0_to_nminus1: int
    sum_0_to_nminus2: int
    rhs: int

    @property
    def matches(self) -> list[str]:
        names = ("sum_1_to_nminus1", "sum_0_to_nminus1", "sum_0_to_nminus2")
        return [k for k in names if getattr(self, k) == self.rhs]


def alpha_abs_sum_identity(n: int, direct: bool = False) -> AlphaAbsSums:
    """Evaluate the three range conventions exactly (or by direct summation)."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    f = factorize(n)
    if direct:
        vals = np.array([ramanujan_sum_direct(n, l).to_int() for l in range(n)])
    else:
        vals = ramanujan_sums(n, f)
    a = np.abs(vals)
    return AlphaAbsSums(n, int(a[1:].sum()), int(a.sum()), int(a[:n - 1].sum()),
                        2**f.omega * euler_phi(f))


def qnrnp_indicator(table: IndexTable) -> np.ndarray:
    """1 where v (0..p-1) is a QNRNP, else 0; from index parity/gcd."""
    return (classify_by_index(table) == 2).astype(np.int64)

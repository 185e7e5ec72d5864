"""Exact integer arithmetic: sieves, factorization, multiplicative functions,
modular arithmetic and deterministic primality for 64-bit inputs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

import numpy as np

from .errors import DomainError, NotInvertible

# Miller-Rabin with these bases is deterministic for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3317044064679887385961981
_TRIAL_LIMIT = 1 << 16
_SMALL_PRIMES: list[int] = []

OMEGA_CONSTANT = 1.385
BOUND_SLACK = 1e-9


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 1:
        raise DomainError(f"modulus must be >= 1, got {modulus}")
    if exp < 0:
        return pow(mod_inverse(base, modulus), -exp, modulus)
    return pow(base, exp, modulus)


def mod_inverse(a: int, m: int) -> int:
    """Return the inverse of ``a`` modulo ``m`` in ``[0, m)``.

    >>> mod_inverse(5, 12)
    5
    """
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    if math.gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def _small_primes() -> list[int]:
    if not _SMALL_PRIMES:
        flags = bytearray([1]) * (_TRIAL_LIMIT + 1)
        flags[0] = flags[1] = 0
        for i in range(2, math.isqrt(_TRIAL_LIMIT) + 1):
            if flags[i]:
                flags[i * i::i] = bytearray(len(range(i * i, _TRIAL_LIMIT + 1, i)))
        _SMALL_PRIMES.extend(i for i, f in enumerate(flags) if f)
    return _SMALL_PRIMES


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every 64-bit ``n``."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise DomainError(f"{n} is beyond the deterministic primality range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class SpfSieve:
    """Smallest-prime-factor table for ``2 <= k <= limit``."""

    limit: int
    spf: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, limit: int) -> "SpfSieve":
        if limit < 1:
            raise DomainError(f"sieve limit must be >= 1, got {limit}")
        dtype = np.int32 if limit < 2**31 else np.int64
        spf = np.arange(limit + 1, dtype=dtype)
        for i in range(2, math.isqrt(limit) + 1):
            if spf[i] == i:
                view = spf[i * i::i]
                view[view == np.arange(i * i, limit + 1, i, dtype=dtype)] = i
        spf.setflags(write=False)
        return cls(limit, spf)

    def primes(self, lo: int = 2, hi: Optional[int] = None) -> np.ndarray:
        """Primes in ``[lo, hi]`` (``hi`` defaults to the sieve limit)."""
        hi = self.limit if hi is None else min(hi, self.limit)
        lo = max(lo, 2)
        if hi < lo:
            return np.empty(0, dtype=np.int64)
        ks = np.arange(lo, hi + 1)
        return ks[self.spf[lo:hi + 1] == ks]

    def is_prime(self, n: int) -> bool:
        return 2 <= n <= self.limit and int(self.spf[n]) == n


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def omega(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.factors)

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def squarefree_divisors(self) -> list[int]:
        divs = [1]
        for p, _ in self.factors:
            divs += [d * p for d in divs]
        return sorted(divs)

    def quotient(self, d: int) -> "Factorization":
        """Factorization of ``n // d`` for a divisor ``d`` of ``n``."""
        if d < 1 or self.n % d:
            raise DomainError(f"{d} does not divide {self.n}")
        out = []
        for p, e in self.factors:
            while d % p == 0:
                d //= p
                e -= 1
            if e:
                out.append((p, e))
        return _from_factors(out)


def _from_factors(factors) -> Factorization:
    factors = tuple(sorted(factors))
    n = 1
    for p, e in factors:
        n *= p**e
    return Factorization(n, factors)


FactorLike = Union[Factorization, int]


def _as_factorization(f: FactorLike) -> Factorization:
    return f if isinstance(f, Factorization) else factorize(f)


def _pollard_brent(n: int) -> int:
    """Return a non-trivial factor of the odd composite ``n``."""
    # deterministic sequence of polynomial constants keeps output reproducible
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"Pollard rho failed to split {n}")  # pragma: no cover


def _factor_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _factor_large(d, out)
    _factor_large(n // d, out)


def factorize(n: int, sieve: Optional[SpfSieve] = None) -> Factorization:
    """Prime-power decomposition of ``n``.

    Uses the smallest-prime-factor table when ``n`` is within the sieve,
    otherwise trial division up to 2**16 followed by Pollard rho with
    Miller-Rabin certification of every prime factor.

    >>> factorize(12).factors
    ((2, 2), (3, 1))
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    if sieve is not None and n <= sieve.limit:
        spf = sieve.spf
        out: list[tuple[int, int]] = []
        m = n
        while m > 1:
            p = int(spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        return Factorization(n, tuple(out))

    counts: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
    if m > 1:
        if m <= _TRIAL_LIMIT**2:
            counts[m] = counts.get(m, 0) + 1
        else:
            _factor_large(m, counts)
    return Factorization(n, tuple(sorted(counts.items())))


def euler_phi(f: FactorLike) -> int:
    f = _as_factorization(f)
    result = 1
    for p, e in f.factors:
        result *= p ** (e - 1) * (p - 1)
    return result


def mobius(f: FactorLike) -> int:
    f = _as_factorization(f)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if f.omega % 2 else 1


def omega(f: FactorLike) -> int:
    return _as_factorization(f).omega


def mobius_divisor_sum(n: int) -> int:
    """Sum of mu(d) over all divisors d of n (equals 1 iff n == 1)."""
    f = factorize(n)
    return sum(mobius(factorize(d)) for d in f.divisors())


def squarefree_divisor_count(n: int) -> int:
    """Sum of |mu(d)| over the divisors of n, i.e. 2**omega(n)."""
    f = factorize(n)
    return sum(abs(mobius(factorize(d))) for d in f.divisors())


class OmegaBound(NamedTuple):
    omega: int
    bound: float
    holds: bool


def omega_bound_check(p: int, sieve: Optional[SpfSieve] = None) -> OmegaBound:
    """Compare omega(p - 1) with 1.385 * log p / log log p (natural logs)."""
    if p < 5:
        raise DomainError(f"omega bound is stated for primes p >= 5, got {p}")
    w = factorize(p - 1, sieve).omega
    lp = math.log(p)
    bound = OMEGA_CONSTANT * lp / math.log(lp)
    # a violation must exceed the rounding slack before it is reported
    return OmegaBound(w, bound, w <= bound * (1 + BOUND_SLACK))


def totient_table(limit: int, sieve: Optional[SpfSieve] = None) -> np.ndarray:
    """phi(k) for 0 <= k <= limit (entry 0 is 0)."""
    sieve = sieve or SpfSieve.build(max(limit, 2))
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in sieve.primes(2, limit):
        p = int(p)
        phi[p::p] -= phi[p::p] // p
    return phi


def mobius_table(limit: int, sieve: Optional[SpfSieve] = None) -> np.ndarray:
    """mu(k) for 0 <= k <= limit (entry 0 is 0)."""
    sieve = sieve or SpfSieve.build(max(limit, 2))
    mu = np.ones(limit + 1, dtype=np.int64)
    mu[0] = 0
    for p in sieve.primes(2, limit):
        p = int(p)
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    return mu


def omega_table(limit: int, sieve: Optional[SpfSieve] = None) -> np.ndarray:
    """omega(k) for 0 <= k <= limit."""
    sieve = sieve or SpfSieve.build(max(limit, 2))
    w = np.zeros(limit + 1, dtype=np.int64)
    for p in sieve.primes(2, limit):
        w[int(p)::int(p)] += 1
    return w

"""Counting QNRNPs coprime to (p-1)/q, the error term of the character-sum
formula, the hypotheses of the existence theorem, its constant chain and
bulk scans over prime ranges."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterator, Optional

import mpmath
import numpy as np

from . import config
from .arith import Factorization, SpfSieve, euler_phi, factorize, is_prime
from .charsums import ComplexSum, beta_sums, character_matrix, error_budget, pv_bound
from .errors import DomainError, ResourceError
from .residues import IndexTable, build_index_table, is_primitive_root, qnrnp_values

EPSILON_MIN = Fraction(1, 11)
EPSILON_MAX = Fraction(1, 2)
# working precision for threshold and log log p comparisons
BIGFLOAT_BITS = 128


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or a decimal string exactly.

    Decimals with more than 12 significant digits are rejected.
    """
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad rational {text!r}") from exc
    try:
        dec = Decimal(text)
    except ArithmeticError as exc:
        raise DomainError(f"bad rational {text!r}") from exc
    if not dec.is_finite():
        raise DomainError(f"bad rational {text!r}")
    digits = dec.normalize().as_tuple().digits
    if len(digits) > 12:
        raise DomainError(f"{text!r} has more than 12 significant digits")
    return Fraction(dec)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SearchParams:
    q: int = 1
    epsilon: Fraction = EPSILON_MIN

    def __post_init__(self):
        if self.q < 1:
            raise DomainError(f"q must be >= 1, got {self.q}")
        eps = Fraction(self.epsilon)
        if not EPSILON_MIN <= eps < EPSILON_MAX:
            raise DomainError(f"epsilon must lie in [1/11, 1/2), got {eps}")
        object.__setattr__(self, "epsilon", eps)


def _check_prime_divisor(p: int, q: int) -> None:
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    if q < 1 or (p - 1) % q:
        raise DomainError(f"q = {q} does not divide p - 1 = {p - 1}")


def _coprime_mask(values: np.ndarray, f: Factorization) -> np.ndarray:
    keep = np.ones(values.shape, dtype=bool)
    for prime in f.primes:
        keep &= values % prime != 0
    return keep


def coprime_qnrnps(p: int, q: int, f: Optional[Factorization] = None,
                   root: Optional[int] = None) -> np.ndarray:
    """Sorted QNRNPs in [1, p-1] that are coprime to (p-1)/q."""
    _check_prime_divisor(p, q)
    f = f or factorize(p - 1)
    candidates = qnrnp_values(p, f, root)
    return candidates[_coprime_mask(candidates, f.quotient(q))]


def count_qnrnp_coprime_brute(p: int, q: int, f: Optional[Factorization] = None) -> int:
    """Number of QNRNPs in [1, p-1] coprime to (p-1)/q, by enumeration."""
    return int(coprime_qnrnps(p, q, f).size)


def coprime_unit_count(p: int, q: int) -> int:
    """Brute count of m in [1, p-1] with gcd(m, (p-1)/q) = 1."""
    _check_prime_divisor(p, q)
    r = factorize((p - 1) // q)
    return int(_coprime_mask(np.arange(1, p, dtype=np.int64), r).sum())


@dataclass(frozen=True)
class CountReport:
    p: int
    q: int
    n_brute: int
    n_formula: int
    main_term: Fraction
    e_p_actual: float
    e_p_bound: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["main_term"] = format_rational(self.main_term)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CountReport":
        return cls(**{**d, "main_term": parse_rational(d["main_term"])})


def e_p_bound(p: int, q: int, f: Optional[Factorization] = None) -> float:
    """2^(omega((p-1)/q) + omega(p-1)) * phi(p-1)/(p-1) * sqrt(p) * log p."""
    f = f or factorize(p - 1)
    r = f.quotient(q)
    return 2.0 ** (r.omega + f.omega) * euler_phi(f) / (p - 1) * pv_bound(p)


def restricted_character_sums(table: IndexTable, q: int, method: str = "fft") -> np.ndarray:
    """S_ell = sum of chi_ell(m) over m coprime to (p-1)/q, ell = 0..p-2.

    ``"fft"`` treats S as the discrete Fourier transform of the coprimality
    indicator written in index order; ``"direct"`` sums rows of the full
    character matrix.
    """
    n = table.order
    r = factorize(n // q)
    if method == "fft":
        indicator = _coprime_mask(table.powers, r).astype(float)
        return n * np.fft.ifft(indicator)
    if method == "direct":
        m = np.arange(table.p, dtype=np.int64)
        keep = _coprime_mask(m, r) & (m > 0)
        return character_matrix(table)[:, keep].sum(axis=1)
    raise DomainError(f"unknown method {method!r}")


def count_qnrnp_coprime_formula(p: int, q: int, table: Optional[IndexTable] = None,
                                method: str = "fft") -> CountReport:
    """Evaluate N_p = (1/(p-1)) * sum_ell beta_ell(p-1) * S_ell and compare
    with the enumerated count."""
    _check_prime_divisor(p, q)
    table = table or build_index_table(p)
    n = p - 1
    f = factorize(n)
    r = f.quotient(q)
    beta = beta_sums(n, f)
    sums = restricted_character_sums(table, q, method)
    coprime_count = q * euler_phi(r)
    main_term = Fraction(int(beta[0]) * coprime_count, n)
    error = (beta[1:] * sums[1:]).sum() / n
    budget = max(error_budget(n), float(np.abs(beta).sum() * np.abs(sums).max()) * 2.0**-40 / n)
    total = ComplexSum(float(main_term) + float(error.real), float(error.imag), budget)
    n_brute = count_qnrnp_coprime_brute(p, q, f)
    return CountReport(p, q, n_brute, total.to_int(), main_term,
                       float(error.real), e_p_bound(p, q, f))


# ---------------------------------------------------------------------------
# hypotheses and certificates

def _mp_epsilon_gap(eps: Fraction):
    return mpmath.mpf(1) / 2 - mpmath.mpf(eps.numerator) / eps.denominator


def size_condition(p: int, eps: Fraction) -> bool:
    """log log p > log 6.83 / (1/2 - eps), in 128-bit floating point."""
    # doubles decide unless the two sides are within a relative 1e-9
    lhs = math.log(math.log(p))
    rhs = math.log(6.83) / (0.5 - float(eps))
    if abs(lhs - rhs) > 1e-9 * abs(rhs):
        return lhs > rhs
    with mpmath.workprec(BIGFLOAT_BITS):
        return bool(mpmath.log(mpmath.log(p)) > mpmath.log(mpmath.mpf("6.83")) / _mp_epsilon_gap(eps))


def ratio_condition(p: int, eps: Fraction, f: Optional[Factorization] = None) -> bool:
    """phi(p-1)/(p-1) <= 1/2 - eps, compared as exact rationals."""
    f = f or factorize(p - 1)
    return Fraction(euler_phi(f), p - 1) <= Fraction(1, 2) - eps


@dataclass(frozen=True)
class TheoremCertificate:
    p: int
    q: int
    epsilon: Fraction
    cond_congruence: bool
    cond_size: bool
    cond_ratio: bool
    n_p: Optional[int]
    witness: Optional[int]

    @property
    def hypotheses_hold(self) -> bool:
        return self.cond_congruence and self.cond_size and self.cond_ratio

    def to_dict(self) -> dict:
        d = asdict(self)
        d["epsilon"] = format_rational(self.epsilon)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "TheoremCertificate":
        return cls(**{**d, "epsilon": parse_rational(d["epsilon"])})


def certify(p: int, params: SearchParams, sieve: Optional[SpfSieve] = None) -> TheoremCertificate:
    """Evaluate the hypotheses for ``p`` and, when p = 1 (mod q), count the
    coprime QNRNPs and pick the smallest witness with 1 < g < p - 1."""
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    q, eps = params.q, params.epsilon
    f = factorize(p - 1, sieve)
    congruent = (p - 1) % q == 0
    n_p = witness = None
    if congruent:
        found = coprime_qnrnps(p, q, f)
        n_p = int(found.size)
        inner = found[(found > 1) & (found < p - 1)]
        witness = int(inner[0]) if inner.size else None
    return TheoremCertificate(p, q, eps, congruent, size_condition(p, eps),
                              ratio_condition(p, eps, f), n_p, witness)


@dataclass(frozen=True)
class ThresholdInfo:
    epsilon: Fraction
    min_loglog: float
    min_log: float
    min_p_decimal_digits: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["epsilon"] = format_rational(self.epsilon)
        return d


def threshold(epsilon) -> ThresholdInfo:
    """Smallest log log p, log p and decimal length of p allowed by the size
    hypothesis for this epsilon."""
    eps = Fraction(epsilon)
    if not EPSILON_MIN <= eps < EPSILON_MAX:
        raise DomainError(f"epsilon must lie in [1/11, 1/2), got {eps}")
    with mpmath.workprec(BIGFLOAT_BITS):
        loglog = mpmath.log(mpmath.mpf("6.83")) / _mp_epsilon_gap(eps)
        log = mpmath.exp(loglog)
        digits = int(mpmath.floor(log / mpmath.log(10))) + 1
        return ThresholdInfo(eps, float(loglog), float(log), digits)


# ---------------------------------------------------------------------------
# the numeric constant chain

@dataclass(frozen=True)
class ChainLink:
    name: str
    statement: str
    lhs: float
    rhs: float
    passed: bool

    @property
    def margin(self) -> float:
        return abs(self.rhs - self.lhs)


def verify_inequality_chain(samples: int = 200) -> list[ChainLink]:
    """Check every numeric link of the constant chain at 128-bit precision."""
    mp = mpmath
    links = []
    with mp.workprec(BIGFLOAT_BITS):
        c683 = mp.mpf("6.83")
        four_pow = mp.power(4, mp.mpf("1.385"))
        links.append(ChainLink("a", "4^1.385 <= 6.83", float(four_pow), 6.83, four_pow <= c683))

        x0 = mp.mpf("4.68")
        ratio = mp.exp(x0) / x0
        # e^x/x is increasing for x > 1; check on a grid as well
        grid = [x0 + mp.mpf(k) / 10 for k in range(samples)]
        values = [mp.exp(x) / x for x in grid]
        monotone = all(b >= a for a, b in zip(values, values[1:]))
        links.append(ChainLink("b", "e^4.68/4.68 >= 22 and e^x/x increasing for x >= 4.68",
                               float(ratio), 22.0, ratio >= 22 and monotone))

        s = 22 * mp.log(mp.mpf("1.1")) + 22 * mp.log(11)
        links.append(ChainLink("c", "22 log 1.1 + 22 log 11 <= 54.86", float(s), 54.86,
                               s <= mp.mpf("54.86")))
        links.append(ChainLink("d", "54.86 < 107.7", 54.86, 107.7,
                               mp.mpf("54.86") < mp.mpf("107.7")))

        # log p > log 6.83 / (1/2 - eps) => p^(1/2-eps) > p^(log 6.83/log log p)
        # >= 4^(1.385 log p/log log p) >= 4^omega, compared in logarithms.
        worst = mp.inf
        ok = True
        for eps in (Fraction(1, 11), Fraction(1, 5), Fraction(1, 4), Fraction(1, 3),
                    Fraction(9, 20), Fraction(49, 100)):
            gap = _mp_epsilon_gap(eps)
            base = mp.log(c683) / gap
            for bump in (mp.mpf("1e-6"), mp.mpf("0.01"), mp.mpf(1), mp.mpf(10)):
                loglog = base + bump
                logp = mp.exp(loglog)
                lhs = gap * logp
                middle = mp.log(c683) * logp / loglog
                omega_cap = mp.mpf("1.385") * logp / loglog
                rhs = omega_cap * mp.log(4)
                ok = ok and lhs > middle >= rhs
                worst = min(worst, (lhs - rhs) / logp)
        links.append(ChainLink("e", "log log p > log 6.83/(1/2-eps) implies "
                               "p^(1/2-eps) > 4^omega(p-1) under the omega bound",
                               0.0, float(worst), ok))

        low = mp.log(c683) / _mp_epsilon_gap(EPSILON_MIN)
        links.append(ChainLink("f", "log 6.83/(1/2 - 1/11) > 3.84 * 1.22 > 4.68", float(low),
                               4.68, low > mp.mpf("3.84") * mp.mpf("1.22") > mp.mpf("4.68")))
        e468 = mp.exp(x0)
        links.append(ChainLink("g", "e^4.68 > 107.7", float(e468), 107.7, e468 > mp.mpf("107.7")))
    return links


# ---------------------------------------------------------------------------
# primitive root coprime to p - 1

def lps_witness(p: int, f: Optional[Factorization] = None) -> Optional[int]:
    """Smallest primitive root g mod p with gcd(g, p - 1) = 1, or None."""
    if p < 5 or not is_prime(p):
        raise DomainError(f"need a prime p >= 5, got {p}")
    f = f or factorize(p - 1)
    for g in range(2, p):
        if math.gcd(g, p - 1) == 1 and is_primitive_root(g, p, f):
            return g
    return None


# ---------------------------------------------------------------------------
# scans

@dataclass
class ScanSummary:
    primes: int = 0
    cond_size: int = 0
    cond_ratio: int = 0
    cond_ratio_with_witness: int = 0
    cond_ratio_without_witness: list[int] = field(default_factory=list)

    def add(self, cert: TheoremCertificate) -> None:
        self.primes += 1
        self.cond_size += cert.cond_size
        if cert.cond_ratio:
            self.cond_ratio += 1
            if cert.n_p:
                self.cond_ratio_with_witness += 1
            else:
                self.cond_ratio_without_witness.append(cert.p)

    def to_dict(self) -> dict:
        return asdict(self)


_WORKER_SIEVE: Optional[SpfSieve] = None


def _init_worker(limit: int) -> None:
    global _WORKER_SIEVE
    _WORKER_SIEVE = SpfSieve.build(max(limit, 2))


def _certify_chunk(args) -> list[TheoremCertificate]:
    primes, q, eps = args
    params = SearchParams(q, eps)
    return [certify(int(p), params, _WORKER_SIEVE) for p in primes]


def scan_primes(p_min: int, p_max: int, q: int) -> list[int]:
    """Odd primes in [p_min, p_max] with p = 1 (mod q)."""
    if p_max < max(p_min, 3):
        return []
    sieve = SpfSieve.build(p_max)
    primes = sieve.primes(max(p_min, 3), p_max)
    return [int(p) for p in primes if (p - 1) % q == 0]


def scan(p_min: int, p_max: int, params: SearchParams, jobs: int = 1,
         limit: Optional[int] = None) -> Iterator[TheoremCertificate]:
    """Certificates for every odd prime p = 1 (mod q) in [p_min, p_max], in
    ascending order whatever the number of worker processes.

    The range is validated immediately; certificates are produced lazily.
    """
    limit = config.scan_limit() if limit is None else limit
    if p_max > limit:
        raise ResourceError(f"p_max = {p_max} exceeds the scan limit {limit}")
    return _scan_iter(scan_primes(p_min, p_max, params.q), p_max, params, max(1, int(jobs)))


def _scan_iter(primes: list[int], p_max: int, params: SearchParams,
               jobs: int) -> Iterator[TheoremCertificate]:
    if not primes:
        return
    n_chunks = min(len(primes), jobs * 8)
    bounds = np.linspace(0, len(primes), n_chunks + 1).astype(int)
    chunks = [(primes[a:b], params.q, params.epsilon) for a, b in zip(bounds, bounds[1:]) if b > a]
    if jobs == 1:
        _init_worker(p_max)
        for chunk in chunks:
            yield from _certify_chunk(chunk)
        return
    with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(p_max,)) as pool:
        for certs in pool.map(_certify_chunk, chunks):
            yield from certs

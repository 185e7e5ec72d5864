"""Structure of the unit group modulo an odd prime.

Orders, primitive roots, Euler's criterion, discrete-log index tables and
the three-way split of units into quadratic residues, primitive roots and
QNRNPs (quadratic non-residues that are not primitive roots).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import config
from .arith import Factorization, factorize, is_prime
from .errors import DomainError, ResourceError

# int64 products stay exact while p < 3.03e9
_VECTOR_P_LIMIT = 3_000_000_000


class UnitResidue(NamedTuple):
    p: int
    value: int


class UnitClass(enum.Enum):
    QUADRATIC_RESIDUE = "QuadraticResidue"
    PRIMITIVE_ROOT = "PrimitiveRoot"
    QNRNP = "Qnrnp"


def _check_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


def _check_unit(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DomainError(f"0 is not a unit modulo {p}")
    return a


def _group_factorization(p: int, f: Optional[Factorization]) -> Factorization:
    if f is None:
        return factorize(p - 1)
    if f.n != p - 1:
        raise DomainError(f"factorization of {f.n} supplied, expected p - 1 = {p - 1}")
    return f


def multiplicative_order(a: int, p: int, f: Optional[Factorization] = None) -> int:
    """Order of ``a`` in the units mod ``p``, found by stripping prime
    factors of p - 1 rather than by iteration."""
    a = _check_unit(a, p)
    f = _group_factorization(p, f)
    order = p - 1
    for q, e in f.factors:
        for _ in range(e):
            if pow(a, order // q, p) == 1:
                order //= q
            else:
                break
    return order


def jacobi_symbol(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_quadratic_residue(a: int, p: int) -> bool:
    """Euler's criterion: a^((p-1)/2) == 1 (mod p)."""
    a = _check_unit(a, p)
    return pow(a, (p - 1) // 2, p) == 1


def is_primitive_root(g: int, p: int, f: Optional[Factorization] = None) -> bool:
    g %= p
    if g == 0:
        return False
    f = _group_factorization(p, f)
    return all(pow(g, (p - 1) // q, p) != 1 for q in f.primes)


def smallest_primitive_root(p: int, f: Optional[Factorization] = None) -> int:
    """Least g >= 2 generating the units mod ``p``."""
    _check_odd_prime(p)
    f = _group_factorization(p, f)
    g = 2
    while not is_primitive_root(g, p, f):
        g += 1
    return g


def primitive_roots(p: int, f: Optional[Factorization] = None) -> list[int]:
    """All primitive roots mod p, ascending: g0^k for gcd(k, p - 1) = 1."""
    g0 = smallest_primitive_root(p, f)
    n = p - 1
    return sorted(pow(g0, k, p) for k in range(1, n) if math.gcd(k, n) == 1)


def classify_unit(a: int, p: int, f: Optional[Factorization] = None) -> UnitClass:
    a = _check_unit(a, p)
    f = _group_factorization(p, f)
    if is_quadratic_residue(a, p):
        return UnitClass.QUADRATIC_RESIDUE
    if multiplicative_order(a, p, f) == p - 1:
        return UnitClass.PRIMITIVE_ROOT
    return UnitClass.QNRNP


def geometric_sequence(first: int, ratio: int, length: int, p: int) -> np.ndarray:
    """``first * ratio**k mod p`` for ``k = 0 .. length-1`` as int64.

    Built block-wise: one sequential block of about sqrt(length) terms,
    then each following block is the previous one times ``ratio**block``.
    """
    if p >= _VECTOR_P_LIMIT:
        raise ResourceError(f"p = {p} is too large for vectorized powering")
    out = np.empty(length, dtype=np.int64)
    if length == 0:
        return out
    block = max(1, math.isqrt(length))
    x = first % p
    for k in range(min(block, length)):
        out[k] = x
        x = x * ratio % p
    step = pow(ratio, block, p)
    for start in range(block, length, block):
        stop = min(start + block, length)
        out[start:stop] = out[start - block:stop - block] * step % p
    return out


def power_table(g: int, p: int) -> np.ndarray:
    """``g**k mod p`` for ``k = 0 .. p-2``."""
    return geometric_sequence(1, g, p - 1, p)


def powmod_array(bases: np.ndarray, exponent: int, p: int) -> np.ndarray:
    """Element-wise ``bases**exponent mod p`` for ``p < 3e9``."""
    if p >= _VECTOR_P_LIMIT:
        raise ResourceError(f"p = {p} is too large for vectorized powering")
    result = np.ones_like(bases, dtype=np.int64)
    b = np.asarray(bases, dtype=np.int64) % p
    e = exponent
    while e:
        if e & 1:
            result = result * b % p
        b = b * b % p
        e >>= 1
    return result


@dataclass(frozen=True)
class IndexTable:
    """Discrete logarithms of every unit mod ``p`` with respect to ``root``.

    ``index[v]`` is the exponent k in ``[0, p-2]`` with ``root**k == v``;
    ``index[0]`` is -1.  ``powers[k]`` is the inverse map.  The character
    chi_l sends v to exp(2*pi*i * l * index[v] / (p - 1)).
    """

    p: int
    root: int
    index: np.ndarray = field(repr=False)
    powers: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.p - 1

    def ind(self, v: int) -> int:
        v %= self.p
        if v == 0:
            raise DomainError(f"0 has no index modulo {self.p}")
        return int(self.index[v])


def build_index_table(p: int, root: Optional[int] = None,
                      limit: Optional[int] = None) -> IndexTable:
    """Index table for ``p``; ``root`` defaults to the smallest primitive root."""
    limit = config.index_table_limit() if limit is None else limit
    if p > limit:
        raise ResourceError(f"p = {p} exceeds the index-table limit {limit}")
    _check_odd_prime(p)
    f = factorize(p - 1)
    if root is None:
        root = smallest_primitive_root(p, f)
    elif not is_primitive_root(root, p, f):
        raise DomainError(f"{root} is not a primitive root modulo {p}")
    powers = power_table(root, p)
    index = np.full(p, -1, dtype=np.int64)
    index[powers] = np.arange(p - 1, dtype=np.int64)
    powers.setflags(write=False)
    index.setflags(write=False)
    return IndexTable(p, root % p, index, powers)


def qnrnp_exponent_mask(n: int, f: Optional[Factorization] = None) -> np.ndarray:
    """Boolean mask over k in [0, n) marking odd k with gcd(k, n) > 1."""
    f = f or factorize(n)
    mask = np.zeros(n, dtype=bool)
    for q in f.primes:
        if q != 2:
            mask[::q] = True
    mask[::2] = False
    return mask


def qnrnp_values(p: int, f: Optional[Factorization] = None,
                 root: Optional[int] = None) -> np.ndarray:
    """Sorted QNRNPs mod ``p`` without a full power table.

    A QNRNP is g**k with k odd and divisible by some odd prime r | p-1,
    i.e. an odd power of g**r; each such coset is generated directly.
    """
    _check_odd_prime(p)
    f = _group_factorization(p, f)
    root = root or smallest_primitive_root(p, f)
    n = p - 1
    present = np.zeros(p, dtype=bool)
    for r in f.primes:
        if r == 2:
            continue
        h = pow(root, r, p)
        present[geometric_sequence(h, h * h % p, n // r // 2, p)] = True
    return np.flatnonzero(present)


def classify_by_index(table: IndexTable) -> np.ndarray:
    """UnitClass codes for v = 0..p-1 from index parity/gcd.

    Codes: 0 quadratic residue, 1 primitive root, 2 QNRNP, -1 for v = 0.
    """
    n = table.order
    k = table.index[1:]
    f = factorize(n)
    coprime = np.ones(n, dtype=bool)
    for q in f.primes:
        coprime &= k % q != 0
    codes = np.full(table.p, -1, dtype=np.int8)
    unit_codes = np.where(k % 2 == 0, 0, np.where(coprime, 1, 2))
    codes[1:] = unit_codes
    return codes


CLASS_CODES = {0: UnitClass.QUADRATIC_RESIDUE, 1: UnitClass.PRIMITIVE_ROOT, 2: UnitClass.QNRNP}


def classify_by_order(p: int, f: Optional[Factorization] = None) -> np.ndarray:
    """Same codes as :func:`classify_by_index`, computed from Euler's
    criterion and order tests on every unit (no discrete logs)."""
    _check_odd_prime(p)
    f = _group_factorization(p, f)
    units = np.arange(1, p, dtype=np.int64)
    qr = powmod_array(units, (p - 1) // 2, p) == 1
    primitive = ~qr
    for q in f.primes:
        if q != 2:
            primitive &= powmod_array(units, (p - 1) // q, p) != 1
    codes = np.full(p, -1, dtype=np.int8)
    codes[1:] = np.where(qr, 0, np.where(primitive, 1, 2))
    return codes


def qnrnp_set(p: int, method: str = "auto") -> list[int]:
    """All QNRNPs mod ``p`` in ascending order.

    ``method`` is ``"coset"`` (odd powers of g**r for odd primes r | p-1),
    ``"index"`` (power table and index parity), ``"order"``
    (Euler criterion plus order tests), ``"scalar"`` (``classify_unit`` on
    each unit) or ``"auto"``.
    """
    _check_odd_prime(p)
    if method == "auto":
        method = "coset" if p < _VECTOR_P_LIMIT else "scalar"
    if method == "index":
        f = factorize(p - 1)
        powers = power_table(smallest_primitive_root(p, f), p)
        mask = qnrnp_exponent_mask(p - 1, f)
        return sorted(int(v) for v in powers[mask])
    if method == "coset":
        return [int(v) for v in qnrnp_values(p)]
    if method == "order":
        codes = classify_by_order(p)
        return [int(v) for v in np.nonzero(codes == 2)[0]]
    if method == "scalar":
        f = factorize(p - 1)
        return [a for a in range(1, p) if classify_unit(a, p, f) is UnitClass.QNRNP]
    raise DomainError(f"unknown method {method!r}")

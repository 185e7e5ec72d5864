"""Fixed points of the discrete exponential t -> g^t mod p, and the
construction of a QNRNP base g with a QNRNP fixed point."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .arith import factorize, is_prime, mod_inverse
from .errors import DomainError, NoWitness
from .residues import UnitClass, classify_unit


@dataclass(frozen=True)
class FixedPointResult:
    p: int
    x: int
    y: int
    g: int
    verified: bool

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "FixedPointResult":
        return cls(**d)


def construct_fixed_point(p: int, q: int = 1) -> FixedPointResult:
    """Take the smallest QNRNP x with gcd(x, p-1) = 1, invert it modulo
    p - 1 to get y, and set g = x^y mod p, so that g^x = x^(xy) = x.

    Raises NoWitness when no such x exists (p = 5 and p = 7, for example).
    """
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    if q < 1 or (p - 1) % q:
        raise DomainError(f"q = {q} does not divide p - 1 = {p - 1}")
    n = p - 1
    f = factorize(n)
    for x in range(2, p - 1):
        if math.gcd(x, n) == 1 and classify_unit(x, p, f) is UnitClass.QNRNP:
            break
    else:
        raise NoWitness(f"no QNRNP coprime to {n} modulo {p}")
    y = mod_inverse(x, n)
    g = pow(x, y, p)
    verified = (pow(g, x, p) == x
                and x * y % n == 1
                and classify_unit(g, p, f) is UnitClass.QNRNP)
    return FixedPointResult(p, x, y, g, verified)


def search_fixed_points(p: int, g: int) -> list[int]:
    """All t in [1, p-1] with g^t = t (mod p), by enumeration."""
    if p < 2 or not is_prime(p):
        raise DomainError(f"{p} is not a prime")
    g %= p
    if g == 0:
        raise DomainError(f"0 is not a unit modulo {p}")
    out = []
    power = 1
    for t in range(1, p):
        power = power * g % p
        if power == t:
            out.append(t)
    return out

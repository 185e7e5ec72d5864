import math

import pytest

from qnrnp.arith import SpfSieve
from qnrnp.errors import DomainError, NoWitness
from qnrnp.fixedpoint import FixedPointResult, construct_fixed_point, search_fixed_points
from qnrnp.residues import build_index_table

from oracles import brute_qnrnp_set


def test_construct_example_13():
    assert construct_fixed_point(13) == FixedPointResult(13, 5, 5, 5, True)


@pytest.mark.parametrize("p", [5, 7])
def test_construct_no_witness(p):
    with pytest.raises(NoWitness):
        construct_fixed_point(p)


def test_construct_rejects_bad_input():
    with pytest.raises(DomainError):
        construct_fixed_point(15)
    with pytest.raises(DomainError):
        construct_fixed_point(13, q=5)


@pytest.mark.parametrize("p, g, expected", [(13, 1, [1]), (7, 3, [2, 4, 5])])
def test_search_examples(p, g, expected):
    assert search_fixed_points(p, g) == expected


def test_search_contains_constructed_fixed_point():
    assert 5 in search_fixed_points(13, 5)


def test_search_against_pow():
    for p in (11, 29, 101):
        for g in range(1, p):
            assert search_fixed_points(p, g) == [t for t in range(1, p) if pow(g, t, p) == t]


def test_construct_up_to_2000():
    for p in [int(x) for x in SpfSieve.build(2000).primes(3, 2000)]:
        coprime = [x for x in brute_qnrnp_set(p) if math.gcd(x, p - 1) == 1] if p < 400 else None
        try:
            r = construct_fixed_point(p)
        except NoWitness:
            assert not coprime
            continue
        if coprime is not None:
            assert r.x == coprime[0]
        assert r.verified
        assert r.x * r.y % (p - 1) == 1 and 1 <= r.y <= p - 2
        assert pow(r.g, r.x, p) == r.x
        assert r.x in search_fixed_points(p, r.g)
        t = build_index_table(p)
        k = t.ind(r.g)
        assert k % 2 == 1 and math.gcd(k, p - 1) > 1


def test_round_trip():
    r = construct_fixed_point(13)
    assert FixedPointResult.from_dict(r.to_dict()) == r

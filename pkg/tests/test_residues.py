import math
import random

import numpy as np
import pytest
import sympy

from qnrnp.arith import SpfSieve, euler_phi, factorize
from qnrnp.errors import DomainError, ResourceError
from qnrnp.residues import (UnitClass, build_index_table, classify_by_index,
                            classify_by_order, classify_unit, is_quadratic_residue,
                            jacobi_symbol, multiplicative_order, primitive_roots, qnrnp_set,
                            qnrnp_values, smallest_primitive_root)

from oracles import brute_order, brute_qnrnp_set

PRIMES_2000 = [int(p) for p in SpfSieve.build(2000).primes(3, 2000)]


@pytest.mark.parametrize("a, p, order", [(5, 13, 4), (1, 13, 1), (2, 13, 12)])
def test_multiplicative_order_examples(a, p, order):
    assert multiplicative_order(a, p) == order


def test_multiplicative_order_against_iteration():
    for p in (3, 5, 7, 31, 97, 211, 1009):
        for a in range(1, p):
            assert multiplicative_order(a, p) == brute_order(a, p)


@pytest.mark.parametrize("a, p, expected", [(5, 13, False), (1, 13, True), (3, 13, True)])
def test_is_quadratic_residue_examples(a, p, expected):
    assert is_quadratic_residue(a, p) is expected


def test_euler_criterion_agrees_with_jacobi():
    rng = random.Random(11)
    primes = [int(p) for p in SpfSieve.build(10**5).primes(3)]
    for _ in range(10**4):
        p = rng.choice(primes)
        a = rng.randrange(1, p)
        assert is_quadratic_residue(a, p) == (jacobi_symbol(a, p) == 1)
        if _ < 200:
            assert jacobi_symbol(a, p) == sympy.jacobi_symbol(a, p)


@pytest.mark.parametrize("p, g", [(13, 2), (7, 3), (3, 2)])
def test_smallest_primitive_root_examples(p, g):
    assert smallest_primitive_root(p) == g


def test_smallest_primitive_root_against_sympy():
    for p in PRIMES_2000:
        assert smallest_primitive_root(p) == sympy.primitive_root(p)


def test_index_table_examples():
    t = build_index_table(13)
    assert t.root == 2
    assert t.ind(2) == 1 and t.ind(8) == 3 and t.ind(1) == 0
    t7 = build_index_table(7, root=3)
    assert t7.ind(6) == 3


def test_index_table_invariants():
    for p in (3, 5, 13, 101, 997):
        t = build_index_table(p)
        assert t.index[t.root] == 1 and t.index[1] == 0
        assert sorted(t.index[1:].tolist()) == list(range(p - 1))
        for v in range(1, p):
            assert pow(t.root, int(t.index[v]), p) == v


def test_index_table_limits_and_bad_root():
    with pytest.raises(ResourceError):
        build_index_table(101, limit=100)
    with pytest.raises(DomainError):
        build_index_table(13, root=3)  # 3 has order 3 mod 13
    with pytest.raises(DomainError):
        build_index_table(15)


def test_index_table_limit_from_environment(monkeypatch):
    monkeypatch.setenv("QNRNP_MAX_P", "50")
    with pytest.raises(ResourceError):
        build_index_table(53)
    assert build_index_table(47).p == 47


@pytest.mark.parametrize("a, expected", [(5, UnitClass.QNRNP), (2, UnitClass.PRIMITIVE_ROOT),
                                         (3, UnitClass.QUADRATIC_RESIDUE)])
def test_classify_unit_examples(a, expected):
    assert classify_unit(a, 13) is expected


@pytest.mark.parametrize("p, expected", [(13, [5, 8]), (7, [6]), (5, []), (3, [])])
def test_qnrnp_set_examples(p, expected):
    for method in ("coset", "index", "order", "scalar"):
        assert qnrnp_set(p, method) == expected


def test_qnrnp_set_cardinality_and_oracle():
    for p in PRIMES_2000:
        expected_size = (p - 1) // 2 - euler_phi(p - 1)
        found = qnrnp_set(p)
        assert len(found) == expected_size
        if p < 400:
            assert found == brute_qnrnp_set(p)


def test_classification_by_index_matches_order():
    for p in PRIMES_2000:
        by_index = classify_by_index(build_index_table(p))
        by_order = classify_by_order(p)
        assert np.array_equal(by_index, by_order)
        counts = np.bincount(by_order[1:], minlength=3)
        assert counts[0] == (p - 1) // 2
        assert counts[1] == euler_phi(p - 1)


def test_classify_unit_matches_index_characterization():
    for p in (3, 7, 13, 61, 211, 421, 1861):
        t = build_index_table(p)
        for a in range(1, p):
            k = t.ind(a)
            if k % 2 == 0:
                expected = UnitClass.QUADRATIC_RESIDUE
            elif math.gcd(k, p - 1) == 1:
                expected = UnitClass.PRIMITIVE_ROOT
            else:
                expected = UnitClass.QNRNP
            assert classify_unit(a, p) is expected


def test_qnrnp_values_independent_of_root():
    for p in (61, 211, 1861):
        roots = primitive_roots(p)
        base = qnrnp_values(p).tolist()
        for g in roots[:5] + roots[-3:]:
            assert qnrnp_values(p, root=g).tolist() == base


def test_primitive_roots_count():
    for p in (7, 13, 101):
        roots = primitive_roots(p)
        assert len(roots) == euler_phi(factorize(p - 1))
        assert all(multiplicative_order(g, p) == p - 1 for g in roots)

"""
整数与单位群测试
"""

import math

import pytest

from lfamily.arith import (
    discrete_log,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    is_squarefree,
    moebius,
    moebius_table,
    multiplicative_order,
    squarefree_decompose,
    squarefree_mask,
    tau_k,
    tau_k_table,
    unit_group,
)
from lfamily.core.config import override_config
from lfamily.exceptions import DomainError, NotAUnitError


class TestFactorize:
    def test_small_values(self):
        assert factorize(1).factors == ()
        assert factorize(12).factors == ((2, 2), (3, 1))
        assert factorize(9699690).factors == tuple((p, 1) for p in (2, 3, 5, 7, 11, 13, 17, 19))

    def test_product_reconstructs(self):
        for n in range(1, 3000):
            f = factorize(n)
            assert math.prod(p ** e for p, e in f.factors) == n
            assert all(is_prime(p) for p in f.primes)

    def test_large_prime_cofactor(self):
        assert factorize(2 * 1_000_003).factors == ((2, 1), (1_000_003, 1))

    def test_composite_cofactor_beyond_limit(self):
        override_config({"arith.trial_division_limit": 100})
        with pytest.raises(DomainError):
            factorize(1009 * 1013)

    def test_rejects_non_positive(self):
        with pytest.raises(DomainError):
            factorize(0)

    def test_is_prime(self):
        assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert is_prime(2 ** 61 - 1)
        assert not is_prime(561)


class TestMultiplicative:
    def test_moebius_examples(self):
        assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]

    def test_moebius_divisor_sum(self):
        for n in range(1, 2000):
            total = sum(moebius(d) for d in divisors(n))
            assert total == (1 if n == 1 else 0)

    def test_tau_k(self):
        assert tau_k(6, 2) == 4
        assert tau_k(4, 3) == 6
        assert tau_k(97, 5) == 5
        assert all(tau_k(n, 1) == 1 for n in range(1, 50))

    def test_tau_k_rejects_k_zero(self):
        with pytest.raises(DomainError):
            tau_k(10, 0)

    def test_squarefree_decompose(self):
        assert squarefree_decompose(1) == (1, 1)
        assert squarefree_decompose(12) == (3, 2)
        assert squarefree_decompose(72) == (2, 6)
        for m in range(1, 5000):
            n, ell = squarefree_decompose(m)
            assert n * ell * ell == m
            assert is_squarefree(n)

    def test_euler_phi(self):
        assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]

    def test_tables_agree_with_scalar_functions(self):
        nmax = 300
        mu = moebius_table(nmax)
        mask = squarefree_mask(nmax)
        tau3 = tau_k_table(nmax, 3)
        for n in range(1, nmax + 1):
            assert mu[n] == moebius(n)
            assert bool(mask[n]) == is_squarefree(n)
            assert tau3[n] == tau_k(n, 3)


class TestUnitGroup:
    def test_cyclic_prime_power(self):
        group = unit_group(9)
        assert group.orders == [6]
        assert multiplicative_order(group.generators[0], 9) == 6

    def test_two_power(self):
        assert unit_group(4).orders == [2]
        group = unit_group(8)
        assert group.generators == [7, 5]
        assert group.orders == [2, 2]
        assert unit_group(32).orders == [2, 8]

    def test_composite(self):
        group = unit_group(15)
        assert group.orders == [2, 4]
        assert group.rank == 2

    def test_order_is_phi(self):
        for q in range(1, 400):
            assert unit_group(q).order == euler_phi(q)

    def test_generators_have_stated_orders(self):
        for q in range(3, 400):
            for g, o in zip(unit_group(q).generators, unit_group(q).orders):
                assert multiplicative_order(g, q) == o

    def test_discrete_log_round_trip(self):
        for q in range(2, 500):
            group = unit_group(q)
            for n in range(1, q):
                if math.gcd(n, q) != 1:
                    continue
                exps = discrete_log(group, n)
                value = 1
                for g, e in zip(group.generators, exps):
                    value = value * pow(g, e, q) % q
                assert value == n % q

    def test_discrete_log_rejects_non_unit(self):
        with pytest.raises(NotAUnitError):
            discrete_log(unit_group(9), 3)

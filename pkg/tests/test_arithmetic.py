import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetabound.arithmetic import (chebyshev_psi, prime_sum, prime_sum_abs, primes_upto,
                                  required_limit, sieve_mangoldt)
from zetabound.errors import CoverageError, DomainError
from zetabound.extremal import ExtremalParams, g_hat


def _mangoldt_by_trial_division(n):
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return math.log(p) if n == 1 else 0.0
    return math.log(n) if n > 1 else 0.0


@pytest.fixture(scope="module")
def small_table():
    return sieve_mangoldt(10_000)


def test_examples(small_table):
    assert small_table.lookup(8) == math.log(2)
    assert small_table.lookup(7) == math.log(7)
    assert small_table.lookup(12) == 0.0
    assert 12 not in small_table.n


def test_chebyshev_100(small_table):
    expected = math.log(math.lcm(*range(1, 101)))
    assert chebyshev_psi(small_table, 100) == pytest.approx(expected, abs=1e-10)
    assert expected == pytest.approx(94.0453, abs=1e-4)


@settings(max_examples=200, deadline=None)
@given(n=st.integers(1, 10_000))
def test_lookup_matches_factorisation(small_table, n):
    assert small_table.lookup(n) == pytest.approx(_mangoldt_by_trial_division(n), abs=0)


def test_table_shape(small_table):
    assert small_table.limit == 10_000
    assert np.all(np.diff(small_table.n) > 0)
    assert len(small_table) == len(small_table.entries)
    assert len(primes_upto(10_000)) == 1229


def test_sieve_domain():
    with pytest.raises(DomainError):
        sieve_mangoldt(1)


def test_chebyshev_trend():
    table = sieve_mangoldt(100_000)
    devs = [abs(chebyshev_psi(table, N) / N - 1) for N in (1e3, 1e4, 1e5)]
    assert devs[0] > devs[1] > devs[2]


def test_empty_prime_sum():
    p = ExtremalParams(0.1)
    assert p.prime_cutoff < 2
    assert prime_sum(p, 17.0, sieve_mangoldt(2)) == 0.0


def test_prime_sum_vs_term_by_term(mangoldt):
    p = ExtremalParams(1.0)
    table = mangoldt(1.0)
    brute = 0.0
    for n, lam in table.entries:
        if n >= p.prime_cutoff:
            break
        brute += lam / math.sqrt(n) * g_hat(p, math.log(n) / (2 * math.pi))
    brute /= 2 * math.pi
    assert prime_sum(p, 0.0, table) == pytest.approx(brute, abs=1e-8)


@settings(max_examples=30, deadline=None)
@given(t=st.floats(0, 1e5))
def test_prime_sum_even(mangoldt, t):
    p = ExtremalParams(1.0)
    table = mangoldt(1.0)
    assert prime_sum(p, -t, table) == pytest.approx(prime_sum(p, t, table), abs=1e-12)


def test_prime_sum_bounded_by_abs(mangoldt):
    p = ExtremalParams(1.0)
    table = mangoldt(1.0)
    cap = prime_sum_abs(p, table)
    for t in np.linspace(0, 1e4, 101):
        assert abs(prime_sum(p, t, table)) <= cap + 1e-12


def test_growth_constant(mangoldt):
    ratios = []
    for d in (0.5, 1.0, 1.5, 2.0):
        p = ExtremalParams(d)
        ratios.append(prime_sum_abs(p, mangoldt(d)) / math.exp(math.pi * d))
    # recorded: 0.29, 0.18, 0.087, 0.046, so e^{pi delta} is far from tight here
    assert max(ratios) < 0.3


def test_coverage_error():
    p = ExtremalParams(1.0)
    with pytest.raises(CoverageError) as exc:
        prime_sum(p, 0.0, sieve_mangoldt(100))
    assert exc.value.required == required_limit(p)

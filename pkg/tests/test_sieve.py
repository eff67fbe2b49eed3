import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import is_smooth, trial_factor
from tnlab.errors import DomainError, RangeError
from tnlab.sieve import (build_spf_table, factorize, factorize_trial, primes_up_to,
                         psi_count, smooth_in_interval)


def test_spf_examples():
    t = build_spf_table(10)
    assert t.spf(4) == 2
    assert t.spf(9) == 3
    assert t.spf(7) == 7
    t100 = build_spf_table(100)
    assert t100.spf(91) == 7


def test_spf_invariants():
    t = build_spf_table(500)
    primes = set(primes_up_to(500))
    for m in range(2, 501):
        p = t.spf(m)
        assert p in primes
        assert m % p == 0
        if m in primes:
            assert p == m
        else:
            assert p * p <= m


def test_spf_range_errors():
    with pytest.raises(RangeError):
        build_spf_table(1)
    with pytest.raises(RangeError):
        build_spf_table(100, max_entries=10)


def test_factorize_examples(table):
    r = factorize(12, table)
    assert r.factors == ((2, 2), (3, 1))
    assert r.p_plus == 3
    assert r.omega == 2

    one = factorize(1, table)
    assert one.factors == ()
    assert one.p_plus == 1
    assert one.omega == 0

    r = factorize(1260, table)
    assert r.factors == ((2, 2), (3, 2), (5, 1), (7, 1))


def test_factorize_errors(table):
    with pytest.raises(DomainError):
        factorize(0, table)
    with pytest.raises(RangeError):
        factorize(table.limit + 1, table)


def test_factorize_roundtrip_exhaustive(table):
    for n in range(1, 20001):
        rec = factorize(n, table)
        assert rec.recompose() == n
        ps = [p for p, _ in rec.factors]
        assert ps == sorted(set(ps))


@given(st.integers(min_value=1, max_value=10 ** 9))
@settings(max_examples=150)
def test_factorize_trial_matches_oracle(n):
    rec = factorize_trial(n, primes_up_to(31650))
    assert rec.factors == tuple(trial_factor(n))
    assert rec.recompose() == n


def test_squarefree_kernel(table):
    assert factorize(48, table).squarefree_kernel == 3
    assert factorize(49, table).squarefree_kernel == 1
    assert factorize(50, table).squarefree_kernel == 2


def test_smooth_in_interval_examples(table):
    assert smooth_in_interval(48, 56, 7, table) == [49, 50, 54, 56]
    assert smooth_in_interval(2, 6, 2, table) == [4]
    assert smooth_in_interval(10, 12, 100, table) == [11, 12]


def test_smooth_in_interval_malformed(table):
    with pytest.raises(RangeError):
        smooth_in_interval(6, 6, 5, table)
    with pytest.raises(RangeError):
        smooth_in_interval(-1, 6, 5, table)


def test_smooth_in_interval_beyond_table_limit(table):
    lo, hi = table.limit + 100, table.limit + 400
    got = smooth_in_interval(lo, hi, 20, table)
    expect = [n for n in range(lo + 1, hi + 1) if is_smooth(n, 20)]
    assert got == expect


def test_psi_examples(table):
    assert psi_count(100, 5, table) == 34  # frozen from direct trial-division count
    assert psi_count(10, 10, table) == 10
    assert psi_count(10, 1, table) == 1


def test_psi_matches_smooth_interval(table):
    for x, y in [(50, 3), (200, 7), (1000, 13), (777, 2)]:
        assert psi_count(x, y, table) == len(smooth_in_interval(0, x, y, table))


def test_psi_monotone(table):
    vals = [psi_count(x, y, table)
            for x in (10, 100, 1000) for y in (2, 5, 11)]
    for x in (10, 100, 1000):
        row = [psi_count(x, y, table) for y in (2, 3, 5, 7, 11)]
        assert row == sorted(row)
    for y in (2, 5, 11):
        col = [psi_count(x, y, table) for x in (10, 50, 100, 500)]
        assert col == sorted(col)
    assert all(v >= 1 for v in vals)

import math
import random
from itertools import combinations

import pytest

from tnlab.constructor import (build_small_tn, construct_curve_point,
                               find_smooth_rich_intervals, max_symdiff_pair)
from tnlab.errors import PipelineFailed, RangeError, UsageError
from tnlab.sieve import build_spf_table, smooth_in_interval
from tnlab.tn import compute_tn, verify_witness


def test_find_intervals_reverified(table):
    table4 = build_spf_table(10 ** 4)
    found = find_smooth_rich_intervals(10 ** 4, 20, 100, 0.5, table4)
    assert found
    from tnlab.sieve import psi_count
    psi = psi_count(10 ** 4, 20, table4)
    threshold = 0.5 * 100 * psi / 10 ** 4
    for lo, hi in found:
        assert hi - lo == 100
        assert lo >= 10 ** 4 / math.log(10 ** 4) - 100
        assert hi <= 10 ** 4
        assert len(smooth_in_interval(lo, hi, 20, table4)) > threshold


def test_find_intervals_delta_zero(table):
    table4 = build_spf_table(2000)
    found = find_smooth_rich_intervals(2000, 10, 50, 0.0, table4)
    for lo, hi in found:
        assert len(smooth_in_interval(lo, hi, 10, table4)) > 0


def test_find_intervals_length_exceeds_x(table):
    assert find_smooth_rich_intervals(100, 10, 200, 0.25, table) == []


def test_find_intervals_validation(table):
    with pytest.raises(RangeError):
        find_smooth_rich_intervals(1000, 10, 50, 1.5, table)
    with pytest.raises(RangeError):
        find_smooth_rich_intervals(1000, 60, 50, 0.5, table)


def test_build_small_tn_examples(table):
    # (47, 56] holds five 7-smooth integers {48,49,50,54,56} > pi(7) = 4;
    # the first kernel element is the square 49
    assert build_small_tn(47, 56, 7, table) == (49, ())
    # (48, 56] has only four, so the count hypothesis fails
    assert build_small_tn(48, 56, 7, table) is None
    # (1, 6]: smooths {2,3,4,6}, pi(3) = 2; kernel starts at the square 4
    assert build_small_tn(1, 6, 3, table) == (4, ())


def test_build_small_tn_certifies_bound(table):
    table4 = build_spf_table(10 ** 4)
    for lo, hi in find_smooth_rich_intervals(10 ** 4, 20, 150, 0.5, table4)[:4]:
        built = build_small_tn(lo, hi, 20, table4)
        if built is None:
            continue
        n, offsets = built
        assert lo < n <= hi
        assert verify_witness(n, offsets)
        assert compute_tn(n, include_witness=False).t <= hi - lo
        if offsets:
            assert n + max(offsets) <= hi


def test_max_symdiff_trivial_pairs():
    subsets = [frozenset({1}), frozenset({2})]
    assert max_symdiff_pair(subsets) == (0, 1, 2)

    # all subsets of {1..Q}: extremes are the empty set and the full set
    q = 4
    family = [frozenset(c) for r in range(q + 1)
              for c in combinations(range(1, q + 1), r)]
    i, j, size = max_symdiff_pair(family)
    assert size == q
    assert family[i] ^ family[j] == frozenset(range(1, q + 1))


def test_max_symdiff_usage_errors():
    with pytest.raises(UsageError):
        max_symdiff_pair([frozenset({1})])
    with pytest.raises(UsageError):
        max_symdiff_pair([frozenset({1}), frozenset({1})])


def test_max_symdiff_matches_exhaustive_oracle():
    rng = random.Random(3)
    family = list({frozenset(k for k in range(64) if rng.random() < 0.4)
                   for _ in range(40)})
    i, j, size = max_symdiff_pair(family)
    best = max(len(a ^ b) for a, b in combinations(family, 2))
    assert size == best
    assert len(family[i] ^ family[j]) == best


def test_max_symdiff_guarantee_random_family():
    # 2^8 distinct subsets of {1..64}: the returned difference must clear
    # Q / (6 ln N) with Q = 8, N = 64
    rng = random.Random(5)
    family = set()
    while len(family) < 256:
        family.add(frozenset(k for k in range(1, 65) if rng.random() < 0.5))
    _, _, size = max_symdiff_pair(sorted(family, key=sorted))
    assert size > 8 / (6 * math.log(64))


def test_max_symdiff_anchor_mode():
    family = [frozenset({k}) for k in range(20)]
    i, j, size = max_symdiff_pair(family, exhaustive_limit=8)
    assert size == 2 and i < j


def test_curve_point_certificate():
    # the asymptotic default parameters need x beyond 1e5, so desk-scale
    # unit tests pin y and the interval length explicitly
    cert = construct_curve_point(10 ** 5, 0.5, seed=1, y=30, length=5000)
    assert cert.offsets == tuple(sorted(cert.offsets))
    assert cert.N == len(cert.offsets)
    assert all(1 <= j < cert.J for j in cert.offsets)
    assert verify_witness(cert.n, list(cert.offsets) + [cert.J])
    assert cert.meets_target == (cert.N >= math.ceil(cert.J ** 0.5))


def test_curve_point_deterministic_per_seed():
    a = construct_curve_point(10 ** 5, 0.5, seed=7, y=30, length=5000)
    b = construct_curve_point(10 ** 5, 0.5, seed=7, y=30, length=5000)
    assert a.to_json_dict() == b.to_json_dict()


def test_curve_point_parity_invariant_under_offset_shuffle():
    cert = construct_curve_point(10 ** 5, 0.4, seed=2, y=30, length=5000)
    offsets = list(cert.offsets) + [cert.J]
    assert verify_witness(cert.n, sorted(offsets))


def test_curve_point_too_small():
    with pytest.raises(PipelineFailed):
        construct_curve_point(100, 0.5)

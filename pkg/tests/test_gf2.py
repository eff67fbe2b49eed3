import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tnlab.errors import UsageError
from tnlab.gf2 import (EchelonBasis, ParityVector, basis_insert, express_in_span,
                       kernel_masks, nullspace_subsets, parity_vector)
from tnlab.sieve import factorize

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def pv(*primes):
    return ParityVector(frozenset(primes))


def test_parity_vector_examples(table):
    assert parity_vector(factorize(12, table)).support == {3}
    assert parity_vector(factorize(49, table)).is_zero()
    assert parity_vector(factorize(10, table)).support == {2, 5}


def test_xor_is_symmetric_difference():
    assert (pv(2, 5) ^ pv(5, 7)).support == {2, 7}
    assert (pv() ^ pv(3)).support == {3}


def test_insert_dependency_example():
    b = EchelonBasis(verify=True)
    assert basis_insert(b, pv(2, 5), "a").extended
    assert basis_insert(b, pv(3), "b").extended
    out = basis_insert(b, pv(2, 3, 5), "c")
    assert out.dependent
    assert out.combination == {"a", "b"}


def test_insert_zero_vector():
    b = EchelonBasis(verify=True)
    basis_insert(b, pv(2), "x")
    out = basis_insert(b, pv(), "z")
    assert out.dependent and out.combination == frozenset()


def test_insert_independent_rank():
    b = EchelonBasis()
    assert basis_insert(b, pv(2), 1).extended
    assert basis_insert(b, pv(5), 2).extended
    assert b.rank == 2


def test_duplicate_tag_rejected():
    b = EchelonBasis()
    basis_insert(b, pv(2), "t")
    with pytest.raises(UsageError):
        basis_insert(b, pv(3), "t")


def test_express_examples():
    b = EchelonBasis(verify=True)
    basis_insert(b, pv(2), "t2")
    basis_insert(b, pv(3), "t3")
    assert express_in_span(b, pv(2, 3)) == {"t2", "t3"}
    assert express_in_span(b, pv(5)) is None
    assert express_in_span(b, pv()) == frozenset()


def test_pivot_is_largest_support_prime():
    b = EchelonBasis()
    basis_insert(b, pv(2, 29), "a")
    basis_insert(b, pv(2, 3), "b")
    for pivot in b.pivots():
        support, _ = b.row(pivot)
        assert max(support) == pivot


def test_nullspace_examples():
    vecs = [("a", pv(2)), ("b", pv(3)), ("c", pv(2, 3))]
    assert nullspace_subsets(vecs, verify=True) == [frozenset("abc")]

    vecs = [("z", pv()), ("a", pv(2))]
    assert nullspace_subsets(vecs, verify=True) == [frozenset("z")]


def test_nullspace_window_example(supplier):
    # parity vectors of 49, 50, 54, 56, 48: two independent square subsets
    # ({49} and {48, 50, 54}, since 48*50*54 = 360^2), so the kernel has
    # dimension 2 (rank 3 out of 5 vectors).
    values = [49, 50, 54, 56, 48]
    kernel = nullspace_subsets(((m, supplier.support(m)) for m in values), verify=True)
    assert kernel == [frozenset({49}), frozenset({48, 50, 54})]


def test_kernel_masks_matches_nullspace(supplier):
    values = [49, 50, 54, 56, 48]
    masks = kernel_masks(supplier.support(m) for m in values)
    as_sets = [frozenset(values[b] for b in range(len(values)) if m >> b & 1)
               for m in masks]
    assert as_sets == nullspace_subsets((m, supplier.support(m)) for m in values)


@st.composite
def vector_batches(draw):
    k = draw(st.integers(min_value=1, max_value=14))
    vecs = []
    for i in range(k):
        support = frozenset(draw(st.sets(st.sampled_from(PRIMES), max_size=5)))
        vecs.append((i, support))
    return vecs


@given(vector_batches())
@settings(max_examples=120)
def test_rank_plus_kernel_dim(vecs):
    b = EchelonBasis(verify=True)
    kernel = 0
    for tag, s in vecs:
        if b.insert(s, tag).dependent:
            kernel += 1
    assert b.rank + kernel == len(vecs)


@given(vector_batches(), st.randoms(use_true_random=False))
@settings(max_examples=80)
def test_rank_is_order_independent(vecs, rng):
    def rank_of(order):
        b = EchelonBasis()
        for tag, s in order:
            b.insert(s, tag)
        return b.rank

    shuffled = list(vecs)
    rng.shuffle(shuffled)
    assert rank_of(vecs) == rank_of(shuffled)


@given(vector_batches())
@settings(max_examples=80)
def test_witness_soundness(vecs):
    # verify=True re-XORs the originals on every dependent/express call and
    # raises on any mismatch
    b = EchelonBasis(verify=True)
    lookup = dict(vecs)
    for tag, s in vecs:
        out = b.insert(s, tag)
        if out.dependent:
            acc = frozenset()
            for t in out.combination:
                acc ^= lookup[t]
            assert acc == s
    probe = frozenset({2, 3})
    combo = b.express(probe)
    if combo is not None:
        acc = frozenset()
        for t in combo:
            acc ^= lookup[t]
        assert acc == probe

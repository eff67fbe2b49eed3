"""Exponent-parity vectors and incremental GF(2) elimination.

Vectors are sparse sets of primes with odd exponent; XOR is symmetric
difference. The echelon basis pivots on the largest prime of each reduced
vector (large primes are rare near any n, which keeps reduction chains
short) and tracks, for every stored row, which original insertions XOR to
it, so dependency witnesses come out of the reduction for free.

Combinations are tracked internally as integer bitmasks over insertion
order and converted to tag sets on the way out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Optional

from .errors import UsageError
from .sieve import FactorizationRecord


@dataclass(frozen=True)
class ParityVector:
    """Image of an integer in the GF(2) space indexed by primes.

    support holds exactly the primes with odd exponent; an empty support
    means the underlying integer is a perfect square.
    """

    support: frozenset[int]

    def __xor__(self, other: "ParityVector") -> "ParityVector":
        return ParityVector(self.support ^ other.support)

    def is_zero(self) -> bool:
        return not self.support

    def sorted_primes(self) -> tuple[int, ...]:
        return tuple(sorted(self.support))


def parity_vector(f: FactorizationRecord) -> ParityVector:
    """Reduce the exponents of a factorization mod 2."""
    return ParityVector(f.odd_parity_primes())


@dataclass(frozen=True)
class InsertOutcome:
    extended: bool
    pivot: Optional[int] = None
    combination: Optional[frozenset] = None

    @property
    def dependent(self) -> bool:
        return not self.extended


class EchelonBasis:
    """Row basis over prime-indexed GF(2) vectors with witness tracking.

    Rows are keyed by their pivot (the largest prime in the reduced
    support); each row remembers the set of inserted tags whose vectors
    XOR to it. Single writer; reads are safe between mutations.

    With verify=True every dependency/expression result is re-checked by
    XOR-ing the original vectors (slow; meant for tests).
    """

    def __init__(self, verify: bool = False):
        self._rows: dict[int, tuple[frozenset[int], int]] = {}
        self._tags: list[Hashable] = []
        self._tag_bits: dict[Hashable, int] = {}
        self._dependent_mask: int = 0
        self._verify = verify
        self._originals: dict[Hashable, frozenset[int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def inserted_count(self) -> int:
        return len(self._tags)

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def row(self, pivot: int) -> tuple[frozenset[int], frozenset]:
        support, mask = self._rows[pivot]
        return support, self._tags_from_mask(mask)

    def _tags_from_mask(self, mask: int) -> frozenset:
        out = []
        while mask:
            low = mask & -mask
            out.append(self._tags[low.bit_length() - 1])
            mask ^= low
        return frozenset(out)

    def _reduce(self, support: frozenset[int], mask: int) -> tuple[frozenset[int], int]:
        rows = self._rows
        while support:
            row = rows.get(max(support))
            if row is None:
                break
            support = support ^ row[0]
            mask ^= row[1]
        return support, mask

    def insert(self, support: frozenset[int], tag: Hashable) -> InsertOutcome:
        """Insert a vector; grow the basis or report a dependency witness.

        A Dependent outcome carries prior tags whose vectors XOR to the
        inserted one (empty for the zero vector).
        """
        if tag in self._tag_bits:
            raise UsageError(f"tag {tag!r} already inserted")
        self._tag_bits[tag] = len(self._tags)
        if self._verify:
            self._originals[tag] = support
        bit = len(self._tags)
        pivot = self._insert_raw(support, tag)
        if pivot is not None:
            return InsertOutcome(extended=True, pivot=pivot)
        combination = self._tags_from_mask(self._dependent_mask ^ (1 << bit))
        if self._verify:
            self._check_combination(combination, support)
        return InsertOutcome(extended=False, combination=combination)

    def _insert_raw(self, support: frozenset[int], tag: Hashable) -> Optional[int]:
        """Hot-path insert: no duplicate check and no combination
        materialization. Returns the new pivot, or None for a dependent
        vector (whose combination mask is left in _dependent_mask).

        Callers must guarantee tags are fresh.
        """
        bit = len(self._tags)
        self._tags.append(tag)
        mask = 1 << bit
        rows = self._rows
        while support:
            p = max(support)
            row = rows.get(p)
            if row is None:
                rows[p] = (support, mask)
                return p
            support = support ^ row[0]
            mask ^= row[1]
        self._dependent_mask = mask
        return None

    def express(self, support: frozenset[int]) -> Optional[frozenset]:
        """Tags whose vectors XOR to the given vector, or None if outside the span."""
        red, mask = self._reduce(support, 0)
        if red:
            return None
        combination = self._tags_from_mask(mask)
        if self._verify:
            self._check_combination(combination, support)
        return combination

    def _check_combination(self, combination: Iterable[Hashable], support: frozenset[int]) -> None:
        acc: frozenset[int] = frozenset()
        for t in combination:
            acc = acc ^ self._originals[t]
        if acc != support:
            raise AssertionError("combination does not XOR to the requested vector")


class SpanTarget:
    """Incrementally tracks whether a fixed vector is in a growing span.

    Keeps the target reduced against the basis; after each extending
    insertion, call notify(pivot). Re-reduction resumes only when the new
    pivot equals the largest prime of the stuck residual, so the amortized
    cost per insertion is O(1) plus the actual reduction work.
    """

    def __init__(self, basis: EchelonBasis, support: frozenset[int]):
        self._basis = basis
        self._residual, self._mask = basis._reduce(support, 0)

    @property
    def in_span(self) -> bool:
        return not self._residual

    def notify(self, pivot: int) -> bool:
        """Report a new basis pivot; returns True once the target is in the span."""
        r = self._residual
        if r and pivot == max(r):
            self._residual, self._mask = self._basis._reduce(r, self._mask)
        return not self._residual

    def combination(self) -> frozenset:
        if self._residual:
            raise UsageError("target is not in the span yet")
        return self._basis._tags_from_mask(self._mask)


def basis_insert(basis: EchelonBasis, v: ParityVector, tag: Hashable) -> InsertOutcome:
    return basis.insert(v.support, tag)


def express_in_span(basis: EchelonBasis, v: ParityVector) -> Optional[frozenset]:
    return basis.express(v.support)


def kernel_masks(supports: Iterable[frozenset[int]]) -> list[int]:
    """Kernel basis of an ordered vector family, as bitmasks over positions.

    Bit i of a mask selects the i-th input vector; each mask XORs to the
    zero vector. Bulk-oriented twin of nullspace_subsets for callers that
    go on to XOR many kernel elements together.
    """
    basis = EchelonBasis()
    out = []
    for idx, s in enumerate(supports):
        if basis._insert_raw(s, idx) is None:
            out.append(basis._dependent_mask)
    return out


def nullspace_subsets(vectors: Iterable[tuple[Hashable, ParityVector | frozenset]],
                      verify: bool = False) -> list[frozenset]:
    """Kernel basis of a tagged vector family.

    Returns one tag set per dependent insertion (the dependency witness
    plus the inserted tag itself); each set XORs to the zero vector, the
    sets are linearly independent, and together they span the kernel, so
    there are exactly (number of vectors) - rank of them.
    """
    basis = EchelonBasis(verify=verify)
    kernel: list[frozenset] = []
    for tag, v in vectors:
        support = v.support if isinstance(v, ParityVector) else v
        outcome = basis.insert(support, tag)
        if outcome.dependent:
            kernel.append(outcome.combination | {tag})
    return kernel

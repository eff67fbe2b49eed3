"""Constructive pipelines: smooth-rich intervals, small-t_n witnesses, and
curve-point certificates.

The pipeline finds short intervals unusually rich in smooth numbers, takes
the GF(2) kernel of their parity vectors (every kernel element is a subset
with square product), draws a family of kernel members, and picks two with
a large symmetric difference; the difference is itself a square-product
subset whose elements, written as n, n+j_1, ..., n+J, certify an integral
point on the corresponding hyperelliptic curve. Every certificate is
parity-verified at emission; count guarantees are asymptotic and only
reported, never asserted.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import PipelineFailed, RangeError, UsageError
from .gf2 import EchelonBasis, kernel_masks
from .sieve import SpfTable, build_spf_table, primes_up_to, smooth_in_interval
from .tn import ParitySupplier

EXHAUSTIVE_PAIR_LIMIT = 2 ** 12


def smoothness_parameter(x: int) -> float:
    """Default smoothness bound: exp((sqrt(2)/2) sqrt(log x log log x))."""
    s = math.sqrt(math.log(x) * math.log(math.log(x)))
    return math.exp(0.5 * math.sqrt(2.0) * s)


def interval_length_parameter(x: int) -> float:
    """Default interval length: exp((sqrt(2) + 1/sqrt(log log x)) sqrt(log x log log x))."""
    s = math.sqrt(math.log(x) * math.log(math.log(x)))
    return math.exp((math.sqrt(2.0) + 1.0 / math.sqrt(math.log(math.log(x)))) * s)


def find_smooth_rich_intervals(x: int, y: float, length: int, delta: float,
                               table: Optional[SpfTable] = None) -> list[tuple[int, int]]:
    """Disjoint intervals (k*length, (k+1)*length] inside [x/log x, x] whose
    y-smooth count exceeds delta * length * Psi(x, y) / x, ascending.

    delta = 0 degenerates to "any interval with a positive smooth count".
    An empty list (e.g. when length > x) is a normal outcome, not an error.
    """
    if x < 3:
        raise RangeError("x must be >= 3")
    if not (0.0 <= delta < 1.0):
        raise RangeError(f"delta must lie in [0, 1), got {delta}")
    if y < 1 or y >= length:
        raise RangeError(f"need 1 <= y < length, got y={y}, length={length}")
    if table is None or table.limit < x:
        table = build_spf_table(x)
    y_int = int(math.floor(y))
    lpf = table.largest_prime_factors()
    psi = int(np.count_nonzero(lpf[1:x + 1] <= y_int))
    threshold = delta * length * psi / x

    lo_bound = x / math.log(x)
    k = max(1, math.ceil(lo_bound / length))
    out = []
    while (k + 1) * length <= x:
        lo, hi = k * length, (k + 1) * length
        count = int(np.count_nonzero(lpf[lo + 1:hi + 1] <= y_int))
        if count > threshold:
            out.append((lo, hi))
        k += 1
    return out


def build_small_tn(lo: int, hi: int, y: float,
                   table: Optional[SpfTable] = None) -> Optional[tuple[int, tuple[int, ...]]]:
    """A pair (n, offsets) with n in (lo, hi] whose square-product witness
    lies wholly inside the interval, certifying t_n <= hi - lo.

    Exists whenever the interval holds more y-smooth integers than there
    are primes up to y (pigeonhole on parity vectors); returns None when
    that count condition fails. The kernel element produced by the first
    dependent insertion is used, and n is its least element.
    """
    if table is None or table.limit < hi:
        table = build_spf_table(max(hi, 4))
    y_int = int(math.floor(y))
    smooths = smooth_in_interval(lo, hi, y_int, table)
    if len(smooths) <= len(primes_up_to(y_int)):
        return None
    supplier = ParitySupplier(table)
    basis = EchelonBasis()
    for m in smooths:
        outcome = basis.insert(supplier.support(m), m)
        if outcome.dependent:
            members = sorted(outcome.combination | {m})
            n = members[0]
            return n, tuple(v - n for v in members[1:])
    raise AssertionError("more smooth values than primes must force a dependency")


def max_symdiff_pair(subsets: Sequence[frozenset],
                     exhaustive_limit: int = EXHAUSTIVE_PAIR_LIMIT) -> tuple[int, int, int]:
    """Indices (i, j) of a pair with maximal symmetric difference, plus its size.

    Exhaustive pair scan up to `exhaustive_limit` subsets; beyond that, one
    anchor set is fixed and scanned against all others (the counting
    argument guarantees the anchor already sees a far set when the family
    is large enough).
    """
    k = len(subsets)
    if k < 2:
        raise UsageError("need at least 2 subsets")
    if len(set(subsets)) != k:
        raise UsageError("subsets must be distinct")
    universe = sorted(set().union(*subsets))
    bits = {e: i for i, e in enumerate(universe)}
    masks = []
    for s in subsets:
        m = 0
        for e in s:
            m |= 1 << bits[e]
        masks.append(m)

    best = (-1, 0, 0)
    if k <= exhaustive_limit:
        for i in range(k):
            mi = masks[i]
            for j in range(i + 1, k):
                d = (mi ^ masks[j]).bit_count()
                if d > best[0]:
                    best = (d, i, j)
    else:
        anchor = next(i for i, m in enumerate(masks) if m)
        ma = masks[anchor]
        for j in range(k):
            if j == anchor:
                continue
            d = (ma ^ masks[j]).bit_count()
            if d > best[0]:
                best = (d, min(anchor, j), max(anchor, j))
    return best[1], best[2], best[0]


@dataclass(frozen=True)
class CurvePointCertificate:
    """A parity-verified integral point: n(n+J) * prod(n+j_i) is a square.

    offsets holds the N interior shifts 1 <= j_1 < ... < j_N < J. The
    J^(1-c) size target is reported (meets_target), never asserted: the
    underlying guarantee is asymptotic.
    """

    J: int
    offsets: tuple[int, ...]
    n: int
    N: int
    c: float
    target: int
    meets_target: bool
    x: int
    y: float
    length: int
    seed: int
    interval: tuple[int, int]
    smooth_count: int
    prime_count: int
    kernel_dim: int
    family_size: int
    stage_seconds: dict = field(compare=False, default_factory=dict)

    def all_offsets(self) -> tuple[int, ...]:
        return self.offsets + (self.J,)

    def to_json_dict(self) -> dict:
        return {
            "J": self.J,
            "offsets": list(self.offsets),
            "n": self.n,
            "N": self.N,
            "c": self.c,
            "target": self.target,
            "meets_target": self.meets_target,
            "x": self.x,
            "y": self.y,
            "length": self.length,
            "seed": self.seed,
            "interval": list(self.interval),
            "smooth_count": self.smooth_count,
            "prime_count": self.prime_count,
            "kernel_dim": self.kernel_dim,
            "family_size": self.family_size,
        }


def construct_curve_point(x: int, c: float, seed: int = 0,
                          y: Optional[float] = None,
                          length: Optional[int] = None,
                          delta: float = 0.25,
                          family_size: int = 128,
                          table: Optional[SpfTable] = None) -> CurvePointCertificate:
    """Run the full certificate pipeline at scale x.

    Stages: smooth-rich interval discovery -> parity kernel of the smooth
    integers in the first qualifying interval -> seeded family of kernel
    members -> maximal symmetric difference -> certificate. Raises
    PipelineFailed (with the stage name) when a stage yields nothing, e.g.
    when x is too small for the default parameters.
    """
    if x < 16:
        raise PipelineFailed("parameters", f"x={x} is too small")
    if not (0.0 < c < 1.0):
        raise RangeError(f"c must lie in (0, 1), got {c}")
    t0 = time.perf_counter()
    if y is None:
        y = smoothness_parameter(x)
    if length is None:
        length = int(interval_length_parameter(x))
    if y < 2 or length < 4:
        raise PipelineFailed("parameters", f"degenerate y={y:.3g}, length={length}")
    if y >= length:
        raise PipelineFailed("parameters", f"y={y:.3g} >= length={length}")
    if table is None or table.limit < x:
        table = build_spf_table(x)
    timings = {}

    intervals = find_smooth_rich_intervals(x, y, length, delta, table)
    timings["intervals"] = time.perf_counter() - t0
    if not intervals:
        raise PipelineFailed("intervals", f"no qualifying interval at x={x}")
    lo, hi = intervals[0]

    t1 = time.perf_counter()
    y_int = int(math.floor(y))
    smooths = smooth_in_interval(lo, hi, y_int, table)
    supplier = ParitySupplier(table)
    masks = kernel_masks(supplier.support(m) for m in smooths)
    dim = len(masks)
    prime_count = len(primes_up_to(y_int))
    timings["kernel"] = time.perf_counter() - t1
    if dim == 0:
        raise PipelineFailed("kernel", f"kernel is trivial on ({lo}, {hi}]")

    t2 = time.perf_counter()
    rng = random.Random(seed)
    family = _draw_family(masks, rng, family_size)
    if len(family) < 2:
        raise PipelineFailed("family", "fewer than 2 distinct kernel members drawn")
    subsets = [_mask_to_indexset(m) for m in family]
    i, j, size = max_symdiff_pair(subsets)
    timings["symdiff"] = time.perf_counter() - t2
    if size < 2:
        raise PipelineFailed("symdiff", "largest symmetric difference has < 2 elements")

    union = family[i] ^ family[j]
    members = sorted(smooths[b] for b in _mask_bits(union))
    n = members[0]
    span = members[-1] - n
    interior = tuple(m - n for m in members[1:-1])

    acc: frozenset[int] = frozenset()
    for m in members:
        acc = acc ^ supplier.support(m)
    assert not acc, "certificate product is not a square"

    target = math.ceil(span ** (1.0 - c))
    timings["total"] = time.perf_counter() - t0
    return CurvePointCertificate(
        J=span, offsets=interior, n=n, N=len(interior), c=c,
        target=target, meets_target=len(interior) >= target,
        x=x, y=y, length=length, seed=seed, interval=(lo, hi),
        smooth_count=len(smooths), prime_count=prime_count,
        kernel_dim=dim, family_size=len(family),
        stage_seconds=timings,
    )


def _draw_family(masks: list[int], rng: random.Random, family_size: int) -> list[int]:
    """Distinct kernel members: all of them when the kernel is small,
    otherwise seeded random XOR combinations of the basis."""
    dim = len(masks)
    if dim <= 12 and 2 ** dim <= max(family_size, 2):
        family = [0]
        prev = 0
        for g in range(1, 2 ** dim):
            gray = g ^ (g >> 1)
            prev_mask = family[-1]
            family.append(prev_mask ^ masks[(gray ^ prev).bit_length() - 1])
            prev = gray
        return sorted(set(family))
    seen = {}
    attempts = 0
    while len(seen) < family_size and attempts < 8 * family_size:
        attempts += 1
        sel = rng.getrandbits(dim)
        m = 0
        while sel:
            low = sel & -sel
            m ^= masks[low.bit_length() - 1]
            sel ^= low
        seen.setdefault(m, None)
    return list(seen)


def _mask_bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask_to_indexset(mask: int) -> frozenset[int]:
    return frozenset(_mask_bits(mask))

"""Exact computation of t_n with verifiable witnesses.

t_n is the least t >= 0 such that some subset of {n+1, ..., n+t} multiplied
by n gives a perfect square (0 when n is itself a square). The search
inserts the parity vectors of n+1, n+2, ... into an echelon basis and stops
the first time the vector of n enters the span; the basis's combination
tracking then yields a witness subset whose largest offset is exactly t_n.

A large-prime shortcut resolves most n instantly: when P+(n) > sqrt(2n)+1,
t_n = P+(n).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Optional, Sequence

from .errors import CapExceeded, DomainError, RangeError
from .gf2 import EchelonBasis, SpanTarget
from .sieve import PrimeCache, SpfTable, build_spf_table, factorize_trial

# Hard ceiling on searched offsets when no explicit cap is given.
HARD_OFFSET_CAP = 10 ** 7

DEFAULT_TABLE_LIMIT = 1 << 20


class ParitySupplier:
    """Serves exponent-parity supports (and largest prime factors) for
    arbitrary positive integers.

    Values within the table are factored by smallest-prime-factor walks;
    larger values fall back to trial division with a growable prime list.
    Results are memoized so overlapping scan windows share work.
    """

    def __init__(self, table: Optional[SpfTable] = None, cache: bool = True):
        self.table = table
        self._primes = PrimeCache()
        self._support_cache: Optional[dict[int, frozenset[int]]] = {} if cache else None

    def support(self, m: int) -> frozenset[int]:
        cache = self._support_cache
        if cache is not None:
            hit = cache.get(m)
            if hit is not None:
                return hit
        key = m
        table = self.table
        if table is not None and m <= table.limit:
            spf = table._spf
            odd = set()
            while m > 1:
                p = int(spf[m])
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                if e & 1:
                    odd.add(p)
            out = frozenset(odd)
        else:
            out = factorize_trial(m, self._primes.covering(m)).odd_parity_primes()
        if cache is not None:
            cache[key] = out
        return out

    def p_plus(self, m: int) -> int:
        """Largest prime factor, with 1 for m = 1."""
        table = self.table
        if table is not None and m <= table.limit:
            spf = table._spf
            best = 1
            while m > 1:
                p = int(spf[m])
                best = p
                while m % p == 0:
                    m //= p
            return best
        return factorize_trial(m, self._primes.covering(m)).p_plus


_default_supplier: Optional[ParitySupplier] = None


def default_supplier() -> ParitySupplier:
    global _default_supplier
    if _default_supplier is None:
        _default_supplier = ParitySupplier(build_spf_table(DEFAULT_TABLE_LIMIT))
    return _default_supplier


@dataclass(frozen=True)
class TnResult:
    """t_n with its certifying subset.

    witness lists the offsets j_1 < ... < j_s = t; it is the empty tuple
    exactly when t = 0 and None when the witness was not computed (shortcut
    rows, or scans run without witness tracking). cap_exceeded marks rows
    that hit their search cap, in which case t is None.
    """

    n: int
    t: Optional[int]
    witness: Optional[tuple[int, ...]]
    shortcut_used: bool = False
    cap_exceeded: bool = False


def large_prime_shortcut(n: int, supplier: Optional[ParitySupplier] = None) -> Optional[int]:
    """t_n when the largest prime factor of n exceeds sqrt(2n) + 1.

    Returns P+(n) exactly when (P+(n) - 1)^2 > 2n (an exact integer
    comparison equivalent to P+(n) > sqrt(2n) + 1), else None. Squares and
    n = 1 return None.
    """
    if n < 2 or isqrt(n) ** 2 == n:
        return None
    supplier = supplier or default_supplier()
    p = supplier.p_plus(n)
    if (p - 1) ** 2 > 2 * n:
        return p
    return None


def compute_tn(n: int,
               cap: Optional[int] = None,
               use_shortcut: bool = True,
               include_witness: bool = True,
               supplier: Optional[ParitySupplier] = None) -> TnResult:
    """Compute t_n exactly, with a witness subset certifying it.

    The returned t is the least offset count such that the parity vector of
    n lies in the GF(2) span of the vectors of n+1, ..., n+t; minimality
    holds by construction because span membership is tested after every
    insertion. Raises CapExceeded if no witness appears within `cap`
    offsets (default: a hard limit of 10^7).
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if isqrt(n) ** 2 == n:
        return TnResult(n, 0, ())
    supplier = supplier or default_supplier()

    shortcut_t = large_prime_shortcut(n, supplier) if use_shortcut else None
    if shortcut_t is not None and not include_witness:
        return TnResult(n, shortcut_t, None, shortcut_used=True)

    limit = cap if cap is not None else HARD_OFFSET_CAP
    if limit < 1:
        raise RangeError("cap must be >= 1")
    if shortcut_t is not None:
        # witness requested for a shortcut row: the search is guaranteed to
        # terminate at exactly t = P+(n), so the cap cannot apply
        limit = shortcut_t
    basis = EchelonBasis()
    target = SpanTarget(basis, supplier.support(n))
    insert = basis._insert_raw
    support = supplier.support
    notify = target.notify
    j = 0
    while j < limit:
        j += 1
        pivot = insert(support(n + j), j)
        if pivot is not None and notify(pivot):
            witness = tuple(sorted(target.combination()))
            assert witness and witness[-1] == j, "witness must peak at t_n"
            if shortcut_t is not None:
                assert j == shortcut_t, "shortcut disagrees with full search"
            return TnResult(n, j, witness if include_witness else None,
                            shortcut_used=shortcut_t is not None)
    raise CapExceeded(n, limit, j, basis.rank)


def verify_witness(n: int, witness: Sequence[int],
                   supplier: Optional[ParitySupplier] = None) -> bool:
    """True iff n times the product of n+j over the witness is a square.

    Checked via parity vectors (the XOR of all supports must be empty); the
    product itself is never formed.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    prev = 0
    for j in witness:
        if j <= prev:
            raise DomainError("witness offsets must be strictly increasing and positive")
        prev = j
    supplier = supplier or default_supplier()
    acc = supplier.support(n)
    for j in witness:
        acc = acc ^ supplier.support(n + j)
    return not acc


def scan_tn(lo: int, hi: int,
            cap: Optional[int] = None,
            use_shortcut: bool = True,
            include_witness: bool = False,
            supplier: Optional[ParitySupplier] = None,
            workers: int = 1) -> list[TnResult]:
    """One TnResult per n in [lo, hi], ascending.

    Rows whose search cap is exhausted come back flagged (t = None,
    cap_exceeded=True) instead of aborting the scan. Output is identical
    for any worker count; with workers > 1 disjoint n-chunks are computed
    in separate processes (each with its own supplier) and merged in order.
    """
    if not (1 <= lo <= hi):
        raise RangeError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    if workers > 1 and hi - lo >= 16:
        return _scan_parallel(lo, hi, cap, use_shortcut, include_witness, workers)
    supplier = supplier or default_supplier()
    return [_tn_row(n, cap, use_shortcut, include_witness, supplier)
            for n in range(lo, hi + 1)]


def _tn_row(n, cap, use_shortcut, include_witness, supplier) -> TnResult:
    try:
        return compute_tn(n, cap=cap, use_shortcut=use_shortcut,
                          include_witness=include_witness, supplier=supplier)
    except CapExceeded:
        return TnResult(n, None, None, shortcut_used=False, cap_exceeded=True)


_worker_supplier: Optional[ParitySupplier] = None


def _scan_chunk(args) -> list[TnResult]:
    lo, hi, cap, use_shortcut, include_witness = args
    global _worker_supplier
    if _worker_supplier is None:
        _worker_supplier = ParitySupplier(build_spf_table(DEFAULT_TABLE_LIMIT))
    return [_tn_row(n, cap, use_shortcut, include_witness, _worker_supplier)
            for n in range(lo, hi + 1)]


def _scan_parallel(lo, hi, cap, use_shortcut, include_witness, workers) -> list[TnResult]:
    from concurrent.futures import ProcessPoolExecutor

    count = hi - lo + 1
    chunk = max(256, count // (workers * 8))
    tasks = [(a, min(a + chunk - 1, hi), cap, use_shortcut, include_witness)
             for a in range(lo, hi + 1, chunk)]
    try:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, tasks))
    except (OSError, PermissionError):
        # Sandboxed environments without process support: fall back to
        # sequential, which produces identical output by construction.
        return _scan_chunk((lo, hi, cap, use_shortcut, include_witness))
    return [row for part in parts for row in part]


CSV_HEADER = "n,t,shortcut_used,witness"


def result_csv_line(r: TnResult) -> str:
    t = "" if r.t is None else str(r.t)
    witness = "" if not r.witness else ";".join(str(j) for j in r.witness)
    return f"{r.n},{t},{str(r.shortcut_used).lower()},{witness}"


def result_json_line(r: TnResult) -> str:
    return json.dumps({
        "n": r.n,
        "t": r.t,
        "shortcut_used": r.shortcut_used,
        "witness": list(r.witness) if r.witness is not None else None,
        "cap_exceeded": r.cap_exceeded,
    }, sort_keys=True)


def render_results(results: Iterable[TnResult], fmt: str = "csv") -> str:
    """Render scan rows as CSV (with header) or JSON lines; LF endings."""
    if fmt == "csv":
        lines = [CSV_HEADER] + [result_csv_line(r) for r in results]
    elif fmt == "json":
        lines = [result_json_line(r) for r in results]
    else:
        raise RangeError(f"unknown format {fmt!r}")
    return "\n".join(lines) + "\n"

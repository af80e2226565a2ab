"""Lower and upper shadows, and the shadow-of-shadow inequality for 3-graphs.

The exhaustive scan indexes a family A of 3-sets by a bitmask over the
C(n,3) triples.  The lower shadow of every family is built by one doubling
pass per triple, and the upper shadow of every pair set by one pass per pair,
so |up(low(A))| for all 2**C(n,3) families costs two table lookups each.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .setcore import (
    AllowedSet,
    CapacityError,
    Family,
    PreconditionError,
    UniverseRangeError,
    ValidationError,
    check_universe,
    satisfies_cross,
    uniform_family,
)

X_TOLERANCE = 1e-12
RHS_SLACK = 1e-9
SCAN_MAX_TRIPLES = 20


def _require_uniform(F: Family, r: int) -> None:
    if r < 1:
        raise ValidationError(f"r must be >= 1, got {r}")
    if not F.is_uniform(r):
        raise PreconditionError(f"family is not {r}-uniform")


def lower_shadow(F: Family, r: int) -> Family:
    """All (r-1)-sets inside some member."""
    _require_uniform(F, r)
    out = set()
    for m in F:
        rest = m
        while rest:
            low = rest & -rest
            out.add(m ^ low)
            rest ^= low
    return Family.from_masks(F.n, sorted(out))


def upper_shadow(F: Family, r: int, n: int | None = None) -> Family:
    """All (r+1)-sets over [n] containing some member."""
    n = F.n if n is None else n
    if n != F.n:
        raise ValidationError(f"family lives on [{F.n}], not [{n}]")
    _require_uniform(F, r)
    if r >= n:
        raise UniverseRangeError(f"upper shadow needs r < n, got r={r}, n={n}")
    out = set()
    for m in F:
        for e in range(n):
            bit = 1 << e
            if not m & bit:
                out.add(m | bit)
    return Family.from_masks(n, sorted(out))


def binom_real(x: float, k: int) -> float:
    value = 1.0
    for i in range(k):
        value *= x - i
    return value / math.factorial(k)


def solve_x(size: int, n: int) -> float:
    """Real x in [3, n+1] with C(x,3) = size, by bisection to 1e-12."""
    if size < 1:
        raise UniverseRangeError(f"|A| must be >= 1, got {size}")
    lo, hi = 3.0, float(n + 1)
    if binom_real(hi, 3) < size:
        raise UniverseRangeError(f"|A|={size} exceeds C({n + 1},3)")
    while hi - lo > X_TOLERANCE:
        mid = (lo + hi) / 2
        if binom_real(mid, 3) < size:
            lo = mid
        else:
            hi = mid
    x = (lo + hi) / 2
    # snap integral solutions so tight cases compare exactly
    k = round(x)
    if comb(k, 3) == size:
        return float(k)
    return x


def conjectured_shadow_size(x: float, n: int) -> float:
    return binom_real(x, 3) + binom_real(x, 2) * (n - x)


@dataclass(frozen=True)
class ShadowCheck:
    lhs: int
    rhs: float
    ok: bool
    x: float


def question_4_3_check(A: Family, n: int | None = None) -> ShadowCheck:
    """|up(low(A))| >= C(x,3) + C(x,2)(n-x) where C(x,3) = |A|."""
    n = A.n if n is None else n
    if len(A) < 1:
        raise UniverseRangeError("the check needs |A| >= 1")
    _require_uniform(A, 3)
    lhs = len(upper_shadow(lower_shadow(A, 3), 2, n))
    x = solve_x(len(A), n)
    rhs = conjectured_shadow_size(x, n)
    return ShadowCheck(lhs, rhs, lhs >= rhs - RHS_SLACK, x)


@dataclass(frozen=True)
class ShadowProductBound:
    b_cap: int
    product_cap: int
    conjectured_b_cap: float
    conjectured_product_cap: float
    x: float


def shadow_product_bound(A: Family, n: int | None = None) -> ShadowProductBound:
    """Room left for a 3-uniform B avoiding up(low(A)), exact and conjectured."""
    n = A.n if n is None else n
    if len(A) < 1:
        raise UniverseRangeError("the bound needs |A| >= 1")
    _require_uniform(A, 3)
    covered = len(upper_shadow(lower_shadow(A, 3), 2, n))
    b_cap = comb(n, 3) - covered
    x = solve_x(len(A), n)
    conj = binom_real(n - x, 3) + binom_real(n - x, 2) * x
    return ShadowProductBound(b_cap, len(A) * b_cap, conj, len(A) * conj, x)


def partner_avoids_shadow(A: Family, B: Family) -> bool:
    """For a {0,1}-cross-intersecting 3-uniform pair, B misses up(low(A))."""
    if not satisfies_cross(A, B, AllowedSet({0, 1})):
        raise PreconditionError("pair is not {0,1}-cross-intersecting")
    if len(A) == 0:
        return True
    return len(upper_shadow(lower_shadow(A, 3), 2).intersection(B)) == 0


# ---------------------------------------------------------------------------
# exhaustive scan


@dataclass
class ScanResult:
    n: int
    families_checked: int
    counterexample: Family | None
    check: ShadowCheck | None
    tight_families: int

    @property
    def ok(self) -> bool:
        return self.counterexample is None


@dataclass
class _Tables:
    n: int
    triples: list[int]
    low_lo: np.ndarray
    low_hi: np.ndarray
    split: int
    up_count: np.ndarray
    rhs: np.ndarray


def _build_tables(n: int) -> _Tables:
    triples = uniform_family(n, 3).masks()
    pairs = uniform_family(n, 2).masks()
    pair_index = {p: i for i, p in enumerate(pairs)}
    m, q = len(triples), len(pairs)
    if m > SCAN_MAX_TRIPLES:
        raise CapacityError(f"2**C({n},3) = 2**{m} families is beyond the scan cap 2**{SCAN_MAX_TRIPLES}")
    pair_bits = []
    for tr in triples:
        bits = 0
        for p in combinations([1 << e for e in range(n) if tr >> e & 1], 2):
            bits |= 1 << pair_index[p[0] | p[1]]
        pair_bits.append(bits)
    dtype = np.uint32 if q <= 32 else np.uint64

    def doubling(values: list[int]) -> np.ndarray:
        out = np.zeros(1 << len(values), dtype=dtype)
        for i, v in enumerate(values):
            out[1 << i : 2 << i] = out[: 1 << i] | dtype(v)
        return out

    split = m // 2
    low_lo = doubling(pair_bits[:split])
    low_hi = doubling(pair_bits[split:])
    # triples containing each pair
    up_bits = []
    for p in pairs:
        up_bits.append(sum(1 << j for j, tr in enumerate(triples) if tr & p == p))
    up = doubling(up_bits)
    up_count = np.bitwise_count(up).astype(np.int64)
    rhs = np.full(m + 1, np.inf)
    for k in range(1, m + 1):
        rhs[k] = conjectured_shadow_size(solve_x(k, n), n)
    return _Tables(n, triples, low_lo, low_hi, split, up_count, rhs)


def _scan_chunk(args) -> tuple[int | None, int]:
    tables, lo, hi = args
    seeds = np.arange(lo, hi, dtype=np.int64)
    low_mask = (1 << tables.split) - 1
    shadow = tables.low_lo[seeds & low_mask] | tables.low_hi[seeds >> tables.split]
    lhs = tables.up_count[shadow.astype(np.int64)]
    sizes = np.bitwise_count(seeds.astype(np.uint64)).astype(np.int64)
    rhs = tables.rhs[sizes]
    valid = sizes >= 1
    bad = valid & (lhs < rhs - RHS_SLACK)
    tight = int((valid & (np.abs(lhs - rhs) <= RHS_SLACK)).sum())
    hits = np.flatnonzero(bad)
    return (lo + int(hits[0]) if hits.size else None), tight


def shadow_inequality_scan(n: int, jobs: int = 1, chunks: int = 16) -> ScanResult:
    """Check every nonempty A inside [n]^(3); report the first failure in index order."""
    check_universe(n, lo=3)
    tables = _build_tables(n)
    total = 1 << len(tables.triples)
    step = -(-total // chunks)
    work = [(tables, lo, min(lo + step, total)) for lo in range(0, total, step)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_chunk, work))
    else:
        results = [_scan_chunk(w) for w in work]
    first = next((idx for idx, _ in results if idx is not None), None)
    tight = sum(t for _, t in results)
    if first is None:
        return ScanResult(n, total - 1, None, None, tight)
    fam = Family.from_masks(n, [tables.triples[j] for j in range(len(tables.triples)) if first >> j & 1])
    return ScanResult(n, total - 1, fam, question_4_3_check(fam, n), tight)

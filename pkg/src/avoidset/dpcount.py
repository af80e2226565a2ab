"""Exact disjoint-pair counts.

Three independent routes compute the same number:

* :func:`count_disjoint_ordered` compares every pair directly;
* :func:`count_disjoint_fast` runs the subset-sum (zeta) transform over a
  2**n table and reads off one entry per member of ``A``;
* :func:`count_disjoint_sparse` uses inclusion-exclusion over the subsets of
  each member, which is cheap for families of small sets at any n.
"""

from __future__ import annotations

import os
from collections import Counter

import numpy as np

from .setcore import CapacityError, Family, full_mask, same_universe, submasks

DEFAULT_TRANSFORM_CAP = 28
_NAIVE_CHUNK = 1 << 22


def transform_cap() -> int:
    """Largest n for the 2**n table; ``AVOIDSET_MAX_N`` overrides the default."""
    raw = os.environ.get("AVOIDSET_MAX_N")
    if raw is None:
        return DEFAULT_TRANSFORM_CAP
    try:
        return int(raw)
    except ValueError:
        raise CapacityError(f"AVOIDSET_MAX_N={raw!r} is not an integer") from None


def count_disjoint_ordered(A: Family, B: Family) -> int:
    """|{(a, b) in A x B : a & b == 0}| by direct comparison."""
    same_universe(A, B)
    a, b = A.members, B.members
    if a.size == 0 or b.size == 0:
        return 0
    total = 0
    rows = max(1, _NAIVE_CHUNK // b.size)
    for lo in range(0, a.size, rows):
        hits = (a[lo : lo + rows, None] & b[None, :]) == 0
        total += int(np.count_nonzero(hits))
    return total


def zeta_transform(table: np.ndarray, n: int) -> np.ndarray:
    """In place: table[m] <- sum of table[s] over submasks s of m."""
    view = table
    for i in range(n):
        step = 1 << i
        blocks = view.reshape(-1, 2, step)
        blocks[:, 1, :] += blocks[:, 0, :]
    return table


def subset_count_table(B: Family, cap: int | None = None) -> np.ndarray:
    """z[m] = |{b in B : b subset of m}| for every m < 2**n.

    This is the precomputed table for callers that query many ``A`` against
    the same ``B``; pass it to :func:`count_with_table`.
    """
    n = B.n
    cap = transform_cap() if cap is None else cap
    if n > cap:
        raise CapacityError(
            f"transform needs a 2**{n} table but the cap is n<={cap}; "
            "use count_disjoint_ordered or count_disjoint_sparse instead (or raise AVOIDSET_MAX_N)"
        )
    table = np.zeros(1 << n, dtype=np.int64)
    table[B.members.astype(np.int64)] = 1
    return zeta_transform(table, n)


def count_with_table(A: Family, table: np.ndarray) -> int:
    n = A.n
    if table.size != 1 << n:
        raise ValueError("subset-count table does not match the universe of A")
    if len(A) == 0:
        return 0
    comp = (np.uint64(full_mask(n)) & ~A.members).astype(np.int64)
    return int(table[comp].sum())


def count_disjoint_fast(A: Family, B: Family, cap: int | None = None) -> int:
    """Same value as :func:`count_disjoint_ordered`, via the zeta transform."""
    same_universe(A, B)
    if len(A) == 0 or len(B) == 0:
        return 0
    return count_with_table(A, subset_count_table(B, cap))


def count_disjoint_indicator(a: np.ndarray, b: np.ndarray, n: int, cap: int | None = None) -> int:
    """Transform count for families given as 0/1 indicator vectors of length 2**n."""
    cap = transform_cap() if cap is None else cap
    if n > cap:
        raise CapacityError(f"transform cap n<={cap} exceeded (n={n})")
    table = np.asarray(b, dtype=np.int64).copy()
    zeta_transform(table, n)
    # complement of m is full ^ m == reversed index order
    return int(np.dot(np.asarray(a, dtype=np.int64), table[::-1]))


def count_disjoint_sparse(A: Family, B: Family) -> int:
    """Inclusion-exclusion: d(A,B) = sum_a sum_{S subset a} (-1)^|S| #{b : S subset b}.

    Cost is roughly sum of 2**|b| plus sum of 2**|a|, independent of n.
    """
    same_universe(A, B)
    up = Counter()
    for b in B:
        for s in submasks(b):
            up[s] += 1
    total = 0
    for a in A:
        for s in submasks(a):
            c = up.get(s)
            if c:
                total += -c if s.bit_count() & 1 else c
    return total


def count_disjoint(A: Family, B: Family) -> int:
    """Pick a route by size: transform within the cap, else the cheaper of the others."""
    same_universe(A, B)
    if len(A) == 0 or len(B) == 0:
        return 0
    n = A.n
    if n <= transform_cap() and (1 << n) <= 8 * (len(A) * len(B)):
        return count_disjoint_fast(A, B)
    widest = int(max(A.sizes().max(), B.sizes().max()))
    if widest <= 12 and (len(A) + len(B)) << widest < len(A) * len(B):
        return count_disjoint_sparse(A, B)
    return count_disjoint_ordered(A, B)


def count_disjoint_unordered(F: Family) -> int:
    """d(F) = (d(F, F) - [empty set in F]) / 2."""
    ordered = count_disjoint(F, F)
    self_pair = 1 if 0 in F else 0
    value, rem = divmod(ordered - self_pair, 2)
    assert rem == 0, "ordered self-count must be odd exactly when the empty set is present"
    return value


def _superset_transform(table: np.ndarray, n: int, sign: int) -> np.ndarray:
    for i in range(n):
        blocks = table.reshape(-1, 2, 1 << i)
        if sign > 0:
            blocks[:, 0, :] += blocks[:, 1, :]
        else:
            blocks[:, 0, :] -= blocks[:, 1, :]
    return table


def intersection_profile(A: Family, B: Family, cap: int | None = None) -> np.ndarray:
    """h[k] = #{(a, b) in A x B : |a & b| = k}, for k = 0..n.

    Superset sums of both indicators multiply to the number of pairs whose
    intersection contains each mask; Moebius inversion turns that into the
    number whose intersection equals it.
    """
    n = same_universe(A, B)
    cap = transform_cap() if cap is None else cap
    if n > cap:
        raise CapacityError(f"profile needs a 2**{n} table but the cap is n<={cap}")
    up_a = np.zeros(1 << n, dtype=np.int64)
    up_b = np.zeros(1 << n, dtype=np.int64)
    up_a[A.members.astype(np.int64)] = 1
    up_b[B.members.astype(np.int64)] = 1
    joint = _superset_transform(up_a, n, 1) * _superset_transform(up_b, n, 1)
    exact = _superset_transform(joint, n, -1)
    sizes = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)
    return np.bincount(sizes, weights=exact, minlength=n + 1).astype(np.int64)

"""Named families: level families, Katona and Frankl-Furedi families, star
families F_{X,s}, the cross-avoiding star pair and the power-set pair."""

from __future__ import annotations

import warnings
from math import comb

import numpy as np

from .setcore import (
    AllowedSet,
    Family,
    PreconditionError,
    ValidationError,
    check_universe,
    complement,
    first_cross_violation,
    format_set,
    full_mask,
    power_set,
    uniform_family,
)


class DegenerateConstructionWarning(UserWarning):
    """A construction's defining condition is unsatisfiable for these parameters."""


class BoundaryParameterWarning(UserWarning):
    """Parameters outside the usual stipulation, accepted for boundary sweeps."""


def _all_masks(n: int) -> np.ndarray:
    if n > 26:
        raise ValidationError(f"non-uniform constructions enumerate 2**n masks; n={n} is too large")
    return np.arange(1 << n, dtype=np.uint64)


def level_family(n: int, smax: int) -> Family:
    """[n]^(<= smax)."""
    check_universe(n)
    if not 0 <= smax <= n:
        raise ValidationError(f"smax={smax} outside 0..{n}")
    if n > 26:
        return Family.from_masks(n, np.concatenate([uniform_family(n, k).members for k in range(smax + 1)]))
    masks = _all_masks(n)
    return Family(n, masks[np.bitwise_count(masks) <= smax])


def katona_degenerate(n: int, t: int) -> bool:
    """True when F(n, t) is empty because its threshold exceeds the ground set.

    Only the even case with t = n has this problem: the threshold (n+t)/2 = n
    is asked of [n] minus one element.
    """
    return (n + t) % 2 == 0 and (n + t) // 2 > n - 1


def katona_family(n: int, t: int) -> Family:
    """Katona's family F(n, t); the even case drops ground element 1."""
    check_universe(n)
    if not 0 <= t <= n:
        raise ValidationError(f"t={t} outside 0..{n}")
    masks = _all_masks(n)
    if (n + t) % 2:
        keep = np.bitwise_count(masks) >= (n + t + 1) // 2
    else:
        if katona_degenerate(n, t):
            warnings.warn(
                f"F({n},{t}) is empty: threshold {(n + t) // 2} exceeds |[n] minus 1| = {n - 1}",
                DegenerateConstructionWarning,
                stacklevel=2,
            )
        keep = np.bitwise_count(masks & np.uint64(full_mask(n) & ~1)) >= (n + t) // 2
    return Family(n, masks[keep])


def frankl_furedi_family(n: int, t: int) -> Family:
    """F*(n, t) = F(n, t) together with [n]^(<= t-1)."""
    check_universe(n)
    if not 1 <= t <= n:
        raise ValidationError(f"t={t} outside 1..{n}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateConstructionWarning)
        big = katona_family(n, t)
    return big.union(level_family(n, t - 1))


def star_family(n: int, r: int, X: int, s: int) -> Family:
    """F_{X,s}: r-sets meeting X in at least r - s elements."""
    check_universe(n)
    if not 1 <= r <= n:
        raise ValidationError(f"r={r} outside 1..{n}")
    if s < 0:
        raise ValidationError(f"s={s} must be nonnegative")
    X = int(X)
    if X >> n:
        raise ValidationError(f"X={{{format_set(X)}}} outside [{n}]")
    if X == 0 or X == full_mask(n):
        warnings.warn("X is empty or all of [n]; accepted as a boundary case", BoundaryParameterWarning, stacklevel=2)
    level = uniform_family(n, r)
    inside = np.bitwise_count(level.members & np.uint64(X)).astype(np.int64)
    return level.filter(inside >= r - s)


def star_family_size(n: int, r: int, x: int, s: int) -> int:
    """|F_{X,s}| for |X| = x, in closed form."""
    return sum(comb(x, j) * comb(n - x, r - j) for j in range(max(r - s, 0), r + 1))


def star_pair_disjoint_pairs(n: int, r: int, x: int, a: int, b: int) -> int:
    """d(F_{X,a}, F_{X^c,b}) for |X| = x, in closed form.

    A member of the first family has i points in X; a member of the second
    has j points outside X and must fit in the complement of the first.
    """
    y = n - x
    total = 0
    for i in range(max(r - a, 0), r + 1):
        first = comb(x, i) * comb(y, r - i)
        if not first:
            continue
        for j in range(max(r - b, 0), r + 1):
            total += first * comb(x - i, r - j) * comb(y - (r - i), j)
    return total


def cross_avoiding_star_pair(n: int, r: int, t: int, X: int, a: int, b: int) -> tuple[Family, Family]:
    """(F_{X,a}, F_{X^c,b}) with a + b <= t - 1; checked {0..t-1}-cross-intersecting."""
    if a < 0 or b < 0 or a + b > t - 1 or t > r:
        raise PreconditionError(f"need a,b >= 0 and a+b <= t-1 <= r-1 (a={a}, b={b}, t={t}, r={r})")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryParameterWarning)
        first = star_family(n, r, X, a)
        second = star_family(n, r, complement(X, n), b)
    bad = first_cross_violation(first, second, AllowedSet(range(t)))
    if bad is not None:
        raise AssertionError(f"star pair not {{0..{t - 1}}}-cross-intersecting at {bad}")
    return first, second


def powerset_pair(n: int, S: int) -> tuple[Family, Family]:
    """(P(S), P([n] minus S))."""
    check_universe(n)
    S = int(S)
    if S >> n:
        raise ValidationError(f"S={{{format_set(S)}}} outside [{n}]")
    return power_set(n, S), power_set(n, complement(S, n))


def frankl_furedi_disjoint_pairs(n: int, t: int) -> int:
    """d(F*(n, t)) by counting, without building the family.

    Two members of F(n, t) are never disjoint, so only three kinds of pairs
    contribute: small with small, small with big, and nothing else.
    """
    if not 1 <= t <= n:
        raise ValidationError(f"t={t} outside 1..{n}")
    # unordered disjoint pairs among [n]^(<= t-1)
    ordered_small = sum(comb(n, i) * comb(n - i, j) for i in range(t) for j in range(t) if i + j <= n)
    small_small = (ordered_small - 1) // 2
    small_big = 0
    if (n + t) % 2:
        h = (n + t + 1) // 2
        for i in range(t):
            small_big += comb(n, i) * sum(comb(n - i, j) for j in range(h, n - i + 1))
    else:
        h = (n + t) // 2
        for i in range(t):
            # small set containing element 1: big sets live on the other n-i points, 1 excluded
            with_one = comb(n - 1, i - 1) if i else 0
            small_big += with_one * sum(comb(n - i, j) for j in range(h, n - i + 1))
            # small set avoiding 1: element 1 is free for the big set
            without_one = comb(n - 1, i)
            small_big += without_one * 2 * sum(comb(n - 1 - i, j) for j in range(h, n - i))
    return small_small + small_big

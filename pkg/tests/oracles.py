"""Brute-force reference implementations, deliberately independent of avoidset.

Sets are frozensets of 1-based ints; everything is plain Python loops.
"""

from __future__ import annotations

from itertools import chain, combinations


def subsets(ground):
    ground = list(ground)
    return [frozenset(c) for c in chain.from_iterable(combinations(ground, k) for k in range(len(ground) + 1))]


def rsets(n, r):
    return [frozenset(c) for c in combinations(range(1, n + 1), r)]


def d_pair(A, B):
    return sum(1 for a in A for b in B if not a & b)


def d_single(F):
    F = list(F)
    return sum(1 for i in range(len(F)) for j in range(i + 1, len(F)) if not F[i] & F[j])


def cross_ok(A, B, allowed):
    return all(len(a & b) in allowed for a in A for b in B)


def all_families(universe):
    universe = list(universe)
    for bits in range(1 << len(universe)):
        yield [universe[i] for i in range(len(universe)) if bits >> i & 1]


def max_pair_all_pairs(universe, allowed, objective="disjoint"):
    """Max over every pair of families, no closure shortcut (tiny universes only)."""
    fams = list(all_families(universe))
    best = 0
    for A in fams:
        for B in fams:
            if cross_ok(A, B, allowed):
                v = d_pair(A, B) if objective == "disjoint" else len(A) * len(B)
                best = max(best, v)
    return best


def max_pair_seed_closure(universe, allowed, objective="disjoint"):
    universe = list(universe)
    best = 0
    for A in all_families(universe):
        B = [b for b in universe if all(len(a & b) in allowed for a in A)]
        v = d_pair(A, B) if objective == "disjoint" else len(A) * len(B)
        best = max(best, v)
    return best


def max_single(universe, allowed, distinct):
    best = 0
    for F in all_families(universe):
        ok = True
        for i, x in enumerate(F):
            for j, y in enumerate(F):
                if i == j and distinct:
                    continue
                if j < i:
                    continue
                if len(x & y) not in allowed:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            best = max(best, d_single(F))
    return best


def f_sum(n, t):
    from math import comb

    return sum(comb(n, k) * 2 ** (n - k) for k in range(t))


def upper_of_lower(A, n):
    pairs = {frozenset(p) for a in A for p in combinations(sorted(a), 2)}
    return {frozenset(tr) for tr in combinations(range(1, n + 1), 3) if any(frozenset(p) in pairs for p in combinations(tr, 2))}


def allowed_not(t, n):
    return set(range(n + 1)) - {t}



def _real_x(size):
    # C(x,3) = size on [3, size + 3], plain bisection
    lo, hi = 3.0, float(size + 3)
    for _ in range(200):
        mid = (lo + hi) / 2
        if mid * (mid - 1) * (mid - 2) / 6 < size:
            lo = mid
        else:
            hi = mid
    return lo


def first_shadow_failure(n):
    """First 3-uniform A in triple-bitmask order with |up(low(A))| below the x-formula."""
    triples = sorted(rsets(n, 3), key=lambda s: sum(1 << (e - 1) for e in s))
    for bits in range(1, 1 << len(triples)):
        A = [triples[i] for i in range(len(triples)) if bits >> i & 1]
        x = _real_x(len(A))
        if abs(round(x) - x) < 1e-9:
            x = float(round(x))
        rhs = x * (x - 1) * (x - 2) / 6 + x * (x - 1) / 2 * (n - x)
        if len(upper_of_lower(A, n)) < rhs - 1e-9:
            return A
    return None

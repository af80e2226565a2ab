"""The two reduction engines.

* The induction step for cross-avoiding pairs: split both families on the top
  element n, delete n from the right pieces, and audit the two derived
  t-avoiding pairs, the derived (t-1)-avoiding pair and the counting
  inequality linking their disjoint-pair counts to d(A, B).
* The delta-system reduction for r-uniform pairs: classify every t-set as
  A-good / B-good / neither, then strip the sets through "neither" t-sets to
  leave a {0..t-1}-cross-intersecting pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .dpcount import count_disjoint
from .setcore import (
    AllowedSet,
    AvoidOne,
    Family,
    PreconditionError,
    delete_top,
    first_cross_violation,
    same_universe,
    satisfies_cross,
    subfamily_containing,
)

PACKING_NODE_CAP = 10**6


@dataclass(frozen=True)
class DeltaSystem:
    core: int
    petals: tuple[int, ...]

    def verify(self) -> bool:
        c = self.core
        if any(p & c != c for p in self.petals):
            return False
        return all(p & q == c for p, q in combinations(self.petals, 2))


@dataclass
class PackingResult:
    chosen: list[int]
    exact: bool
    nodes: int


def pack_disjoint(remainders: list[int], s: int, node_cap: int = PACKING_NODE_CAP) -> PackingResult:
    """Pick ``s`` pairwise-disjoint masks from ``remainders`` if possible.

    Exact backtracking; an empty mask is disjoint from everything.  When the
    node budget runs out the answer comes from a greedy pass and is marked
    inexact (it can miss a packing, never invent one).
    """
    if s <= 0:
        return PackingResult([], True, 0)
    items = sorted(remainders, key=lambda m: (m.bit_count(), m))
    if len(items) < s:
        return PackingResult([], True, 0)
    nodes = 0
    chosen: list[int] = []

    def dfs(start: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise _BudgetExceeded
        if len(chosen) == s:
            return True
        for i in range(start, len(items)):
            if len(chosen) + len(items) - i < s:
                return False
            m = items[i]
            if m & used:
                continue
            chosen.append(m)
            if dfs(i + 1, used | m):
                return True
            chosen.pop()
        return False

    try:
        found = dfs(0, 0)
    except _BudgetExceeded:
        used = 0
        greedy = []
        for m in items:
            if not m & used:
                greedy.append(m)
                used |= m
                if len(greedy) == s:
                    break
        return PackingResult(greedy if len(greedy) == s else [], False, nodes)
    return PackingResult(list(chosen) if found else [], True, nodes)


class _BudgetExceeded(Exception):
    pass


def delta_system_search(F: Family, T: int, s: int, node_cap: int = PACKING_NODE_CAP) -> tuple[DeltaSystem | None, bool]:
    """(delta-system of size s with core exactly T or None, exactness flag)."""
    if s < 1:
        raise PreconditionError(f"delta-system size must be >= 1, got {s}")
    through = subfamily_containing(F, T)
    remainders = [m ^ T for m in through]
    packing = pack_disjoint(remainders, s, node_cap)
    if not packing.chosen:
        return None, packing.exact
    system = DeltaSystem(T, tuple(sorted(m | T for m in packing.chosen)))
    assert system.verify(), "packing produced a non-delta-system"
    return system, packing.exact


def find_delta_system(F: Family, T: int, s: int) -> DeltaSystem | None:
    return delta_system_search(F, T, s)[0]


# ---------------------------------------------------------------------------
# delta-system reduction for uniform pairs


@dataclass
class ReductionReport:
    t: int
    r: int
    good_for_A: tuple[int, ...]
    good_for_B: tuple[int, ...]
    bad_tsets: tuple[int, ...]
    inexact_searches: int = 0
    A0: Family | None = None
    B0: Family | None = None
    A_prime: Family | None = None
    B_prime: Family | None = None
    per_tset_bound: int | None = None
    max_A_T: int = 0
    max_B_T: int = 0
    bound_ok: bool | None = None
    cross_intersecting_ok: bool | None = None
    notes: list[str] = field(default_factory=list)


def tsets(n: int, t: int) -> list[int]:
    bits = [1 << i for i in range(n)]
    return sorted(sum(c) for c in combinations(bits, t))


def _require_uniform(F: Family, r: int, name: str) -> None:
    if not F.is_uniform(r):
        raise PreconditionError(f"{name} is not {r}-uniform")


def classify_good_tsets(A: Family, B: Family, t: int, r: int) -> ReductionReport:
    n = same_universe(A, B)
    if not 1 <= t <= r:
        raise PreconditionError(f"need 1 <= t <= r, got t={t}, r={r}")
    _require_uniform(A, r, "A")
    _require_uniform(B, r, "B")
    s = r - t + 1
    good_a, good_b, bad = [], [], []
    inexact = 0
    for T in tsets(n, t):
        sys_a, exact_a = delta_system_search(A, T, s)
        sys_b, exact_b = delta_system_search(B, T, s)
        inexact += (not exact_a) + (not exact_b)
        if sys_a is not None:
            good_a.append(T)
        if sys_b is not None:
            good_b.append(T)
        if sys_a is None and sys_b is None:
            bad.append(T)
    return ReductionReport(t, r, tuple(good_a), tuple(good_b), tuple(bad), inexact)


def reduction_tset_bound(n: int, r: int, t: int) -> int:
    """2^((r-t)^2) C(n, r-t-1): the cap on |A(T)| for a t-set T that is not A-good."""
    k = r - t - 1
    return (1 << (r - t) ** 2) * (comb(n, k) if k >= 0 else 0)


def reduce_to_cross_intersecting(A: Family, B: Family, t: int, r: int) -> ReductionReport:
    n = same_universe(A, B)
    if not satisfies_cross(A, B, AvoidOne(t)):
        raise PreconditionError(f"(A, B) is not {t}-cross-avoiding")
    report = classify_good_tsets(A, B, t, r)
    both = set(report.good_for_A) & set(report.good_for_B)
    if both:
        raise AssertionError(f"t-sets good for both sides in a cross-avoiding pair: {sorted(both)}")
    bad = np.array(report.bad_tsets, dtype=np.uint64)
    cap = reduction_tset_bound(n, r, t)
    max_a = max_b = 0
    drop_a = np.zeros(len(A), dtype=bool)
    drop_b = np.zeros(len(B), dtype=bool)
    for T in bad:
        in_a = (A.members & T) == T
        in_b = (B.members & T) == T
        max_a = max(max_a, int(in_a.sum()))
        max_b = max(max_b, int(in_b.sum()))
        drop_a |= in_a
        drop_b |= in_b
    report.A0, report.B0 = A.filter(drop_a), B.filter(drop_b)
    report.A_prime, report.B_prime = A.filter(~drop_a), B.filter(~drop_b)
    report.per_tset_bound = cap
    report.max_A_T, report.max_B_T = max_a, max_b
    report.bound_ok = max_a <= cap and max_b <= cap
    violation = first_cross_violation(report.A_prime, report.B_prime, AllowedSet(range(t)))
    report.cross_intersecting_ok = violation is None
    if violation is not None:
        raise AssertionError(f"reduced pair still meets in >= t points at {violation}")
    if report.inexact_searches:
        report.notes.append(f"{report.inexact_searches} delta-system searches fell back to greedy")
    return report


# ---------------------------------------------------------------------------
# induction step for non-uniform cross-avoiding pairs


@dataclass
class PartitionReport:
    n: int
    t: int
    A_n: Family
    A_0: Family
    A_star: Family
    A_tplus1: Family
    X_rest: Family
    B_n: Family
    B_0: Family
    B_star: Family
    B_tplus1: Family
    Y_rest: Family


def _split(F: Family, other_top: Family, t: int) -> tuple[Family, Family, Family, Family, Family]:
    n = F.n
    top = np.uint64(1 << (n - 1))
    has_top = (F.members & top) != 0
    F_n, F_0 = F.filter(has_top), F.filter(~has_top)
    star = F_n.filter(np.isin(F_n.members ^ top, F.members))
    if len(F_n) and len(other_top):
        sizes = np.bitwise_count(F_n.members[:, None] & other_top.members[None, :])
        witness = (sizes == t + 1).any(axis=1)
    else:
        witness = np.zeros(len(F_n), dtype=bool)
    tplus1 = F_n.filter(witness)
    rest = F_n.filter(~witness & ~np.isin(F_n.members, star.members))
    return F_n, F_0, star, tplus1, rest


def partition_for_induction(A: Family, B: Family, t: int) -> PartitionReport:
    n = same_universe(A, B)
    if n < 1:
        raise PreconditionError("the induction step needs n >= 1")
    if not satisfies_cross(A, B, AvoidOne(t)):
        raise PreconditionError(f"(A, B) is not {t}-cross-avoiding")
    top = np.uint64(1 << (n - 1))
    A_top = A.filter((A.members & top) != 0)
    B_top = B.filter((B.members & top) != 0)
    A_n, A_0, A_star, A_t1, X = _split(A, B_top, t)
    B_n, B_0, B_star, B_t1, Y = _split(B, A_top, t)
    for label, star, t1, whole, rest in (("A", A_star, A_t1, A_n, X), ("B", B_star, B_t1, B_n, Y)):
        if len(star.intersection(t1)):
            raise AssertionError(f"{label}*_n and {label}_n^(t+1) overlap")
        if len(star) + len(t1) + len(rest) != len(whole) or star.union(t1).union(rest) != whole:
            raise AssertionError(f"{label}_n is not partitioned by its three subfamilies")
    return PartitionReport(n, t, A_n, A_0, A_star, A_t1, X, B_n, B_0, B_star, B_t1, Y)


@dataclass
class InductionAudit:
    lhs: int
    rhs: int
    F1: Family
    F2: Family
    F3: Family
    F4: Family
    first_pair_ok: bool
    second_pair_ok: bool
    lowered_pair_ok: bool
    inequality_ok: bool
    partition: PartitionReport

    @property
    def claims_ok(self) -> bool:
        return self.first_pair_ok and self.second_pair_ok and self.lowered_pair_ok


def lemma_2_3_audit(A: Family, B: Family, t: int) -> InductionAudit:
    if t < 1:
        raise PreconditionError("the audit needs t >= 1")
    part = partition_for_induction(A, B, t)
    A_0 = delete_top(part.A_0)
    B_0 = delete_top(part.B_0)
    F1 = A_0.union(delete_top(part.X_rest.union(part.A_tplus1)))
    F2 = B_0.union(delete_top(part.Y_rest))
    F3 = A_0.union(delete_top(part.X_rest))
    F4 = B_0.union(delete_top(part.Y_rest.union(part.B_tplus1)))
    DA, DB = delete_top(part.A_star), delete_top(part.B_star)
    lhs = count_disjoint(F1, F2) + count_disjoint(F3, F4)
    rhs = count_disjoint(A, B) - count_disjoint(DA, DB)
    return InductionAudit(
        lhs=lhs,
        rhs=rhs,
        F1=F1,
        F2=F2,
        F3=F3,
        F4=F4,
        first_pair_ok=satisfies_cross(F1, F2, AvoidOne(t)),
        second_pair_ok=satisfies_cross(F3, F4, AvoidOne(t)),
        lowered_pair_ok=satisfies_cross(DA, DB, AvoidOne(t - 1)),
        inequality_ok=lhs >= rhs,
        partition=part,
    )

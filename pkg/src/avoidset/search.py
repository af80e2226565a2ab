"""Exact extremal searches.

Every pair search rests on one observation: enlarging B never lowers either
objective, so some optimal pair has B = closure(A), the largest family
compatible with all of A.  Scanning seeds A with their closures is therefore
exhaustive.  Two engines do the scanning over a fixed universe of candidate
sets (all of P[n], or [n]^(r)):

* :func:`scan_seeds` evaluates every seed at once with numpy (2**m seeds for
  a universe of m sets) and is used for P[n], n <= 4, and as an oracle;
* :func:`branch_and_bound` walks seeds depth-first in canonical order and
  prunes a subtree when (|A| + |undecided|) * |closure(A)|, or the
  disjoint-pair count of (A plus undecided, closure(A)), drops below the
  incumbent.
"""

from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .bounds import l_cross_bound, f_bound, single_family_bound
from .constructions import (
    frankl_furedi_family,
    level_family,
    star_family_size,
    star_pair_disjoint_pairs,
)
from .dpcount import count_disjoint, count_disjoint_unordered
from .setcore import (
    AllowedSet,
    AvoidOne,
    CapacityError,
    Convention,
    Family,
    IntersectionConstraint,
    PreconditionError,
    ValidationError,
    allowed_table,
    check_universe,
    power_set,
    satisfies_cross,
    satisfies_single,
    uniform_family,
)

NONUNIFORM_MAX_N = 4
UNIFORM_EXHAUSTIVE_MAX = 24
WITNESS_LIMIT = 64
SYMMETRY_EXACT_MAX_N = 8
SYMMETRY_DEPTH = 3


class Objective(str, enum.Enum):
    DISJOINT_PAIRS = "disjoint"
    PRODUCT = "product"


@dataclass
class SearchOutcome:
    objective: Objective
    value: int
    witnesses: list[tuple[Family, Family]]
    witness_count: int
    nodes_explored: int
    exhaustive: bool
    symmetry_reduced: bool = False
    constraint: IntersectionConstraint | None = None
    extra: dict = field(default_factory=dict)

    @property
    def witness_A(self) -> Family | None:
        return self.witnesses[0][0] if self.witnesses else None

    @property
    def witness_B(self) -> Family | None:
        return self.witnesses[0][1] if self.witnesses else None


def objective_value(objective: Objective | str, A: Family, B: Family) -> int:
    if Objective(objective) is Objective.PRODUCT:
        return len(A) * len(B)
    return count_disjoint(A, B)


def revalidate(outcome: SearchOutcome) -> bool:
    """Each witness satisfies the run's constraint and reproduces the value."""
    for A, B in outcome.witnesses:
        if outcome.constraint is not None and not satisfies_cross(A, B, outcome.constraint):
            return False
        if objective_value(outcome.objective, A, B) != outcome.value:
            return False
    return True


# ---------------------------------------------------------------------------
# closure


def closure(A: Family, c: IntersectionConstraint, r: int | None = None) -> Family:
    """Largest B inside P[n] (or [n]^(r) when ``r`` is given) with (A, B) satisfying c."""
    n = A.n
    candidates = power_set(n) if r is None else uniform_family(n, r)
    if len(A) == 0:
        return candidates
    table = allowed_table(c, n)
    keep = np.ones(len(candidates), dtype=bool)
    step = max(1, (1 << 22) // max(len(candidates), 1))
    for lo in range(0, len(A), step):
        block = np.bitwise_count(A.members[lo : lo + step, None] & candidates.members[None, :])
        keep &= table[block].all(axis=0)
    return candidates.filter(keep)


# ---------------------------------------------------------------------------
# index-level universe


@dataclass
class PairSpace:
    """A universe of m candidate sets with per-set compatibility bitmasks.

    Bit j of ``compat[i]`` says sets i and j may appear on opposite sides;
    bit j of ``disjoint[i]`` says they are disjoint.
    """

    n: int
    masks: list[int]
    compat: list[int]
    disjoint: list[int]

    @property
    def m(self) -> int:
        return len(self.masks)

    @classmethod
    def build(cls, n: int, universe: Family, c: IntersectionConstraint) -> PairSpace:
        arr = universe.members
        sizes = np.bitwise_count(arr[:, None] & arr[None, :])
        ok = allowed_table(c, n)[sizes]
        weights = [1 << j for j in range(arr.size)]
        compat = [sum(w for w, bit in zip(weights, row) if bit) for row in ok.tolist()]
        disjoint = [sum(w for w, bit in zip(weights, row) if bit) for row in (sizes == 0).tolist()]
        return cls(n, universe.masks(), compat, disjoint)

    def family(self, index_mask: int) -> Family:
        return Family.from_masks(self.n, [self.masks[i] for i in _bits(index_mask)])

    def closure_of(self, index_mask: int) -> int:
        clo = (1 << self.m) - 1
        for i in _bits(index_mask):
            clo &= self.compat[i]
        return clo

    def value(self, objective: Objective, a: int, b: int) -> int:
        if objective is Objective.PRODUCT:
            return a.bit_count() * b.bit_count()
        return sum((self.disjoint[i] & b).bit_count() for i in _bits(a))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _witness_key(pair: tuple[int, int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return tuple(_bits(pair[0])), tuple(_bits(pair[1]))


class _Optima:
    """Optimal value with all witnesses (<= limit) or the lexicographically least."""

    def __init__(self) -> None:
        self.value: int | None = None
        self.count = 0
        self.witnesses: set[tuple[int, int]] = set()

    def offer(self, value: int, pair: tuple[int, int]) -> None:
        if self.value is None or value > self.value:
            self.value, self.count, self.witnesses = value, 0, set()
        if value == self.value:
            self.count += 1
            self.witnesses.add(pair)
            if self.count > WITNESS_LIMIT:
                self.witnesses = {min(self.witnesses, key=_witness_key)}

    def merge(self, other: _Optima) -> None:
        if other.value is None:
            return
        if self.value is None or other.value > self.value:
            self.value, self.count, self.witnesses = other.value, other.count, set(other.witnesses)
        elif other.value == self.value:
            self.count += other.count
            self.witnesses |= other.witnesses
            if self.count > WITNESS_LIMIT:
                self.witnesses = {min(self.witnesses, key=_witness_key)}

    def sorted_witnesses(self) -> list[tuple[int, int]]:
        return sorted(self.witnesses, key=_witness_key)


# ---------------------------------------------------------------------------
# vectorised full scan


def _seed_bits(m: int) -> tuple[np.dtype, np.ndarray]:
    dtype = np.dtype(np.uint32 if m <= 32 else np.uint64)
    return dtype, np.arange(1 << m, dtype=dtype)


def scan_seeds(space: PairSpace, objective: Objective) -> tuple[int, list[tuple[int, int]], int]:
    """Evaluate (A, closure(A)) for all 2**m seeds: (best, optimal pairs, #optima)."""
    m = space.m
    if m > UNIFORM_EXHAUSTIVE_MAX:
        raise CapacityError(f"full scan over 2**{m} seeds refused (cap 2**{UNIFORM_EXHAUSTIVE_MAX})")
    dtype, seeds = _seed_bits(m)
    size = 1 << m
    clo = np.empty(size, dtype=dtype)
    clo[0] = (1 << m) - 1
    for i in range(m):
        clo[1 << i : 2 << i] = clo[: 1 << i] & dtype.type(space.compat[i])
    if objective is Objective.PRODUCT:
        obj = np.bitwise_count(seeds).astype(np.int64) * np.bitwise_count(clo).astype(np.int64)
    else:
        obj = np.zeros(size, dtype=np.int64)
        for i in range(m):
            half = obj.reshape(-1, 2, 1 << i)[:, 1, :]
            half += np.bitwise_count(clo.reshape(-1, 2, 1 << i)[:, 1, :] & dtype.type(space.disjoint[i]))
    best = int(obj.max())
    hits = np.flatnonzero(obj == best)
    pairs = [(int(s), int(clo[s])) for s in hits[: WITNESS_LIMIT + 1]]
    if hits.size > WITNESS_LIMIT:
        pairs = [min(pairs, key=_witness_key)]
    return best, pairs, int(hits.size)


def scan_single(space: PairSpace, constraint: IntersectionConstraint, convention: Convention) -> tuple[int, list[int], int]:
    """Max d(F) over families F inside the universe satisfying the constraint.

    (best, optimal index masks, #optima).  ``space.compat`` must have been
    built for ``constraint``.
    """
    m = space.m
    dtype, seeds = _seed_bits(m)
    size = 1 << m
    feasible = np.empty(size, dtype=bool)
    feasible[0] = True
    for i in range(m):
        self_ok = convention is Convention.DISTINCT or bool(space.compat[i] >> i & 1)
        lower_conflict = dtype.type(~space.compat[i] & ((1 << i) - 1))
        feasible[1 << i : 2 << i] = feasible[: 1 << i] & ((seeds[: 1 << i] & lower_conflict) == 0) & self_ok
    ordered = np.zeros(size, dtype=np.int64)
    for i in range(m):
        half = ordered.reshape(-1, 2, 1 << i)[:, 1, :]
        half += np.bitwise_count(seeds.reshape(-1, 2, 1 << i)[:, 1, :] & dtype.type(space.disjoint[i]))
    if 0 in space.masks:
        empty_bit = dtype.type(1 << space.masks.index(0))
        ordered -= ((seeds & empty_bit) != 0).astype(np.int64)
    d = np.where(feasible, ordered // 2, -1)
    best = int(d.max())
    hits = np.flatnonzero(d == best)
    found = [int(s) for s in hits[: WITNESS_LIMIT + 1]]
    if hits.size > WITNESS_LIMIT:
        found = [min(found, key=lambda s: tuple(_bits(s)))]
    return best, found, int(hits.size)


# ---------------------------------------------------------------------------
# branch and bound


@dataclass
class _UnitResult:
    optima: _Optima
    nodes: int
    truncated: bool


class _Budget(Exception):
    pass


class _Canonizer:
    """Orderly-generation test: is a sorted index tuple lex-minimal in its orbit?

    Lex-minimal families stay lex-minimal when their largest member is
    removed, so pruning a non-minimal partial seed never loses a minimal one.
    With n <= 8 the full symmetric group is scanned; above that only
    transpositions are used, which prunes less but stays sound.
    """

    def __init__(self, space: PairSpace) -> None:
        n = space.n
        index = {mask: i for i, mask in enumerate(space.masks)}
        if n <= SYMMETRY_EXACT_MAX_N:
            perms = list(itertools.permutations(range(n)))
        else:
            perms = []
            for i, j in itertools.combinations(range(n), 2):
                p = list(range(n))
                p[i], p[j] = j, i
                perms.append(tuple(p))
        self.exact = n <= SYMMETRY_EXACT_MAX_N
        table = np.empty((len(perms), space.m), dtype=np.int32)
        for k, p in enumerate(perms):
            for i, mask in enumerate(space.masks):
                img = 0
                for e in range(n):
                    if mask >> e & 1:
                        img |= 1 << p[e]
                table[k, i] = index[img]
        self.table = table

    def is_canonical(self, members: list[int]) -> bool:
        ref = np.array(members, dtype=np.int32)
        images = np.sort(self.table[:, ref], axis=1)
        diff = images != ref
        differs = diff.any(axis=1)
        first = diff.argmax(axis=1)
        rows = np.arange(images.shape[0])
        return not bool((differs & (images[rows, first] < ref[first])).any())


def _run_unit(
    space: PairSpace,
    objective: Objective,
    prefix: tuple[int, ...],
    incumbent: int,
    budget: int | None,
    canonizer: _Canonizer | None,
    subtree: bool,
) -> _UnitResult:
    """Explore the seed ``prefix`` (and, if ``subtree``, all its extensions)."""
    m = space.m
    compat, disjoint = space.compat, space.disjoint
    product = objective is Objective.PRODUCT
    optima = _Optima()
    best = incumbent
    nodes = 0
    full = (1 << m) - 1

    def d_bound(members: int, clo: int) -> int:
        return sum((disjoint[i] & clo).bit_count() for i in _bits(members))

    def visit(a: int, clo: int, k: int, start: int, chosen: list[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _Budget
        value = k * clo.bit_count() if product else d_bound(a, clo)
        if value >= best:
            best = value
            optima.offer(value, (a, clo))
        if not subtree:
            return
        for j in range(start, m):
            child_clo = clo & compat[j]
            rest = m - j - 1
            if product:
                ub = (k + 1 + rest) * child_clo.bit_count()
            else:
                undecided = full >> (j + 1) << (j + 1)
                ub = d_bound(a | (1 << j) | undecided, child_clo)
            if ub < best:
                continue
            chosen.append(j)
            if canonizer is None or len(chosen) > SYMMETRY_DEPTH or canonizer.is_canonical(chosen):
                visit(a | (1 << j), child_clo, k + 1, j + 1, chosen)
            chosen.pop()

    a = 0
    clo = full
    for j in prefix:
        a |= 1 << j
        clo &= compat[j]
    if canonizer is not None and prefix and not canonizer.is_canonical(list(prefix)):
        return _UnitResult(optima, 0, False)
    try:
        visit(a, clo, len(prefix), (prefix[-1] + 1) if prefix else 0, list(prefix))
    except _Budget:
        return _UnitResult(optima, nodes, True)
    return _UnitResult(optima, nodes, False)


def _units(m: int) -> list[tuple[tuple[int, ...], bool]]:
    """Fixed-prefix work units: each seed of size <= 1 alone, then every depth-2 subtree."""
    units: list[tuple[tuple[int, ...], bool]] = [((), False)]
    units += [((j,), False) for j in range(m)]
    units += [((i, j), True) for i in range(m) for j in range(i + 1, m)]
    return units


def _unit_worker(args) -> _UnitResult:
    return _run_unit(*args)


def branch_and_bound(
    space: PairSpace,
    objective: Objective,
    incumbent: int = 0,
    budget: int | None = None,
    symmetry: bool = False,
    jobs: int = 1,
) -> tuple[_Optima, int, bool]:
    """Exact seed search: (optima, nodes explored, completed)."""
    canonizer = _Canonizer(space) if symmetry else None
    units = _units(space.m)
    args = [(space, objective, prefix, incumbent, None, canonizer, sub) for prefix, sub in units]
    optima = _Optima()
    nodes = 0
    if budget is not None:
        # a shared node budget only stays deterministic when units run in order
        remaining = budget
        for a in args:
            res = _run_unit(*a[:4], remaining, *a[5:])
            optima.merge(res.optima)
            nodes += res.nodes
            remaining -= res.nodes
            if res.truncated or remaining <= 0:
                return optima, nodes, False
        return optima, nodes, True
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_unit_worker, args, chunksize=max(1, len(args) // (4 * jobs))))
    else:
        results = [_run_unit(*a) for a in args]
    for res in results:
        optima.merge(res.optima)
        nodes += res.nodes
    return optima, nodes, True


def _outcome_from(
    space: PairSpace,
    objective: Objective,
    optima: _Optima,
    nodes: int,
    exhaustive: bool,
    constraint: IntersectionConstraint,
    symmetry: bool = False,
) -> SearchOutcome:
    pairs = [(space.family(a), space.family(b)) for a, b in optima.sorted_witnesses()]
    return SearchOutcome(
        objective=objective,
        value=optima.value if optima.value is not None else 0,
        witnesses=pairs,
        witness_count=optima.count,
        nodes_explored=nodes,
        exhaustive=exhaustive,
        symmetry_reduced=symmetry,
        constraint=constraint,
    )


# ---------------------------------------------------------------------------
# non-uniform searches


def _nonuniform_cap(n: int, budget: int | None) -> None:
    check_universe(n)
    if n > NONUNIFORM_MAX_N and budget is None:
        raise CapacityError(
            f"exhaustive search over subfamilies of P[{n}] needs 2**{1 << n} seeds; "
            f"n <= {NONUNIFORM_MAX_N} only (pass a node budget for a non-exhaustive run)"
        )


def max_pair_nonuniform(
    n: int,
    t: int | None = None,
    objective: Objective | str = Objective.DISJOINT_PAIRS,
    constraint: IntersectionConstraint | None = None,
    budget: int | None = None,
) -> SearchOutcome:
    """Max objective over cross-constrained pairs in P[n] x P[n] (default: t-cross-avoiding)."""
    objective = Objective(objective)
    _nonuniform_cap(n, budget)
    if constraint is None:
        if t is None or not 1 <= t <= n:
            raise ValidationError(f"need 1 <= t <= n, got n={n}, t={t}")
        constraint = AvoidOne(t)
    constraint.validate(n)
    space = PairSpace.build(n, power_set(n), constraint)
    if n <= NONUNIFORM_MAX_N:
        best, pairs, count = scan_seeds(space, objective)
        optima = _Optima()
        optima.value, optima.count, optima.witnesses = best, count, set(pairs)
        outcome = _outcome_from(space, objective, optima, 1 << space.m, True, constraint)
    else:
        optima, nodes, done = branch_and_bound(space, objective, budget=budget)
        outcome = _outcome_from(space, objective, optima, nodes, done, constraint)
    if t is not None and isinstance(constraint, AvoidOne):
        outcome.extra["bound"] = f_bound(n, t)
        outcome.extra["attains_bound"] = outcome.value == f_bound(n, t)
    outcome.extra["dead_members"] = _dead_member_counts(space, optima, objective)
    return outcome


def _dead_member_counts(space: PairSpace, optima: _Optima, objective: Objective) -> int:
    """Members of closure(A) with no disjoint partner in A, summed over witnesses.

    Zero means every optimal pair really is a seed with its full closure, so
    the witness list is the complete set of optimal pairs.
    """
    if objective is not Objective.DISJOINT_PAIRS:
        return 0
    dead = 0
    for a, b in optima.witnesses:
        reach = 0
        for i in _bits(a):
            reach |= space.disjoint[i]
        dead += (b & ~reach).bit_count()
    return dead


def max_single_nonuniform(
    n: int,
    t: int | None = None,
    convention: Convention | str = Convention.ALL,
    constraint: IntersectionConstraint | None = None,
) -> SearchOutcome:
    """Max d(F) over single families F in P[n] satisfying the constraint."""
    convention = Convention(convention)
    _nonuniform_cap(n, None)
    if constraint is None:
        if t is None or not 1 <= t <= n:
            raise ValidationError(f"need 1 <= t <= n, got n={n}, t={t}")
        constraint = AvoidOne(t)
    constraint.validate(n)
    space = PairSpace.build(n, power_set(n), constraint)
    best, found, count = scan_single(space, constraint, convention)
    fams = [space.family(s) for s in found]
    outcome = SearchOutcome(
        objective=Objective.DISJOINT_PAIRS,
        value=best,
        witnesses=[(F, F) for F in fams],
        witness_count=count,
        nodes_explored=1 << space.m,
        exhaustive=True,
        constraint=None,
    )
    outcome.extra["convention"] = convention.value
    for F in fams:
        assert satisfies_single(F, constraint, convention)
        assert count_disjoint_unordered(F) == best
    if t is not None and isinstance(constraint, AvoidOne):
        bound = single_family_bound(n, t)
        ff = count_disjoint_unordered(frankl_furedi_family(n, t))
        outcome.extra.update(
            bound=bound,
            bound_floor=math.floor(bound),
            within_bound=best <= bound,
            frankl_furedi_value=ff,
            at_most_frankl_furedi=best <= ff,
        )
    return outcome


@dataclass
class LIntersectingResult:
    max_found: int
    bound: int
    ok: bool
    witness: Family | None


def verify_thm_1_1(n: int, L) -> LIntersectingResult:
    """Max d(F) over L-intersecting F (distinct pairs) against d([n]^(<= |L|))."""
    L = AllowedSet(L)
    outcome = max_single_nonuniform(n, convention=Convention.DISTINCT, constraint=L)
    s = len(L.sizes)
    bound = count_disjoint_unordered(level_family(n, min(s, n)))
    return LIntersectingResult(outcome.value, bound, outcome.value <= bound, outcome.witness_A)


@dataclass
class LCrossResult:
    max_found: int
    bound: int
    equality: bool
    predicted_equality: bool
    ok: bool
    witness: tuple[Family, Family] | None


def verify_cor_1_8(n: int, L) -> LCrossResult:
    """Max d(A, B) over L-cross-intersecting pairs; equality iff L = {0..s-1}."""
    L = AllowedSet(L)
    if n > 3:
        raise CapacityError("the L-cross-intersecting scan is exhaustive only for n <= 3")
    outcome = max_pair_nonuniform(n, constraint=L)
    s = len(L.sizes)
    bound = l_cross_bound(n, s)
    equality = outcome.value == bound
    predicted = L.sizes == frozenset(range(s))
    ok = outcome.value <= bound and equality == predicted
    witness = outcome.witnesses[0] if outcome.witnesses else None
    return LCrossResult(outcome.value, bound, equality, predicted, ok, witness)


# ---------------------------------------------------------------------------
# uniform searches


def uniform_constraint(t: int, constraint: str) -> IntersectionConstraint:
    if constraint == "avoid_t":
        return AvoidOne(t)
    if constraint == "allowed_0_to_tminus1":
        return AllowedSet(range(t))
    raise ValidationError(f"unknown constraint {constraint!r} (avoid_t or allowed_0_to_tminus1)")


def best_star_pair(n: int, r: int, t: int, objective: Objective) -> int:
    """Best objective among the (F_{X,a}, F_{X^c,b}) constructions, a + b <= t-1."""
    best = 0
    for x in range(0, n + 1):
        for a in range(t):
            for b in range(t - a):
                if objective is Objective.PRODUCT:
                    v = star_family_size(n, r, x, a) * star_family_size(n, r, n - x, b)
                else:
                    v = star_pair_disjoint_pairs(n, r, x, a, b)
                best = max(best, v)
    return best


def max_pair_uniform(
    n: int,
    r: int,
    t: int,
    objective: Objective | str = Objective.PRODUCT,
    constraint: str = "avoid_t",
    symmetry: bool = False,
    budget: int | None = None,
    jobs: int = 1,
) -> SearchOutcome:
    """d(n,r,t), p(n,r,t) or p*(n,r,t) by seed + closure branch and bound."""
    objective = Objective(objective)
    check_universe(n)
    if not 1 <= t <= r <= n:
        raise ValidationError(f"need 1 <= t <= r <= n, got n={n}, r={r}, t={t}")
    c = uniform_constraint(t, constraint)
    m = comb(n, r)
    if m > UNIFORM_EXHAUSTIVE_MAX and budget is None:
        raise CapacityError(
            f"C({n},{r}) = {m} r-sets exceeds the exhaustive cap {UNIFORM_EXHAUSTIVE_MAX}; "
            "pass a node budget for a non-exhaustive run"
        )
    space = PairSpace.build(n, uniform_family(n, r), c)
    # the star constructions satisfy both constraint kinds, so they seed the incumbent
    incumbent = best_star_pair(n, r, t, objective)
    optima, nodes, done = branch_and_bound(space, objective, incumbent, budget, symmetry, jobs)
    outcome = _outcome_from(space, objective, optima, nodes, done, c, symmetry)
    outcome.extra["construction_value"] = incumbent
    return outcome


# ---------------------------------------------------------------------------
# exchange step


def _good_points(F: Family, r: int, t: int) -> int:
    from .reduction import find_delta_system

    good = 0
    for x in range(F.n):
        if find_delta_system(F, 1 << x, r - t + 1) is not None:
            good |= 1 << x
    return good


def exchange_improve(
    A: Family,
    B: Family,
    t: int,
    r: int,
    objective: Objective | str = Objective.PRODUCT,
    max_rounds: int = 10_000,
) -> tuple[Family, Family]:
    """Move a point x to the other side while that strictly improves the objective.

    The move for x across A -> B drops A(x) and adds to B every set {x} u S
    with S an (r-1)-subset of the B-good points that keeps the pair
    cross-avoiding; the B -> A move is symmetric.
    """
    from .setcore import subfamily_containing

    objective = Objective(objective)
    c = AvoidOne(t)
    if not (A.is_uniform(r) and B.is_uniform(r)) or not satisfies_cross(A, B, c):
        raise PreconditionError(f"need an r-uniform {t}-cross-avoiding pair")
    n = A.n

    def move(src: Family, dst: Family, x: int) -> tuple[Family, Family] | None:
        if len(subfamily_containing(src, 1 << x)) == 0:
            return None
        kept = src.difference(subfamily_containing(src, 1 << x))
        pool = _good_points(dst, r, t) & ~(1 << x)
        from .setcore import elements_of

        points = [1 << (e - 1) for e in elements_of(pool)]
        extra = [sum(s) | (1 << x) for s in itertools.combinations(points, r - 1)]
        if not extra:
            return None
        fresh = Family.from_masks(n, extra).difference(dst)
        fresh = fresh.intersection(closure(kept, c, r)) if len(fresh) else fresh
        return kept, dst.union(fresh)

    current = objective_value(objective, A, B)
    for _ in range(max_rounds):
        improved = False
        for x in range(n):
            for flip in (False, True):
                src, dst = (B, A) if flip else (A, B)
                step = move(src, dst, x)
                if step is None:
                    continue
                new_src, new_dst = step
                cand = (new_dst, new_src) if flip else (new_src, new_dst)
                value = objective_value(objective, *cand)
                if value > current:
                    A, B = cand
                    current = value
                    improved = True
                    break
            if improved:
                break
        if not improved:
            break
    assert satisfies_cross(A, B, c)
    return A, B


# ---------------------------------------------------------------------------
# desk-scale checks of the uniform theory


@dataclass
class SandwichResult:
    d: int
    p: int
    overlap_cap: int
    coarse_overlap_count: int
    ok: bool
    coarse_count_ok: bool


def sandwich_check(A: Family, B: Family, r: int, t: int) -> SandwichResult:
    """d <= p and p - d <= |A| times the number of r-sets meeting a fixed r-set."""
    n = A.n
    d = count_disjoint(A, B)
    p = len(A) * len(B)
    meeting = comb(n, r) - comb(n - r, r)
    coarse = (1 << t) * comb(n - r, r - 1)
    return SandwichResult(
        d=d,
        p=p,
        overlap_cap=meeting,
        coarse_overlap_count=coarse,
        ok=d <= p and p - d <= len(A) * meeting,
        coarse_count_ok=p - d <= len(A) * coarse,
    )


@dataclass
class StarEntry:
    x: int
    a: int
    b: int
    product: int
    disjoint_pairs: int


@dataclass
class StarSweepReport:
    n: int
    r: int
    t: int
    entries: list[StarEntry]
    best_product: StarEntry
    best_disjoint: StarEntry
    alpha_location: float
    exact_product: SearchOutcome | None = None
    exact_disjoint: SearchOutcome | None = None

    @property
    def product_gap(self) -> int | None:
        return None if self.exact_product is None else self.exact_product.value - self.best_product.product

    @property
    def disjoint_gap(self) -> int | None:
        return None if self.exact_disjoint is None else self.exact_disjoint.value - self.best_disjoint.disjoint_pairs


def explore_conjecture_4_2(n: int, r: int, t: int, exact: bool | None = None, jobs: int = 1) -> StarSweepReport:
    """Sweep |X| in 1..n-1 and a + b <= t - 1 over the star pairs.

    ``alpha_location`` is |X|/n at the best product, read in the orientation
    a <= b so that X carries the sparser family.
    """
    if not 1 <= t <= r <= n:
        raise ValidationError(f"need 1 <= t <= r <= n, got n={n}, r={r}, t={t}")
    entries = []
    for x in range(1, n):
        for a in range(t):
            for b in range(t - a):
                prod = star_family_size(n, r, x, a) * star_family_size(n, r, n - x, b)
                entries.append(StarEntry(x, a, b, prod, star_pair_disjoint_pairs(n, r, x, a, b)))
    best_p = max(entries, key=lambda e: (e.product, -e.a, e.b, -e.x))
    best_d = max(entries, key=lambda e: (e.disjoint_pairs, -e.a, e.b, -e.x))
    oriented = [e for e in entries if e.a <= e.b and e.product == best_p.product]
    location = min(oriented, key=lambda e: e.x).x / n if oriented else best_p.x / n
    report = StarSweepReport(n, r, t, entries, best_p, best_d, location)
    if exact is None:
        exact = comb(n, r) <= UNIFORM_EXHAUSTIVE_MAX
    if exact:
        report.exact_product = max_pair_uniform(n, r, t, Objective.PRODUCT, jobs=jobs)
        report.exact_disjoint = max_pair_uniform(n, r, t, Objective.DISJOINT_PAIRS, jobs=jobs)
    return report


def f_star_ratio(n: int, t: int, d_value: int) -> Fraction:
    """d(F*(n,t)) / (f(n,t)/2) as an exact fraction."""
    return Fraction(2 * d_value, f_bound(n, t))

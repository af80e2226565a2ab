"""Acceptance criteria 1-15 as a registry, run by ``avoidset verify-all``.

Each check returns ``(passed, details)``.  Details hold only data that is a
function of the inputs, so a suite report is byte-stable; timings live on
:class:`CriterionResult` and are serialized only on request.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, combinations
from typing import Callable

import numpy as np

from . import bounds, constructions, dpcount, reduction, search, shadows
from .setcore import Convention, power_set

LEVELS = ("desk", "quick")
SEED = 20240611


@dataclass
class Criterion:
    id: int
    title: str
    check: Callable[[str, int], tuple[bool, dict]]


@dataclass
class CriterionResult:
    id: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0


REGISTRY: list[Criterion] = []


def criterion(cid: int, title: str):
    def register(fn):
        REGISTRY.append(Criterion(cid, title, fn))
        return fn

    return register


def _trials(level: str, desk: int, quick: int) -> int:
    return desk if level == "desk" else quick


@criterion(1, "f(n,t) recurrence for 2 <= n <= 64")
def _c1(level: str, jobs: int):
    return bounds.f_recurrence_check(64), {"nmax": 64}


@criterion(2, "transform count equals direct count on random pairs, n = 4..14")
def _c2(level: str, jobs: int):
    rng = np.random.default_rng(SEED + 2)
    trials = _trials(level, 1000, 100)
    mismatches = []
    for n in range(4, 15):
        for _ in range(trials):
            A = _random_family(rng, n)
            B = _random_family(rng, n)
            if dpcount.count_disjoint_fast(A, B) != dpcount.count_disjoint_ordered(A, B):
                mismatches.append([n, len(A), len(B)])
    return not mismatches, {"pairs_per_n": trials, "mismatches": mismatches[:10]}


def _random_family(rng, n):
    from .sampling import random_family

    return random_family(rng, n)


def _as_frozen(pairs) -> set:
    return {(tuple(a.masks()), tuple(b.masks())) for a, b in pairs}


@criterion(3, "cross-avoiding maximum and equality cases at n = 3")
def _c3(level: str, jobs: int):
    n = 3
    details, ok = {}, True
    for t in (1, 2, 3):
        out = search.max_pair_nonuniform(n, t)
        if t == 1:
            expected = [constructions.powerset_pair(n, S) for S in range(1 << n)]
        else:
            low, full = constructions.level_family(n, t - 1), power_set(n)
            expected = [(low, full), (full, low)]
        complete = out.witness_count == len(out.witnesses) and out.extra["dead_members"] == 0
        match = _as_frozen(out.witnesses) == _as_frozen(expected)
        good = out.value == bounds.f_bound(n, t) and match and complete and search.revalidate(out)
        ok &= good
        details[f"t={t}"] = {
            "value": out.value,
            "bound": bounds.f_bound(n, t),
            "seeds": out.nodes_explored,
            "witnesses": out.witness_count,
            "classification_matches": match,
            "witness_list_complete": complete,
        }
    return ok, details


@criterion(4, "no cross-avoiding pair beats f(4,t) at n = 4")
def _c4(level: str, jobs: int):
    details, ok = {}, True
    for t in (1, 2, 3, 4):
        out = search.max_pair_nonuniform(4, t)
        good = out.value <= bounds.f_bound(4, t) and search.revalidate(out)
        ok &= good
        details[f"t={t}"] = {"value": out.value, "bound": bounds.f_bound(4, t), "seeds": out.nodes_explored}
    return ok, details


@criterion(5, "single-family bound for n <= 4 under both conventions")
def _c5(level: str, jobs: int):
    ok = True
    table, artifacts = {}, []
    for n in range(1, 5):
        for t in range(1, n + 1):
            allp = search.max_single_nonuniform(n, t, Convention.ALL)
            dist = search.max_single_nonuniform(n, t, Convention.DISTINCT)
            floor_bound = math.floor(bounds.single_family_bound(n, t))
            ok &= allp.value <= floor_bound
            table[f"n={n},t={t}"] = {"all_pairs": allp.value, "distinct_pairs": dist.value, "floor_bound": floor_bound}
            if dist.value > bounds.single_family_bound(n, t):
                artifacts.append(f"n={n},t={t}")
    n2 = search.max_single_nonuniform(2, 1, Convention.DISTINCT)
    reproduced = n2.value == 3 and any(F.masks() == [0, 1, 2] for F, _ in n2.witnesses)
    ok &= reproduced
    return ok, {
        "values": table,
        "distinct_n2_t1_value": n2.value,
        "distinct_n2_t1_reproduced": reproduced,
        "convention_artifacts": artifacts,
    }


def _all_subsets(n: int):
    ground = range(n + 1)
    return chain.from_iterable(combinations(ground, k) for k in range(n + 2))


@criterion(6, "L-cross-intersecting equality exactly when L = {0..s-1}, n <= 3")
def _c6(level: str, jobs: int):
    ok, rows = True, {}
    for n in range(1, 4):
        for L in _all_subsets(n):
            res = search.verify_cor_1_8(n, L)
            ok &= res.ok
            rows[f"n={n},L={{{','.join(map(str, L))}}}"] = {
                "max": res.max_found,
                "bound": res.bound,
                "equality": res.equality,
                "predicted": res.predicted_equality,
            }
    return ok, {"cases": rows}


@criterion(7, "induction-step audit on random cross-avoiding pairs, n <= 10, t <= 3")
def _c7(level: str, jobs: int):
    from .sampling import random_cross_avoiding_pair

    rng = np.random.default_rng(SEED + 7)
    trials = _trials(level, 1000, 100)
    failures, tight = [], 0
    for i in range(trials):
        n = int(rng.integers(1, 11))
        t = int(rng.integers(1, min(3, n) + 1))
        A, B = random_cross_avoiding_pair(rng, n, t)
        audit = reduction.lemma_2_3_audit(A, B, t)
        if not (audit.inequality_ok and audit.claims_ok):
            failures.append(i)
        tight += audit.lhs == audit.rhs
    return not failures, {"trials": trials, "failures": failures[:10], "tight": tight}


@criterion(8, "t = 2 classification inequality for 3 <= n <= 40")
def _c8(level: str, jobs: int):
    bad = [[n, l] for n in range(3, 41) for l in range(1, n) if not bounds.check_inequality_2_1(n, l)]
    return not bad, {"violations": bad}


@criterion(9, "delta-system reduction on random uniform pairs, n <= 12, r <= 4, t < r")
def _c9(level: str, jobs: int):
    from .sampling import random_uniform_cross_avoiding_pair

    rng = np.random.default_rng(SEED + 9)
    trials = _trials(level, 100, 20)
    failures, inexact, removed = [], 0, 0
    for i in range(trials):
        r = int(rng.integers(2, 5))
        t = int(rng.integers(1, r))
        n = int(rng.integers(r + 1, 13))
        A, B = random_uniform_cross_avoiding_pair(rng, n, r, t)
        rep = reduction.reduce_to_cross_intersecting(A, B, t, r)
        if not (rep.cross_intersecting_ok and rep.bound_ok):
            failures.append(i)
        inexact += rep.inexact_searches
        removed += len(rep.A0) + len(rep.B0)
    return not failures, {"trials": trials, "failures": failures, "inexact_searches": inexact, "sets_removed": removed}


@criterion(10, "gamma_3 certificate")
def _c10(level: str, jobs: int):
    res = bounds.gamma_r(3)
    residual = bounds.gamma_stationarity_residual(res.alpha_star)
    closed = (1 + math.sqrt(17)) / 8
    grid = np.arange(0, 1 + 1e-6, 1e-6)
    grid_alpha = float(grid[np.argmax(bounds.gamma_objective(grid, 3))])
    via_m = bounds.gamma_via_m(3)
    ok = (
        abs(residual) <= 1e-6
        and abs(res.gamma - 0.077460) <= 1e-5
        and abs(res.alpha_star - closed) <= 1e-6
        and abs(grid_alpha - closed) <= 2e-6
        and abs(via_m - res.gamma) <= 1e-6
    )
    return ok, {
        "alpha_star": round(res.alpha_star, 9),
        "gamma": round(res.gamma, 9),
        "stationarity_residual_below_1e-6": abs(residual) <= 1e-6,
        "gamma_via_m_agrees": abs(via_m - res.gamma) <= 1e-6,
    }


def _star_pair_counts(n: int, r: int, t: int) -> tuple[int, int, int]:
    a, b = t // 2, (t - 1) // 2
    x = n // 2
    X = (1 << x) - 1
    A, B = constructions.cross_avoiding_star_pair(n, r, t, X, a, b)
    if n <= dpcount.transform_cap() and n <= 24:
        d = dpcount.count_disjoint_fast(A, B)
    else:
        d = dpcount.count_disjoint_sparse(A, B)
    closed = constructions.star_pair_disjoint_pairs(n, r, x, a, b)
    return d, len(A) * len(B), closed


@criterion(11, "star-pair sandwich d <= p and d/p rising from n = 15 to 30")
def _c11(level: str, jobs: int):
    d15, p15, c15 = _star_pair_counts(15, 3, 2)
    d30, p30, c30 = _star_pair_counts(30, 3, 2)
    r15, r30 = Fraction(d15, p15), Fraction(d30, p30)
    ok = d15 <= p15 and d30 <= p30 and r30 > r15 and d15 == c15 and d30 == c30
    return ok, {
        "n=15": {"d": d15, "p": p15, "ratio": r15},
        "n=30": {"d": d30, "p": p30, "ratio": r30},
    }


BEST_GRAPH_PAIR_PRODUCT = {4: 4, 5: 4, 6: 9}


@criterion(12, "exact p(n,2,1) for n = 4, 5, 6")
def _c12(level: str, jobs: int):
    values = {}
    ok = True
    for n in (4, 5, 6):
        out = search.max_pair_uniform(n, 2, 1, search.Objective.PRODUCT, jobs=jobs)
        values[f"n={n}"] = {"value": out.value, "witness": out.witnesses[0], "nodes": out.nodes_explored}
        ok &= out.exhaustive and search.revalidate(out) and out.value == BEST_GRAPH_PAIR_PRODUCT[n]
    floor_product = math.comb(2, 2) ** 2
    ok &= values["n=4"]["value"] > floor_product
    return ok, {"values": values, "n=4_exceeds": floor_product}


@criterion(13, "d(F*(n,2)) two ways and its normalized ratio increasing")
def _c13(level: str, jobs: int):
    rows, ratios, ok = {}, [], True
    for n in (11, 15, 19, 23):
        F = constructions.frankl_furedi_family(n, 2)
        ordered = dpcount.count_disjoint_fast(F, F)
        via_transform = (ordered - (1 if 0 in F else 0)) // 2
        closed = constructions.frankl_furedi_disjoint_pairs(n, 2)
        ratio = Fraction(2 * closed, bounds.f_bound(n, 2))
        ok &= via_transform == closed
        ratios.append(ratio)
        rows[f"n={n}"] = {"transform": via_transform, "closed_form": closed, "ratio": ratio}
    ok &= all(a < b for a, b in zip(ratios, ratios[1:]))
    return ok, {"rows": rows}


@criterion(14, "shadow inequality scan over all 3-uniform families, n = 5 and 6")
def _c14(level: str, jobs: int):
    details, ok = {}, True
    for n in (5, 6):
        res = shadows.shadow_inequality_scan(n, jobs=jobs)
        entry = {"families": res.families_checked, "holds_everywhere": res.ok}
        if res.counterexample is not None:
            # the reported family must fail the direct, non-vectorised check too
            direct = shadows.question_4_3_check(res.counterexample, n)
            ok &= not direct.ok
            entry.update(counterexample=res.counterexample, lhs=direct.lhs, rhs=round(direct.rhs, 9), x=round(direct.x, 9))
        details[f"n={n}"] = entry
    return ok, details


@criterion(15, "suite output independent of the worker count")
def _c15(level: str, jobs: int):
    from .report import dumps

    others = [c for c in REGISTRY if c.id != 15]
    first = dumps([_run_one(c, level, jobs).__dict__ | {"seconds": 0} for c in others])
    other_jobs = 1 if jobs > 1 else 2
    second = dumps([_run_one(c, level, other_jobs).__dict__ | {"seconds": 0} for c in others])
    return first == second, {"jobs_compared": sorted({jobs, other_jobs}), "bytes": len(first)}


def _run_one(c: Criterion, level: str, jobs: int) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, details = c.check(level, jobs)
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        passed, details = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CriterionResult(c.id, c.title, bool(passed), details, time.perf_counter() - start)


def run_suite(level: str = "desk", jobs: int = 1, only: list[int] | None = None) -> list[CriterionResult]:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    chosen = [c for c in sorted(REGISTRY, key=lambda c: c.id) if only is None or c.id in only]
    return [_run_one(c, level, jobs) for c in chosen]


def summary_line(res: CriterionResult) -> str:
    return f"criterion {res.id:2d} {'PASS' if res.passed else 'FAIL'}  {res.title}"

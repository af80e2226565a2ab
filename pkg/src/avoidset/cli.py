"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or validation error.
Reports are JSON with sorted keys and integers as decimal strings; wall time
is included only with ``--timing`` so that reports stay byte-stable.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__, bounds, constructions, dpcount, reduction, search, shadows, suite
from .report import dumps, to_jsonable
from .setcore import (
    AllowedSet,
    AvoidOne,
    AvoidsetError,
    Convention,
    mask_from_elements,
    read_family,
    satisfies_cross,
    satisfies_single,
    write_family,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    text = text.strip()
    if text in ("", "-"):
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    p.add_argument("--budget", type=int, default=None, metavar="NODES", help="node budget (non-exhaustive search)")
    p.add_argument("--convention", choices=[c.value for c in Convention], default=Convention.ALL.value)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out", default=None, metavar="PATH")
    p.add_argument("--timing", action="store_true", help="add wall_ms to the report")
    return p


def _constraint(args) -> AvoidOne | AllowedSet:
    if getattr(args, "allowed", None) is not None:
        return AllowedSet(args.allowed)
    if getattr(args, "t", None) is None:
        raise UsageError("give --t or --allowed")
    return AvoidOne(args.t)


# ---------------------------------------------------------------------------
# command handlers: each returns (params, result, ok)


def cmd_count(args):
    if args.what == "pair":
        if args.b is None:
            raise UsageError("count pair needs --a and --b")
        A, B = read_family(args.a), read_family(args.b)
        method = {
            "auto": dpcount.count_disjoint,
            "fast": dpcount.count_disjoint_fast,
            "ordered": dpcount.count_disjoint_ordered,
            "sparse": dpcount.count_disjoint_sparse,
        }[args.method]
        value = method(A, B)
    else:
        A = read_family(args.a)
        value = dpcount.count_disjoint_unordered(A)
    return {"what": args.what, "method": args.method}, value, True


def cmd_check(args):
    c = _constraint(args)
    A = read_family(args.a)
    if args.what == "cross":
        if args.b is None:
            raise UsageError("check cross needs --a and --b")
        ok = satisfies_cross(A, read_family(args.b), c)
    else:
        ok = satisfies_single(A, c, args.convention)
    return {"what": args.what, "constraint": c.describe(), "convention": args.convention}, {"satisfied": ok}, ok


def cmd_construct(args):
    n = args.n
    kind = args.kind
    params = {"kind": kind, "n": n}
    pair = None
    if kind == "level":
        F = constructions.level_family(n, args.s)
        params["s"] = args.s
    elif kind == "katona":
        F = constructions.katona_family(n, args.t)
        params["t"] = args.t
    elif kind == "frankl-furedi":
        F = constructions.frankl_furedi_family(n, args.t)
        params["t"] = args.t
    elif kind == "star":
        F = constructions.star_family(n, args.r, mask_from_elements(args.X, n), args.s)
        params.update(r=args.r, X=args.X, s=args.s)
    elif kind == "star-pair":
        pair = constructions.cross_avoiding_star_pair(n, args.r, args.t, mask_from_elements(args.X, n), args.a, args.b)
        params.update(r=args.r, t=args.t, X=args.X, a=args.a, b=args.b)
    else:
        pair = constructions.powerset_pair(n, mask_from_elements(args.S, n))
        params["S"] = args.S
    if pair is None:
        if args.out:
            write_family(F, args.out)
        return params, {"family": F, "size": len(F)}, True
    if args.out:
        write_family(pair[0], args.out)
        write_family(pair[1], args.out_b or args.out + ".b")
    return params, {"A": pair[0], "B": pair[1], "sizes": [len(pair[0]), len(pair[1])]}, True


def cmd_bound(args):
    k = args.kind
    v = args.values
    need = {"f": 2, "single": 2, "frankl-wilson": 2, "l-cross": 2, "t2-inequality": 2, "gamma": 1, "gamma-m": 1, "recurrence": 1, "m": 3}
    if len(v) != need[k]:
        raise UsageError(f"bound {k} takes {need[k]} numbers")
    ok = True
    if k == "f":
        result = bounds.f_bound(int(v[0]), int(v[1]))
    elif k == "single":
        result = bounds.single_family_bound(int(v[0]), int(v[1]))
    elif k == "frankl-wilson":
        result = bounds.frankl_wilson_size_bound(int(v[0]), int(v[1]))
    elif k == "l-cross":
        result = bounds.l_cross_bound(int(v[0]), int(v[1]))
    elif k == "t2-inequality":
        lhs, rhs = bounds.classification_inequality_sides(int(v[0]), int(v[1]))
        ok = lhs < rhs
        result = {"lhs_doubled": lhs, "rhs_doubled": rhs, "holds": ok}
    elif k == "recurrence":
        ok = bounds.f_recurrence_check(int(v[0]))
        result = {"holds": ok}
    elif k == "gamma":
        g = bounds.gamma_r(int(v[0]))
        result = {"alpha_star": g.alpha_star, "gamma": g.gamma}
    elif k == "gamma-m":
        result = bounds.gamma_via_m(int(v[0]))
    else:
        result = bounds.m_rsp(int(v[0]), int(v[1]), float(v[2]))
    return {"kind": k, "values": v}, result, ok


def cmd_reduce(args):
    A, B = read_family(args.a), read_family(args.b)
    rep = reduction.reduce_to_cross_intersecting(A, B, args.t, args.r)
    return {"t": args.t, "r": args.r}, rep, bool(rep.bound_ok and rep.cross_intersecting_ok)


def cmd_audit(args):
    A, B = read_family(args.a), read_family(args.b)
    audit = reduction.lemma_2_3_audit(A, B, args.t)
    result = {
        "lhs": audit.lhs,
        "rhs": audit.rhs,
        "inequality_ok": audit.inequality_ok,
        "claims_ok": audit.claims_ok,
        "F1": audit.F1,
        "F2": audit.F2,
        "F3": audit.F3,
        "F4": audit.F4,
    }
    return {"t": args.t}, result, audit.inequality_ok and audit.claims_ok


def _outcome(o: search.SearchOutcome) -> dict:
    return {
        "objective": o.objective,
        "value": o.value,
        "witnesses": [{"A": a, "B": b} for a, b in o.witnesses],
        "witness_count": o.witness_count,
        "nodes_explored": o.nodes_explored,
        "exhaustive": o.exhaustive,
        "symmetry_reduced": o.symmetry_reduced,
        "extra": o.extra,
    }


def cmd_search(args):
    k = args.kind
    v = args.values
    need = {"pair": 2, "single": 2, "uniform": 3, "l-intersecting": 1, "l-cross": 1, "star-sweep": 3, "exchange": 0}
    if len(v) != need[k]:
        raise UsageError(f"search {k} takes {need[k]} integers")
    params = {"kind": k, "values": v, "objective": args.objective}
    if k == "pair":
        o = search.max_pair_nonuniform(v[0], v[1], args.objective, budget=args.budget)
        return params, _outcome(o), o.value <= bounds.f_bound(v[0], v[1])
    if k == "single":
        o = search.max_single_nonuniform(v[0], v[1], args.convention)
        params["convention"] = args.convention
        ok = o.extra["within_bound"] or args.convention == Convention.DISTINCT.value
        return params, _outcome(o), ok
    if k == "uniform":
        params.update(constraint=args.constraint, symmetry=args.symmetry)
        o = search.max_pair_uniform(
            v[0], v[1], v[2], args.objective, args.constraint, args.symmetry, args.budget, args.jobs
        )
        return params, _outcome(o), True
    if k in ("l-intersecting", "l-cross"):
        L = args.L if args.L is not None else []
        params["L"] = L
        res = search.verify_thm_1_1(v[0], L) if k == "l-intersecting" else search.verify_cor_1_8(v[0], L)
        return params, res, res.ok
    if k == "star-sweep":
        rep = search.explore_conjecture_4_2(v[0], v[1], v[2], jobs=args.jobs)
        result = {
            "best_product": rep.best_product,
            "best_disjoint": rep.best_disjoint,
            "alpha_location": rep.alpha_location,
            "exact_product": rep.exact_product.value if rep.exact_product else None,
            "exact_disjoint": rep.exact_disjoint.value if rep.exact_disjoint else None,
            "product_gap": rep.product_gap,
            "disjoint_gap": rep.disjoint_gap,
        }
        return params, result, True
    if args.a is None or args.b is None or args.t is None or args.r is None:
        raise UsageError("search exchange needs --a, --b, --t and --r")
    A, B = read_family(args.a), read_family(args.b)
    before = search.objective_value(args.objective, A, B)
    A2, B2 = search.exchange_improve(A, B, args.t, args.r, args.objective)
    after = search.objective_value(args.objective, A2, B2)
    return params, {"A": A2, "B": B2, "before": before, "after": after}, after >= before


def cmd_shadow(args):
    if args.kind == "scan":
        if args.n is None:
            raise UsageError("shadow scan needs --n")
        res = shadows.shadow_inequality_scan(args.n, jobs=args.jobs)
        if res.counterexample is not None and args.out:
            write_family(res.counterexample, args.out)
        result = {
            "families_checked": res.families_checked,
            "holds_everywhere": res.ok,
            "tight_families": res.tight_families,
            "counterexample": res.counterexample,
            "check": res.check,
        }
        # a counterexample is a finding, not a tool failure
        return {"kind": "scan", "n": args.n}, result, True
    if args.a is None:
        raise UsageError(f"shadow {args.kind} needs --a")
    A = read_family(args.a)
    n = args.n or A.n
    if args.kind == "check":
        res = shadows.question_4_3_check(A, n)
        return {"kind": "check", "n": n}, res, res.ok
    if args.kind == "bound":
        return {"kind": "bound", "n": n}, shadows.shadow_product_bound(A, n), True
    r = args.r
    if r is None:
        raise UsageError(f"shadow {args.kind} needs --r")
    F = shadows.lower_shadow(A, r) if args.kind == "lower" else shadows.upper_shadow(A, r, n)
    if args.out:
        write_family(F, args.out)
    return {"kind": args.kind, "r": r}, {"family": F, "size": len(F)}, True


def cmd_verify_all(args):
    results = suite.run_suite(args.level, args.jobs, args.only)
    rows = []
    for res in results:
        row = {"id": res.id, "title": res.title, "passed": res.passed, "details": res.details}
        if args.timing:
            row["seconds"] = round(res.seconds, 3)
        rows.append(row)
    return {"level": args.level}, {"criteria": rows, "all_passed": all(r.passed for r in results)}, all(
        r.passed for r in results
    )


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="avoidset", description="Exact computations on families with a forbidden intersection size.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="count disjoint pairs")
    p.add_argument("what", choices=["pair", "single"])
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p.add_argument("--method", choices=["auto", "fast", "ordered", "sparse"], default="auto")
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("check", parents=[common], help="check an intersection constraint")
    p.add_argument("what", choices=["cross", "single"])
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p.add_argument("--t", type=int)
    p.add_argument("--allowed", type=_ints, help="allowed sizes, e.g. 0,1")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("construct", parents=[common], help="build a named family")
    p.add_argument("kind", choices=["level", "katona", "frankl-furedi", "star", "star-pair", "powerset-pair"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--X", type=_ints, default=[])
    p.add_argument("--S", type=_ints, default=[])
    p.add_argument("--out-b", default=None, help="file for the second family of a pair")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("bound", parents=[common], help="evaluate a closed-form bound")
    p.add_argument("kind", choices=["f", "single", "frankl-wilson", "l-cross", "t2-inequality", "recurrence", "gamma", "gamma-m", "m"])
    p.add_argument("values", nargs="*")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("reduce", parents=[common], help="delta-system reduction of a uniform pair")
    for name in ("--a", "--b"):
        p.add_argument(name, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("audit-lemma23", parents=[common], help="audit the induction step on a pair")
    for name in ("--a", "--b"):
        p.add_argument(name, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(handler=cmd_audit)

    p = sub.add_parser("search", parents=[common], help="exact extremal search")
    p.add_argument("kind", choices=["pair", "single", "uniform", "l-intersecting", "l-cross", "star-sweep", "exchange"])
    p.add_argument("values", nargs="*", type=int)
    p.add_argument("--objective", choices=[o.value for o in search.Objective], default="disjoint")
    p.add_argument("--constraint", choices=["avoid_t", "allowed_0_to_tminus1"], default="avoid_t")
    p.add_argument("--symmetry", action="store_true")
    p.add_argument("--L", type=_ints)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--t", type=int)
    p.add_argument("--r", type=int)
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("shadow", parents=[common], help="shadows and the shadow inequality")
    p.add_argument("kind", choices=["lower", "upper", "check", "bound", "scan"])
    p.add_argument("--a")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.set_defaults(handler=cmd_shadow)

    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    p.add_argument("--level", choices=list(suite.LEVELS), default="desk")
    p.add_argument("--only", type=_ints, default=None)
    p.set_defaults(handler=cmd_verify_all)
    return parser


def _text(result) -> str:
    data = to_jsonable(result)
    if isinstance(data, dict) and "criteria" in data:
        return "\n".join(
            f"criterion {int(row['id']):2d} {'PASS' if row['passed'] else 'FAIL'}  {row['title']}" for row in data["criteria"]
        ) + "\n"
    if not isinstance(data, dict):
        return f"{data}\n"
    lines = []
    for key in sorted(data):
        value = data[key]
        if isinstance(value, dict) and "sets" in value:
            value = " | ".join(value["sets"])
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    start = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        params, result, ok = args.handler(args)
    except UsageError as exc:
        print(f"avoidset: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AvoidsetError, ValueError, OSError) as exc:
        print(f"avoidset: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "command": args.command,
        "params": params,
        "result": result,
        "status": "ok" if ok else "failed",
        "version": __version__,
    }
    if args.timing:
        report["wall_ms"] = int((time.perf_counter() - start) * 1000)
    text = dumps(report) if args.format == "json" else _text(result)
    writes_family = args.command in ("construct", "shadow")
    if args.out and not writes_family:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

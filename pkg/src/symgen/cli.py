"""Command-line front end: expansions, closed forms, oracles, verification.

Exit codes: 0 success / suites pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from fractions import Fraction

from .combinatorics import parse_int_vector, straighten
from .families import (
    eval_element,
    eval_generators,
    family_table,
    hl_P,
    schur_bialternant,
    schur_e,
    schur_h,
    schurq,
)
from .ring import format_element
from .scalars import frac
from .shifted import (
    eval_shifted,
    qstar_multivar,
    rstar_multivar,
    shifted_bialternant,
    shifted_schur,
)
from .verify import SUITES, run_all, run_suite

EXPAND_FAMILIES = ("schur", "schur-q", "hall-littlewood", "shifted", "shifted-r")


class UsageError(Exception):
    pass


def _parse_points(text: str) -> list[Fraction]:
    return [frac(tok) for tok in text.split(",") if tok.strip()]


def _print_table(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2))
        return
    for item in doc["entries"]:
        lam = ",".join(str(x) for x in item["lambda"])
        print(f"({lam})  {item['element']}")


def cmd_expand(args) -> int:
    if args.family not in EXPAND_FAMILIES:
        raise UsageError(f"unknown family {args.family!r}")
    if args.family == "shifted":
        table = qstar_multivar(args.l, args.N)
    elif args.family == "shifted-r":
        table = rstar_multivar(args.l, args.N)
    else:
        lows = [0] * args.l if args.partitions_only else None
        bound = args.N if args.partitions_only else None
        table = family_table(args.family, args.l, args.N,
                             lows=lows, degree_bound=bound)
    _print_table(table.to_json(), args.format)
    return 0


def cmd_closed_form(args) -> int:
    vec = parse_int_vector(args.index)
    if args.kind == "schur":
        elem = schur_h(vec)
    elif args.kind == "schur-e":
        elem = schur_e(vec)
    elif args.kind == "schur-q":
        try:
            elem = schurq(vec)
        except ValueError as exc:
            raise UsageError(str(exc))
    elif args.kind == "shifted-schur":
        elem = shifted_schur(vec, presentation=args.presentation)
    elif args.kind == "straighten":
        res = straighten(vec)
        if args.format == "json":
            doc = {"zero": res.is_zero}
            if not res.is_zero:
                doc["sign"] = res.sign
                doc["partition"] = list(res.partition)
            print(json.dumps(doc))
        elif res.is_zero:
            print("0")
        else:
            print(f"sign={res.sign:+d} partition={','.join(map(str, res.partition))}")
        return 0
    else:
        raise UsageError(f"unknown closed form {args.kind!r}")
    if args.format == "json":
        print(json.dumps({"kind": args.kind, "index": list(vec),
                          "element": format_element(elem)}))
    else:
        print(format_element(elem))
    return 0


def cmd_eval(args) -> int:
    lam = parse_int_vector(args.index)
    xs = _parse_points(args.x)
    try:
        if args.kind == "schur":
            value = schur_bialternant(lam, xs)
        elif args.kind == "schur-h":
            vals = eval_generators("h", xs, max(sum(lam), 1) + len(lam))
            value = eval_element(schur_h(lam), vals)
        elif args.kind == "schur-q":
            vals = eval_generators("schur-q", xs, sum(lam) + len(lam) + 1)
            value = eval_element(schurq(lam), vals)
        elif args.kind == "hl":
            if args.t is None:
                raise UsageError("--t required for Hall-Littlewood evaluation")
            value = hl_P(lam, xs, frac(args.t))
        elif args.kind == "shifted-schur":
            value = shifted_bialternant(lam, xs)
        elif args.kind == "shifted-schur-jt":
            value = eval_shifted(shifted_schur(lam), xs)
        else:
            raise UsageError(f"unknown eval kind {args.kind!r}")
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        print(json.dumps({"kind": args.kind, "index": list(lam),
                          "x": [str(x) for x in xs], "value": str(value)}))
    else:
        print(value)
    return 0


def _suite_kwargs(fn, args) -> dict:
    accepted = inspect.signature(fn).parameters
    out = {}
    for name, flag in (("N", args.N), ("K", args.K), ("W", args.W),
                       ("l", args.l), ("lmax", args.lmax)):
        if flag is not None and name in accepted:
            out[name] = flag
    return out


def cmd_verify(args) -> int:
    if args.suite == "all":
        recs = run_all(seed=args.seed)
    elif args.suite in SUITES:
        recs = [run_suite(args.suite, seed=args.seed,
                          **_suite_kwargs(SUITES[args.suite], args))]
    else:
        raise UsageError(f"unknown suite {args.suite!r}")
    all_pass = all(r.passed for r in recs)
    if args.format == "json":
        doc = {"seed": args.seed, "pass": all_pass,
               "suites": [r.to_json() for r in recs]}
        print(json.dumps(doc, indent=2))
    else:
        for r in recs:
            status = "pass" if r.passed else "FAIL"
            extra = "" if r.passed else f"  ({len(r.failures)} failures shown)"
            print(f"{r.suite:<20} {status}  instances={r.instances}"
                  f" elapsed={r.params.get('elapsed_s', '?')}s{extra}")
            for f in r.failures[:3]:
                print(f"    counterexample: {f}")
        print(f"overall: {'pass' if all_pass else 'FAIL'}")
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="symgen",
        description="Exact generating functions for symmetric and shifted "
                    "symmetric functions")
    p.add_argument("--format", choices=["json", "text"], default="text")
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("expand", help="multivariate coefficient tables")
    ex.add_argument("--family", required=True,
                    help="schur | schur-q | hall-littlewood | shifted | shifted-r")
    ex.add_argument("--l", type=int, default=2)
    ex.add_argument("--N", type=int, default=4)
    ex.add_argument("--partitions-only", action="store_true",
                    help="restrict the window to nonnegative exponents")
    ex.set_defaults(func=cmd_expand)

    cf = sub.add_parser("closed-form", help="determinant / Pfaffian closed forms")
    cf.add_argument("kind",
                    help="schur | schur-e | schur-q | shifted-schur | straighten")
    cf.add_argument("index", help="comma-separated integer vector, e.g. 1,3")
    cf.add_argument("--presentation", choices=["h", "e"], default="h")
    cf.set_defaults(func=cmd_closed_form)

    ev = sub.add_parser("eval", help="exact n-variable evaluation oracles")
    ev.add_argument("kind", help="schur | schur-h | schur-q | hl | "
                                 "shifted-schur | shifted-schur-jt")
    ev.add_argument("index")
    ev.add_argument("--x", required=True, help="comma-separated rationals")
    ev.add_argument("--t", default=None)
    ev.set_defaults(func=cmd_eval)

    vf = sub.add_parser("verify", help="run identity verification suites")
    vf.add_argument("--suite", required=True,
                    help=f"one of: {', '.join(sorted(SUITES))}, all")
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--N", type=int, default=None)
    vf.add_argument("--K", type=int, default=None)
    vf.add_argument("--W", type=int, default=None)
    vf.add_argument("--l", type=int, default=None)
    vf.add_argument("--lmax", type=int, default=None)
    vf.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

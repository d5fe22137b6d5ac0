"""qawverify command line: ``check <suite>``, ``compute <what>`` and ``enumerate <objects>``.

Exit codes: 0 when every case passes (REPORTED cases do not count as
failures), 1 when any case fails, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from ..exact.interchange import poly_to_obj, ratfunc_to_obj
from ..exact.laurent import LaurentPoly
from ..exact.ratfunc import RatFunc
from .suites import FAIL, FAMILY_NAMES, SUITES, Options, run_suite, summarize

COMPUTE_WHAT = ("family-poly", "mixed-moment", "opbar", "hstar", "h", "motzkin-sum", "fbm-sum", "synth-recurrence")
ENUMERATE_WHAT = ("fbm", "cm", "motzkin")


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qawverify", description="Exact verification of q-orthogonal polynomial identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run a check suite")
    check.add_argument("suite", choices=SUITES + ("all",))
    check.add_argument("--nmax", type=int, default=6)
    check.add_argument("--order", type=int, default=8)
    check.add_argument("--mode", choices=("symbolic", "probe"), default=None,
                       help="default: symbolic for families with up to three parameters, probe for Askey-Wilson")
    check.add_argument("--trials", type=int, default=20)
    check.add_argument("--seed", type=int, default=20240101)
    check.add_argument("--family", choices=sorted(FAMILY_NAMES), default=None)
    check.add_argument("--emit", choices=("text", "json"), default="text")

    comp = sub.add_parser("compute", help="print an exact object in the interchange format")
    comp.add_argument("what", choices=COMPUTE_WHAT)
    comp.add_argument("--family", choices=sorted(FAMILY_NAMES), default=None)
    comp.add_argument("--n", type=int, default=None)
    comp.add_argument("--m", type=int, default=0)
    comp.add_argument("--height", type=int, default=0, help="final height for motzkin-sum (0 or 1)")
    comp.add_argument("--recurrence", default=None,
                      help='JSON recurrence family for synth-recurrence, e.g. {"A": "2", "b": "a*s", "lambda": "1-s"}')

    enum = sub.add_parser("enumerate", help="dump combinatorial objects, one JSON object per line")
    enum.add_argument("what", choices=ENUMERATE_WHAT)
    enum.add_argument("--n", type=int, required=True)
    enum.add_argument("--height", type=int, default=0)
    return parser


def _emit_report(suite: str, cases, opts: Options, emit: str, elapsed: float) -> None:
    counts = summarize(cases)
    if emit == "json":
        for c in cases:
            print(_dumps(c.to_obj()))
        options = {"nmax": opts.nmax, "order": opts.order, "mode": opts.mode or "default",
                   "trials": opts.trials, "seed": opts.seed, "family": opts.family}
        print(_dumps({"schema": 1, "suite": suite, "summary": counts, "options": options}))
        return
    for c in cases:
        line = f"{c.status:<8} {c.id}"
        if c.status != "PASS" and c.note:
            line += f"  ({c.note})"
        print(line)
    print(f"{suite}: {counts['pass']} passed, {counts['fail']} failed, {counts['reported']} reported "
          f"in {elapsed:.1f}s")


def _serialize(v) -> dict:
    if isinstance(v, RatFunc):
        return ratfunc_to_obj(v)
    return poly_to_obj(v)


def _need(value, name: str):
    if value is None:
        raise UsageError(f"--{name} is required")
    if isinstance(value, int) and value < 0:
        raise UsageError(f"--{name} must be nonnegative")
    return value


def _poly_field(value) -> LaurentPoly:
    """A string expression, an interchange object, or a list of coefficients of s^0, s^1, ..."""
    from ..exact.interchange import parse_poly, poly_from_obj
    from ..exact.laurent import ZERO, var

    if isinstance(value, str):
        return parse_poly(value)
    if isinstance(value, dict):
        return poly_from_obj(value)
    if isinstance(value, list):
        return sum((_poly_field(v) * var("s") ** j for j, v in enumerate(value)), ZERO)
    raise UsageError(f"cannot read a polynomial from {value!r}")


def parse_recurrence(text: str):
    """Read {"A": ..., "b": ..., "lambda": ..., "flipped": bool} into a RecurrenceFamily."""
    from fractions import Fraction

    from ..ortho import RecurrenceFamily

    try:
        obj = json.loads(text)
        fam = RecurrenceFamily(Fraction(obj["A"]), _poly_field(obj.get("b", "0")), _poly_field(obj.get("lambda", "0")))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad recurrence JSON: {exc}") from exc
    return fam, bool(obj.get("flipped", False))


def _compute(args) -> int:
    from .. import combin, dbqh
    from ..genfun import synth_from_family
    from ..ortho import DQH2, FamilySpec, family_poly, mixed_moment_oracle
    from ..qcore import opbar

    what = args.what
    if what == "synth-recurrence":
        if args.recurrence is not None:
            family, flipped = parse_recurrence(args.recurrence)
        else:
            fam = _need(args.family, "family")
            spec = FamilySpec.make(FAMILY_NAMES[fam])
            if spec.recurrence is None:
                raise UsageError(f"{fam} has no three-term recurrence input")
            family, flipped = spec.recurrence, spec.tag == DQH2
        rec = synth_from_family(family, flipped=flipped)
        print(_dumps({"A": str(rec.A), "depth": rec.depth, "coeffs": [poly_to_obj(c) for c in rec.coeffs]}))
        print(rec)
        return 0
    n = _need(args.n, "n")
    if what == "family-poly":
        value = family_poly(FamilySpec.make(FAMILY_NAMES[_need(args.family, "family")]), n)
    elif what == "mixed-moment":
        tag = FAMILY_NAMES[_need(args.family, "family")]
        value = mixed_moment_oracle(FamilySpec.make(tag), n, args.m)
    elif what == "opbar":
        value = opbar(n, args.m)
    elif what == "hstar":
        value = dbqh.hstar(n)
    elif what == "h":
        value = dbqh.h_explicit(n)
    elif what == "motzkin-sum":
        value = combin.motzkin_sum(n, args.height)
    else:
        value = combin.fbm_weight_sum(n)
    print(_dumps(_serialize(value)))
    return 0


def _enumerate(args) -> int:
    from .. import combin

    if args.what == "fbm":
        objs = combin.enumerate_fbm(args.n)
    elif args.what == "cm":
        objs = combin.enumerate_cm(args.n)
    else:
        objs = combin.enumerate_motzkin2(args.n, args.height)
    for line in combin.dump_lines(objs):
        print(line)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "check":
            if args.nmax < 0 or args.order < 0 or args.trials < 1:
                raise UsageError("--nmax and --order must be nonnegative and --trials positive")
            opts = Options(args.nmax, args.order, args.mode, args.trials, args.seed, args.family)
            start = time.perf_counter()
            cases = run_suite(args.suite, opts)
            _emit_report(args.suite, cases, opts, args.emit, time.perf_counter() - start)
            return 1 if any(c.status == FAIL for c in cases) else 0
        if args.command == "compute":
            return _compute(args)
        return _enumerate(args)
    except (UsageError, ValueError) as exc:
        print(f"qawverify: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

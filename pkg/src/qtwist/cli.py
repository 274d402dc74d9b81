"""Batch driver: verification campaigns, q-combinatorics utilities, and
deterministic text/JSON reports.

Exit codes: 0 all checks pass, 1 verification failures, 2 usage errors
(argparse), 3 invalid configuration (bad datum/constraint files), 4 I/O
failures.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import rootdata, specializations
from .coeffring import Context, gauss_vanish, qbinom, qint
from .hopf import verify_hopf
from .params import ParameterSet
from .report import Report
from .repcheck import verify_transported_modules
from .rootdata import DatumError
from .specializations import SpecializationError
from .twistmap import TwistScalars, verify_integrality, verify_twist_isomorphism

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_CONFIG = 3
EXIT_IO = 4


def _load_datum(arg: str):
    import os

    if arg.lower() in ("a1", "a1xa1", "a2", "b2", "g2"):
        return rootdata.builtin(arg)
    if not os.path.exists(arg) and os.sep not in arg and not arg.endswith(".json"):
        raise DatumError("unknown root datum %r: not a built-in name and not a file" % arg)
    try:
        return rootdata.load(arg)
    except OSError as exc:
        raise IOError("cannot read root datum file %s: %s" % (arg, exc))


def _emit(report: Report, args) -> int:
    if args.format == "json":
        text = report.to_json(include_timing=not args.stable)
    else:
        text = report.to_text()
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print("cannot write report: %s" % exc, file=sys.stderr)
            return EXIT_IO
    else:
        print(text)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def _add_common(sub):
    sub.add_argument("--root-datum", default="a1",
                     help="a1, a1xa1, a2, b2, g2, or a JSON config file")
    sub.add_argument("--lambda-box", type=int, default=2,
                     help="weight window: all coordinates in [-K, K]")
    sub.add_argument("--out", default="", help="write the report to this file")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--jobs", type=int, default=1, help="parallel check evaluation")
    sub.add_argument("--stable", action="store_true",
                     help="omit wall-clock timing from JSON output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qtwist",
        description="Exact symbolic verification of the twisted quantum algebra identities.",
    )
    subs = ap.add_subparsers(dest="command", required=True)

    p = subs.add_parser("verify-iso", help="relation correspondence under the rescaling map")
    _add_common(p)

    p = subs.add_parser("verify-hopf", help="coproduct, antipode and bialgebra axioms")
    _add_common(p)
    p.add_argument("--nmax", type=int, default=4, help="largest coproduct power checked")

    p = subs.add_parser("verify-special", help="parameter specializations and their tables")
    _add_common(p)
    p.add_argument("--case", required=True,
                   choices=("two-param", "multi-param", "super1", "super2"))
    p.add_argument("--omega", default="", help="JSON file with the integer grading matrix")
    p.add_argument("--order", default="",
                   help="comma-separated total order on the index set (1-based), e.g. 2,1")
    p.add_argument("--signs", default="",
                   help="square-root sign choices i,j,+-1 separated by ';', e.g. 1,2,-1")
    p.add_argument("--with-iso", action="store_true",
                   help="also re-run the isomorphism campaign in the specialized ring")

    p = subs.add_parser("verify-modules", help="matrix checks on transported weight modules")
    _add_common(p)
    p.add_argument("--max-n", type=int, default=6, help="largest string module dimension - 1")
    p.add_argument("--case", default="generic",
                   choices=("generic", "two-param", "multi-param", "super1", "super2"))

    p = subs.add_parser("qcalc", help="q-combinatorics calculator")
    p.add_argument("op", choices=("qint", "qbinom", "gauss"))
    p.add_argument("args", nargs="+", type=int)

    p = subs.add_parser("validate-datum", help="validate a root datum config file")
    p.add_argument("file")
    return ap


def _parse_order(arg: str, n: int):
    if not arg:
        return None
    try:
        order = [int(x) - 1 for x in arg.split(",")]
    except ValueError:
        raise SpecializationError("--order must be comma-separated integers")
    if sorted(order) != list(range(n)):
        raise SpecializationError("--order must be a permutation of 1..%d" % n)
    return order


def _parse_signs(arg: str):
    if not arg:
        return None
    eps = {}
    for chunk in arg.split(";"):
        try:
            i, j, e = (int(x) for x in chunk.split(","))
        except ValueError:
            raise SpecializationError("--signs chunks must look like i,j,+-1")
        if e not in (1, -1):
            raise SpecializationError("sign values must be 1 or -1")
        eps[(i - 1, j - 1)] = e
    return eps


def _spec_kwargs(args, rd):
    kwargs = {}
    if args.case == "two-param" and args.omega:
        try:
            with open(args.omega, "r", encoding="utf-8") as fh:
                kwargs["omega"] = json.load(fh)
        except OSError as exc:
            raise IOError("cannot read omega file: %s" % exc)
        except json.JSONDecodeError as exc:
            raise SpecializationError("omega file is not valid JSON: %s" % exc)
    if args.case == "super1":
        order = _parse_order(args.order, rd.n)
        if order is not None:
            kwargs["order"] = order
        eps = _parse_signs(args.signs)
        if eps is not None:
            kwargs["eps"] = eps
    return kwargs


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "qcalc":
            ctx = Context()
            v = ctx.laurent("v", denom=2).as_poly()
            if args.op == "qint":
                (n,) = args.args
                print(qint(n, v))
            elif args.op == "qbinom":
                n, p = args.args
                val = qbinom(n, p, v)
                print(val)
                print("coefficient sum: %d" % val.coefficient_sum())
            else:
                (n,) = args.args
                print(gauss_vanish(n, v))
            return EXIT_OK

        if args.command == "validate-datum":
            try:
                rd = rootdata.load(args.file)
            except OSError as exc:
                print("cannot read %s: %s" % (args.file, exc), file=sys.stderr)
                return EXIT_IO
            print("ok: %s (rank %d, %d nodes)" % (args.file, rd.x_rank, rd.n))
            return EXIT_OK

        rd = _load_datum(args.root_datum)
        window = rd.weights_box(args.lambda_box)

        if args.command == "verify-iso":
            params = ParameterSet.v_tied(rd.cartan)
            report = verify_twist_isomorphism(rd, params, window, jobs=args.jobs)
            report.merge(verify_integrality(rd, params, rd.weights_box(min(args.lambda_box, 1))))
            report.finalize()
        elif args.command == "verify-hopf":
            params = ParameterSet.v_tied(rd.cartan)
            report = verify_hopf(rd, params, nmax=args.nmax)
        elif args.command == "verify-special":
            spec = specializations.make(args.case, rd, **_spec_kwargs(args, rd))
            report = specializations.verify_specialization(spec, window)
            if args.with_iso:
                report.merge(specializations.apply_to_isomorphism(spec, window, jobs=args.jobs))
                report.finalize()
        elif args.command == "verify-modules":
            if args.case == "generic":
                factory = lambda rd_: ParameterSet.v_tied(rd_.cartan)
            else:
                factory = lambda rd_: specializations.make(args.case, rd_).params
            report = verify_transported_modules(
                factory, lambda rd_, p_: TwistScalars(rd_, p_), args.case, max_n=args.max_n
            )
        else:  # pragma: no cover - argparse enforces the choices
            return EXIT_BAD_CONFIG
    except (DatumError, SpecializationError, ValueError) as exc:
        print("invalid configuration: %s" % exc, file=sys.stderr)
        return EXIT_BAD_CONFIG
    except IOError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    return _emit(report, args)


if __name__ == "__main__":
    sys.exit(main())

"""``oddclass`` command line.

Exit status: 0 on success, 1 on a domain error (reported as JSON on stderr),
2 on a usage error.
"""

import argparse
import json
import logging
import sys

from .arith import is_squarefree
from .certifier import certify, cross_validate
from .diophantine import exception_report, proposition_pb_verdict
from .errors import OddClassError
from .field import build_instance, ideal_above_p
from .qform import (
    DEFAULT_ENUMERATION_BOUND,
    class_order,
    enumerate_class_group,
    fundamental_discriminant,
)
from .survey import SurveyConfig, emit_report, load_config, run_survey


class _UsageError(Exception):
    pass


def _dump(obj):
    print(json.dumps(obj, indent=2))


def cmd_certify(args):
    cert = certify(args.k, args.p, args.n)
    if args.validate:
        cert = cross_validate(cert, args.enumeration_bound)
    _dump(cert.to_dict())


def cmd_classgroup(args):
    if args.disc is not None:
        D = args.disc
    else:
        if args.d < 1 or not is_squarefree(args.d):
            raise _UsageError("--d must be a squarefree positive integer")
        D = fundamental_discriminant(args.d)
    try:
        cg = enumerate_class_group(D, args.enumeration_bound)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    _dump({"D": cg.D, "h": cg.h, "forms": [f.as_list() for f in cg.reduced_forms]})


def cmd_order(args):
    inst = build_instance(args.k, args.p, args.n)
    f = ideal_above_p(inst)
    h = None
    if -inst.D <= args.enumeration_bound:
        h = enumerate_class_group(inst.D, args.enumeration_bound).h
    order = class_order(f, exponent_bound=h or inst.n, bound=args.enumeration_bound)
    _dump({"instance": inst.as_dict(), "form": f.as_list(), "order": order, "h": h})


def cmd_solve(args):
    _dump(proposition_pb_verdict(args.d, args.k, args.p, args.ymax).to_dict())


def cmd_exceptional(args):
    try:
        rep = exception_report(args.d1, args.d2, args.p, args.lambda_sq)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    _dump(rep.to_dict())


def cmd_survey(args):
    overrides = {
        "n": args.n, "k_min": args.k_min, "k_max": args.k_max, "p_max": args.p_max,
        "y_max": args.ymax, "enumeration_bound": args.enumeration_bound,
        "validate": args.validate, "workers": args.workers,
    }
    if args.config:
        cfg = load_config(args.config, **overrides)
    else:
        cfg = SurveyConfig(**{k: v for k, v in overrides.items() if v is not None}).check()
    report = run_survey(cfg)
    text = emit_report(report, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    else:
        print(json.dumps(report.summary), file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oddclass", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def kpn(p):
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--n", type=int, required=True)

    def enum_bound(p):
        p.add_argument("--enumeration-bound", type=int, default=DEFAULT_ENUMERATION_BOUND)

    p = sub.add_parser("certify", help="check the order-n conditions for (k, p, n)")
    kpn(p)
    p.add_argument("--validate", action="store_true", help="cross-check against the form class group")
    enum_bound(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("classgroup", help="list the reduced forms of a discriminant")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--d", type=int, help="squarefree d > 0, field Q(sqrt(-d))")
    g.add_argument("--disc", type=int, help="negative fundamental discriminant")
    enum_bound(p)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("order", help="order of the class of the ideal above p")
    kpn(p)
    enum_bound(p)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("solve", help="solve d x^2 + k^2 = p^y for y <= ymax")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ymax", type=int, default=40)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exceptional", help="exceptional-set membership of (D1, D2, p)")
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lambda-sq", type=int, default=1, choices=(1, 2, 4))
    p.set_defaults(func=cmd_exceptional)

    p = sub.add_parser("survey", help="sweep a (k, p) grid for fixed n")
    p.add_argument("--config", help="JSON or key = value file")
    p.add_argument("--n", type=int)
    p.add_argument("--k-min", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--p-max", type=int)
    p.add_argument("--ymax", type=int)
    p.add_argument("--enumeration-bound", type=int)
    p.add_argument("--validate", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--workers", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_survey)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except _UsageError as exc:
        print(f"oddclass: error: {exc}", file=sys.stderr)
        return 2
    except OddClassError as exc:
        print(json.dumps({"error": exc.kind, "message": str(exc)}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

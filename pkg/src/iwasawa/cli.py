"""Command-line front end: ``iwasawa {deduce,chevalley,quotient,ramify,report}``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .ambiguous import ChevalleyInput, ambiguous_count
from .class_data import (
    classify_ramification_p2,
    classify_ramification_p3,
    load_fixture_file,
)
from .deduction import deduce
from .elementary import INFINITE, ElementaryModule, quotient_order_nu
from .errors import IwasawaError, ParseError, ValidationError
from .lambda_ring import LambdaPoly
from .padic import DEFAULT_PRECISION
from .report import build_report, render_json, render_result_text

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_CONTRADICTION = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="iwasawa", description="Iwasawa invariants from class-group data")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("deduce", help="deduce mu, lambda, nu for fixture records")
    p.add_argument("--fixtures", required=True)
    p.add_argument("--label")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("report", help="verify every fixture record against its expectation")
    p.add_argument("--fixtures", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("chevalley", help="number of ambiguous classes in a cyclic extension")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--ram", type=_int_list, required=True)
    p.add_argument("--unit-index", type=int, required=True)

    p = sub.add_parser("quotient", help="exponent of #(E / nu_n E) for an elementary module")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--summands", required=True, help='e.g. "p^1,f:T^2+3T+3"')
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)

    p = sub.add_parser("ramify", help="ramification of the first layer above p")
    p.add_argument("--p", type=int, choices=(2, 3), required=True)
    p.add_argument("--d", type=int, required=True)
    return parser


def parse_summands(text: str, p: int, precision: int) -> ElementaryModule:
    exps, polys = [], []
    for item in (x.strip() for x in text.split(",")):
        if not item:
            continue
        if item.startswith("p^"):
            try:
                exps.append(int(item[2:]))
            except ValueError:
                raise ValidationError(f"bad p-power summand {item!r}")
        elif item.startswith("f:"):
            polys.append(LambdaPoly.parse(item[2:], p, precision))
        else:
            raise ValidationError(f"summand {item!r} must look like p^j or f:<poly>")
    return ElementaryModule(p, precision, tuple(exps), tuple(polys))


def _load(path: str):
    try:
        return load_fixture_file(path)
    except OSError as exc:
        raise ParseError(path, exc.strerror or str(exc))
    except ParseError as exc:
        raise ParseError(f"{path}:{exc.path}", exc.message)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}")


def _cmd_deduce(args, out) -> int:
    records = sorted(_load(args.fixtures), key=lambda r: (r.label, r.p))
    if args.label is not None:
        records = [r for r in records if r.label == args.label]
        if not records:
            print(f"error: no record labelled {args.label!r}", file=sys.stderr)
            return EXIT_ERROR
    results = [deduce(r) for r in records]
    if args.format == "json":
        out.write(render_json(results).decode("utf-8"))
    else:
        out.write("\n\n".join(render_result_text(r, x) for r, x in zip(records, results)) + "\n")
    return EXIT_OK


def _cmd_report(args, out) -> int:
    rep = build_report(_load(args.fixtures))
    if args.format == "json":
        out.write(rep.render_json().decode("utf-8"))
    else:
        out.write(rep.render_text())
    return rep.exit_code


def _cmd_chevalley(args, out) -> int:
    inp = ChevalleyInput(args.h, args.deg, tuple(args.ram), args.unit_index)
    out.write(f"{ambiguous_count(inp)}\n")
    return EXIT_OK


def _cmd_quotient(args, out) -> int:
    E = parse_summands(args.summands, args.p, args.precision)
    v = quotient_order_nu(E, args.level)
    out.write("infinite\n" if v is INFINITE else f"{v}\n")
    return EXIT_OK


def _cmd_ramify(args, out) -> int:
    if args.p == 3:
        r = classify_ramification_p3(args.d)
        out.write(
            f"status={r.status.value} v3_disc_K1={r.v3_disc_K1} v3_disc_K0={r.v3_disc_K0}\n"
        )
    else:
        r = classify_ramification_p2(args.d)
        out.write(
            f"totally_ramified={str(r.totally_ramified).lower()} "
            f"single_prime_above_2={str(r.single_prime_above_2).lower()}\n"
        )
    return EXIT_OK


_COMMANDS = {
    "deduce": _cmd_deduce,
    "report": _cmd_report,
    "chevalley": _cmd_chevalley,
    "quotient": _cmd_quotient,
    "ramify": _cmd_ramify,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.subcommand](args, out)
    except IwasawaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main_entry() -> None:
    sys.exit(main())

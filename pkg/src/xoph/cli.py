"""Command-line front end: ``xoph gen|verify|show|stab-check``.

Exit codes: 0 success, 1 verification failure, 2 f is not a stabilizer
element, 3 internal invariant breach, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import render
from .bispectral import (
    bfa,
    flat,
    is_stabilizer,
    minimal_stabilizer,
    pi,
    recurrence,
    verify_recurrence,
)
from .errors import DenominatorNotCleared, NotAStabilizer
from .exact import Poly
from .hermite import Partition, eta, exceptional_hermite, op_A, op_B

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_NOT_STABILIZER = 2
EXIT_INTERNAL = 3
EXIT_USAGE = 64

SHOW_TARGETS = ("eta", "A", "B", "hhat", "pi", "flat-bfa")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_partition(text: str | None) -> Partition:
    if text is None or not text.strip():
        return Partition()
    try:
        parts = tuple(int(p) for p in text.split(","))
        return Partition(parts)
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


def resolve_f(spec: str, lam: Partition) -> Poly:
    if spec == "auto":
        return minimal_stabilizer(lam)
    if spec == "auto-int":
        f = minimal_stabilizer(lam)
        return f / f.content()
    try:
        coeffs = [Fraction(c.strip()) for c in spec.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --f value {spec!r}") from None
    return Poly(coeffs, "x")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--partition", default="", help="comma-separated non-decreasing parts; empty for none")
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")

    with_f = _Parser(add_help=False)
    with_f.add_argument("--f", dest="f", default="auto", help="auto, auto-int, or coefficients low-to-high")

    parser = _Parser(prog="xoph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("gen", parents=[common, with_f], help="print the recurrence relation")

    p = sub.add_parser("verify", parents=[common, with_f], help="check the relation exactly")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--recurrence", metavar="FILE", help="verify a JSON recurrence instead of generating one")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("show", parents=[common, with_f], help="print an intermediate object")
    p.add_argument("target", choices=SHOW_TARGETS)
    p.add_argument("--n", type=int)

    sub.add_parser("stab-check", parents=[common, with_f], help="test whether eta divides f'")
    return parser


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def cmd_gen(args, out) -> int:
    lam = parse_partition(args.partition)
    f = resolve_f(args.f, lam)
    rec = recurrence(lam, f)
    if args.format == "json":
        _emit(out, render.dumps(render.recurrence_to_json(rec)))
    elif args.format == "latex":
        _emit(out, render.recurrence_latex(rec))
    else:
        _emit(out, render.recurrence_text(rec))
    return EXIT_OK


def _load_recurrence(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return render.recurrence_from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read recurrence from {path}: {exc}") from None


def cmd_verify(args, out) -> int:
    if args.recurrence:
        rec = _load_recurrence(args.recurrence)
    else:
        lam = parse_partition(args.partition)
        rec = recurrence(lam, resolve_f(args.f, lam))
    if args.n_max < 0:
        raise UsageError("--n-max must be nonnegative")
    report = verify_recurrence(rec, args.n_max, workers=args.workers)
    ok = report.clean
    if args.format == "json":
        data = {
            "partition": list(rec.partition.parts),
            "n_max": args.n_max,
            "verified": ok,
            "checked": report.checked,
            "failures": [
                {"n": n, "expected": render.poly_to_json(e), "got": render.poly_to_json(g)}
                for n, e, g in report.failures
            ],
            "poles": [{"offset": k, "n": n} for k, n in report.poles],
        }
        _emit(out, render.dumps(data))
    else:
        lines = [
            f"partition: {rec.partition}",
            f"f(x) = {render.poly_text(rec.f)}",
            f"checked {len(report.checked)} indices in the degree set up to n = {args.n_max}",
        ]
        for k, n in report.poles:
            lines.append(f"pole: coefficient of shift {k:+d} at n = {n}")
        if report.failures:
            n, expected, got = report.failures[0]
            lines.append(f"FAILED at n = {n} ({len(report.failures)} failures)")
            lines.append(f"  expected: {render.poly_text(expected)}")
            lines.append(f"  got:      {render.poly_text(got)}")
        lines.append("verified" if ok else "NOT verified")
        _emit(out, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def _render_poly(p: Poly, fmt: str) -> str:
    if fmt == "json":
        return render.dumps({"var": p.var, "coeffs": render.poly_to_json(p)})
    return render.poly_latex(p) if fmt == "latex" else render.poly_text(p)


def _render_diffop(q, fmt: str) -> str:
    if fmt == "json":
        return render.dumps(
            {"ring": q.ring, "coeffs": [render.ratfun_to_json(c) for c in q.coeffs]}
        )
    return render.diffop_latex(q) if fmt == "latex" else render.diffop_text(q)


def cmd_show(args, out) -> int:
    lam = parse_partition(args.partition)
    target, fmt = args.target, args.format
    if target == "eta":
        text = _render_poly(eta(lam), fmt)
    elif target == "A":
        text = _render_diffop(op_A(lam), fmt)
    elif target == "B":
        text = _render_diffop(op_B(lam), fmt)
    elif target == "hhat":
        if args.n is None:
            raise UsageError("show hhat requires --n")
        text = _render_poly(exceptional_hermite(lam, args.n), fmt)
    elif target == "pi":
        p = pi(lam)
        if fmt == "json":
            text = _render_poly(p, fmt)
        else:
            text = render.ratfun_render(p, fmt, pochhammer=False)
    elif target == "flat-bfa":
        op = flat(bfa(lam, resolve_f(args.f, lam)))
        if fmt == "json":
            text = render.dumps(
                {"terms": [{"offset": k, **render.ratfun_to_json(op.coeff(k))} for k in op.offsets()]}
            )
        else:
            text = render.shiftop_text(op, fmt)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown target {target!r}")
    _emit(out, text)
    return EXIT_OK


def cmd_stab_check(args, out) -> int:
    lam = parse_partition(args.partition)
    f = resolve_f(args.f, lam)
    ok = is_stabilizer(lam, f)
    if args.format == "json":
        _emit(
            out,
            render.dumps(
                {"partition": list(lam.parts), "f": {"coeffs": render.poly_to_json(f)}, "stabilizer": ok}
            ),
        )
    else:
        _emit(out, "true" if ok else "false")
    return EXIT_OK if ok else EXIT_NOT_STABILIZER


COMMANDS = {
    "gen": cmd_gen,
    "verify": cmd_verify,
    "show": cmd_show,
    "stab-check": cmd_stab_check,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"xoph: error: {exc}\n")
        return EXIT_USAGE
    except NotAStabilizer as exc:
        err.write(f"xoph: {exc}\n")
        return EXIT_NOT_STABILIZER
    except DenominatorNotCleared as exc:
        err.write(f"xoph: internal invariant breach: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

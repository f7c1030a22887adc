"""Command-line front end: ``combid list | verify | eval``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import specfun
from .errors import CombidError
from .identities import EvalRecord, SweepReport, get_spec, registry, sweep
from .telescope import FactorSystem, power_difference, product_difference_lhs, product_difference_rhs

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

MODES = ("numeric", "exact", "fd")
SEED_MASK = (1 << 64) - 1


class UsageError(Exception):
    pass


# -- value formatting ----------------------------------------------------------

def fmt_real(v: float) -> str:
    if v == 0:
        return "0"  # also folds -0.0
    if math.isfinite(v) and v.is_integer() and abs(v) < 1e17:
        return str(int(v))
    return f"{v:.17g}"


def fmt_complex(z) -> str:
    """17 significant digits; the imaginary part is dropped when it is zero."""
    z = complex(z)
    if z.imag == 0:
        return fmt_real(z.real)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return f"{v:.17g}"
    return fmt_complex(v)


def parse_complex(text: str) -> complex:
    """``"re,im"`` or a bare real ``"re"``."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected a complex literal 're,im', got {text!r}")


def parse_domain(text: str) -> tuple[str, tuple]:
    """``SYM=min:max`` or ``SYM=re0:re1,im0:im1``."""
    name, sep, rest = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected SYM=min:max, got {text!r}")
    bounds = []
    for piece in rest.split(","):
        lo, colon, hi = piece.partition(":")
        try:
            bounds += [float(lo), float(hi)]
        except ValueError:
            colon = ""
        if not colon:
            raise argparse.ArgumentTypeError(f"bad range {piece!r} in {text!r}")
    if len(bounds) not in (2, 4) or bounds[0] > bounds[1] or (len(bounds) == 4 and bounds[2] > bounds[3]):
        raise argparse.ArgumentTypeError(f"bad domain {text!r}")
    return name.strip(), tuple(bounds)


# -- record serialization ------------------------------------------------------

def _encode(v):
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, Fraction):
        return {"rational": str(v)}
    if isinstance(v, float):
        return v
    z = complex(v)
    return {"re": z.real, "im": z.imag}


def _decode(v):
    if isinstance(v, dict):
        if "rational" in v:
            return Fraction(v["rational"])
        return complex(v["re"], v["im"])
    return v


_FIELDS = ("identity", "mode", "sample", "status", "assignment", "lhs", "rhs",
           "abs_err", "rel_err", "condition", "detail")


def record_to_json(rec: EvalRecord) -> str:
    obj = {}
    for name in _FIELDS:
        v = getattr(rec, name)
        if name == "assignment":
            obj[name] = {k: _encode(x) for k, x in v.items()}
        else:
            obj[name] = _encode(v)
    # repr-based floats are the shortest round-tripping form (at most 17 digits)
    return json.dumps(obj, separators=(",", ":"))


def record_from_json(line: str) -> EvalRecord:
    obj = json.loads(line)
    kwargs = {name: _decode(obj[name]) for name in _FIELDS if name != "assignment"}
    kwargs["assignment"] = {k: _decode(x) for k, x in obj["assignment"].items()}
    return EvalRecord(**kwargs)


def record_to_row(rec: EvalRecord) -> list[str]:
    assignment = ";".join(f"{k}={fmt_value(v)}" for k, v in rec.assignment.items())
    return [rec.identity, rec.mode, str(rec.sample), rec.status, assignment, fmt_value(rec.lhs),
            fmt_value(rec.rhs), fmt_value(rec.abs_err), fmt_value(rec.rel_err),
            fmt_value(rec.condition), rec.detail]


def write_report(stream, reports: Sequence[SweepReport], fmt: str) -> None:
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(_FIELDS)
        for report in reports:
            for rec in report.records:
                writer.writerow(record_to_row(rec))
        return
    for report in reports:
        for rec in report.records:
            stream.write(record_to_json(rec) + "\n")


# -- list --------------------------------------------------------------------------

def _modes_text(modes) -> str:
    return "{" + ", ".join(m for m in MODES if m in modes) + "}"


def cmd_list(args, out) -> int:
    rows = [("id", "label", "symbols", "modes")]
    for spec in registry():
        rows.append((spec.id, spec.label, ",".join(spec.symbol_names), _modes_text(spec.modes)))
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    for r in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)) + "  " + r[3] + "\n")
    return EXIT_OK


# -- verify ------------------------------------------------------------------------

def _default_seed() -> int:
    text = os.environ.get("COMBID_SEED")
    if text is None or text == "":
        return 0
    try:
        return int(text, 0)
    except ValueError:
        raise UsageError(f"COMBID_SEED is not an integer: {text!r}") from None


def _select(args):
    if args.all:
        return list(registry())
    if not args.id:
        raise UsageError("give --id ID (repeatable) or --all")
    specs = []
    for id_ in args.id:
        try:
            spec = get_spec(id_)
        except KeyError:
            raise UsageError(f"unknown identity id {id_!r}") from None
        if spec not in specs:
            specs.append(spec)
    return specs


def _summary(reports, unsupported, out) -> None:
    header = ("identity", "mode", "requested", "passed", "failed", "skipped", "max_rel_err")
    rows = [header]
    for r in reports:
        rows.append((r.identity, r.mode, str(r.requested), str(r.passed), str(r.failed),
                     str(r.skipped_total), f"{r.max_rel_err:.3g}"))
    for id_, mode in unsupported:
        rows.append((id_, mode, "0", "0", "0", "unsupported", "-"))
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    failed = sum(r.failed for r in reports)
    total = sum(r.requested for r in reports)
    out.write(f"{len(reports)} sweeps, {total} records, {failed} failed\n")


def cmd_verify(args, out) -> int:
    specs = _select(args)
    if args.samples < 1:
        raise UsageError(f"--samples must be positive, got {args.samples}")
    if not args.tolerance > 0:
        raise UsageError(f"--tolerance must be positive, got {args.tolerance}")
    if args.n_max is not None and args.n_max < 0:
        raise UsageError(f"--n-max must be >= 0, got {args.n_max}")
    seed = _default_seed() if args.seed is None else args.seed
    if not 0 <= seed <= SEED_MASK:
        raise UsageError(f"seed must be a 64-bit unsigned integer, got {seed}")
    domain = dict(args.domain or ())

    report_file = None
    if args.report:
        try:
            report_file = open(args.report, "w", newline="", encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write report {args.report!r}: {exc.strerror}") from None

    modes = MODES if args.mode == "all" else (args.mode,)
    reports, unsupported = [], []
    with report_file if report_file is not None else io.StringIO():
        for spec in specs:
            for mode in modes:
                if mode not in spec.modes:
                    if args.mode != "all":
                        unsupported.append((spec.id, mode))
                    continue
                # fd keeps its own tolerance unless one was given explicitly
                tol = args.tolerance if (mode != "fd" or args.tolerance_given) else None
                reports.append(
                    sweep(spec, args.samples, seed=seed, tolerance=tol, mode=mode,
                          convention=args.convention, domain=domain, n_max=args.n_max)
                )
        if report_file is not None:
            write_report(report_file, reports, args.format)
    _summary(reports, unsupported, out)
    return EXIT_FAIL if any(r.failed for r in reports) else EXIT_OK


# -- eval ----------------------------------------------------------------------------

def _eval_value(args):
    fn = args.function
    if fn == "gamma":
        return specfun.gamma(args.s)
    if fn == "binomial":
        return specfun.binomial(args.x, args.y)
    if fn == "harmonic":
        return specfun.harmonic(args.n)
    if fn == "genharmonic":
        return specfun.gen_harmonic(args.c, args.n, args.m)
    if fn == "fallingproduct":
        return specfun.falling_product(args.s, args.a, args.b)
    raise AssertionError(fn)


def _reldiff(lhs, rhs) -> float:
    err = abs(lhs - rhs)
    return 0.0 if err == 0 else err / max(abs(lhs), abs(rhs))


def cmd_eval(args, out) -> int:
    try:
        if args.function == "powerdiff":
            if args.n < 0:
                raise UsageError(f"n must be >= 0, got {args.n}")
            lhs, rhs = power_difference(args.x, args.y, args.n)
        elif args.function == "proddiff":
            if len(args.z) != len(args.w):
                raise UsageError(f"--z has {len(args.z)} values but --w has {len(args.w)}")
            f = FactorSystem(args.x, args.y, args.z, args.w)
            lhs, rhs = product_difference_lhs(f), product_difference_rhs(f)
        else:
            out.write(fmt_complex(_eval_value(args)) + "\n")
            return EXIT_OK
    except (CombidError, ZeroDivisionError, OverflowError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_FAIL
    out.write(f"lhs {fmt_complex(lhs)}\nrhs {fmt_complex(rhs)}\nreldiff {fmt_real(_reldiff(lhs, rhs))}\n")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # let complex literals such as "-2,0" through as positionals
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\.?\d")


class _Tolerance(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.tolerance_given = True


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="combid", description="Verify telescoping binomial and harmonic identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list registered identities")

    v = sub.add_parser("verify", help="run seeded verification sweeps")
    sel = v.add_mutually_exclusive_group()
    sel.add_argument("--id", action="append", metavar="ID", help="identity id (repeatable)")
    sel.add_argument("--all", action="store_true", help="every registered identity")
    v.add_argument("--mode", choices=MODES + ("all",), default="numeric")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=None, help="default: $COMBID_SEED or 0")
    v.add_argument("--tolerance", type=float, default=1e-8, action=_Tolerance)
    v.add_argument("--report", metavar="PATH")
    v.add_argument("--format", choices=("json-lines", "csv"), default="json-lines")
    v.add_argument("--n-max", type=int, default=None, help="enumerate n = 0..N for single-n identities")
    v.add_argument("--domain", type=parse_domain, action="append", metavar="SYM=LO:HI[,LO:HI]")
    v.add_argument("--convention", choices=("factored", "principal"), default="factored",
                   help="how non-integer binomial powers are evaluated")
    v.set_defaults(tolerance_given=False)

    e = sub.add_parser("eval", help="evaluate one special function")
    fns = e.add_subparsers(dest="function", required=True)
    p = fns.add_parser("gamma")
    p.add_argument("s", type=parse_complex)
    p = fns.add_parser("binomial")
    p.add_argument("x", type=parse_complex)
    p.add_argument("y", type=parse_complex)
    p = fns.add_parser("harmonic")
    p.add_argument("n", type=int)
    p = fns.add_parser("genharmonic")
    p.add_argument("c", type=parse_complex)
    p.add_argument("n", type=int)
    p.add_argument("m", type=parse_complex)
    p = fns.add_parser("fallingproduct")
    p.add_argument("s", type=parse_complex)
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p = fns.add_parser("powerdiff")
    p.add_argument("x", type=parse_complex)
    p.add_argument("y", type=parse_complex)
    p.add_argument("n", type=int)
    p = fns.add_parser("proddiff")
    p.add_argument("--x", type=parse_complex, required=True)
    p.add_argument("--y", type=parse_complex, required=True)
    p.add_argument("--z", type=parse_complex, nargs="*", default=[])
    p.add_argument("--w", type=parse_complex, nargs="*", default=[])
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    commands = {"list": cmd_list, "verify": cmd_verify, "eval": cmd_eval}
    try:
        return commands[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write(f"combid: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

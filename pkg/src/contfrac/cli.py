"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical degeneracy,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import analysis, derangement, scan
from .cf_core import FAMILIES, GCFSpec, convergents
from .cf_invert import invert
from .constants import decimal_str, e_enclosure
from .errors import MathError

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_sequence(path) -> list[int]:
    """One integer per line; '#' comments and blank lines are skipped."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                values.append(int(text, 10))
            except ValueError:
                raise UsageError(f"{path}:{lineno}: not an integer: {text!r}") from None
    return values


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_subfactorial(args, out):
    n = args.n
    if n < 0:
        raise UsageError("n must be >= 0")

    def nearest(k):
        digits = args.digits or derangement.nearest_digits(k)
        return derangement.subfactorial_nearest(k, e_enclosure(digits))

    funcs = {
        "rec1": derangement.subfactorial_rec1,
        "rec2": derangement.subfactorial_rec2,
        "sum": derangement.subfactorial_sum,
        "nearest": nearest,
    }
    if args.method != "all":
        print(funcs[args.method](n), file=out)
        return EXIT_OK
    values = {name: f(n) for name, f in funcs.items()}
    for name, v in values.items():
        print(f"{name} {v}", file=out)
    agree = len(set(values.values())) == 1
    print("AGREE" if agree else "DISAGREE", file=out)
    return EXIT_OK if agree else EXIT_MATH


def cmd_convergents(args, out):
    if args.family:
        spec = GCFSpec.family(args.family)
    else:
        a_path, b_path = args.terms_file
        a, b = read_sequence(a_path), read_sequence(b_path)
        if len(a) != len(b):
            raise UsageError(f"term files differ in length ({len(a)} vs {len(b)})")
        spec = GCFSpec.explicit(args.b0, zip(a, b))
    for c in convergents(spec, args.n):
        row = f"{c.index} {c.p} {c.q}"
        if args.values:
            if c.q == 0:
                row += " undefined"
            else:
                r = Fraction(c.p, c.q)
                row += f" {_fmt(r)} {decimal_str(r, args.digits)}"
        print(row, file=out)
    return EXIT_OK


def cmd_invert(args, out):
    p, q = read_sequence(args.p_file), read_sequence(args.q_file)
    if len(p) != len(q) or len(p) < 2:
        raise UsageError(f"need equal-length sequences of at least 2 values (got {len(p)} and {len(q)})")
    res = invert(p, q)
    print(f"b0 {res.b0}", file=out)
    print(f"a1 {res.a1}", file=out)
    print(f"b1 {res.b1}", file=out)
    rows = res.tail if args.raw else res.normalized_tail
    for n, ((a, b), ok) in enumerate(zip(rows, res.integral), start=2):
        line = f"{n} {_fmt(Fraction(a))} {_fmt(Fraction(b))}"
        print(line if ok else line + " nonintegral", file=out)
    return EXIT_OK


def cmd_error_table(args, out):
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    unknown = [f for f in families if f not in analysis.FIG_FAMILIES]
    if unknown or not families:
        raise UsageError(f"families must be among {', '.join(analysis.FIG_FAMILIES)}")
    if args.n < 3:
        raise UsageError("--n must be >= 3")
    table = analysis.compare_families(args.n, families, start_digits=args.digits)
    if args.csv:
        analysis.emit_csv(table, args.csv)
    if args.svg:
        analysis.emit_svg(table, args.svg)
    if not (args.csv or args.svg):
        for r in table.records:
            print(f"{r.family} {r.n} {analysis.format_sig9(r.log10_err)}", file=out)
    if len(families) < 2:
        print("ordering check skipped (needs two or more families)", file=out)
    else:
        bad = analysis.ordering_violations(table)
        if bad:
            n, fast, slow = bad[0]
            print(f"ordering fails at n={n}: {fast} not below {slow}", file=out)
        else:
            print(f"ordering holds for n in 3..{args.n}", file=out)
    return EXIT_OK


def cmd_scan(args, out):
    grid = scan.ScanGrid(args.L, args.depth, args.digits)
    progress = None
    if args.progress:
        def progress(done):
            print(f"\rcells {done}/{grid.cells}", end="", file=sys.stderr, flush=True)
    hits = scan.run_scan(grid, jobs=args.jobs, progress=progress)
    if args.progress:
        print(file=sys.stderr)
    if args.out:
        scan.emit_hits_csv(hits, args.out)
    for h in hits:
        b0, al, be, ga, de = h.rule
        print(f"b0={b0} a_n={al}n{be:+d} b_n={ga}n{de:+d} -> {h.constant} "
              f"(log10 residual {analysis.format_sig9(h.residual_log10)})", file=out)
    print(f"hits: {len(hits)} (stable)", file=out)
    return EXIT_OK


def cmd_quadrature(args, out):
    nodes = args.nodes if args.nodes is not None else max(args.n, 1)
    est = derangement.subfactorial_integral(args.n, nodes)
    exact = derangement.subfactorial_rec1(args.n)
    print(f"estimate {est!r}", file=out)
    print(f"exact {exact}", file=out)
    if exact:
        print(f"relative_error {abs(est - exact) / exact:.3e}", file=out)
    else:
        print(f"absolute_error {abs(est):.3e}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="contfrac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("subfactorial", help="number of derangements !n")
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=(*derangement.METHODS, "all"), default="rec1")
    p.add_argument("--digits", type=int, default=None,
                   help="digits of e for --method nearest (default: digits of n! + 10)")
    p.set_defaults(func=cmd_subfactorial)

    p = sub.add_parser("convergents", help="numerators and denominators of the convergents")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=FAMILIES)
    src.add_argument("--terms-file", nargs=2, metavar=("A_FILE", "B_FILE"),
                     help="partial numerators and denominators, one integer per line")
    p.add_argument("--b0", type=int, default=0, help="leading term for --terms-file (default 0)")
    p.add_argument("--n", type=int, default=10, help="last convergent index (default 10)")
    p.add_argument("--values", action="store_true", help="append the reduced value and a decimal")
    p.add_argument("--digits", type=int, default=20, help="decimal places for --values (default 20)")
    p.set_defaults(func=cmd_convergents)

    p = sub.add_parser("invert", help="recover coefficients from p_n and q_n sequences")
    p.add_argument("p_file")
    p.add_argument("q_file")
    p.add_argument("--raw", action="store_true",
                   help="print unscaled rational coefficients instead of the integer form")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("error-table", help="log10 error of the expansions of e")
    p.add_argument("--families", default=",".join(analysis.FIG_FAMILIES),
                   help="comma-separated subset of %(default)s")
    p.add_argument("--n", type=int, default=30, help="last convergent index (default 30)")
    p.add_argument("--digits", type=int, default=analysis.START_DIGITS,
                   help="starting precision of e in digits (default %(default)s)")
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_error_table)

    p = sub.add_parser("scan", help="search affine continued fractions for known constants")
    p.add_argument("--L", type=int, default=2, help="coefficient bound (default 2)")
    p.add_argument("--depth", type=int, default=200, help="convergent index used as the limit (default 200)")
    p.add_argument("--digits", type=int, default=20, help="digits that must match (default 20)")
    p.add_argument("--out", metavar="PATH", help="write hits as CSV")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--progress", action="store_true", help="print a cell counter on stderr")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("quadrature", help="Gauss-Laguerre check of the subfactorial integral")
    p.add_argument("n", type=int)
    p.add_argument("--nodes", type=int, default=None, help="quadrature nodes (default max(n, 1))")
    p.set_defaults(func=cmd_quadrature)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except MathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

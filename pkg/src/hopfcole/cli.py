"""Command-line front end.

Exit codes: 0 verified, 1 verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import __version__
from .families import FamilySpec
from .multipoly import as_fraction
from .numeric import Axis, GridSpec, concat_tables, emit_csv, sample
from .pde import (
    EQUATIONS,
    combined_solution,
    complete_solution,
    hermite_identity_residual,
    hermite_identity_terms,
    laguerre_solution,
    residual_size,
    run_check,
    variable_coefficient_solution,
)
from .ratfunc import normalize_content, phi_solution
from .suites import SUITES, run_suite

# default sampling geometry for figure presets (the source gives none)
FIG_X = Axis("x", -5.0, 5.0, 400)
FIG_Y_VALUES = (0.5, 1.0, 2.0)
FIG2_Y = Axis("y", 0.1, 2.0, 40)
FIG2_X = Axis("x", -5.0, 5.0, 100)
FIG1_PAIRS = ((2, 2), (4, 2), (4, 3), (9, 3))
FIG2_PAIRS = ((10, 2), (3, 3), (10, 3), (10, 7))
FIG3_NS = (3, 7)


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")


_EXACT = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")


def _rational(text: str) -> Fraction:
    # decimals are refused here; exact parameters are written as integers or p/q
    if not _EXACT.match(text.strip()):
        raise argparse.ArgumentTypeError(f"expected an exact rational like 3 or -1/2, got {text!r}")
    try:
        return as_fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact rational like 3 or -1/2, got {text!r}")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# ---- family ------------------------------------------------------------


def cmd_family(args) -> int:
    try:
        spec = FamilySpec(
            kind=args.kind,
            n=args.n,
            m=args.m,
            alpha=args.alpha,
            beta=args.beta,
            gamma=args.gamma,
            N=args.N,
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc))
    p = spec.build()
    if args.vars:
        names = args.vars.split(",")
        if len(names) != len(p.variables):
            raise UsageError(f"--vars needs {len(p.variables)} names for {p.variables}")
        p = p.rename(dict(zip(p.variables, names)))
    print(_dump(p.to_dict()))
    return 0


# ---- solution ------------------------------------------------------------


def _build_solution(args):
    n = args.n
    if n is None or n < 1:
        raise UsageError("solutions need --n >= 1")
    if args.phi:
        if args.m is None or args.m < 2:
            raise UsageError("--phi needs --m >= 2")
        return phi_solution(n, args.m)
    if args.laguerre:
        return laguerre_solution(n)
    if args.complete:
        if args.m is None or args.m < 2:
            raise UsageError("--complete needs --m >= 2")
        return complete_solution(n, args.m)
    if args.combined:
        return combined_solution(n, args.alpha or 0, args.beta or 0, args.gamma or 0)
    if args.varcoef:
        return variable_coefficient_solution(n)[0]
    raise UsageError("choose one of --phi, --laguerre, --complete, --combined, --varcoef")


def cmd_solution(args) -> int:
    u = normalize_content(_build_solution(args))
    print(_dump(u.to_dict()))
    return 0


# ---- verify ------------------------------------------------------------


def cmd_verify(args) -> int:
    spec = EQUATIONS[args.equation]
    given = {
        "n": args.n,
        "m": args.m,
        "k": args.k,
        "N": args.N,
        "alpha": args.alpha,
        "beta": args.beta,
        "gamma": args.gamma,
    }
    params = {}
    for name in spec.params:
        if given[name] is None:
            raise UsageError(f"{args.equation} needs --{name}")
        params[name] = given[name]
    try:
        report = run_check(args.equation, params, perturb=args.perturb)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc))
    # wall time would make stdout differ between identical runs
    elapsed = report.pop("elapsed_ms")
    if args.timing:
        report["elapsed_ms"] = elapsed
    print(_dump(report))
    if not report["residual_zero"]:
        print(f"residual is nonzero ({report['residual_num_terms']} terms)", file=sys.stderr)
        return 1
    return 0


# ---- identity ----------------------------------------------------------


def cmd_identity(args) -> int:
    if args.n < 3:
        raise UsageError("the Hermite identity needs --n >= 3")
    F, S = hermite_identity_terms(args.n)
    residual = hermite_identity_residual(args.n, perturb=args.perturb)
    size = residual_size(residual)
    out = {
        "n": args.n,
        "F": normalize_content(F).to_dict(),
        "S": normalize_content(S).to_dict(),
        "residual_zero": size == 0,
        "residual_num_terms": size,
    }
    print(_dump(out))
    return 0 if size == 0 else 1


# ---- grid --------------------------------------------------------------


def _write(table, path: str | None) -> None:
    if path is None:
        emit_csv(table, sys.stdout)
    else:
        emit_csv(table, path)


def _preset(args) -> int:
    outdir = args.outdir or "."
    os.makedirs(outdir, exist_ok=True)
    written = []
    if args.fig1:
        for n, m in FIG1_PAIRS:
            u = phi_solution(n, m)
            tables = [sample(u, GridSpec(FIG_X, {"y": y})) for y in FIG_Y_VALUES]
            path = os.path.join(outdir, f"fig1_phi_n{n}_m{m}.csv")
            emit_csv(concat_tables(tables), path)
            written.append(path)
    if args.fig2:
        for n, m in FIG2_PAIRS:
            path = os.path.join(outdir, f"fig2_phi_n{n}_m{m}.csv")
            emit_csv(sample(phi_solution(n, m), GridSpec(FIG2_X, {}, FIG2_Y)), path)
            written.append(path)
    if args.fig3:
        x_axis = Axis("x", FIG_X.min, FIG_X.max, FIG_X.steps)
        for n in FIG3_NS:
            u = laguerre_solution(n)
            tables = [sample(u, GridSpec(x_axis, {"t": t})) for t in FIG_Y_VALUES]
            path = os.path.join(outdir, f"fig3_laguerre_n{n}.csv")
            emit_csv(concat_tables(tables), path)
            written.append(path)
    for path in written:
        print(path)
    return 0


def cmd_grid(args) -> int:
    if args.fig1 or args.fig2 or args.fig3:
        return _preset(args)
    u = _build_solution(args)
    try:
        if args.x is None:
            raise UsageError("--x min:max:steps is required")
        axis = Axis.parse("x", args.x)
        fixed = {}
        second = None
        time_var = "t" if (args.laguerre or args.varcoef) else "y"
        if args.y_axis:
            second = Axis.parse("y", args.y_axis)
        elif args.y is not None:
            fixed["y"] = args.y
        if args.t is not None:
            fixed["t"] = args.t
        for v in args.fix or []:
            name, _, val = v.partition("=")
            fixed[name] = float(val)
        grid = GridSpec(axis, fixed, second)
        if not grid.covers(u.variables):
            missing = sorted(set(u.variables) - set(grid.columns))
            hint = f" (e.g. --{time_var} VALUE)" if time_var in missing else ""
            raise UsageError(f"grid leaves {missing} unassigned{hint}")
        table = sample(u, grid)
    except ValueError as exc:
        raise UsageError(str(exc))
    _write(table, args.output)
    return 0


# ---- report ------------------------------------------------------------


def cmd_report(args) -> int:
    items = run_suite(args.suite)
    ok = all(i.passed for i in items)
    if args.json:
        print(_dump({"suite": args.suite, "passed": ok, "items": [i.__dict__ for i in items]}))
    else:
        for i in items:
            print(i.line())
        print(f"{args.suite}: {sum(i.passed for i in items)}/{len(items)} passed")
    return 0 if ok else 1


# ---- parser ------------------------------------------------------------


def _solution_flags(p: argparse.ArgumentParser) -> None:
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--phi", action="store_true", help="n H_{n-1}^(m) / H_n^(m) over (x, y)")
    kind.add_argument("--laguerre", action="store_true", help="L_n'/L_n over (x, t)")
    kind.add_argument("--complete", action="store_true", help="complete-family solution over (x1..xm)")
    kind.add_argument("--combined", action="store_true", help="shifted third-order Hermite solution")
    kind.add_argument("--varcoef", action="store_true", help="variable-coefficient solution over (x, y, t)")
    p.add_argument("--n", type=_int)
    p.add_argument("--m", type=_int)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--gamma", type=_rational)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfcole", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="print a polynomial family member as JSON")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=_int, default=0)
    p.add_argument("--m", type=_int)
    p.add_argument("--N", type=_int)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--vars", help="comma-separated new variable names")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("solution", help="print a rational solution as JSON")
    _solution_flags(p)
    p.set_defaults(func=cmd_solution)

    p = sub.add_parser("verify", help="check that a residual vanishes identically")
    p.add_argument("equation", choices=sorted(EQUATIONS))
    p.add_argument("--n", type=_int)
    p.add_argument("--m", type=_int)
    p.add_argument("--k", type=_int)
    p.add_argument("--N", type=_int)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--perturb", action="store_true", help="negative control: break the solution first")
    p.add_argument("--json", action="store_true", help="machine-readable output (the default)")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms (output is then not reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identity", help="the Hermite identity (d/dx + F_n) F_n = S_n")
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--perturb", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("grid", help="sample a solution on a grid and write CSV")
    _solution_flags(p)
    p.add_argument("--x", help="x range as min:max:steps")
    p.add_argument("--y", type=float, help="fixed y value")
    p.add_argument("--y-axis", help="y range as min:max:steps (surface grid)")
    p.add_argument("--t", type=float, help="fixed t value")
    p.add_argument("--fix", action="append", help="fix another variable, NAME=VALUE")
    p.add_argument("--output", help="CSV path (default: standard output)")
    p.add_argument("--fig1", action="store_true")
    p.add_argument("--fig2", action="store_true")
    p.add_argument("--fig3", action="store_true")
    p.add_argument("--outdir", help="directory for preset CSVs (default: .)")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("report", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_report)
    return parser


_NEGATIVE = re.compile(r"^-\d")


def _glue_values(argv: list[str]) -> list[str]:
    # argparse reads "-5:5:400" or "-1/2" as an option; bind it to its flag
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok.startswith("--") and "=" not in tok and nxt is not None and _NEGATIVE.match(nxt):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:  # argparse usage errors, --help, --version
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hopfcole {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hopfcole {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``gallai <command> [flags]``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import fixtures, oracle, patterns, render
from .coloring import ColoringFormatError, parse_coloring, render_text
from .encode import ConstraintKind, DimacsError, SymmetryBreakMode, build_cnf, parse_dimacs, write_dimacs_to
from .explore import LimitReached, SolverUnknown, brute_extend, gallai_search
from .lattice import GridSpec, LatticeKind
from .patterns import Family
from .solve import SolverConfig, SolverError, Status, solve
from .symmetry import classify

EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_UNKNOWN = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _family(args) -> Family:
    try:
        return Family.parse(args.family, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _constraint(args) -> ConstraintKind:
    try:
        return ConstraintKind.parse(args.constraint)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_kind(args, family: Family) -> LatticeKind:
    if getattr(args, "kind", None) is None:
        return family.kind
    kind = LatticeKind.parse(args.kind)
    if kind is not family.kind:
        raise UsageError(f"family {family} lives on {family.kind.value} grids, not {kind.value}")
    return kind


def _load_coloring(spec: str):
    """A fixture name or a path to a coloring file."""
    if spec in fixtures.FIXTURES:
        fx = fixtures.get(spec)
        return fx.coloring(), fx
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"{spec!r} is neither a fixture name nor a coloring file")
    return parse_coloring(path.read_text()), None


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _solver_config(args) -> SolverConfig:
    engine = args.engine
    if engine == "external" and not (args.solver_cmd or os.environ.get("GALLAI_SOLVER_CMD")):
        raise UsageError("--engine external needs --solver-cmd or $GALLAI_SOLVER_CMD")
    return SolverConfig(engine=engine, command=args.solver_cmd, time_budget=args.timeout,
                        drat_requested=bool(getattr(args, "drat", None)), seed=args.seed)


# --------------------------------------------------------------------------


def cmd_gen(args) -> int:
    family = _family(args)
    _check_kind(args, family)
    inst = build_cnf(GridSpec(family.kind, args.m), family, _constraint(args),
                     SymmetryBreakMode.parse(args.break_mode))
    if args.out in (None, "-"):
        write_dimacs_to(inst, sys.stdout)
    else:
        with open(args.out, "w") as fh:
            write_dimacs_to(inst, fh)
    print(f"c vars={inst.n_vars} clauses={inst.n_clauses} configurations={inst.n_configs}", file=sys.stderr)
    return 0


def cmd_solve(args) -> int:
    cfg = _solver_config(args)
    inst = parse_dimacs(Path(args.input).read_text())
    out = solve(inst, cfg)
    print(out.status.value)
    if out.status is Status.SAT and args.witness_out:
        if inst.grid is not None:
            from .encode import decode_witness
            Path(args.witness_out).write_text(render_text(decode_witness(inst, out.witness)))
        else:
            Path(args.witness_out).write_text("v " + " ".join(map(str, out.witness)) + " 0\n")
    if out.status is Status.UNSAT and args.drat and out.proof_path:
        os.replace(out.proof_path, args.drat)
    return out.status.exit_code


def cmd_search(args) -> int:
    family = _family(args)
    constraint = _constraint(args)
    cfg = _solver_config(args)
    try:
        res = gallai_search(family, constraint, cfg, m_start=args.start, m_limit=args.limit)
    except LimitReached as exc:
        _write(json.dumps(exc.report, indent=2) + "\n", args.report)
        print(str(exc), file=sys.stderr)
        return EXIT_UNKNOWN
    except SolverUnknown as exc:
        _write(json.dumps(exc.report, indent=2) + "\n", args.report)
        print(str(exc), file=sys.stderr)
        return EXIT_UNKNOWN
    witness_file = None
    if args.witness_out and res.witness is not None:
        Path(args.witness_out).write_text(render_text(res.witness))
        witness_file = args.witness_out
    _write(res.to_json(witness_file) + "\n", args.report)
    print(f"m0={res.m0}", file=sys.stderr)
    return 0


def cmd_brute(args) -> int:
    family = _family(args)
    kind = _check_kind(args, family)
    rep = brute_extend(kind, family, _constraint(args), args.mmax, collect_m=args.collect)
    print(rep.line())
    if args.collect is not None and args.out_dir:
        grid, bits = rep.solutions
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        from .coloring import Coloring
        for i, row in enumerate(bits):
            (d / f"sol_{i:07d}.txt").write_text(render_text(Coloring(grid, row, family.k)))
    return 0


def cmd_count(args) -> int:
    family = _family(args)
    kind = _check_kind(args, family)
    print(patterns.count(GridSpec(kind, args.m), family))
    return 0


def cmd_classify(args) -> int:
    if args.solutions_dir:
        files = sorted(Path(args.solutions_dir).glob("*.txt"))
        if not files:
            raise UsageError(f"no *.txt coloring files in {args.solutions_dir}")
        sols = [parse_coloring(f.read_text()) for f in files]
    else:
        if not (args.family and args.m):
            raise UsageError("classify needs --solutions-dir or --family with --m")
        family = _family(args)
        rep = brute_extend(family.kind, family, _constraint(args), args.m, collect_m=args.m)
        sols = rep.solutions
        if len(sols[1]) == 0:
            raise UsageError("no solutions to classify")
    report = classify(sols, args.flip)
    _write(report.to_json() + "\n", args.out)
    print(f"{len(report.classes)} classes, sizes {sorted(report.sizes, reverse=True)}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    col, fx = _load_coloring(args.coloring)
    if args.family is None:
        if fx is None:
            raise UsageError("--family is required for coloring files")
        family, constraint = fx.family, fx.constraint
    else:
        family = _family(args)
        constraint = _constraint(args) if args.constraint else ConstraintKind.NOT_MONO
    if family.kind is not col.grid.kind:
        raise UsageError(f"family {family} does not fit a {col.grid.kind.value} coloring")
    verdict = oracle.check(col, family, constraint)
    print(verdict.describe(col))
    return 0 if verdict.ok else EXIT_VERIFY


def cmd_render(args) -> int:
    col, _ = _load_coloring(args.coloring)
    text = render.svg(col) if args.format == "svg" else render.ascii_art(col)
    _write(text, args.out)
    return 0


def cmd_fixtures(args) -> int:
    if args.list:
        for name, fx in fixtures.FIXTURES.items():
            print(f"{name}\t{fx.grid.kind.value} {fx.grid.m}\t{fx.family}\t{fx.caption}")
        return 0
    fx = fixtures.get(args.emit) if args.emit in fixtures.FIXTURES else None
    if fx is None:
        raise UsageError(f"unknown fixture {args.emit!r}")
    _write(render_text(fx.coloring()), args.out)
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gallai", description=__doc__)
    p.add_argument("--threads", type=int, default=None, help="cap on worker threads")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fam(sp, required=True):
        sp.add_argument("--family", required=required)
        sp.add_argument("--k", type=int, default=None)

    def solver_flags(sp):
        sp.add_argument("--engine", choices=("embedded", "external"), default="embedded")
        sp.add_argument("--solver-cmd", default=None)
        sp.add_argument("--timeout", type=float, default=None)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("gen", help="write a DIMACS instance")
    sp.add_argument("--kind")
    fam(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--constraint", default="not-mono")
    sp.add_argument("--break", dest="break_mode", default="none")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("solve", help="decide a DIMACS instance")
    sp.add_argument("--in", dest="input", required=True)
    solver_flags(sp)
    sp.add_argument("--drat", default=None, help="where to keep the proof (external engine)")
    sp.add_argument("--witness-out", default=None)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("search", help="find the first unsatisfiable grid size")
    fam(sp)
    sp.add_argument("--constraint", default="not-mono")
    sp.add_argument("--start", type=int, default=1)
    sp.add_argument("--limit", type=int, default=30)
    solver_flags(sp)
    sp.add_argument("--report", default=None)
    sp.add_argument("--witness-out", default=None)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("brute", help="count avoiding colorings layer by layer")
    sp.add_argument("--kind")
    fam(sp)
    sp.add_argument("--constraint", default="not-mono")
    sp.add_argument("--mmax", type=int, required=True)
    sp.add_argument("--collect", type=int, default=None)
    sp.add_argument("--out-dir", default=None)
    sp.set_defaults(func=cmd_brute)

    sp = sub.add_parser("count", help="number of configurations")
    sp.add_argument("--kind")
    fam(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("classify", help="symmetry classes of a solution set")
    sp.add_argument("--solutions-dir")
    fam(sp, required=False)
    sp.add_argument("--m", type=int)
    sp.add_argument("--constraint", default="not-mono")
    sp.add_argument("--flip", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="check a coloring against a family")
    sp.add_argument("--coloring", required=True)
    fam(sp, required=False)
    sp.add_argument("--constraint", default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("render", help="draw a coloring")
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("fixtures", help="bundled figure colorings")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_fixtures)
    return p


def _cap_threads(n: int | None) -> None:
    if n is None:
        return
    if n < 1:
        raise UsageError("--threads must be positive")
    # the kernels are serial; this caps BLAS and anything spawned from here
    for var in ("NUMBA_NUM_THREADS", "OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS"):
        os.environ[var] = str(n)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _cap_threads(args.threads)
        return args.func(args)
    except (UsageError, ColoringFormatError, DimacsError, patterns.KindMismatch, ValueError, KeyError) as exc:
        print(f"gallai: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"gallai: solver error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

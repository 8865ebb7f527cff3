"""Command line interface: ``elgotkit solve|traces|unfold|laws``.

Exit status is 0 on success, 1 on a failed check, a specification error or
an unguarded system, and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import sys

from .bridge import trace_set
from .effects import Depth, NonConvergence, monad_by_name
from .lawcheck import (LAW_IDS, BudgetExceeded, LawReport, check_law, enumerate_instances,
                       size_range, space_size)
from .resumption import render_tree
from .speclang import GuardednessError, SpecError, compile_spec, parse, solve


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elgotkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="print the solution tree of every variable")
    s.add_argument("file")
    s.add_argument("--depth", type=_nonneg, default=3)
    s.add_argument("--least", action="store_true",
                   help="give unguarded occurrences least-fixpoint meaning instead of refusing")

    t = sub.add_parser("traces", help="print the successful traces of a variable")
    t.add_argument("file")
    t.add_argument("--var", required=True)
    t.add_argument("--maxlen", type=_nonneg, required=True)
    t.add_argument("--least", action="store_true")

    u = sub.add_parser("unfold", help="print one solution tree")
    u.add_argument("file")
    u.add_argument("--var", required=True)
    u.add_argument("--depth", type=_nonneg, required=True)
    u.add_argument("--least", action="store_true")

    law = sub.add_parser("laws", help="check iteration laws on enumerated instances")
    law.add_argument("--monad", required=True, choices=["maybe", "powerset", "traces"])
    law.add_argument("--law", required=True, choices=list(LAW_IDS) + ["all"])
    law.add_argument("--size", type=_nonneg, required=True,
                     help="carriers X, Y, Z range over sizes 1..SIZE")
    law.add_argument("--depth", type=_nonneg, default=4,
                     help="trace-length bound for the traces monad")
    law.add_argument("--samples", type=_nonneg, default=100,
                     help="random instances per size for the traces monad")
    law.add_argument("--seed", type=int, default=0)
    law.add_argument("--budget", type=_nonneg, default=200_000)
    law.add_argument("--quiet", action="store_true", help="print only failures and totals")
    return p


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    return compile_spec(parse(text))


def _word(w: tuple) -> str:
    if not w:
        return "<eps>"
    sep = "" if all(len(a) == 1 for a in w) else "."
    return sep.join(w)


def _cmd_solve(args, out) -> int:
    system = _load(args.file)
    trees = solve(system, least=args.least)
    for v in system.variables:
        out.write(f"{v} = {render_tree(trees[v], args.depth)}\n")
    return 0


def _cmd_traces(args, out) -> int:
    system = _load(args.file)
    if args.var not in system.variables:
        raise SpecError(f"no variable {args.var!r}")
    if not system.guard.guarded and not args.least:
        raise GuardednessError(list(system.guard.violations))
    for w in trace_set(system, args.var, args.maxlen):
        out.write(_word(w) + "\n")
    return 0


def _cmd_unfold(args, out) -> int:
    system = _load(args.file)
    if args.var not in system.variables:
        raise SpecError(f"no variable {args.var!r}")
    trees = solve(system, least=args.least)
    out.write(render_tree(trees[args.var], args.depth) + "\n")
    return 0


def _cmd_laws(args, out) -> int:
    monad = monad_by_name(args.monad)
    laws = LAW_IDS if args.law == "all" else (args.law,)
    policy = Depth(args.depth) if args.monad == "traces" else None
    if policy is None:
        for law in laws:
            for size in size_range(args.size):
                need = space_size(law, monad, size)
                if need > args.budget:
                    raise BudgetExceeded(need, args.budget)
    report = LawReport()
    for law in laws:
        for size in size_range(args.size):
            tag = "x".join(map(str, size))
            for inst in enumerate_instances(law, monad, size, policy, budget=args.budget,
                                            samples=args.samples, seed=args.seed):
                inst.ident = f"{tag}:{inst.ident}"
                r = check_law(inst)
                report.add(r)
                if not args.quiet or r.status != "PASS":
                    out.write(r.line() + "\n")
    for line in report.summary():
        out.write(f"# {line}\n")
    return 0 if report.ok else 1


COMMANDS = {"solve": _cmd_solve, "traces": _cmd_traces, "unfold": _cmd_unfold, "laws": _cmd_laws}


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except GuardednessError as exc:
        err.write("error: system is not guarded\n")
        for v in exc.violations:
            err.write(f"  {v.describe()}\n")
        return 1
    except SpecError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except BudgetExceeded as exc:
        err.write(f"error: {exc}; lower --size or raise --budget to at least {exc.required}\n")
        return 1
    except NonConvergence as exc:
        err.write(f"error: {exc}\n")
        return 1


def entry() -> None:
    sys.exit(main())

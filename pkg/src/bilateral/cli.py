"""Command-line entry point.

Exit codes: 0 accepted / proved / sound / pass (or no countermodel found),
1 rejected / unproved / unsound / counterexample (or a countermodel found),
2 usage, parse or file errors.
"""
from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path
from typing import Sequence

import yaml

from . import sexpr
from .audit import AuditConfig, ContextRegime, UNSOUND, audit_suite, suite_rows
from .bank import check_hygiene
from .calculus import ScriptError, check_derivation, tree_from_sexpr, write_proof
from .metacalculus import CoordinationMode, MetaScriptError, check_meta_derivation, meta_tree_from_sexpr
from .search import SearchBudget, check_coherence, check_disjunction_property, check_dual_conjunction_property, prove
from .semantics import ModelClass, ModelError, Reading, failing_world, find_countermodel, load_model
from .syntax import ParseError, parse_sequent


class UsageError(Exception):
    pass


def _csv(choices: Sequence[str]):
    def parse(text: str) -> list[str]:
        items = [t.strip() for t in text.split(",") if t.strip()]
        bad = [t for t in items if t not in choices]
        if bad or not items:
            raise argparse.ArgumentTypeError(f"choose from {', '.join(choices)} (comma-separated)")
        return list(dict.fromkeys(items))

    return parse


def _atoms(text: str) -> tuple[str, ...]:
    items = tuple(sorted({t.strip() for t in text.split(",") if t.strip()}))
    if not items:
        raise argparse.ArgumentTypeError("need at least one atom")
    return items


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _natural(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bilateral", description="Bilateral sequent calculus toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check a proof script (plain or line-marked)")
    p.add_argument("script", type=Path)
    p.add_argument("--mode", choices=[m.value for m in CoordinationMode], default="asymmetric")
    p.add_argument("--include-zeta", action="store_true", help="admit zeta-class variants")

    p = sub.add_parser("prove", help="search for a derivation")
    p.add_argument("sequent")
    p.add_argument("--budget", "--depth", dest="budget", type=_natural, default=6)

    p = sub.add_parser("countermodel", help="search for (or check) a countermodel")
    p.add_argument("sequent")
    p.add_argument("--max-worlds", type=_positive, default=3)
    p.add_argument("--class", dest="model_class", choices=[c.value for c in ModelClass], default="nonexclusive")
    p.add_argument("--atoms", type=_atoms, default=None, help="atoms to valuate (default: those of the sequent)")
    p.add_argument("--model", type=Path, help="check this model file instead of searching")

    p = sub.add_parser("audit", help="soundness audit of rules and variants")
    p.add_argument("--reading", type=_csv([r.value for r in Reading]), default=["r1"])
    p.add_argument("--class", dest="model_class", type=_csv([c.value for c in ModelClass]), default=["nonexclusive"])
    p.add_argument("--regime", type=_csv([r.value for r in ContextRegime]), default=["empty"])
    p.add_argument("--mode", choices=[m.value for m in CoordinationMode], default="asymmetric")
    p.add_argument("--max-worlds", type=_positive, default=3)
    p.add_argument("--max-depth", type=_natural, default=2)
    p.add_argument("--budget", type=_positive, default=6)
    p.add_argument("--atoms", type=_atoms, default=("p", "q"))
    p.add_argument("--rules", default="", help="comma-separated rule ids to audit (default: all)")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("props", help="constructiveness properties and search/semantics coherence")
    p.add_argument("--max-depth", type=_natural, default=2)
    p.add_argument("--budget", type=_positive, default=6)
    p.add_argument("--slack", type=_natural, default=2)
    p.add_argument("--max-worlds", type=_positive, default=3)
    p.add_argument("--atoms", type=_atoms, default=("p", "q"))
    p.add_argument("--no-prefilter", action="store_true", help="search every compound instead of screening")
    p.add_argument("--coherence", action="store_true", help="also run the persistence and coherence sweeps")
    return ap


def _cmd_check(args, out) -> int:
    try:
        expr = sexpr.read(args.script.read_text())
    except OSError as e:
        raise UsageError(f"cannot read {args.script}: {e.strerror}") from None
    is_meta = isinstance(expr, list) and len(expr) > 1 and expr[1] in ("-|", "=|")
    if is_meta:
        tree = meta_tree_from_sexpr(expr)
        verdict = check_meta_derivation(tree, CoordinationMode(args.mode), args.include_zeta)
    else:
        verdict = check_derivation(tree_from_sexpr(expr))
    print(verdict, file=out)
    return 0 if verdict else 1


def _cmd_prove(args, out) -> int:
    s = parse_sequent(args.sequent)
    tree = prove(s, SearchBudget(args.budget))
    if tree is None:
        print(f"no derivation of {s} within budget {args.budget}", file=out)
        return 1
    print(write_proof(tree), file=out)
    return 0


def _cmd_countermodel(args, out) -> int:
    s = parse_sequent(args.sequent)
    if args.model is not None:
        try:
            m = load_model(args.model)
        except OSError as e:
            raise UsageError(f"cannot read {args.model}: {e.strerror}") from None
        w = failing_world(m, s)
        if w is None:
            print(f"{s} holds in every world of {args.model}", file=out)
            return 0
        print(f"{s} fails at {w}", file=out)
        return 1
    hit = find_countermodel(s, args.max_worlds, args.atoms, ModelClass(args.model_class))
    if hit is None:
        print(f"no countermodel for {s} with at most {args.max_worlds} worlds", file=out)
        return 0
    m, w = hit
    print(f"countermodel for {s}, fails at {w}: {m.describe()}", file=out)
    out.write(yaml.safe_dump({"fails_at": w, **m.to_dict()}, sort_keys=False, allow_unicode=True))
    return 1


def _cmd_audit(args, out) -> int:
    configs = [
        AuditConfig(
            reading=Reading(r),
            model_class=ModelClass(c),
            context_regime=ContextRegime(g),
            max_worlds=args.max_worlds,
            atoms=args.atoms,
            max_formula_depth=args.max_depth,
            budget=args.budget,
            mode=CoordinationMode(args.mode),
        )
        for r, c, g in itertools.product(args.reading, args.model_class, args.regime)
    ]
    rows = suite_rows()
    if args.rules:
        wanted = [t.strip() for t in args.rules.split(",") if t.strip()]
        known = {r.id for r in rows}
        unknown = [w for w in wanted if w not in known]
        if unknown:
            raise UsageError(f"unknown rule id(s): {', '.join(unknown)}")
        rows = [r for r in rows if r.id in wanted]
    report = audit_suite(configs, rows)
    out.write(report.to_json() if args.format == "json" else report.to_text())
    return 1 if any(v.status == UNSOUND for v in report.cells.values()) else 0


def _cmd_props(args, out) -> int:
    ok = True
    for check in (check_disjunction_property, check_dual_conjunction_property):
        rep = check(args.atoms, args.max_depth, args.budget, args.slack, not args.no_prefilter, args.max_worlds)
        print("\n".join(rep.lines()), file=out)
        ok &= rep.ok
    if args.coherence:
        for rep in (
            check_hygiene(args.max_worlds, args.atoms, args.max_depth),
            check_coherence(args.atoms, args.max_depth, args.budget, args.max_worlds),
        ):
            print("\n".join(rep.lines()), file=out)
            ok &= rep.ok
    return 0 if ok else 1


_COMMANDS = {
    "check": _cmd_check,
    "prove": _cmd_prove,
    "countermodel": _cmd_countermodel,
    "audit": _cmd_audit,
    "props": _cmd_props,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except (ParseError, sexpr.SexprError, ScriptError, MetaScriptError, ModelError, UsageError, yaml.YAMLError) as e:
        print(f"error: {e}", file=err)
        return 2


def main() -> None:
    sys.exit(run())

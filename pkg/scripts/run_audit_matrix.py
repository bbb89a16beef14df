"""Audit the full rule suite over a grid of readings, model classes and context regimes.

Writes one JSON report and one text table per cell group into --out.

    python3 scripts/run_audit_matrix.py --out results/audit
"""
import argparse
import time
from pathlib import Path

from bilateral.audit import AuditConfig, ContextRegime, audit_suite, suite_rows
from bilateral.semantics import ModelClass, Reading

# variants under non-empty contexts run at depth 1: depth 2 gives ~15k context classes
GRID = [
    ("empty", ContextRegime.EMPTY, 2, None),
    ("disjoint", ContextRegime.DISJOINT, 1, None),
    ("arbitrary", ContextRegime.ARBITRARY, 1, None),
    ("disjoint-coordination", ContextRegime.DISJOINT, 2, "coordination"),
    ("arbitrary-coordination", ContextRegime.ARBITRARY, 2, "coordination"),
    ("disjoint-base", ContextRegime.DISJOINT, 2, "base"),
    ("arbitrary-base", ContextRegime.ARBITRARY, 2, "base"),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results/audit"))
    ap.add_argument("--max-worlds", type=int, default=3)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, regime, depth, kind in GRID:
        rows = [r for r in suite_rows() if kind is None or r.kind == kind]
        cfgs = [
            AuditConfig(reading=r, model_class=c, context_regime=regime, max_worlds=args.max_worlds, max_formula_depth=depth)
            for r in Reading
            for c in ModelClass
        ]
        t = time.perf_counter()
        rep = audit_suite(cfgs, rows)
        (args.out / f"{name}.json").write_text(rep.to_json())
        (args.out / f"{name}.txt").write_text(rep.to_text())
        print(f"{name}: {len(rows)} rows x {len(cfgs)} configs in {time.perf_counter() - t:.1f}s")
        for line in rep.summary():
            print("  " + line)


if __name__ == "__main__":
    main()

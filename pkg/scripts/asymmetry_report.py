"""Which line-variants of the right rules fail under the absence reading, and why.

For every unsound variant prints the witness and whether it belongs to the
zeta class; for the non-zeta ones it also shows that the failure survives
shrinking the bounds to one atom, two worlds and depth 0.

    python3 scripts/asymmetry_report.py
"""
import argparse

from bilateral.audit import AuditConfig, audit_suite, format_witness, suite_rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-worlds", type=int, default=3)
    ap.add_argument("--max-depth", type=int, default=2)
    args = ap.parse_args()
    rows = [r for r in suite_rows() if r.kind != "base"]
    cfg = AuditConfig(max_worlds=args.max_worlds, max_formula_depth=args.max_depth)
    rep = audit_suite([cfg], rows)
    expected = set(rep.expected_asymmetry())
    bad = rep.unsound(cfg)
    tiny = AuditConfig(max_worlds=2, atoms=("p",), max_formula_depth=0)
    tiny_bad = set(audit_suite([tiny], [r for r in rows if r.id in bad]).unsound(tiny))
    for rid in bad:
        row = next(r for r in rows if r.id == rid)
        tag = "expected" if rid in expected else "EXTRA"
        v = rep.cells[(rid, cfg.label)]
        print(f"{tag:8} {rid:16} {row.label:14} {row.pattern:10} {format_witness(v.witness)}")
        if rid not in expected:
            print(f"{'':8} still unsound at {tiny.label}: {rid in tiny_bad}")
    undecided = {r.id: rep.cells[(r.id, cfg.label)].undecided for r in rows if rep.cells[(r.id, cfg.label)].undecided}
    print(f"\n{len(bad)} unsound, {len(expected)} expected; undecided candidates: {undecided or 'none'}")
    for line in rep.summary():
        print(line)


if __name__ == "__main__":
    main()

"""Constructiveness properties, semantic hygiene and search/semantics coherence.

    python3 scripts/property_sweep.py --max-depth 2 --budget 6 --slack 2
"""
import argparse
import time

from bilateral.bank import check_hygiene
from bilateral.search import check_coherence, check_disjunction_property, check_dual_conjunction_property


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", default="p,q")
    ap.add_argument("--max-depth", type=int, default=2)
    ap.add_argument("--budget", type=int, default=6)
    ap.add_argument("--slack", type=int, default=2)
    ap.add_argument("--max-worlds", type=int, default=3)
    ap.add_argument("--compare-prefilter", action="store_true", help="rerun without the countermodel screen")
    args = ap.parse_args()
    atoms = tuple(args.atoms.split(","))

    for check in (check_disjunction_property, check_dual_conjunction_property):
        modes = (True, False) if args.compare_prefilter else (True,)
        for prefilter in modes:
            t = time.perf_counter()
            rep = check(atoms, args.max_depth, args.budget, args.slack, prefilter, args.max_worlds)
            print("\n".join(rep.lines()) + f"  [prefilter={prefilter}, {time.perf_counter() - t:.1f}s]")

    t = time.perf_counter()
    print("\n".join(check_hygiene(args.max_worlds, atoms, args.max_depth).lines()))
    print("\n".join(check_coherence(atoms, args.max_depth, args.budget, args.max_worlds).lines()))
    print(f"hygiene and coherence in {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()

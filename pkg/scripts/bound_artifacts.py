"""Pairs A, B with both A and B refutable-invalid but A & B (or A | B dually)
looking valid within a world bound, re-examined with one more world.

These are exactly the candidates the audit leaves undecided for the
double-lined conjunction (disjunction) variants: the dual conjunction
property forbids a derivation, so only the world bound can make them look valid.

    python3 scripts/bound_artifacts.py --max-worlds 3
"""
import argparse

from bilateral.bank import ModelBank
from bilateral.semantics import ModelClass
from bilateral.syntax import enumerate_formulas


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-worlds", type=int, default=3)
    ap.add_argument("--max-depth", type=int, default=2)
    args = ap.parse_args()
    atoms = ["p", "q"]
    small = ModelBank.rooted(args.max_worlds, atoms, ModelClass.NONEXCLUSIVE)
    big = ModelBank.rooted(args.max_worlds + 1, atoms, ModelClass.NONEXCLUSIVE)
    classes = small.classes(enumerate_formulas(atoms, args.max_depth))
    for which, name, join in ((1, "conjunction, minus", "&"), (0, "disjunction, plus", "|")):
        open_ = [c for c in classes if not small.valid(small.full, (c.plus, c.minus)[which])]
        hits = [
            (a.rep, b.rep)
            for a in open_
            for b in open_
            if small.valid(small.full, (a.plus, a.minus)[which] | (b.plus, b.minus)[which])
        ]
        survive = [
            (a, b) for a, b in hits if big.valid(big.full, big.value(a)[which] | big.value(b)[which])
        ]
        print(
            f"{name}: {len(hits)} class pairs valid at {args.max_worlds} worlds with both components invalid; "
            f"{len(survive)} still valid at {args.max_worlds + 1}"
        )
        for a, b in hits[:3]:
            print(f"  e.g. A = {a}, B = {b}  ({join})")


if __name__ == "__main__":
    main()

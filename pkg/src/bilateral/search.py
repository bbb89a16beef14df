"""Depth-bounded backward proof search over the base calculus."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .calculus import DerivationTree, RuleSchema, base_rules, conclusion_instances
from .syntax import And, Or, Sequent, Sign

# premise-growing rules go last
_LATE = ("imp-lg", "coimp-ld")


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 6  # tree height: an axiom leaf alone has height 1

    def __post_init__(self):
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")


def search_order(rules: Iterable[RuleSchema] | None = None) -> list[RuleSchema]:
    rules = base_rules() if rules is None else list(rules)
    return [r for r in rules if r.id not in _LATE] + [r for r in rules if r.id in _LATE]


class Prover:
    """Backward search with per-branch repetition pruning.

    Successes are cached with their height. A failure is cached only when no
    branch below it was cut by the repetition check, since such a failure does
    not depend on the ancestors of the goal.
    """

    def __init__(self, rules: Iterable[RuleSchema] | None = None):
        self.rules = search_order(rules)
        self._proved: dict[Sequent, tuple[DerivationTree, int]] = {}
        self._failed: dict[Sequent, int] = {}
        self.nodes = 0

    def prove(self, s: Sequent, budget: SearchBudget | int = SearchBudget()) -> DerivationTree | None:
        depth = budget.max_depth if isinstance(budget, SearchBudget) else int(budget)
        tree, _ = self._search(s, depth, frozenset())
        return tree

    def _search(self, s: Sequent, depth: int, ancestors: frozenset) -> tuple[DerivationTree | None, bool]:
        if depth <= 0:
            return None, False
        hit = self._proved.get(s)
        if hit is not None and hit[1] <= depth:
            return hit[0], False
        if self._failed.get(s, 0) >= depth:
            return None, False
        self.nodes += 1
        anc = ancestors | {s}
        pruned = False
        for rule in self.rules:
            for inst in conclusion_instances(rule, s, minimal=True):
                if any(p in anc for p in inst.premises):
                    pruned = True
                    continue
                kids = []
                for p in inst.premises:
                    t, cut = self._search(p, depth - 1, anc)
                    pruned |= cut
                    if t is None:
                        break
                    kids.append(t)
                else:
                    tree = DerivationTree(s, rule.id, tuple(kids))
                    self._proved[s] = (tree, tree.height())
                    return tree, False
        if not pruned:
            self._failed[s] = max(self._failed.get(s, 0), depth)
        return None, pruned


def prove(s: Sequent, budget: SearchBudget | int = SearchBudget()) -> DerivationTree | None:
    """A derivation of ``s`` of height at most the budget, or None.

    Deterministic: rules are tried in catalogue order (premise-growing left
    rules last) and context formulas in canonical order.
    """
    return Prover().prove(s, budget)


# ---------------------------------------------------------------------------
# Constructiveness properties
# ---------------------------------------------------------------------------


@dataclass
class PropertyReport:
    """Outcome of a sweep over pairs (A, B) of pool formulas.

    A pair passes when a component is derivable at ``budget + slack``.
    Otherwise the compound is shown underivable, either by a countermodel in
    the bank (soundness of the calculus makes that conclusive) or by search at
    ``budget``; a derivable compound with no derivable component is a
    counterexample.
    """

    name: str
    atoms: tuple[str, ...]
    max_depth: int
    budget: int
    slack: int
    pairs: int = 0
    component_derivable: int = 0
    compound_countermodel: int = 0
    compound_searched: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def lines(self) -> list[str]:
        head = f"{self.name}: atoms {{{','.join(self.atoms)}}}, depth <= {self.max_depth}, budget {self.budget}+{self.slack}"
        body = (
            f"  pairs {self.pairs}; component derivable {self.component_derivable}; "
            f"compound refuted by countermodel {self.compound_countermodel}; "
            f"compound searched {self.compound_searched}; counterexamples {len(self.counterexamples)}"
        )
        out = [head, body]
        out += [f"  counterexample: A = {a}, B = {b}" for a, b in self.counterexamples]
        return out


def _property_sweep(name, ctor, sign, atom_set, max_depth, budget, slack, prefilter, max_worlds) -> PropertyReport:
    import numpy as np

    from .bank import ModelBank
    from .semantics import ModelClass
    from .syntax import enumerate_formulas, formula_key, sequent

    atom_set = tuple(sorted(set(atom_set)))
    pool = list(enumerate_formulas(atom_set, max_depth))
    rep = PropertyReport(name, atom_set, max_depth, budget, slack, pairs=len(pool) ** 2)
    prover = Prover()
    rest = [f for f in pool if prover.prove(sequent((), (), sign, f), budget + slack) is None]
    rep.component_derivable = rep.pairs - len(rest) ** 2
    if not rest:
        return rep
    if prefilter:
        # group by the one support that matters: plus of A | B and minus of
        # A & B are both unions of the components' supports
        bank = ModelBank.rooted(max_worlds, atom_set, ModelClass.NONEXCLUSIVE)
        which = 0 if sign is Sign.PLUS else 1
        groups: dict[bytes, list] = {}
        for f in rest:
            groups.setdefault(bank.value(f)[which].tobytes(), []).append(f)
        members = list(groups.values())
        vals = np.array([bank.value(g[0])[which] for g in members])
        sizes = np.array([len(g) for g in members])
        covered = np.array([bank.valid(bank.full[None], v[None] | vals) for v in vals])
        rep.compound_countermodel = int((np.outer(sizes, sizes) * ~covered).sum())
        open_pairs = [(members[i], members[j]) for i, j in zip(*np.nonzero(covered))]
    else:
        open_pairs = [(rest, rest)]
    for left, right in open_pairs:
        for a in left:
            for b in right:
                rep.compound_searched += 1
                if prover.prove(sequent((), (), sign, ctor(a, b)), budget) is not None:
                    rep.counterexamples.append((a, b))
    rep.counterexamples.sort(key=lambda ab: (formula_key(ab[0]), formula_key(ab[1])))
    return rep


def check_disjunction_property(
    atom_set: Iterable[str] = ("p", "q"),
    max_depth_formula: int = 2,
    budget: int = 6,
    slack: int = 2,
    prefilter: bool = True,
    max_worlds: int = 3,
) -> PropertyReport:
    """Derivable ``A | B`` (empty contexts) must have a derivable disjunct."""
    return _property_sweep(
        "disjunction property", Or, Sign.PLUS, atom_set, max_depth_formula, budget, slack, prefilter, max_worlds
    )


def check_dual_conjunction_property(
    atom_set: Iterable[str] = ("p", "q"),
    max_depth_formula: int = 2,
    budget: int = 6,
    slack: int = 2,
    prefilter: bool = True,
    max_worlds: int = 3,
) -> PropertyReport:
    """Dually derivable ``A & B`` must have a dually derivable conjunct."""
    return _property_sweep(
        "dual conjunction property", And, Sign.MINUS, atom_set, max_depth_formula, budget, slack, prefilter, max_worlds
    )


@dataclass
class CoherenceReport:
    sequents: int = 0
    derivable: int = 0
    violations: list = field(default_factory=list)  # derivable sequents with a countermodel

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [
            f"search/semantics coherence: {self.sequents} sequents, {self.derivable} derivable, "
            f"{len(self.violations)} derivable with a countermodel"
        ]
        return out + [f"  violation: {s}" for s in self.violations]


def check_coherence(
    atom_set: Iterable[str] = ("p", "q"),
    max_depth_formula: int = 2,
    budget: int = 6,
    max_worlds: int = 3,
    context_depth: int = 0,
    context_succedent_depth: int = 1,
) -> CoherenceReport:
    """No derivable sequent may have a countermodel.

    Swept: every pool formula under both signs with empty contexts, plus every
    sequent with at most one context formula per side of depth
    ``context_depth`` and a succedent of depth ``context_succedent_depth``.
    """
    from .bank import ModelBank
    from .semantics import ModelClass
    from .syntax import enumerate_formulas, sequent

    atom_set = tuple(sorted(set(atom_set)))
    bank = ModelBank.rooted(max_worlds, atom_set, ModelClass.NONEXCLUSIVE)
    prover = Prover()
    rep = CoherenceReport()

    def visit(s: Sequent) -> None:
        rep.sequents += 1
        if prover.prove(s, budget) is None:
            return
        rep.derivable += 1
        ctx = bank.full
        for g in s.gamma:
            ctx = ctx & bank.value(g)[0]
        for d in s.delta:
            ctx = ctx & bank.value(d)[1]
        succ = bank.value(s.succedent)[0 if s.sign is Sign.PLUS else 1]
        if not bank.valid(ctx, succ):
            rep.violations.append(s)

    for f in enumerate_formulas(atom_set, max_depth_formula):
        for sign in Sign:
            visit(sequent((), (), sign, f))
    side = [None, *enumerate_formulas(atom_set, context_depth)]
    for g in side:
        for d in side:
            if g is None and d is None:
                continue
            for f in enumerate_formulas(atom_set, context_succedent_depth):
                for sign in Sign:
                    visit(sequent([] if g is None else [g], [] if d is None else [d], sign, f))
    return rep

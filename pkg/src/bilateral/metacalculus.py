"""Two-level rules: single (proved) and double (refuted) lines between sequents.

A variant of a base rule re-draws each judgment either single-lined over its
original sequent or double-lined over the sign-flipped sequent. Variants with a
double-lined premise and a single-lined conclusion form the zeta class.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import sexpr
from .calculus import (
    DerivationTree,
    RuleSchema,
    SequentPattern,
    Verdict,
    base_rules,
    rule_table,
    conclusion_instances,
)
from .syntax import LineType, Meta, MetaJudgment, Sequent, Sign, dual_sequent, parse_sequent, print_sequent

S, D = LineType.SINGLE, LineType.DOUBLE
Judgment = tuple[LineType, SequentPattern]


class CoordinationMode(enum.Enum):
    ASYMMETRIC = "asymmetric"  # S1a, S1b
    UNIFIED = "unified"  # S1a, S1b, S2a, S2b
    INDEPENDENT = "independent"  # none


@dataclass(frozen=True)
class MetaRuleSchema:
    id: str
    premises: tuple[Judgment, ...]
    conclusion: Judgment
    origin: str  # base rule id, or "structural"
    label: str = ""

    @property
    def arity(self) -> int:
        return len(self.premises)

    @property
    def code(self) -> str:
        """Line pattern such as ``DS>D`` (premises, then conclusion)."""
        return "".join(_letter(l) for l, _ in self.premises) + ">" + _letter(self.conclusion[0])

    def skeleton(self) -> RuleSchema:
        """The rule obtained by forgetting the lines."""
        return RuleSchema(self.id, tuple(p for _, p in self.premises), self.conclusion[1], self.label)

    def formula_vars(self) -> list[str]:
        return self.skeleton().formula_vars()

    def has_sign_var(self) -> bool:
        return self.skeleton().has_sign_var()

    def __str__(self) -> str:
        prem = "   ".join(f"{l} {p}" for l, p in self.premises) or "(no premises)"
        return f"{self.id}: {prem}  /  {self.conclusion[0]} {self.conclusion[1]}"


def _letter(line: LineType) -> str:
    return "S" if line is S else "D"


@dataclass(frozen=True)
class PatternLabel:
    double_premises: int
    conclusion: LineType

    @property
    def zeta(self) -> bool:
        return self.double_premises > 0 and self.conclusion is S

    def __str__(self) -> str:
        tag = " zeta" if self.zeta else ""
        return f"{self.double_premises}D>{_letter(self.conclusion)}{tag}"


# display names for the conjunction family
_LABELS = {
    "and-r+:SS>S": "∧R⁺₁",
    "and-r+:SS>D": "∧R⁻₃",
    "and-r+:DD>D": "∧R⁻₄",
    "and-r+:DD>S": "∧R⁺ζ",
    "and-r-a:S>S": "∧R⁻₁ₐ",
    "and-r-b:S>S": "∧R⁻₁ᵦ",
    "and-r-a:S>D": "∧R⁺₂ₐ",
    "and-r-b:S>D": "∧R⁺₂ᵦ",
    "and-r-a:D>D": "∧R⁺₃ₐ",
    "and-r-b:D>D": "∧R⁺₃ᵦ",
    "and-r-a:D>S": "∧R⁻ζₐ",
    "and-r-b:D>S": "∧R⁻ζᵦ",
}


def _render(line: LineType, p: SequentPattern) -> Judgment:
    return (line, p) if line is S else (line, p.dual())


def generate_variants(rule: RuleSchema) -> list[MetaRuleSchema]:
    """All 2^(k+1) line assignments of a k-premise rule, all-single first."""
    out = []
    for lines in itertools.product((S, D), repeat=rule.arity + 1):
        prem = tuple(_render(l, p) for l, p in zip(lines, rule.premises))
        concl = _render(lines[-1], rule.conclusion)
        code = "".join(_letter(l) for l in lines[:-1]) + ">" + _letter(lines[-1])
        vid = f"{rule.id}:{code}"
        out.append(MetaRuleSchema(vid, prem, concl, rule.id, _LABELS.get(vid, f"{rule.label}[{code}]")))
    return out


def single_variant(rule: RuleSchema) -> MetaRuleSchema:
    return generate_variants(rule)[0]


def as_base_rule(v: MetaRuleSchema) -> RuleSchema | None:
    """The base rule an all-single variant re-expresses, else None."""
    if v.conclusion[0] is not S or any(l is not S for l, _ in v.premises):
        return None
    base = rule_table().get(v.origin)
    if base is None or base.premises != tuple(p for _, p in v.premises) or base.conclusion != v.conclusion[1]:
        return None
    return base


def classify_variant(v: MetaRuleSchema) -> PatternLabel:
    return PatternLabel(sum(1 for l, _ in v.premises if l is D), v.conclusion[0])


_A = Meta("A")


def _sp(sign: Sign) -> SequentPattern:
    return SequentPattern((), (), sign, _A)


S1A = MetaRuleSchema("s1a", ((S, _sp(Sign.PLUS)),), (D, _sp(Sign.MINUS)), "structural", "S1a")
S1B = MetaRuleSchema("s1b", ((S, _sp(Sign.MINUS)),), (D, _sp(Sign.PLUS)), "structural", "S1b")
S2A = MetaRuleSchema("s2a", ((D, _sp(Sign.PLUS)),), (S, _sp(Sign.MINUS)), "structural", "S2a")
S2B = MetaRuleSchema("s2b", ((D, _sp(Sign.MINUS)),), (S, _sp(Sign.PLUS)), "structural", "S2b")
STRUCTURAL = (S1A, S1B, S2A, S2B)


def coordination_rules(mode: CoordinationMode) -> list[MetaRuleSchema]:
    if mode is CoordinationMode.ASYMMETRIC:
        return [S1A, S1B]
    if mode is CoordinationMode.UNIFIED:
        return [S1A, S1B, S2A, S2B]
    return []


def translate_unified(j: MetaJudgment) -> Sequent:
    return j.sequent if j.line is S else dual_sequent(j.sequent)


def translate_pattern(j: Judgment) -> SequentPattern:
    line, p = j
    return p if line is S else p.dual()


# ---------------------------------------------------------------------------
# Meta-derivations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MetaDerivationTree:
    conclusion: MetaJudgment
    rule_id: str
    children: tuple["MetaDerivationTree", ...] = ()


def all_variants(rules: Iterable[RuleSchema] | None = None) -> list[MetaRuleSchema]:
    return [v for r in (base_rules() if rules is None else rules) for v in generate_variants(r)]


def active_rules(mode: CoordinationMode, include_zeta: bool = False) -> dict[str, MetaRuleSchema]:
    table: dict[str, MetaRuleSchema] = {}
    for v in all_variants():
        if include_zeta or not classify_variant(v).zeta:
            table[v.id] = v
            if as_base_rule(v) is not None:
                table[v.origin] = v  # a bare base id names its all-single variant
    for s in coordination_rules(mode):
        table[s.id] = s
    return table


def _known_ids() -> set[str]:
    ids = {v.id for v in all_variants()} | {r.id for r in base_rules()}
    return ids | {s.id for s in STRUCTURAL}


def check_meta_derivation(
    tree: MetaDerivationTree, mode: CoordinationMode, include_zeta: bool = False
) -> Verdict:
    return _check(tree, active_rules(mode, include_zeta), _known_ids(), ())


def _check(node: MetaDerivationTree, table: Mapping[str, MetaRuleSchema], known: set[str], path) -> Verdict:
    rule = table.get(node.rule_id)
    if rule is None:
        if node.rule_id in known:
            return Verdict(False, path, f"rule not in active set: {node.rule_id}")
        return Verdict(False, path, f"unknown rule {node.rule_id!r}")
    if len(node.children) != rule.arity:
        return Verdict(False, path, f"arity mismatch: {rule.id} takes {rule.arity} premises, got {len(node.children)}")
    if node.conclusion.line is not rule.conclusion[0]:
        return Verdict(False, path, f"conclusion of {rule.id} must be {rule.conclusion[0]}-lined")
    for i, (child, (line, _)) in enumerate(zip(node.children, rule.premises)):
        if child.conclusion.line is not line:
            return Verdict(False, path, f"premise {i} of {rule.id} must be {line}-lined")
    premises = tuple(c.conclusion.sequent for c in node.children)
    if not any(inst.premises == premises for inst in conclusion_instances(rule.skeleton(), node.conclusion.sequent)):
        return Verdict(False, path, f"not an instance of {rule.id}")
    for i, child in enumerate(node.children):
        v = _check(child, table, known, path + (i,))
        if not v:
            return v
    return Verdict(True)


def collapse_tree(tree: MetaDerivationTree) -> DerivationTree:
    """Translate node-wise; coordination steps become identities and vanish."""
    table = {v.id: v for v in all_variants()}
    table.update({r.id: single_variant(r) for r in base_rules()})
    return _collapse(tree, table)


def _collapse(node: MetaDerivationTree, table) -> DerivationTree:
    if node.rule_id in {s.id for s in STRUCTURAL}:
        (child,) = node.children
        return _collapse(child, table)
    rule = table[node.rule_id]
    return DerivationTree(
        translate_unified(node.conclusion), rule.origin, tuple(_collapse(c, table) for c in node.children)
    )


# ---------------------------------------------------------------------------
# Meta-proof scripts: (rule-id "=|" "sequent" child*)
# ---------------------------------------------------------------------------


class MetaScriptError(ValueError):
    pass


_LINES = {"-|": S, "=|": D}


def meta_tree_from_sexpr(expr) -> MetaDerivationTree:
    if not isinstance(expr, list) or len(expr) < 3:
        raise MetaScriptError('expected (rule-id "-|" "sequent" child*)')
    rule_id, line, text, *kids = expr
    if isinstance(rule_id, (list, sexpr.Quoted)) or not isinstance(text, sexpr.Quoted):
        raise MetaScriptError(f"malformed node {sexpr.write(expr)[:60]}")
    if line not in _LINES:
        raise MetaScriptError(f'line marker must be "-|" or "=|", got {line!r}')
    judgment = MetaJudgment(_LINES[line], parse_sequent(text))
    return MetaDerivationTree(judgment, rule_id, tuple(meta_tree_from_sexpr(k) for k in kids))


def read_meta_proof(text: str) -> MetaDerivationTree:
    return meta_tree_from_sexpr(sexpr.read(text))


def meta_tree_to_sexpr(tree: MetaDerivationTree) -> list:
    j = tree.conclusion
    head = [tree.rule_id, sexpr.Quoted(j.line.value), sexpr.Quoted(print_sequent(j.sequent))]
    return head + [meta_tree_to_sexpr(c) for c in tree.children]


def write_meta_proof(tree: MetaDerivationTree) -> str:
    return sexpr.write(meta_tree_to_sexpr(tree))

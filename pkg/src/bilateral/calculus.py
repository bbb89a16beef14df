"""The single-lined sequent calculus: rule catalogue, instantiation, checking.

Contexts are sets, so weakening and contraction are absorbed and there is no
cut rule. Every pattern carries the implicit side contexts Gamma and Delta;
``SequentPattern.gamma``/``delta`` list only the formulas added to them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

from . import sexpr
from .syntax import (
    BOT,
    TOP,
    And,
    Binary,
    CoImp,
    Formula,
    Imp,
    Meta,
    Or,
    Sequent,
    Sign,
    parse_sequent,
    print_sequent,
    sorted_formulas,
)

PLUS, MINUS = Sign.PLUS, Sign.MINUS
GAMMA, DELTA, SIGN_VAR = "Gamma", "Delta", "*"


class InstantiationError(ValueError):
    pass


@dataclass(frozen=True)
class SequentPattern:
    gamma: tuple[Formula, ...]
    delta: tuple[Formula, ...]
    sign: Sign | None  # None is the sign variable "*"
    succedent: Formula
    flip: bool = False  # with a sign variable: the sequent carries the dual of "*"

    def __str__(self) -> str:
        g = ", ".join(["Γ"] + [str(f) for f in self.gamma])
        d = ", ".join(["Δ"] + [str(f) for f in self.delta])
        s = ("~*" if self.flip else "*") if self.sign is None else self.sign.value
        return f"({g}; {d}) |-{s} {self.succedent}"

    def dual(self) -> "SequentPattern":
        if self.sign is None:
            return SequentPattern(self.gamma, self.delta, None, self.succedent, not self.flip)
        return SequentPattern(self.gamma, self.delta, self.sign.dual, self.succedent)

    def sign_under(self, binds: Mapping) -> Sign:
        if self.sign is not None:
            return self.sign
        return binds[SIGN_VAR].dual if self.flip else binds[SIGN_VAR]

    def formula_vars(self) -> set[str]:
        out: set[str] = set()
        for f in (*self.gamma, *self.delta, self.succedent):
            out |= pattern_vars(f)
        return out


@dataclass(frozen=True)
class RuleSchema:
    id: str
    premises: tuple[SequentPattern, ...]
    conclusion: SequentPattern
    label: str = ""
    side_condition: Callable[[Mapping], bool] | None = field(default=None, compare=False)
    side_description: str = ""

    @property
    def arity(self) -> int:
        return len(self.premises)

    def formula_vars(self) -> list[str]:
        names: set[str] = self.conclusion.formula_vars()
        for p in self.premises:
            names |= p.formula_vars()
        return sorted(names)

    def has_sign_var(self) -> bool:
        return any(p.sign is None for p in (*self.premises, self.conclusion))

    def __str__(self) -> str:
        prem = "   ".join(str(p) for p in self.premises) or "(no premises)"
        return f"{self.id}: {prem}  /  {self.conclusion}"


@dataclass(frozen=True)
class RuleInstance:
    rule_id: str
    premises: tuple[Sequent, ...]
    conclusion: Sequent


@dataclass(frozen=True)
class DerivationTree:
    conclusion: Sequent
    rule_id: str
    children: tuple["DerivationTree", ...] = ()

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=0)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    path: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        if self.accepted:
            return "accepted"
        where = "root" if not self.path else "root/" + "/".join(map(str, self.path))
        return f"rejected at {where}: {self.reason}"


# ---------------------------------------------------------------------------
# Patterns
# ---------------------------------------------------------------------------


def pattern_vars(f: Formula) -> set[str]:
    if isinstance(f, Meta):
        return {f.name}
    if isinstance(f, Binary):
        return pattern_vars(f.left) | pattern_vars(f.right)
    return set()


def substitute(f: Formula, binds: Mapping) -> Formula:
    if isinstance(f, Meta):
        try:
            return binds[f.name]
        except KeyError:
            raise InstantiationError(f"missing binding for {f.name}") from None
    if isinstance(f, Binary):
        return type(f)(substitute(f.left, binds), substitute(f.right, binds))
    return f


def match_formula(pat: Formula, f: Formula, binds: dict) -> dict | None:
    """Extend ``binds`` so that ``pat`` instantiates to ``f``; None if impossible."""
    if isinstance(pat, Meta):
        bound = binds.get(pat.name)
        if bound is None:
            out = dict(binds)
            out[pat.name] = f
            return out
        return binds if bound == f else None
    if isinstance(pat, Binary):
        if type(pat) is not type(f):
            return None
        b = match_formula(pat.left, f.left, binds)
        return None if b is None else match_formula(pat.right, f.right, b)
    return binds if pat == f else None


def instantiate_pattern(p: SequentPattern, binds: Mapping) -> Sequent:
    sign = p.sign_under(binds)
    gamma = frozenset(binds[GAMMA]).union(substitute(f, binds) for f in p.gamma)
    delta = frozenset(binds[DELTA]).union(substitute(f, binds) for f in p.delta)
    return Sequent(gamma, delta, sign, substitute(p.succedent, binds))


def instantiate(rule: RuleSchema, bindings: Mapping) -> RuleInstance:
    """Concrete premises and conclusion of ``rule`` under ``bindings``.

    Bindings map formula metavariables ("A", "B", "C") to formulas, "Gamma" and
    "Delta" to formula sets and, for rules with a sign variable, "*" to a Sign.
    """
    needed = rule.formula_vars() + [GAMMA, DELTA] + ([SIGN_VAR] if rule.has_sign_var() else [])
    for name in needed:
        if name not in bindings:
            raise InstantiationError(f"missing binding for {name}")
    if rule.side_condition is not None and not rule.side_condition(bindings):
        raise InstantiationError(f"side condition violated: {rule.side_description or rule.id}")
    return RuleInstance(
        rule.id,
        tuple(instantiate_pattern(p, bindings) for p in rule.premises),
        instantiate_pattern(rule.conclusion, bindings),
    )


def _match_extras(pats: Sequence[Formula], pool: frozenset, binds: dict) -> Iterator[tuple[dict, frozenset]]:
    if not pats:
        yield binds, frozenset()
        return
    head, rest = pats[0], pats[1:]
    for f in sorted_formulas(pool):
        b = match_formula(head, f, binds)
        if b is not None:
            for b2, used in _match_extras(rest, pool, b):
                yield b2, used | {f}


def _subsets(xs: frozenset) -> Iterator[frozenset]:
    items = sorted_formulas(xs)
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def conclusion_instances(rule: RuleSchema, goal: Sequent, minimal: bool = False) -> Iterator[RuleInstance]:
    """All instances of ``rule`` whose conclusion is exactly ``goal``.

    With ``minimal`` only the instance whose side contexts exclude the matched
    principal formulas is produced for each match (what backward search uses).
    """
    c = rule.conclusion
    if c.sign is not None and c.sign is not goal.sign:
        return
    binds: dict = {} if c.sign is not None else {SIGN_VAR: goal.sign.dual if c.flip else goal.sign}
    binds = match_formula(c.succedent, goal.succedent, binds)
    if binds is None:
        return
    seen: set[RuleInstance] = set()
    for bg, used_g in _match_extras(c.gamma, goal.gamma, binds):
        for bd, used_d in _match_extras(c.delta, goal.delta, bg):
            if any(v not in bd for v in rule.formula_vars()):
                continue
            g0, d0 = goal.gamma - used_g, goal.delta - used_d
            gs = [g0] if minimal else [g0 | s for s in _subsets(used_g)]
            ds = [d0] if minimal else [d0 | s for s in _subsets(used_d)]
            for g in gs:
                for d in ds:
                    full = dict(bd)
                    full[GAMMA], full[DELTA] = g, d
                    if rule.side_condition is not None and not rule.side_condition(full):
                        continue
                    inst = instantiate(rule, full)
                    if inst.conclusion == goal and inst not in seen:
                        seen.add(inst)
                        yield inst


# ---------------------------------------------------------------------------
# The catalogue
# ---------------------------------------------------------------------------

A, B, C = Meta("A"), Meta("B"), Meta("C")


def _p(gamma=(), delta=(), sign: Sign | None = PLUS, succ: Formula = C) -> SequentPattern:
    return SequentPattern(tuple(gamma), tuple(delta), sign, succ)


def _r(id: str, label: str, premises, conclusion) -> RuleSchema:
    return RuleSchema(id, tuple(premises), conclusion, label)


_CATALOGUE: tuple[RuleSchema, ...] = (
    # initial sequents and constants
    _r("ax+", "Ax⁺", [], _p([A], [], PLUS, A)),
    _r("ax-", "Ax⁻", [], _p([], [A], MINUS, A)),
    _r("top-r+", "⊤R⁺", [], _p(sign=PLUS, succ=TOP)),
    _r("bot-r-", "⊥R⁻", [], _p(sign=MINUS, succ=BOT)),
    _r("bot-l", "⊥LΓ", [], _p([BOT], [], None, C)),
    _r("top-l", "⊤LΔ", [], _p([], [TOP], None, C)),
    # right rules
    _r("and-r+", "∧R⁺", [_p(succ=A), _p(succ=B)], _p(succ=And(A, B))),
    _r("and-r-a", "∧R⁻ₐ", [_p(sign=MINUS, succ=A)], _p(sign=MINUS, succ=And(A, B))),
    _r("and-r-b", "∧R⁻ᵦ", [_p(sign=MINUS, succ=B)], _p(sign=MINUS, succ=And(A, B))),
    _r("or-r+a", "∨R⁺ₐ", [_p(succ=A)], _p(succ=Or(A, B))),
    _r("or-r+b", "∨R⁺ᵦ", [_p(succ=B)], _p(succ=Or(A, B))),
    _r("or-r-", "∨R⁻", [_p(sign=MINUS, succ=A), _p(sign=MINUS, succ=B)], _p(sign=MINUS, succ=Or(A, B))),
    _r("imp-r+", "→R⁺", [_p([A], [], PLUS, B)], _p(succ=Imp(A, B))),
    _r("imp-r-", "→R⁻", [_p(succ=A), _p(sign=MINUS, succ=B)], _p(sign=MINUS, succ=Imp(A, B))),
    _r("coimp-r-", "⤙R⁻", [_p([], [A], MINUS, B)], _p(sign=MINUS, succ=CoImp(A, B))),
    _r("coimp-r+", "⤙R⁺", [_p(sign=MINUS, succ=A), _p(succ=B)], _p(succ=CoImp(A, B))),
    # invertible left rules
    _r("and-lg", "∧LΓ", [_p([A, B], [], None)], _p([And(A, B)], [], None)),
    _r("and-ld", "∧LΔ", [_p([], [A], None), _p([], [B], None)], _p([], [And(A, B)], None)),
    _r("or-lg", "∨LΓ", [_p([A], [], None), _p([B], [], None)], _p([Or(A, B)], [], None)),
    _r("or-ld", "∨LΔ", [_p([], [A, B], None)], _p([], [Or(A, B)], None)),
    _r("imp-ld", "→LΔ", [_p([A], [B], None)], _p([], [Imp(A, B)], None)),
    _r("coimp-lg", "⤙LΓ", [_p([B], [A], None)], _p([CoImp(A, B)], [], None)),
    # premise-growing left rules, principal formula kept in the first premise
    _r("imp-lg", "→LΓ", [_p([Imp(A, B)], [], PLUS, A), _p([B], [], None)], _p([Imp(A, B)], [], None)),
    _r("coimp-ld", "⤙LΔ", [_p([], [CoImp(A, B)], MINUS, A), _p([], [B], None)], _p([], [CoImp(A, B)], None)),
)

RIGHT_RULE_IDS: tuple[str, ...] = (
    "and-r+", "and-r-a", "and-r-b", "or-r+a", "or-r+b", "or-r-",
    "imp-r+", "imp-r-", "coimp-r-", "coimp-r+",
)


def base_rules() -> list[RuleSchema]:
    return list(_CATALOGUE)


def rule_table() -> dict[str, RuleSchema]:
    return {r.id: r for r in _CATALOGUE}


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


def check_derivation(tree: DerivationTree, rules: Mapping[str, RuleSchema] | None = None) -> Verdict:
    table = rule_table() if rules is None else rules
    return _check(tree, table, ())


def _check(node: DerivationTree, table: Mapping[str, RuleSchema], path: tuple[int, ...]) -> Verdict:
    rule = table.get(node.rule_id)
    if rule is None:
        return Verdict(False, path, f"unknown rule {node.rule_id!r}")
    if len(node.children) != rule.arity:
        return Verdict(False, path, f"arity mismatch: {rule.id} takes {rule.arity} premises, got {len(node.children)}")
    premises = tuple(c.conclusion for c in node.children)
    if not any(inst.premises == premises for inst in conclusion_instances(rule, node.conclusion)):
        return Verdict(False, path, f"not an instance of {rule.id}")
    for i, child in enumerate(node.children):
        v = _check(child, table, path + (i,))
        if not v:
            return v
    return Verdict(True)


# ---------------------------------------------------------------------------
# Proof scripts
# ---------------------------------------------------------------------------


class ScriptError(ValueError):
    pass


def tree_from_sexpr(expr) -> DerivationTree:
    if not isinstance(expr, list) or len(expr) < 2:
        raise ScriptError("expected (rule-id \"sequent\" child*)")
    rule_id, text, *kids = expr
    if isinstance(rule_id, (list, sexpr.Quoted)) or not isinstance(text, sexpr.Quoted):
        raise ScriptError(f"malformed node {sexpr.write(expr)[:60]}")
    return DerivationTree(parse_sequent(text), rule_id, tuple(tree_from_sexpr(k) for k in kids))


def read_proof(text: str) -> DerivationTree:
    return tree_from_sexpr(sexpr.read(text))


def tree_to_sexpr(tree: DerivationTree) -> list:
    return [tree.rule_id, sexpr.Quoted(print_sequent(tree.conclusion))] + [tree_to_sexpr(c) for c in tree.children]


def write_proof(tree: DerivationTree) -> str:
    return sexpr.write(tree_to_sexpr(tree))


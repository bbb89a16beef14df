import pytest
from hypothesis import given
from hypothesis import strategies as st

from bilateral.calculus import base_rules, check_derivation, rule_table
from bilateral.metacalculus import (
    S1A,
    S2A,
    STRUCTURAL,
    CoordinationMode,
    MetaDerivationTree,
    MetaScriptError,
    as_base_rule,
    check_meta_derivation,
    classify_variant,
    collapse_tree,
    coordination_rules,
    generate_variants,
    read_meta_proof,
    translate_pattern,
    translate_unified,
    write_meta_proof,
)
from bilateral.search import prove
from bilateral.syntax import LineType, MetaJudgment, dual_sequent, parse_sequent

S, D = LineType.SINGLE, LineType.DOUBLE
R = rule_table()
GOLDEN = '(s2a "-|" "; |-- F & p" (and-r-a:S>D "=|" "; |-+ F & p" (bot-r- "-|" "; |-- F")))'


@pytest.mark.parametrize("rule", base_rules(), ids=lambda r: r.id)
def test_variant_count_and_single_variant(rule):
    vs = generate_variants(rule)
    assert len(vs) == 2 ** (rule.arity + 1)
    assert len({v.id for v in vs}) == len(vs)
    assert as_base_rule(vs[0]) == rule
    assert all(as_base_rule(v) is None for v in vs[1:])


@pytest.mark.parametrize("rule", base_rules(), ids=lambda r: r.id)
def test_translation_collapses_every_variant(rule):
    for v in generate_variants(rule):
        assert tuple(translate_pattern(j) for j in v.premises) == rule.premises
        assert translate_pattern(v.conclusion) == rule.conclusion


def test_conjunction_family_labels_and_classes():
    by_label = {v.label: v for r in ("and-r+", "and-r-a") for v in generate_variants(R[r])}
    assert classify_variant(by_label["∧R⁺ζ"]).zeta
    assert classify_variant(by_label["∧R⁻ζₐ"]).zeta
    for name in ("∧R⁺₂ₐ", "∧R⁺₃ₐ", "∧R⁻₃", "∧R⁻₄"):
        assert not classify_variant(by_label[name]).zeta
    zeta = by_label["∧R⁺ζ"]
    assert zeta.id == "and-r+:DD>S"
    assert [l for l, _ in zeta.premises] == [D, D]
    assert all(p.sign.value == "-" for _, p in zeta.premises)
    assert zeta.conclusion[1] == R["and-r+"].conclusion


def test_zeta_counts():
    # a k-premise rule has 2^k - 1 zeta variants
    for rule in base_rules():
        n = sum(classify_variant(v).zeta for v in generate_variants(rule))
        assert n == 2**rule.arity - 1


def test_coordination_rule_sets():
    assert [s.id for s in coordination_rules(CoordinationMode.ASYMMETRIC)] == ["s1a", "s1b"]
    assert [s.id for s in coordination_rules(CoordinationMode.UNIFIED)] == ["s1a", "s1b", "s2a", "s2b"]
    assert coordination_rules(CoordinationMode.INDEPENDENT) == []
    assert classify_variant(S2A).zeta and not classify_variant(S1A).zeta


def test_translate_unified():
    s = parse_sequent("p ; q |-+ p & q")
    assert translate_unified(MetaJudgment(S, s)) == s
    assert translate_unified(MetaJudgment(D, s)) == dual_sequent(s)


def test_golden_script_is_gated_by_mode():
    tree = read_meta_proof(GOLDEN)
    assert check_meta_derivation(tree, CoordinationMode.UNIFIED)
    for mode in (CoordinationMode.ASYMMETRIC, CoordinationMode.INDEPENDENT):
        v = check_meta_derivation(tree, mode)
        assert not v and v.reason == "rule not in active set: s2a"
    assert check_derivation(collapse_tree(tree))


def test_zeta_variants_need_opt_in():
    tree = read_meta_proof(
        '(and-r+:DD>S "-|" "p, q ; |-+ p & q" (ax+:>D "=|" "p, q ; |-- p") (ax+:>D "=|" "p, q ; |-- q"))'
    )
    v = check_meta_derivation(tree, CoordinationMode.UNIFIED)
    assert not v and v.reason == "rule not in active set: and-r+:DD>S"
    assert check_meta_derivation(tree, CoordinationMode.UNIFIED, include_zeta=True)


def test_line_mismatches_are_rejected():
    bad = '(and-r-a:S>D "-|" "; |-+ F & p" (bot-r- "-|" "; |-- F"))'
    v = check_meta_derivation(read_meta_proof(bad), CoordinationMode.UNIFIED)
    assert not v and "double" not in v.reason.lower() or "=|" in v.reason


def test_bare_base_id_is_the_single_variant():
    tree = read_meta_proof('(and-r+ "-|" "; |-+ T & T" (top-r+ "-|" "; |-+ T") (top-r+:>S "-|" "; |-+ T"))')
    assert check_meta_derivation(tree, CoordinationMode.INDEPENDENT)


def test_meta_script_roundtrip_and_errors():
    tree = read_meta_proof(GOLDEN)
    assert read_meta_proof(write_meta_proof(tree)) == tree
    with pytest.raises(MetaScriptError):
        read_meta_proof('(s2a "~|" "; |-- p")')
    with pytest.raises(MetaScriptError):
        read_meta_proof('(s2a "-|")')


# random meta-derivations built from base derivations

PROVABLE = [parse_sequent(t) for t in (
    "; |-+ p -> p", "; |-- p -< p", "p & q ; |-+ q & p", "; p | q |-- q | p",
    "; |-+ (p -> q) -> p -> q", "p ; |-- F & q", "; |-+ T | p", "p -> q, p ; |-+ q",
)]


def _lift(tree, line_for, coord_for):
    """Give every node a line; optionally wrap it in a coordination step."""
    line = line_for(tree)
    kids = tuple(_lift(c, line_for, coord_for) for c in tree.children)
    code = "".join("S" if k.conclusion.line is S else "D" for k in kids) + ">" + ("S" if line is S else "D")
    shown = tree.conclusion if line is S else dual_sequent(tree.conclusion)
    node = MetaDerivationTree(MetaJudgment(line, shown), f"{tree.rule_id}:{code}", kids)
    rule = coord_for(tree)
    if rule is not None and (rule.premises[0][0] is line) and rule.premises[0][1].sign is shown.sign:
        target = MetaJudgment(rule.conclusion[0], dual_sequent(shown))
        node = MetaDerivationTree(target, rule.id, (node,))
    return node


@given(st.sampled_from(PROVABLE), st.randoms(use_true_random=False))
def test_unified_acceptance_matches_collapsed_base_tree(goal, rnd):
    tree = prove(goal, 8)
    meta = _lift(tree, lambda _: rnd.choice([S, D]), lambda _: rnd.choice([None, *STRUCTURAL]))
    assert check_meta_derivation(meta, CoordinationMode.UNIFIED, include_zeta=True)
    assert collapse_tree(meta) == tree


@given(st.sampled_from(PROVABLE), st.randoms(use_true_random=False))
def test_corrupted_trees_fail_both_ways(goal, rnd):
    tree = prove(goal, 8)
    meta = _lift(tree, lambda _: rnd.choice([S, D]), lambda _: None)
    flipped = MetaJudgment(meta.conclusion.line, dual_sequent(meta.conclusion.sequent))
    broken = MetaDerivationTree(flipped, meta.rule_id, meta.children)
    assert not check_meta_derivation(broken, CoordinationMode.UNIFIED, include_zeta=True)
    assert not check_derivation(collapse_tree(broken))

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bilateral.calculus import check_derivation
from bilateral.search import (
    Prover,
    SearchBudget,
    check_coherence,
    check_disjunction_property,
    check_dual_conjunction_property,
    prove,
    search_order,
)
from bilateral.semantics import find_countermodel
from bilateral.syntax import parse_sequent

from conftest import sequents


def test_identity_proof():
    tree = prove(parse_sequent("; |-+ p -> p"), SearchBudget(3))
    assert tree.rule_id == "imp-r+" and [c.rule_id for c in tree.children] == ["ax+"]
    assert tree.height() == 2


@pytest.mark.parametrize("text", ["; |-+ F", "; |-- T"])
def test_constants_have_no_derivation(text):
    assert prove(parse_sequent(text), 8) is None


def test_inconsistent_context_derives_both_signs():
    for text in ("p ; p |-- p", "p ; p |-+ p"):
        tree = prove(parse_sequent(text), 1)
        assert tree is not None and tree.height() == 1


def test_premise_growing_rules_go_last():
    ids = [r.id for r in search_order()]
    assert ids[-2:] == ["imp-lg", "coimp-ld"]


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(-1)
    assert prove(parse_sequent("p ; |-+ p"), 0) is None


@given(sequents(max_leaves=4))
@settings(max_examples=200)
def test_returned_trees_check(s):
    tree = prove(s, 5)
    if tree is not None:
        assert check_derivation(tree) and tree.conclusion == s and tree.height() <= 5


@given(sequents(max_leaves=4), st.integers(1, 4))
def test_budget_monotonicity(s, b):
    if prove(s, b) is not None:
        assert prove(s, b + 1) is not None and prove(s, b + 3) is not None


@given(sequents(max_leaves=4))
def test_search_is_deterministic_and_cache_neutral(s):
    shared = Prover()
    shared.prove(parse_sequent("; |-+ (p -> q) -> p -> q"), 6)
    assert prove(s, 5) == prove(s, 5)
    fresh = prove(s, 5)
    assert (shared.prove(s, 5) is None) == (fresh is None)


@given(sequents(max_leaves=4))
def test_derivable_sequents_have_no_countermodel(s):
    if prove(s, 5) is not None:
        assert find_countermodel(s, 2, ["p", "q"]) is None


def test_property_examples():
    assert prove(parse_sequent("; |-+ T | p"), 6) and prove(parse_sequent("; |-+ T"), 8)
    assert prove(parse_sequent("; |-+ p | (p -> p)"), 6) and prove(parse_sequent("; |-+ p -> p"), 8)
    assert prove(parse_sequent("; |-- F & p"), 6) and prove(parse_sequent("; |-- F"), 8)
    assert prove(parse_sequent("; |-- T & T"), 6) is None


def test_property_sweeps_small():
    for check in (check_disjunction_property, check_dual_conjunction_property):
        rep = check(("p",), 1, 6)
        assert rep.ok and rep.pairs == 39 * 39
        assert rep.component_derivable + rep.compound_countermodel + rep.compound_searched == rep.pairs


@pytest.mark.parametrize("check", [check_disjunction_property, check_dual_conjunction_property])
def test_semantic_screen_does_not_change_outcomes(check):
    screened = check(("p", "q"), 1, 6)
    searched = check(("p", "q"), 1, 6, prefilter=False)
    assert screened.counterexamples == searched.counterexamples == []
    assert screened.component_derivable == searched.component_derivable
    assert searched.compound_countermodel == 0


def test_coherence_small():
    rep = check_coherence(("p",), 1, 6, max_worlds=2)
    assert rep.ok and rep.derivable > 0

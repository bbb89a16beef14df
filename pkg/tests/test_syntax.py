import pytest
from hypothesis import given

from bilateral.syntax import (
    BOT,
    TOP,
    And,
    Atom,
    CoImp,
    Imp,
    Or,
    ParseError,
    Sign,
    depth,
    dual_sequent,
    enumerate_formulas,
    formula_key,
    parse_formula,
    parse_sequent,
    print_formula,
    print_sequent,
    sequent,
)

from conftest import formulas, sequents

p, q, r = Atom("p"), Atom("q"), Atom("r")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("p & q -> r", Imp(And(p, q), r)),
        ("p -> q -> r", Imp(p, Imp(q, r))),
        ("p -< q -> r", CoImp(p, Imp(q, r))),
        ("p | q & r", Or(p, And(q, r))),
        ("p & q & r", And(And(p, q), r)),
        ("p | q | r", Or(Or(p, q), r)),
        ("(p -> q) -> r", Imp(Imp(p, q), r)),
        ("T -< F", CoImp(TOP, BOT)),
    ],
)
def test_precedence_and_associativity(text, expected):
    assert parse_formula(text) == expected


def test_sequent_parse_and_print():
    s = parse_sequent("p, q ; r |-+ p & q")
    assert s == sequent([p, q], [r], Sign.PLUS, And(p, q))
    assert print_sequent(s) == "p, q ; r |-+ p & q"
    assert print_sequent(parse_sequent(";|--T")) == "; |-- T"


def test_duplicate_context_formulas_collapse():
    assert parse_sequent("p, p ; |-+ p") == parse_sequent("p ; |-+ p")


@pytest.mark.parametrize(
    "text, offset",
    [("p -<", 4), ("p & & q", 4), ("(p", 2), ("p $ q", 2), ("p q", 2)],
)
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as e:
        parse_formula(text)
    assert e.value.pos == offset
    assert f"offset {offset}" in str(e.value)


def test_sequent_parse_errors():
    with pytest.raises(ParseError):
        parse_sequent("p |-+ q")
    with pytest.raises(ParseError):
        parse_sequent("p ; q |- q")


@given(formulas(max_leaves=10))
def test_print_parse_roundtrip(f):
    assert parse_formula(print_formula(f)) == f


@given(sequents())
def test_sequent_roundtrip(s):
    assert parse_sequent(print_sequent(s)) == s


@given(sequents())
def test_dual_is_involution(s):
    d = dual_sequent(s)
    assert d.sign is s.sign.dual
    assert dual_sequent(d) == s


def test_enumeration_counts():
    # 3 leaves; depth 1 adds 4 * 3 * 3
    assert len(list(enumerate_formulas(["p"], 1))) == 3 + 4 * 9
    # depth 2 over {p, q}: 68 formulas of depth <= 1, then 4 * (68^2 - 4^2) new ones
    assert len(list(enumerate_formulas(["p", "q"], 2))) == 68 + 4 * (68 * 68 - 16)


def test_enumeration_is_canonical_and_complete():
    fs = list(enumerate_formulas(["p", "q"], 2))
    assert len(set(fs)) == len(fs)
    assert fs == sorted(fs, key=formula_key)
    assert all(depth(f) <= 2 for f in fs)
    assert Imp(Or(p, q), CoImp(TOP, BOT)) in set(fs)


def test_enumeration_rejects_negative_depth():
    with pytest.raises(ValueError):
        list(enumerate_formulas(["p"], -1))

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bilateral.sexpr import Quoted, SexprError, read, write

symbols = st.from_regex(r"[a-z][a-z0-9:+>\-]{0,6}", fullmatch=True)
strings = st.text(alphabet="pq ;|-+&>T", max_size=12).map(Quoted)
exprs = st.recursive(symbols | strings, lambda kids: st.lists(kids, min_size=1, max_size=4), max_leaves=12)


def test_read_nested_with_comments():
    e = read('; a proof\n(ax+ "p ; |-+ p") ; trailing')
    assert e == ["ax+", Quoted("p ; |-+ p")]
    assert isinstance(e[1], Quoted)


@given(exprs)
def test_write_read_roundtrip(e):
    assert read(write(e)) == e


@pytest.mark.parametrize("text", ["(a", "a)", "(a) (b)", '"open', ""])
def test_malformed(text):
    with pytest.raises(SexprError):
        read(text)

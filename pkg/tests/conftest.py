import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from bilateral.semantics import KripkeModel
from bilateral.syntax import BOT, TOP, And, Atom, CoImp, Imp, Or, Sign, sequent

settings.register_profile("default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ATOMS = ("p", "q")


def formulas(atom_names=ATOMS, max_leaves=6):
    leaves = st.sampled_from([Atom(a) for a in atom_names] + [TOP, BOT])
    ctors = st.sampled_from([And, Or, Imp, CoImp])
    return st.recursive(leaves, lambda kids: st.builds(lambda c, a, b: c(a, b), ctors, kids, kids), max_leaves=max_leaves)


def sequents(max_leaves=5):
    small = formulas(max_leaves=3)
    return st.builds(
        sequent,
        st.lists(small, max_size=2),
        st.lists(small, max_size=2),
        st.sampled_from(list(Sign)),
        formulas(max_leaves=max_leaves),
    )


@st.composite
def models(draw, max_worlds=3, atom_names=ATOMS):
    """A random finite model: a preorder closed by brute force, persistent valuations."""
    n = draw(st.integers(1, max_worlds))
    worlds = tuple(f"w{i}" for i in range(n))
    rel = {(i, i) for i in range(n)}
    for i in range(n):
        for j in range(n):
            if i != j and draw(st.booleans()):
                rel.add((i, j))
    changed = True
    while changed:
        extra = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        changed = bool(extra)
        rel |= extra
    plus = [set() for _ in range(n)]
    minus = [set() for _ in range(n)]
    for a in atom_names:
        for table in (plus, minus):
            for i in range(n):
                if draw(st.booleans()):
                    for j in range(n):
                        if (i, j) in rel:
                            table[j].add(a)
    leq = frozenset((worlds[a], worlds[b]) for a, b in rel)
    return KripkeModel(worlds, leq, tuple(map(frozenset, plus)), tuple(map(frozenset, minus)))

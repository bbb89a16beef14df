"""Finite Kripke models with separate truth- and falsity-support.

Clauses (w ranges over worlds, v over worlds above w):

* atoms: ``vplus`` / ``vminus``
* ``A & B``:  + both,  - either;   ``A | B``: + either, - both
* ``A -> B``: + iff every v >= w with A+ has B+;  - iff A+ and B- at w
* ``A -< B``: - iff every v >= w with A- has B-;  + iff A- and B+ at w

The co-implication clauses are the sign-swapped mirror of implication; which
argument of ``-<`` plays the "excluded" role is a convention. Unknown atoms are
unsupported either way.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping

import yaml

from .syntax import (
    Atom,
    Binary,
    Bot,
    CoImp,
    Formula,
    Imp,
    LineType,
    MetaJudgment,
    Or,
    And,
    Sequent,
    Sign,
    Top,
    atoms as formula_atoms,
    dual_sequent,
)


class ModelError(ValueError):
    pass


class ModelClass(enum.Enum):
    NONEXCLUSIVE = "nonexclusive"
    EXCLUSIVE = "exclusive"


class Reading(enum.Enum):
    R1 = "r1"  # double line: the sequent has no derivation (is invalid)
    R2 = "r2"  # double line over s: single line over the sign-flipped s


@dataclass(frozen=True)
class KripkeModel:
    """Worlds are named; ``leq`` is the full reflexive-transitive relation."""

    worlds: tuple[str, ...]
    leq: frozenset[tuple[str, str]]
    vplus: tuple[frozenset[str], ...]
    vminus: tuple[frozenset[str], ...]

    def __post_init__(self):
        ws = set(self.worlds)
        if len(ws) != len(self.worlds) or not self.worlds:
            raise ModelError("worlds must be a non-empty list of distinct names")
        for a, b in self.leq:
            if a not in ws or b not in ws:
                raise ModelError(f"leq mentions unknown world in ({a}, {b})")
        for w in self.worlds:
            if (w, w) not in self.leq:
                raise ModelError(f"leq is not reflexive at {w}")
        for (a, b), (c, d) in itertools.product(self.leq, repeat=2):
            if b == c and (a, d) not in self.leq:
                raise ModelError(f"leq is not transitive: ({a}, {b}), ({b}, {d}) but not ({a}, {d})")
        idx = {w: i for i, w in enumerate(self.worlds)}
        for a, b in sorted(self.leq):
            i, j = idx[a], idx[b]
            for name, val in (("vplus", self.vplus), ("vminus", self.vminus)):
                missing = val[i] - val[j]
                if missing:
                    raise ModelError(
                        f"{name} not persistent along ({a}, {b}): {', '.join(sorted(missing))} lost"
                    )

    def index(self, w: str) -> int:
        return self.worlds.index(w)

    def above(self, w: str) -> list[str]:
        return [v for v in self.worlds if (w, v) in self.leq]

    def plus_atoms(self, w: str) -> frozenset[str]:
        return self.vplus[self.index(w)]

    def minus_atoms(self, w: str) -> frozenset[str]:
        return self.vminus[self.index(w)]

    def is_exclusive(self) -> bool:
        return all(not (p & m) for p, m in zip(self.vplus, self.vminus))

    def is_rooted(self) -> bool:
        return any(len(self.above(w)) == len(self.worlds) for w in self.worlds)

    def to_dict(self) -> dict:
        return {
            "worlds": list(self.worlds),
            "leq": [[a, b] for a, b in sorted(self.leq) if a != b],
            "vplus": {w: sorted(v) for w, v in zip(self.worlds, self.vplus)},
            "vminus": {w: sorted(v) for w, v in zip(self.worlds, self.vminus)},
        }

    def describe(self) -> str:
        order = ", ".join(f"{a}<={b}" for a, b in sorted(self.leq) if a != b) or "discrete"
        vals = "; ".join(
            f"{w}: +{{{','.join(sorted(p))}}} -{{{','.join(sorted(m))}}}"
            for w, p, m in zip(self.worlds, self.vplus, self.vminus)
        )
        return f"{len(self.worlds)} world(s) [{order}] {vals}"


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def eval_plus(m: KripkeModel, w: str, f: Formula) -> bool:
    if isinstance(f, Atom):
        return f.name in m.plus_atoms(w)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return eval_plus(m, w, f.left) and eval_plus(m, w, f.right)
    if isinstance(f, Or):
        return eval_plus(m, w, f.left) or eval_plus(m, w, f.right)
    if isinstance(f, Imp):
        return all(not eval_plus(m, v, f.left) or eval_plus(m, v, f.right) for v in m.above(w))
    if isinstance(f, CoImp):
        return eval_minus(m, w, f.left) and eval_plus(m, w, f.right)
    raise TypeError(f"cannot evaluate {f!r}")


def eval_minus(m: KripkeModel, w: str, f: Formula) -> bool:
    if isinstance(f, Atom):
        return f.name in m.minus_atoms(w)
    if isinstance(f, Top):
        return False
    if isinstance(f, Bot):
        return True
    if isinstance(f, And):
        return eval_minus(m, w, f.left) or eval_minus(m, w, f.right)
    if isinstance(f, Or):
        return eval_minus(m, w, f.left) and eval_minus(m, w, f.right)
    if isinstance(f, Imp):
        return eval_plus(m, w, f.left) and eval_minus(m, w, f.right)
    if isinstance(f, CoImp):
        return all(not eval_minus(m, v, f.left) or eval_minus(m, v, f.right) for v in m.above(w))
    raise TypeError(f"cannot evaluate {f!r}")


def context_holds(m: KripkeModel, w: str, gamma: Iterable[Formula], delta: Iterable[Formula]) -> bool:
    return all(eval_plus(m, w, g) for g in gamma) and all(eval_minus(m, w, d) for d in delta)


def failing_world(m: KripkeModel, s: Sequent) -> str | None:
    """First world where the context is supported but the succedent is not."""
    ev = eval_plus if s.sign is Sign.PLUS else eval_minus
    for w in m.worlds:
        if context_holds(m, w, s.gamma, s.delta) and not ev(m, w, s.succedent):
            return w
    return None


def sequent_valid_in(m: KripkeModel, s: Sequent) -> bool:
    return failing_world(m, s) is None


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _closed(n: int, rel: set[tuple[int, int]]) -> bool:
    return all((a, d) in rel for (a, b) in rel for (c, d) in rel if b == c)


@lru_cache(maxsize=None)
def _preorders(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Preorders on range(n), one labelling per isomorphism class, in a fixed order."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen: set = set()
    out = []
    for bits in itertools.product((0, 1), repeat=len(off)):
        rel = {(i, i) for i in range(n)} | {p for p, b in zip(off, bits) if b}
        if not _closed(n, rel):
            continue
        canon = min(tuple(sorted((pi[a], pi[b]) for a, b in rel)) for pi in itertools.permutations(range(n)))
        if canon in seen:
            continue
        seen.add(canon)
        out.append(tuple(sorted(rel)))
    return tuple(out)


def _upsets(n: int, rel) -> list[frozenset[int]]:
    out = []
    for mask in range(1 << n):
        s = frozenset(i for i in range(n) if mask >> i & 1)
        if all(b in s for a, b in rel if a in s):
            out.append(s)
    return out


def _automorphisms(n: int, rel) -> list[tuple[int, ...]]:
    r = set(rel)
    return [pi for pi in itertools.permutations(range(n)) if {(pi[a], pi[b]) for a, b in r} == r]


def enumerate_models(
    max_worlds: int,
    atom_names: Iterable[str],
    model_class: ModelClass = ModelClass.NONEXCLUSIVE,
    rooted: bool = False,
) -> Iterator[KripkeModel]:
    """Every model with at most ``max_worlds`` worlds, once per isomorphism class.

    Order: by number of worlds, then preorder, then valuation (atoms sorted,
    truth-support before falsity-support for each atom).
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be >= 1")
    names = sorted(set(atom_names))
    for n in range(1, max_worlds + 1):
        worlds = tuple(f"w{i}" for i in range(n))
        for rel in _preorders(n):
            if rooted and not any(all((r, j) in rel for j in range(n)) for r in range(n)):
                continue
            ups = _upsets(n, rel)
            autos = _automorphisms(n, rel)
            leq = frozenset((worlds[a], worlds[b]) for a, b in rel)
            for choice in itertools.product(ups, repeat=2 * len(names)):
                if len(autos) > 1:
                    key = tuple(tuple(sorted(s)) for s in choice)
                    if any(
                        tuple(tuple(sorted(pi[i] for i in s)) for s in choice) < key for pi in autos
                    ):
                        continue
                plus = [set() for _ in range(n)]
                minus = [set() for _ in range(n)]
                for k, name in enumerate(names):
                    for i in choice[2 * k]:
                        plus[i].add(name)
                    for i in choice[2 * k + 1]:
                        minus[i].add(name)
                if model_class is ModelClass.EXCLUSIVE and any(p & q for p, q in zip(plus, minus)):
                    continue
                yield KripkeModel(worlds, leq, tuple(map(frozenset, plus)), tuple(map(frozenset, minus)))


def sequent_atoms(s: Sequent) -> frozenset[str]:
    out = formula_atoms(s.succedent)
    for f in s.gamma | s.delta:
        out |= formula_atoms(f)
    return out


def find_countermodel(
    s: Sequent,
    max_worlds: int = 3,
    atom_names: Iterable[str] | None = None,
    model_class: ModelClass = ModelClass.NONEXCLUSIVE,
) -> tuple[KripkeModel, str] | None:
    names = sequent_atoms(s) if atom_names is None else frozenset(atom_names)
    for m in enumerate_models(max_worlds, names, model_class):
        w = failing_world(m, s)
        if w is not None:
            return m, w
    return None


# ---------------------------------------------------------------------------
# Double-lined judgments
# ---------------------------------------------------------------------------


class Status(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown_at_bound"


@dataclass(frozen=True)
class MetaStatus:
    """Bounded verdict on a judgment. ``witness`` is a (model, world) pair when a
    countermodel decided it, a derivation tree when a proof did."""

    status: Status
    witness: object = None

    def __bool__(self) -> bool:
        return self.status is Status.HOLDS


def translate_judgment(j: MetaJudgment) -> Sequent:
    return j.sequent if j.line is LineType.SINGLE else dual_sequent(j.sequent)


def meta_holds(
    j: MetaJudgment,
    reading: Reading = Reading.R1,
    max_worlds: int = 3,
    atom_names: Iterable[str] | None = None,
    model_class: ModelClass = ModelClass.NONEXCLUSIVE,
    budget: int = 6,
) -> MetaStatus:
    """Single(s): fails on a countermodel, holds on a derivation, else unknown.
    Double(s): under R1 the mirror image; under R2 judged as Single(dual s)."""
    from .search import SearchBudget, prove

    if j.line is LineType.DOUBLE and reading is Reading.R2:
        j = MetaJudgment(LineType.SINGLE, dual_sequent(j.sequent))
    s = j.sequent
    cm = find_countermodel(s, max_worlds, atom_names, model_class)
    if cm is not None:
        return MetaStatus(Status.FAILS if j.line is LineType.SINGLE else Status.HOLDS, cm)
    tree = prove(s, SearchBudget(budget))
    if tree is not None:
        return MetaStatus(Status.HOLDS if j.line is LineType.SINGLE else Status.FAILS, tree)
    return MetaStatus(Status.UNKNOWN)


# ---------------------------------------------------------------------------
# Model files
# ---------------------------------------------------------------------------


def model_from_dict(doc: Mapping) -> KripkeModel:
    try:
        worlds = [str(w) for w in doc["worlds"]]
    except (KeyError, TypeError):
        raise ModelError("model needs a 'worlds' list") from None
    ws = set(worlds)
    rel = {(w, w) for w in worlds}
    for pair in doc.get("leq") or []:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ModelError(f"leq entries must be pairs, got {pair!r}")
        a, b = str(pair[0]), str(pair[1])
        if a not in ws or b not in ws:
            raise ModelError(f"leq pair ({a}, {b}) mentions an unknown world")
        rel.add((a, b))
    changed = True
    while changed:  # transitive closure
        extra = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        changed = bool(extra)
        rel |= extra

    def val(key: str) -> tuple[frozenset[str], ...]:
        table = doc.get(key) or {}
        unknown = set(map(str, table)) - ws
        if unknown:
            raise ModelError(f"{key} mentions unknown world(s): {', '.join(sorted(unknown))}")
        return tuple(frozenset(map(str, table.get(w, None) or [])) for w in worlds)

    return KripkeModel(tuple(worlds), frozenset(rel), val("vplus"), val("vminus"))


def load_model(source: str | Path) -> KripkeModel:
    """Read a YAML (or JSON) model file."""
    text = Path(source).read_text()
    return model_from_dict(yaml.safe_load(text))

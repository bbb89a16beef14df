"""Formulas, signed sequents and line-marked judgments.

Text syntax::

    atoms   [a-z][a-z0-9_]*      T (top)   F (bottom)
    binary  &  |  ->  -<          (tightest first; -> and -< share a level
                                   and associate to the right)
    sequent  gamma ; delta |-+ formula     (or |-- for the minus sign)

``&`` and ``|`` associate to the left. ``-<`` is co-implication.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Malformed formula or sequent text; ``pos`` is a character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at offset {pos}")
        self.pos = pos


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


class Formula:
    """Base class of the propositional AST. Instances are immutable."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


def _cached_hash(self) -> int:
    h = self.__dict__.get("_hash")
    if h is None:
        h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__dataclass_fields__))
        object.__setattr__(self, "_hash", h)
    return h


@dataclass(frozen=True, eq=True, repr=False)
class Atom(Formula):
    name: str
    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True, eq=True, repr=False)
class Top(Formula):
    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return "Top()"


@dataclass(frozen=True, eq=True, repr=False)
class Bot(Formula):
    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return "Bot()"


@dataclass(frozen=True, eq=True, repr=False)
class Binary(Formula):
    left: Formula
    right: Formula
    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class And(Binary):
    __slots__ = ()


class Or(Binary):
    __slots__ = ()


class Imp(Binary):
    __slots__ = ()


class CoImp(Binary):
    """Co-implication, the dual of implication."""

    __slots__ = ()


@dataclass(frozen=True, eq=True, repr=False)
class Meta(Formula):
    """A formula metavariable; appears only inside rule patterns."""

    name: str
    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return f"Meta({self.name!r})"


TOP = Top()
BOT = Bot()

# constructor order used by the canonical formula ordering
CONNECTIVES: tuple[type[Binary], ...] = (And, Or, Imp, CoImp)
_CTOR_INDEX = {Atom: 0, Top: 1, Bot: 2, And: 3, Or: 4, Imp: 5, CoImp: 6, Meta: 7}
_SYMBOL = {And: "&", Or: "|", Imp: "->", CoImp: "-<"}
_LEVEL = {Imp: 1, CoImp: 1, Or: 2, And: 3}


def depth(f: Formula) -> int:
    if isinstance(f, Binary):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def atoms(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset([f.name])
    if isinstance(f, Binary):
        return atoms(f.left) | atoms(f.right)
    return frozenset()


def formula_key(f: Formula) -> tuple:
    """Sort key: depth, then constructor, then children (atoms by name)."""
    key = f.__dict__.get("_key")
    if key is None:
        if isinstance(f, Binary):
            key = (depth(f), _CTOR_INDEX[type(f)], formula_key(f.left), formula_key(f.right))
        elif isinstance(f, (Atom, Meta)):
            key = (0, _CTOR_INDEX[type(f)], f.name)
        else:
            key = (0, _CTOR_INDEX[type(f)])
        object.__setattr__(f, "_key", key)
    return key


# ---------------------------------------------------------------------------
# Signs, sequents, judgments
# ---------------------------------------------------------------------------


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def dual(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    def __str__(self) -> str:
        return self.value


class LineType(enum.Enum):
    SINGLE = "-|"  # proved
    DOUBLE = "=|"  # refuted

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Sequent:
    """``(gamma; delta) |-sign succedent`` with set-valued contexts."""

    gamma: frozenset
    delta: frozenset
    sign: Sign
    succedent: Formula
    _hash: int | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.gamma, frozenset):
            object.__setattr__(self, "gamma", frozenset(self.gamma))
        if not isinstance(self.delta, frozenset):
            object.__setattr__(self, "delta", frozenset(self.delta))

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.gamma, self.delta, self.sign, self.succedent)))
        return self._hash

    def __str__(self) -> str:
        return print_sequent(self)


def sequent(gamma: Iterable[Formula], delta: Iterable[Formula], sign: Sign, succedent: Formula) -> Sequent:
    return Sequent(frozenset(gamma), frozenset(delta), sign, succedent)


def dual_sequent(s: Sequent) -> Sequent:
    return Sequent(s.gamma, s.delta, s.sign.dual, s.succedent)


@dataclass(frozen=True)
class MetaJudgment:
    line: LineType
    sequent: Sequent

    def __str__(self) -> str:
        return f"{self.line} {print_sequent(self.sequent)}"


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _level(f: Formula) -> int:
    return _LEVEL.get(type(f), 4)


def print_formula(f: Formula) -> str:
    if isinstance(f, (Atom, Meta)):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if not isinstance(f, Binary):
        raise TypeError(f"not a formula: {f!r}")
    lvl = _LEVEL[type(f)]
    left, right = print_formula(f.left), print_formula(f.right)
    if lvl == 1:  # right-associative
        if _level(f.left) <= lvl:
            left = f"({left})"
        if _level(f.right) < lvl:
            right = f"({right})"
    else:
        if _level(f.left) < lvl:
            left = f"({left})"
        if _level(f.right) <= lvl:
            right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


def sorted_formulas(fs: Iterable[Formula]) -> list[Formula]:
    return sorted(fs, key=formula_key)


def print_sequent(s: Sequent) -> str:
    g = ", ".join(print_formula(f) for f in sorted_formulas(s.gamma))
    d = ", ".join(print_formula(f) for f in sorted_formulas(s.delta))
    head = f"{g} ; {d}".strip() if (g or d) else ";"
    return f"{head} |-{s.sign.value} {print_formula(s.succedent)}"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      | (?P<turnstile>\|-[+-])
      | (?P<op>->|-<|&|\|)
      | (?P<ident>[a-z][a-z0-9_]*)
      | (?P<const>[TF](?![A-Za-z0-9_]))
      | (?P<punct>[(),;])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unknown token {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, got {v or 'end of input'!r}", pos)

    def formula(self) -> Formula:
        left = self.disj()
        kind, v, _ = self.peek()
        if v in ("->", "-<"):
            self.take()
            right = self.formula()
            return Imp(left, right) if v == "->" else CoImp(left, right)
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[1] == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unit()
        while self.peek()[1] == "&":
            self.take()
            f = And(f, self.unit())
        return f

    def unit(self) -> Formula:
        kind, v, pos = self.take()
        if kind == "ident":
            return Atom(v)
        if kind == "const":
            return TOP if v == "T" else BOT
        if v == "(":
            f = self.formula()
            self.expect(")")
            return f
        raise ParseError(f"expected a formula, got {v or 'end of input'!r}", pos)

    def formula_list(self, stop: str) -> list[Formula]:
        items: list[Formula] = []
        if self.peek()[1] == stop or (stop == "turnstile" and self.peek()[0] == "turnstile"):
            return items
        items.append(self.formula())
        while self.peek()[1] == ",":
            self.take()
            items.append(self.formula())
        return items

    def end(self) -> None:
        kind, v, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {v!r}", pos)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.end()
    return f


def parse_sequent(text: str) -> Sequent:
    p = _Parser(text)
    gamma = p.formula_list(";")
    p.expect(";")
    delta = p.formula_list("turnstile")
    kind, v, pos = p.take()
    if kind != "turnstile":
        raise ParseError(f"expected '|-+' or '|--', got {v or 'end of input'!r}", pos)
    succ = p.formula()
    p.end()
    return sequent(gamma, delta, Sign.PLUS if v == "|-+" else Sign.MINUS, succ)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_formulas(atom_names: Iterable[str], max_depth: int) -> Iterator[Formula]:
    """Every formula over the atoms and constants up to ``max_depth``, once each,
    in the canonical order of :func:`formula_key`."""
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    pool: list[Formula] = [Atom(a) for a in sorted(set(atom_names))] + [TOP, BOT]
    yield from pool
    start = 0  # index of the first formula of the previous depth
    for _ in range(max_depth):
        prev_end = len(pool)
        layer: list[Formula] = []
        for ctor in CONNECTIVES:
            for i in range(prev_end):
                lo = 0 if i >= start else start
                for j in range(lo, prev_end):
                    layer.append(ctor(pool[i], pool[j]))
        yield from layer
        start = prev_end
        pool.extend(layer)

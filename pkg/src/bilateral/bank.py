"""Vectorised evaluation over a fixed list of models.

World ``i`` of a model is bit ``i`` of a mask, so the truth-support (falsity-
support) of a formula in every model is one uint8 array. Implication-like
clauses go through a per-model lookup table indexed by the two argument masks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .semantics import KripkeModel, ModelClass, enumerate_models
from .syntax import (
    And,
    Atom,
    Bot,
    CoImp,
    Formula,
    Imp,
    Or,
    Top,
    enumerate_formulas,
)

MAX_BANK_WORLDS = 5


def implication_table(up: Sequence[int], width: int) -> np.ndarray:
    """``table[a, b]``: worlds w whose up-set avoids ``a & ~b``."""
    size = 1 << width
    a = np.arange(size)[:, None]
    b = np.arange(size)[None, :]
    bad = a & ~b
    out = np.zeros((size, size), dtype=np.uint8)
    for w, u in enumerate(up):
        out |= (((u & bad) == 0).astype(np.uint8) << w)
    return out


def combine(ctor: type, x: tuple, y: tuple, imp: np.ndarray, idx: np.ndarray) -> tuple:
    """Value of ``ctor(X, Y)`` from the (plus, minus) values of X and Y."""
    (xp, xm), (yp, ym) = x, y
    if ctor is And:
        return xp & yp, xm | ym
    if ctor is Or:
        return xp | yp, xm & ym
    if ctor is Imp:
        return imp[idx, xp, yp], xp & ym
    if ctor is CoImp:
        return xm & yp, imp[idx, xm, ym]
    raise TypeError(ctor)


@dataclass
class FormulaClass:
    """Formulas of a pool that agree everywhere in the bank."""

    rep: Formula
    second: Formula | None
    size: int
    plus: np.ndarray
    minus: np.ndarray


class ModelBank:
    def __init__(self, models: Sequence[KripkeModel], atom_names: Iterable[str]):
        if not models:
            raise ValueError("empty model bank")
        width = max(len(m.worlds) for m in models)
        if width > MAX_BANK_WORLDS:
            raise ValueError(f"bank supports at most {MAX_BANK_WORLDS} worlds")
        self.models = list(models)
        self.atom_names = sorted(set(atom_names))
        self.M = len(self.models)
        self.width = width
        self.idx = np.arange(self.M)
        self.full = np.array([(1 << len(m.worlds)) - 1 for m in self.models], dtype=np.uint8)
        self.zero = np.zeros(self.M, dtype=np.uint8)
        self.imp = np.stack([implication_table(self._ups(m), width) for m in self.models])
        self._atoms = {}
        for name in self.atom_names:
            p = [sum(1 << i for i, v in enumerate(m.vplus) if name in v) for m in self.models]
            q = [sum(1 << i for i, v in enumerate(m.vminus) if name in v) for m in self.models]
            self._atoms[name] = (np.array(p, dtype=np.uint8), np.array(q, dtype=np.uint8))
        self._memo: dict[Formula, tuple] = {}

    @staticmethod
    def _ups(m: KripkeModel) -> list[int]:
        idx = {w: i for i, w in enumerate(m.worlds)}
        ups = [0] * len(m.worlds)
        for a, b in m.leq:
            ups[idx[a]] |= 1 << idx[b]
        return ups

    @classmethod
    def rooted(cls, max_worlds: int, atom_names: Iterable[str], model_class: ModelClass) -> "ModelBank":
        """Rooted models suffice for validity: each world generates a rooted
        submodel with the same local truths."""
        names = sorted(set(atom_names))
        return cls(list(enumerate_models(max_worlds, names, model_class, rooted=True)), names)

    def value(self, f: Formula) -> tuple[np.ndarray, np.ndarray]:
        v = self._memo.get(f)
        if v is not None:
            return v
        if isinstance(f, Atom):
            v = self._atoms.get(f.name, (self.zero, self.zero))
        elif isinstance(f, Top):
            v = (self.full, self.zero)
        elif isinstance(f, Bot):
            v = (self.zero, self.full)
        else:
            v = combine(type(f), self.value(f.left), self.value(f.right), self.imp, self.idx)
        self._memo[f] = v
        return v

    def combine(self, ctor: type, x: tuple, y: tuple) -> tuple:
        return combine(ctor, x, y, self.imp, self.idx)

    def valid(self, ctx: np.ndarray, succ: np.ndarray) -> np.ndarray:
        """Validity per row: no world of any model supports ctx but not succ."""
        return ~np.any(ctx & ~succ & self.full, axis=-1)

    def first_failure(self, ctx: np.ndarray, succ: np.ndarray) -> tuple[int, int] | None:
        """(model index, world index) of the first failure of a single row."""
        bad = ctx & ~succ & self.full
        hits = np.flatnonzero(bad)
        if hits.size == 0:
            return None
        k = int(hits[0])
        mask = int(bad[k])
        return k, (mask & -mask).bit_length() - 1

    def classes(self, pool: Iterable[Formula]) -> list[FormulaClass]:
        """Partition ``pool`` by bank value, classes ordered by first member."""
        groups: dict[bytes, FormulaClass] = {}
        for f in pool:
            p, m = self.value(f)
            key = p.tobytes() + m.tobytes()
            g = groups.get(key)
            if g is None:
                groups[key] = FormulaClass(f, None, 1, p, m)
            else:
                if g.second is None:
                    g.second = f
                g.size += 1
        return list(groups.values())


def formula_pool(atom_names: Iterable[str], max_depth: int) -> list[Formula]:
    return list(enumerate_formulas(atom_names, max_depth))


def upset_table(bank: ModelBank) -> np.ndarray:
    """``table[k, mask]``: whether world set ``mask`` is up-closed in model k."""
    out = np.zeros((bank.M, 1 << bank.width), dtype=bool)
    for k, m in enumerate(bank.models):
        ups = ModelBank._ups(m)
        n = len(m.worlds)
        for mask in range(1 << n):
            out[k, mask] = all(not (mask >> i & 1) or (ups[i] & ~mask) == 0 for i in range(n))
    return out


@dataclass
class HygieneReport:
    models: int
    formulas: int
    persistence_violations: list
    constant_violations: list

    @property
    def ok(self) -> bool:
        return not self.persistence_violations and not self.constant_violations

    def lines(self) -> list[str]:
        return [
            f"persistence: {self.models} models x {self.formulas} formulas, "
            f"{len(self.persistence_violations)} violations",
            f"constant laws: {len(self.constant_violations)} violations",
        ]


def check_hygiene(
    max_worlds: int = 3,
    atom_names: Iterable[str] = ("p", "q"),
    max_depth: int = 2,
    model_class: ModelClass = ModelClass.NONEXCLUSIVE,
) -> HygieneReport:
    """Both supports of every pool formula are up-sets in every model; T is
    verified and never falsified everywhere, F the other way round."""
    names = sorted(set(atom_names))
    bank = ModelBank(list(enumerate_models(max_worlds, names, model_class)), names)
    ok = upset_table(bank)
    pool = formula_pool(names, max_depth)
    bad = []
    for f in pool:
        plus, minus = bank.value(f)
        if not (ok[bank.idx, plus].all() and ok[bank.idx, minus].all()):
            bad.append(f)
    const = []
    tp, tm = bank.value(Top())
    bp, bm = bank.value(Bot())
    if not ((tp == bank.full).all() and not tm.any()):
        const.append(Top())
    if not ((bm == bank.full).all() and not bp.any()):
        const.append(Bot())
    return HygieneReport(bank.M, len(pool), bad, const)

"""Bounded soundness audits of base rules, line variants and coordination rules.

Base rules get the plain reading: in every enumerated model, if all premises are
valid then so is the conclusion. Variants and coordination rules are judged
globally over the model bank: a single line means bounded validity, a double
line means (R1) the sequent has a countermodel or (R2) the sign-flipped sequent
is valid.

Instances are formulas of the enumeration pool for each metavariable, a sign
for rules with a sign variable, and side contexts of at most one pool formula
per side. Formulas are handled through their value classes, so each pattern is
evaluated once per class tuple of the metavariables it actually mentions and
the results are broadcast over the full instance grid. The grid is scanned in
lexicographic order (metavariables, then sign, then context) and the first
violation is reported.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .bank import ModelBank, combine, formula_pool, implication_table
from .calculus import (
    DELTA,
    GAMMA,
    SIGN_VAR,
    RIGHT_RULE_IDS,
    RuleSchema,
    SequentPattern,
    base_rules,
    check_derivation,
    instantiate_pattern,
    rule_table,
)
from .metacalculus import (
    STRUCTURAL,
    CoordinationMode,
    MetaRuleSchema,
    classify_variant,
    coordination_rules,
    generate_variants,
    single_variant,
    translate_pattern,
)
from .search import Prover
from .semantics import KripkeModel, ModelClass, Reading, failing_world, sequent_valid_in
from .syntax import Formula, LineType, Meta, Sequent, Sign, Top, Bot, Binary, print_formula, print_sequent

S, D = LineType.SINGLE, LineType.DOUBLE

SOUND = "sound_up_to_bound"
UNSOUND = "unsound"
NO_READING = "no_semantic_reading"

_CHUNK = 1 << 14


class ContextRegime(enum.Enum):
    EMPTY = "empty"  # no side formulas
    DISJOINT = "disjoint"  # at most one per side, not the same formula
    ARBITRARY = "arbitrary"  # at most one per side


@dataclass(frozen=True)
class AuditConfig:
    reading: Reading = Reading.R1
    model_class: ModelClass = ModelClass.NONEXCLUSIVE
    context_regime: ContextRegime = ContextRegime.EMPTY
    max_worlds: int = 3
    atoms: tuple[str, ...] = ("p", "q")
    max_formula_depth: int = 2
    budget: int = 6  # search budget for derivation witnesses
    mode: CoordinationMode = CoordinationMode.ASYMMETRIC

    def __post_init__(self):
        if self.max_worlds < 1 or self.max_formula_depth < 0 or self.budget < 1:
            raise ValueError("audit bounds must be positive")
        object.__setattr__(self, "atoms", tuple(sorted(set(self.atoms))))

    @property
    def label(self) -> str:
        return (
            f"{self.reading.value}/{self.model_class.value}/{self.context_regime.value}"
            f"/w{self.max_worlds}/d{self.max_formula_depth}"
        )

    def to_dict(self) -> dict:
        return {
            "reading": self.reading.value,
            "model_class": self.model_class.value,
            "context_regime": self.context_regime.value,
            "max_worlds": self.max_worlds,
            "atoms": list(self.atoms),
            "max_formula_depth": self.max_formula_depth,
            "budget": self.budget,
            "mode": self.mode.value,
        }


@dataclass
class AuditVerdict:
    rule_id: str
    status: str
    instance_count: int
    witness: dict | None = None
    undecided: int = 0  # candidates whose conclusion failure had no witness at the bound
    models: int = 0

    @property
    def sound(self) -> bool:
        return self.status == SOUND

    def to_dict(self) -> dict:
        return {
            "id": self.rule_id,
            "status": self.status,
            "instance_count": self.instance_count,
            "models": self.models,
            "undecided": self.undecided,
            "witness": self.witness,
        }


# ---------------------------------------------------------------------------
# Shared evaluation machinery
# ---------------------------------------------------------------------------


@dataclass
class _Space:
    """Values a grid ranges over, for M' models (or frames) at once."""

    imp: np.ndarray  # (M', 2^w, 2^w)
    full: np.ndarray  # (M',)
    plus: np.ndarray  # (V, M') value choices for each formula metavariable
    minus: np.ndarray
    ctx: np.ndarray | None  # (U, M') context supports, None for the empty regime

    def dims(self, fvars: Sequence[str], signed: bool) -> list[tuple[str, int]]:
        out = [(v, len(self.plus)) for v in fvars]
        if signed:
            out.append((SIGN_VAR, 2))
        if self.ctx is not None:
            out.append(("ctx", len(self.ctx)))
        return out


def _eval(f: Formula, env: dict, space: _Space, idx: np.ndarray) -> tuple:
    if isinstance(f, Meta):
        return env[f.name]
    if isinstance(f, Top):
        return space.full, np.zeros_like(space.full)
    if isinstance(f, Bot):
        return np.zeros_like(space.full), space.full
    if isinstance(f, Binary):
        return combine(type(f), _eval(f.left, env, space, idx), _eval(f.right, env, space, idx), space.imp, idx)
    raise TypeError(f"unexpected formula in pattern: {f!r}")


def _pattern_table(p: SequentPattern, dims: list[tuple[str, int]], space: _Space) -> np.ndarray:
    """Validity of ``p`` at every grid point, shaped to broadcast over ``dims``."""
    used = p.formula_vars()
    deps = [
        i
        for i, (name, _) in enumerate(dims)
        if name in used or (name == SIGN_VAR and p.sign is None) or name == "ctx"
    ]
    shape = tuple(dims[i][1] for i in deps)
    total = math.prod(shape)
    out = np.empty(total, dtype=bool)
    idx = np.arange(len(space.full))
    for start in range(0, total, _CHUNK):
        rows = np.arange(start, min(total, start + _CHUNK))
        coords = np.unravel_index(rows, shape) if shape else ()
        env: dict = {}
        sign_plus = None
        ctx = np.broadcast_to(space.full, (len(rows), len(space.full)))
        for i, c in zip(deps, coords):
            name = dims[i][0]
            if name == SIGN_VAR:
                sign_plus = (c == 0) != p.flip
            elif name == "ctx":
                ctx = space.ctx[c]
            else:
                env[name] = (space.plus[c], space.minus[c])
        for g in p.gamma:
            ctx = ctx & _eval(g, env, space, idx)[0]
        for d in p.delta:
            ctx = ctx & _eval(d, env, space, idx)[1]
        sp, sm = _eval(p.succedent, env, space, idx)
        if p.sign is None:
            succ = np.where(sign_plus[:, None], sp, sm)
        else:
            succ = sp if p.sign is Sign.PLUS else sm
        bad = ctx & ~succ & space.full
        out[start : start + len(rows)] = ~np.any(np.broadcast_to(bad, (len(rows), len(space.full))), axis=-1)
    return out.reshape([n if i in deps else 1 for i, (_, n) in enumerate(dims)])


def _coords(flat: int, dims: list[tuple[str, int]]) -> dict[str, int]:
    pos = np.unravel_index(flat, [n for _, n in dims])
    return {name: int(c) for (name, _), c in zip(dims, pos)}


def _syntactic_count(n_vars: int, signed: bool, regime: ContextRegime, pool_size: int) -> int:
    count = pool_size**n_vars * (2 if signed else 1)
    if regime is ContextRegime.ARBITRARY:
        count *= (pool_size + 1) ** 2
    elif regime is ContextRegime.DISJOINT:
        count *= (pool_size + 1) ** 2 - pool_size
    return count


def _model_ups(m: KripkeModel) -> list[int]:
    return ModelBank._ups(m)


def _upsets(ups: Sequence[int]) -> list[int]:
    n = len(ups)
    return [s for s in range(1 << n) if all(not (s >> i & 1) or (ups[i] & ~s) == 0 for i in range(n))]


# ---------------------------------------------------------------------------
# Cached bank and pool per bound
# ---------------------------------------------------------------------------


@dataclass
class _Universe:
    bank: ModelBank
    pool: list[Formula]
    classes: list
    plus: np.ndarray  # (K, M)
    minus: np.ndarray
    prover: Prover = field(default_factory=Prover)
    _ctx: dict = field(default_factory=dict)

    def contexts(self, regime: ContextRegime) -> tuple[np.ndarray | None, list]:
        """Distinct context supports with the first (gamma, delta) choice for each.

        Choices are ordered with pool classes before the empty side, so a
        one-formula context is tried before an empty one.
        """
        if regime is ContextRegime.EMPTY:
            return None, [(None, None)]
        hit = self._ctx.get(regime)
        if hit is not None:
            return hit
        K, M = self.plus.shape
        full = self.bank.full
        gp = np.vstack([self.plus, full[None]])
        dm = np.vstack([self.minus, full[None]])
        seen: dict[bytes, int] = {}
        supports, choices = [], []
        for g in range(K + 1):
            rows = gp[g][None] & dm
            for d in range(K + 1):
                gf = None if g == K else self.classes[g].rep
                df = None if d == K else self.classes[d].rep
                if g == d and g < K and regime is ContextRegime.DISJOINT:
                    df = self.classes[g].second
                    if df is None:
                        continue
                key = rows[d].tobytes()
                if key in seen:
                    continue
                seen[key] = len(supports)
                supports.append(rows[d])
                choices.append((gf, df))
        hit = (np.array(supports), choices)
        self._ctx[regime] = hit
        return hit


@lru_cache(maxsize=8)
def _universe(max_worlds: int, atoms: tuple[str, ...], model_class: ModelClass, depth: int) -> _Universe:
    bank = ModelBank.rooted(max_worlds, atoms, model_class)
    pool = formula_pool(atoms, depth)
    classes = bank.classes(pool)
    plus = np.array([c.plus for c in classes])
    minus = np.array([c.minus for c in classes])
    return _Universe(bank, pool, classes, plus, minus)


def universe(cfg: AuditConfig) -> _Universe:
    return _universe(cfg.max_worlds, cfg.atoms, cfg.model_class, cfg.max_formula_depth)


def _bindings(rule_vars, signed, coords, reps, ctx_choice) -> dict:
    binds: dict = {v: reps[coords[v]] for v in rule_vars}
    if signed:
        binds[SIGN_VAR] = Sign.PLUS if coords[SIGN_VAR] == 0 else Sign.MINUS
    g, d = ctx_choice
    binds[GAMMA] = frozenset() if g is None else frozenset([g])
    binds[DELTA] = frozenset() if d is None else frozenset([d])
    return binds


def _binding_dict(binds: dict) -> dict:
    out = {}
    for k in sorted(k for k in binds if k not in (GAMMA, DELTA, SIGN_VAR)):
        out[k] = print_formula(binds[k])
    if SIGN_VAR in binds:
        out[SIGN_VAR] = binds[SIGN_VAR].value
    out[GAMMA] = [print_formula(f) for f in binds[GAMMA]]
    out[DELTA] = [print_formula(f) for f in binds[DELTA]]
    return out


# ---------------------------------------------------------------------------
# Base rules: per-model reading
# ---------------------------------------------------------------------------


def _frame_space(ups: Sequence[int], width: int, exclusive: bool, regime: ContextRegime) -> _Space:
    """Every persistent value on a frame, as a superset of what formulas realise."""
    sets = _upsets(ups)
    vals = [(a, b) for a in sets for b in sets if not (exclusive and a & b)]
    col = lambda xs: np.array(xs, dtype=np.uint8)[:, None]
    return _Space(
        implication_table(ups, width)[None],
        np.array([(1 << len(ups)) - 1], dtype=np.uint8),
        col([a for a, _ in vals]),
        col([b for _, b in vals]),
        None if regime is ContextRegime.EMPTY else col(sets),
    )


def _violations(rule: RuleSchema, dims, space: _Space) -> np.ndarray:
    shape = [n for _, n in dims]
    viol = np.ones(shape, dtype=bool)
    for p in rule.premises:
        viol &= _pattern_table(p, dims, space)
    viol &= ~_pattern_table(rule.conclusion, dims, space)
    return viol


def audit_base_rule(rule: RuleSchema, cfg: AuditConfig) -> AuditVerdict:
    """Per-model soundness of a single-lined rule.

    Each frame is screened first with every persistent value for every
    metavariable; only frames where the screen finds a violation are checked
    model by model with the values pool formulas actually take.
    """
    uni = universe(cfg)
    bank = uni.bank
    fvars, signed = rule.formula_vars(), rule.has_sign_var()
    count = _syntactic_count(len(fvars), signed, cfg.context_regime, len(uni.pool))
    exclusive = cfg.model_class is ModelClass.EXCLUSIVE
    frames: dict = {}
    for k, m in enumerate(bank.models):
        frames.setdefault((len(m.worlds), m.leq), []).append(k)
    for key, members in frames.items():
        ups = _model_ups(bank.models[members[0]])
        screen = _frame_space(ups, bank.width, exclusive, cfg.context_regime)
        dims = screen.dims(fvars, signed)
        if not _violations(rule, dims, screen).any():
            continue
        for k in members:
            w = _refine(rule, cfg, uni, k, fvars, signed)
            if w is not None:
                return AuditVerdict(rule.id, UNSOUND, count, w, models=bank.M)
    return AuditVerdict(rule.id, SOUND, count, models=bank.M)


def _refine(rule: RuleSchema, cfg: AuditConfig, uni: _Universe, k: int, fvars, signed) -> dict | None:
    bank, m = uni.bank, uni.bank.models[k]
    by_value: dict[tuple[int, int], list[Formula]] = {}
    for c in uni.classes:
        forms = by_value.setdefault((int(c.plus[k]), int(c.minus[k])), [])
        forms.extend(f for f in (c.rep, c.second) if f is not None and len(forms) < 2)
    values = list(by_value)
    reps = [by_value[v][0] for v in values]
    col = lambda xs: np.array(xs, dtype=np.uint8)[:, None]
    ctx, choices = None, [(None, None)]
    if cfg.context_regime is not ContextRegime.EMPTY:
        full = int(bank.full[k])
        opts = list(range(len(values))) + [None]
        seen: dict[int, int] = {}
        supports, choices = [], []
        for g in opts:
            for d in opts:
                gf = None if g is None else reps[g]
                df = None if d is None else reps[d]
                if g is not None and g == d and cfg.context_regime is ContextRegime.DISJOINT:
                    if len(by_value[values[g]]) < 2:
                        continue
                    df = by_value[values[g]][1]
                u = (full if g is None else values[g][0]) & (full if d is None else values[d][1])
                if u not in seen:
                    seen[u] = len(supports)
                    supports.append(u)
                    choices.append((gf, df))
        ctx = col(supports)
    space = _Space(bank.imp[k : k + 1], bank.full[k : k + 1], col([v[0] for v in values]), col([v[1] for v in values]), ctx)
    dims = space.dims(fvars, signed)
    viol = _violations(rule, dims, space)
    if not viol.any():
        return None
    coords = _coords(int(np.flatnonzero(viol)[0]), dims)
    binds = _bindings(fvars, signed, coords, reps, choices[coords.get("ctx", 0)])
    premises = [instantiate_pattern(p, binds) for p in rule.premises]
    conclusion = instantiate_pattern(rule.conclusion, binds)
    world = failing_world(m, conclusion)
    if world is None or not all(sequent_valid_in(m, s) for s in premises):
        raise AssertionError(f"witness for {rule.id} did not re-verify")
    return {
        "bindings": _binding_dict(binds),
        "premises": [print_sequent(s) for s in premises],
        "conclusion": print_sequent(conclusion),
        "model": m.to_dict(),
        "world": world,
    }


# ---------------------------------------------------------------------------
# Variants and coordination rules: global reading over the bank
# ---------------------------------------------------------------------------


def _meta_space(uni: _Universe, regime: ContextRegime) -> tuple[_Space, list]:
    ctx, choices = uni.contexts(regime)
    b = uni.bank
    return _Space(b.imp, b.full, uni.plus, uni.minus, ctx), choices


def _judgment_tables(rule: MetaRuleSchema, reading: Reading, dims, space, cache) -> tuple[list, np.ndarray]:
    """(premise-holds tables, conclusion-fails-candidate table)."""

    def valid(p: SequentPattern) -> np.ndarray:
        t = cache.get(p)
        if t is None:
            t = cache[p] = _pattern_table(p, dims, space)
        return t

    def holds(j) -> np.ndarray:
        line, p = j
        if line is S:
            return valid(p)
        if reading is Reading.R2:
            return valid(translate_pattern(j))
        return ~valid(p)

    return [holds(j) for j in rule.premises], ~holds(rule.conclusion)


def audit_meta_rule(rule: MetaRuleSchema, cfg: AuditConfig, _cache: dict | None = None) -> AuditVerdict:
    uni = universe(cfg)
    fvars, signed = rule.formula_vars(), rule.has_sign_var()
    count = _syntactic_count(len(fvars), signed, cfg.context_regime, len(uni.pool))
    if cfg.mode is CoordinationMode.INDEPENDENT:
        return AuditVerdict(rule.id, NO_READING, count, models=uni.bank.M)
    space, choices = _meta_space(uni, cfg.context_regime)
    dims = space.dims(fvars, signed)
    cache = {} if _cache is None else _cache
    prem, fails = _judgment_tables(rule, cfg.reading, dims, space, cache)
    viol = np.broadcast_to(fails, [n for _, n in dims]).copy()
    for t in prem:
        viol &= t
    reps = [c.rep for c in uni.classes]
    undecided = 0
    for flat in np.flatnonzero(viol):
        coords = _coords(int(flat), dims)
        binds = _bindings(fvars, signed, coords, reps, choices[coords.get("ctx", 0)])
        w = _meta_witness(rule, binds, cfg, uni)
        if w is None:
            undecided += 1
            continue
        return AuditVerdict(rule.id, UNSOUND, count, w, undecided, uni.bank.M)
    return AuditVerdict(rule.id, SOUND, count, None, undecided, uni.bank.M)


def _countermodel(uni: _Universe, s: Sequent) -> tuple[KripkeModel, str] | None:
    bank = uni.bank
    ctx = bank.full
    for g in s.gamma:
        ctx = ctx & bank.value(g)[0]
    for d in s.delta:
        ctx = ctx & bank.value(d)[1]
    succ = bank.value(s.succedent)[0 if s.sign is Sign.PLUS else 1]
    hit = bank.first_failure(ctx, succ)
    if hit is None:
        return None
    m = bank.models[hit[0]]
    world = failing_world(m, s)  # independent re-check with the direct evaluator
    if world is None:
        raise AssertionError(f"bank and evaluator disagree on {print_sequent(s)}")
    return m, world


def _meta_witness(rule: MetaRuleSchema, binds: dict, cfg: AuditConfig, uni: _Universe) -> dict | None:
    """Evidence for every premise holding and the conclusion failing, or None
    when the conclusion's failure cannot be witnessed within the budget."""

    def judged(j) -> tuple[LineType, Sequent, Sequent]:
        line, p = j
        s = instantiate_pattern(p, binds)
        if line is D and cfg.reading is Reading.R2:
            return line, s, instantiate_pattern(translate_pattern(j), binds)
        return line, s, s

    def record(line, s, status, evidence):
        return {"line": line.value, "sequent": print_sequent(s), "status": status, "evidence": evidence}

    def cm_evidence(target: Sequent) -> dict | None:
        hit = _countermodel(uni, target)
        if hit is None:
            return None
        return {"countermodel": hit[0].to_dict(), "world": hit[1], "for": print_sequent(target)}

    # conclusion first: it may need a derivation
    line, s, target = judged(rule.conclusion)
    if line is D and cfg.reading is Reading.R1:
        tree = uni.prover.prove(target, cfg.budget)
        if tree is None:
            return None
        if not check_derivation(tree):
            raise AssertionError("search returned an unchecked tree")
        concl = record(line, s, "fails", {"derivation_height": tree.height(), "for": print_sequent(target)})
    else:
        ev = cm_evidence(target)
        if ev is None:
            raise AssertionError(f"no countermodel for {print_sequent(target)} despite the grid")
        concl = record(line, s, "fails", ev)
    premises = []
    for j in rule.premises:
        line, s, target = judged(j)
        if line is D and cfg.reading is Reading.R1:
            ev = cm_evidence(target)
            if ev is None:
                raise AssertionError(f"expected a countermodel for {print_sequent(target)}")
        else:
            if _countermodel(uni, target) is not None:
                raise AssertionError(f"expected {print_sequent(target)} to be valid at the bound")
            ev = {"valid_up_to_bound": print_sequent(target)}
        premises.append(record(line, s, "holds", ev))
    return {"bindings": _binding_dict(binds), "premises": premises, "conclusion": concl}


def audit_rule(rule: RuleSchema | MetaRuleSchema, cfg: AuditConfig) -> AuditVerdict:
    if isinstance(rule, MetaRuleSchema):
        return audit_meta_rule(rule, cfg)
    return audit_base_rule(rule, cfg)


# ---------------------------------------------------------------------------
# Suites and reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditRow:
    id: str
    label: str
    kind: str  # base | variant | coordination
    pattern: str  # e.g. "2D>S zeta"; empty for base rules
    zeta: bool
    rule: object = field(compare=False, repr=False)


def suite_rows() -> list[AuditRow]:
    rows = [AuditRow(r.id, r.label, "base", "", False, r) for r in base_rules()]
    table = rule_table()
    for rid in RIGHT_RULE_IDS:
        for v in generate_variants(table[rid]):
            c = classify_variant(v)
            rows.append(AuditRow(v.id, v.label, "variant", str(c), c.zeta, v))
    for s in STRUCTURAL:
        c = classify_variant(s)
        rows.append(AuditRow(s.id, s.label, "coordination", str(c), c.zeta, s))
    return rows


@dataclass
class AuditReport:
    configs: list[AuditConfig]
    rows: list[AuditRow]
    cells: dict[tuple[str, str], AuditVerdict]
    collapse: dict[str, dict[str, bool]]  # config label -> variant id -> cross-check passed

    def unsound(self, cfg: AuditConfig) -> list[str]:
        return [r.id for r in self.rows if self.cells[(r.id, cfg.label)].status == UNSOUND]

    def expected_asymmetry(self) -> list[str]:
        return [r.id for r in self.rows if (r.kind == "variant" and r.zeta) or r.id in ("s2a", "s2b")]

    def summary(self) -> list[str]:
        lines = []
        expected = set(self.expected_asymmetry())
        for cfg in self.configs:
            bad = self.unsound(cfg)
            lines.append(f"{cfg.label}: {len(bad)} unsound: {' '.join(bad) or '-'}")
            has_variants = any(r.kind == "variant" for r in self.rows)
            if has_variants and cfg.reading is Reading.R1 and cfg.mode is not CoordinationMode.INDEPENDENT:
                extra = [i for i in bad if i not in expected]
                missing = [i for i in self.expected_asymmetry() if i not in bad]
                verdict = "yes" if not extra and not missing else "no"
                lines.append(
                    f"{cfg.label}: unsound set is exactly the zeta variants plus s2a/s2b: {verdict}"
                    + (f" (extra: {' '.join(extra)})" if extra else "")
                    + (f" (missing: {' '.join(missing)})" if missing else "")
                )
            if self.collapse.get(cfg.label):
                res = self.collapse[cfg.label]
                lines.append(f"{cfg.label}: translation collapse cross-check {sum(res.values())}/{len(res)}")
        return lines

    def to_json(self) -> str:
        doc = {
            "configs": [dict(label=c.label, **c.to_dict()) for c in self.configs],
            "records": [
                dict(
                    config=cfg.label,
                    label=row.label,
                    kind=row.kind,
                    pattern=row.pattern,
                    zeta=row.zeta,
                    active=_active(row, cfg.mode),
                    bounds={
                        "max_worlds": cfg.max_worlds,
                        "atoms": list(cfg.atoms),
                        "max_formula_depth": cfg.max_formula_depth,
                        "budget": cfg.budget,
                    },
                    **self.cells[(row.id, cfg.label)].to_dict(),
                )
                for row in self.rows
                for cfg in self.configs
            ],
            "collapse": self.collapse,
            "summary": self.summary(),
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        short = {SOUND: "sound", UNSOUND: "UNSOUND", NO_READING: "n/a"}
        heads = [c.label for c in self.configs]
        w_id = max(len("rule"), *(len(r.id) for r in self.rows))
        w_lab = max(len("label"), *(len(r.label) for r in self.rows))
        w_pat = max(len("lines"), *(len(r.pattern) for r in self.rows))
        widths = [max(len(h), 7) for h in heads]
        out = ["  ".join([f"{'rule':<{w_id}}", f"{'label':<{w_lab}}", f"{'lines':<{w_pat}}", *(f"{h:<{w}}" for h, w in zip(heads, widths))]).rstrip()]
        for r in self.rows:
            cells = [short[self.cells[(r.id, c.label)].status] for c in self.configs]
            out.append(
                "  ".join([f"{r.id:<{w_id}}", f"{r.label:<{w_lab}}", f"{r.pattern:<{w_pat}}", *(f"{s:<{w}}" for s, w in zip(cells, widths))]).rstrip()
            )
        out.append("")
        for cfg in self.configs:
            for r in self.rows:
                v = self.cells[(r.id, cfg.label)]
                if v.status == UNSOUND:
                    out.append(f"[{cfg.label}] {r.id}: {format_witness(v.witness)}")
        out.append("")
        out.extend(self.summary())
        return "\n".join(out) + "\n"


def _active(row: AuditRow, mode: CoordinationMode) -> bool:
    if row.kind == "coordination":
        return any(s.id == row.id for s in coordination_rules(mode))
    return mode is not CoordinationMode.INDEPENDENT or row.kind == "base" or not row.zeta


def format_witness(w: dict | None) -> str:
    if w is None:
        return "-"
    b = w["bindings"]
    parts = [f"{k}={v}" for k, v in b.items() if k not in (GAMMA, DELTA)]
    if b[GAMMA] or b[DELTA]:
        parts.append(f"Gamma={{{', '.join(b[GAMMA])}}} Delta={{{', '.join(b[DELTA])}}}")
    head = ", ".join(parts)
    if "model" in w:
        return f"{head}; conclusion {w['conclusion']} fails at {w['world']}"
    prem = "; ".join(f"{p['line']} {p['sequent']}" for p in w["premises"])
    c = w["conclusion"]
    return f"{head}; premises hold: {prem or '-'}; conclusion fails: {c['line']} {c['sequent']}"


def collapse_holds(variant: MetaRuleSchema) -> bool:
    """Translating every judgment of a variant gives back its base rule."""
    base = rule_table()[variant.origin]
    return (
        tuple(translate_pattern(j) for j in variant.premises) == base.premises
        and translate_pattern(variant.conclusion) == base.conclusion
    )


def audit_suite(configs: Iterable[AuditConfig], rows: list[AuditRow] | None = None) -> AuditReport:
    configs = list(configs)
    rows = suite_rows() if rows is None else rows
    cells: dict[tuple[str, str], AuditVerdict] = {}
    collapse: dict[str, dict[str, bool]] = {}
    for cfg in configs:
        caches: dict[str, dict] = {}  # shared pattern tables per rule family
        for row in rows:
            if row.kind == "base":
                v = audit_base_rule(row.rule, cfg)
            else:
                v = audit_meta_rule(row.rule, cfg, caches.setdefault(row.rule.origin, {}))
            cells[(row.id, cfg.label)] = v
        if cfg.reading is Reading.R2 and cfg.mode is not CoordinationMode.INDEPENDENT:
            res = {}
            for row in rows:
                if row.kind != "variant":
                    continue
                single = single_variant(rule_table()[row.rule.origin])
                ref = cells.get((single.id, cfg.label)) or audit_meta_rule(single, cfg)
                res[row.id] = collapse_holds(row.rule) and cells[(row.id, cfg.label)].status == ref.status
            collapse[cfg.label] = res
    return AuditReport(configs, rows, cells, collapse)

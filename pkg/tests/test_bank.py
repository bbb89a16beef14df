import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from bilateral.bank import ModelBank, check_hygiene, formula_pool
from bilateral.semantics import ModelClass, enumerate_models, eval_minus, eval_plus
from bilateral.syntax import Sign

from conftest import formulas

ALL3 = ModelBank(list(enumerate_models(3, ["p", "q"])), ["p", "q"])
ROOTED3 = ModelBank.rooted(3, ["p", "q"], ModelClass.NONEXCLUSIVE)


def test_bank_sizes():
    assert ALL3.M == 3757
    assert ROOTED3.M == 900
    assert ModelBank.rooted(3, ["p", "q"], ModelClass.EXCLUSIVE).M == 224


@given(formulas(max_leaves=8), st.integers(0, ALL3.M - 1))
def test_bank_agrees_with_direct_evaluation(f, k):
    m = ALL3.models[k]
    plus, minus = ALL3.value(f)
    for i, w in enumerate(m.worlds):
        assert bool(plus[k] >> i & 1) == eval_plus(m, w, f)
        assert bool(minus[k] >> i & 1) == eval_minus(m, w, f)


@given(formulas(max_leaves=8), st.sampled_from(list(Sign)))
def test_rooted_models_decide_validity(f, sign):
    i = 0 if sign is Sign.PLUS else 1
    all_valid = ALL3.valid(ALL3.full, ALL3.value(f)[i])
    rooted_valid = ROOTED3.valid(ROOTED3.full, ROOTED3.value(f)[i])
    assert all_valid == rooted_valid


def _upset_table(bank):
    """ok[k, mask]: mask is an up-set of model k."""
    ok = np.zeros((bank.M, 1 << bank.width), dtype=bool)
    for k, m in enumerate(bank.models):
        ups = ModelBank._ups(m)
        for mask in range(1 << len(m.worlds)):
            ok[k, mask] = all(not (mask >> i & 1) or (ups[i] & ~mask) == 0 for i in range(len(m.worlds)))
    return ok


def test_persistence_and_constants_on_the_full_sweep():
    # every model with at most 3 worlds, every formula of depth <= 2 over {p, q}
    ok = _upset_table(ALL3)
    idx = np.arange(ALL3.M)
    bank = ModelBank(ALL3.models, ["p", "q"])  # fresh memo, dropped afterwards
    for f in formula_pool(["p", "q"], 2):
        plus, minus = bank.value(f)
        assert ok[idx, plus].all() and ok[idx, minus].all(), f
    from bilateral.syntax import BOT, TOP

    assert (bank.value(TOP)[0] == bank.full).all() and not bank.value(TOP)[1].any()
    assert (bank.value(BOT)[1] == bank.full).all() and not bank.value(BOT)[0].any()


def test_exclusive_models_never_validate_both_signs():
    bank = ModelBank(list(enumerate_models(3, ["p", "q"], ModelClass.EXCLUSIVE)), ["p", "q"])
    for f in formula_pool(["p", "q"], 2):
        plus, minus = bank.value(f)
        assert not (bank.valid(bank.full, plus) and bank.valid(bank.full, minus)), f


def test_classes_partition_the_pool():
    pool = formula_pool(["p", "q"], 2)
    classes = ROOTED3.classes(pool)
    assert sum(c.size for c in classes) == len(pool)
    assert len(classes) == 386
    assert [c.rep for c in classes] == sorted([c.rep for c in classes], key=pool.index)


def test_hygiene_report_small():
    rep = check_hygiene(2, ["p"], 1)
    assert rep.ok and rep.models == 27 and rep.formulas == 39

import pytest
from hypothesis import given, settings, strategies
import numpy as np

from mcatt.TT_constants import TheoryId, UNIT_THEORIES, COH_THEORIES
from mcatt.TT_syntax import Var, Ctx, rename, dim_ctx
from mcatt.TT_kernel import Judgment, JudgmentKind, check_ctx, check_sub, check_judgment, infer_tm
from mcatt.TT_translate import desusp
from mcatt.TT_oracle import *

CATT, MCATT = TheoryId.CATT, TheoryId.MCATT


def test_search_outcomes():
    assert derivation_search(CATT, Judgment(JudgmentKind.PS, D2), 64) is Search.FOUND
    assert derivation_search(CATT, Judgment(JudgmentKind.PS, D1.prefix(2)), 64) is Search.NOT_FOUND
    assert derivation_search(CATT, Judgment(JudgmentKind.CTX, ASSOC_PS), 1) is Search.OUT_OF_FUEL


def test_memo_remembers_failures():
    search = DerivationSearch(64)
    J = Judgment(JudgmentKind.PS, D1.prefix(2))
    assert search.run(CATT, J) is Search.NOT_FOUND
    assert ('ps', J.ctx) in search.never


def _as_v(G:Ctx) -> Ctx:
    return rename(G, {p: Var(f'v{k}') for k, p in enumerate(G.vars())})


def test_enumerated_ps_match_the_search():
    found = {_as_v(G) for G in small_contexts(5)
             if derivation_search(CATT, Judgment(JudgmentKind.PS, G), 64) is Search.FOUND}
    listed = set(enumerate_ps(5))
    # small_contexts stop at dimension one
    assert found == {G for G in listed if dim_ctx(G) <= 1}
    for n in (1, 3, 5, 7):
        assert all(derivation_search(CATT, Judgment(JudgmentKind.PS, G), 64) is Search.FOUND
                   for G in enumerate_ps(n))


def test_stock_coherences_are_well_typed():
    for name, (kind, ps, ty) in STOCK.items():
        t = stock_coh(name, [V(v) for v in ps.vars()])
        assert infer_tm(CATT, ps, t).inferred == ty


@pytest.mark.parametrize('theory', list(TheoryId))
def test_agreement_with_the_kernel(theory):
    js = all_judgments(theory, 5)
    rows = agreement(theory, js, 64)
    bad = [r['judgment'] for r in rows if not r['agree']]
    assert bad == []
    verdicts = {r['kernel'] for r in rows}
    assert verdicts == {'ACCEPT', 'REJECT'}


@pytest.mark.parametrize('theory', [CATT, MCATT])
def test_agreement_on_nested_coherences(theory):
    js = all_judgments(theory, 3, depth=2)
    assert any(isinstance(u, Coh) for J in js if isinstance(J.tm, Coh) for u in J.tm.args.terms())
    rows = agreement(theory, js, 64)
    assert [r['judgment'] for r in rows if not r['agree']] == []


@pytest.mark.parametrize('theory', list(TheoryId))
def test_universe_covers_every_small_context(theory):
    js = all_judgments(theory, 5)
    ctxs = {J.ctx for J in js if J.kind is JudgmentKind.CTX}
    lift = desusp if theory in UNIT_THEORIES else (lambda G: G)
    assert {lift(G) for G in small_contexts(5) + enumerate_ps(5)} <= ctxs
    applied = {J.ctx for J in js if J.kind is JudgmentKind.SUB}
    if theory in COH_THEORIES:
        assert applied == ctxs
    else:
        assert applied == set()


def test_enumerated_substitutions():
    pool = [(V(v), A) for v, A in D1.bindings]
    subs = enumerate_subs(CATT, D1, COMP_PS, pool)
    assert len(subs) == 2
    assert all(check_sub(CATT, D1, g, COMP_PS).accepted for g in subs)
    assert enumerate_subs(CATT, D1, COMP_PS, pool, limit=1) == subs[:1]
    assert enumerate_subs(CATT, D0, D1, [(V(x), OBJ)]) == []


@settings(max_examples=30, deadline=None)
@given(strategies.integers(0, 2**32 - 1), strategies.sampled_from([CATT, MCATT]))
def test_random_contexts_are_accepted(seed, theory):
    rng = np.random.default_rng(seed)
    make = random_catt_ctx if theory is CATT else random_mcatt_ctx
    assert check_ctx(theory, make(rng, 7)).accepted


@settings(max_examples=30, deadline=None)
@given(strategies.integers(0, 2**32 - 1), strategies.sampled_from([CATT, MCATT]))
def test_random_pairs_are_accepted(seed, theory):
    pair = random_pair(np.random.default_rng(seed), theory, 5, depth=2)
    if pair is None:
        return
    D, g, G = pair
    J = Judgment(JudgmentKind.SUB, D, sub=g, target=G)
    assert check_judgment(theory, J).accepted

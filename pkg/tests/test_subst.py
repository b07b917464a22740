import pytest
from hypothesis import given, settings, strategies
import numpy as np

from mcatt.TT_constants import TheoryId
from mcatt.TT_syntax import Var, Hom, V, Ctx, Sub, OBJ, UC
from mcatt.TT_subst import apply, compose, identity, restrict
from mcatt.TT_errors import UnboundVariable
from mcatt.TT_oracle import (COMP_PS, D1, stock_coh, random_pair, random_catt_ctx, random_sub, term_pool,
                             x, y, z, f, g)

CATT = TheoryId.CATT
a, b, c, v, w = (Var(s) for s in 'abcvw')
DELTA = Ctx(((a, OBJ), (b, OBJ), (v, Hom(OBJ, V(a), V(b))), (c, OBJ), (w, Hom(OBJ, V(b), V(c)))))
GAMMA = Sub(((x, V(a)), (y, V(b)), (f, V(v)), (z, V(c)), (g, V(w))))


def test_apply_instantiates_types():
    assert apply(Hom(OBJ, V(x), V(z)), GAMMA) == Hom(OBJ, V(a), V(c))
    assert apply(UC, GAMMA) == UC


def test_apply_to_coherence_composes_arguments():
    t = stock_coh('comp', [V(s) for s in COMP_PS.vars()])
    assert apply(t, GAMMA).args.terms() == GAMMA.terms()


def test_unbound_variable():
    with pytest.raises(UnboundVariable) as e:
        apply(V(Var('q')), GAMMA)
    assert e.value.rule == 'var'


def test_identity_and_restrict():
    assert apply(COMP_PS.lookup(g), identity(COMP_PS)) == COMP_PS.lookup(g)
    assert compose(GAMMA, identity(DELTA)) == GAMMA
    assert restrict(GAMMA, 3).domain() == D1.vars()


@settings(max_examples=30, deadline=None)
@given(strategies.integers(0, 2**32 - 1))
def test_composition_laws_on_random_pairs(seed):
    rng = np.random.default_rng(seed)
    pair = random_pair(rng, CATT, 5)
    if pair is None:
        return
    D, gam, G = pair
    # unit laws
    assert compose(identity(G), gam) == gam
    assert compose(gam, identity(D)) == gam
    # substitution in two steps is substitution by the composite
    E = random_catt_ctx(rng, 5, 'c')
    d = random_sub(rng, CATT, E, D, term_pool(rng, CATT, E))
    if d is None:
        return
    for _, A in G.bindings:
        assert apply(apply(A, gam), d) == apply(A, compose(gam, d))
    assert compose(compose(identity(G), gam), d) == compose(identity(G), compose(gam, d))

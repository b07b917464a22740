import json

import pytest

from mcatt.TT_constants import TheoryId
from mcatt.TT_syntax import Var, Hom, V, Ctx, Sub, OBJ, UNIT, UC, OBJ_NF
from mcatt.TT_subst import apply
from mcatt.TT_kernel import *
from mcatt.TT_translate import desusp
from mcatt.TT_oracle import (D0, D1, D2, COMP_PS, ASSOC_PS, STOCK, stock_coh, enumerate_ps, _candidate_types,
                             x, y, z, f, g)

GLOB, CATT, GLOB_UNIT, MCATT = TheoryId.GLOB, TheoryId.CATT, TheoryId.GLOB_UNIT, TheoryId.MCATT
a, b, c, u, v, w = (Var(s) for s in 'abcuvw')
X, Y, Z, F, Gv = (V(s) for s in (x, y, z, f, g))

# A context and its globular set
GLOBE = Ctx(((x, OBJ), (y, OBJ), (z, OBJ), (Var('f1'), Hom(OBJ, X, Y)), (Var('f2'), Hom(OBJ, X, Y)),
             (g, Hom(OBJ, X, Z)), (Var('h'), Hom(OBJ, Y, Y)),
             (Var('al'), Hom(Hom(OBJ, X, Y), V(Var('f1')), V(Var('f2'))))))
DELTA = Ctx(((a, OBJ), (b, OBJ), (v, Hom(OBJ, V(a), V(b))), (c, OBJ), (w, Hom(OBJ, V(b), V(c)))))
UNITS = Ctx(((a, UNIT), (b, UNIT), (u, Hom(UNIT, V(a), V(b)))))


def code(report):
    return report.error.code if report.error else None


@pytest.mark.parametrize('theory', list(TheoryId))
def test_contexts(theory):
    assert check_ctx(theory, Ctx()).accepted
    assert check_ctx(theory, GLOBE).accepted


def test_context_errors():
    assert code(check_ctx(CATT, Ctx(((x, OBJ), (x, OBJ))))) == 'DuplicateVar'
    assert code(check_ctx(CATT, Ctx(((f, Hom(OBJ, X, Y)),)))) == 'ScopeError'
    assert code(check_ctx(CATT, UNITS)) == 'TheoryViolation'
    assert check_ctx(MCATT, UNITS).accepted
    assert check_ctx(GLOB_UNIT, UNITS).accepted


def test_types():
    assert check_ty(CATT, GLOBE, OBJ).accepted
    assert check_ty(MCATT, Ctx(((x, UNIT),)), Hom(UNIT, X, UC)).accepted
    r = check_ty(CATT, D1, Hom(OBJ, X, F))
    assert code(r) == 'TypeMismatch' and r.error.rule == 'Hom-intro'
    assert code(check_ty(CATT, D1, UNIT)) == 'TheoryViolation'


def test_terms():
    assert infer_tm(CATT, D1, F).inferred == Hom(OBJ, X, Y)
    assert code(infer_tm(CATT, D1, UC)) == 'TheoryViolation'
    assert code(infer_tm(CATT, D1, V(z))) == 'UnboundVariable'
    # variables of type 1 are read in normal form
    assert infer_tm(MCATT, UNITS, V(u)).inferred == OBJ_NF


def test_comp_instance():
    gam = Sub(((x, V(a)), (y, V(b)), (f, V(v)), (z, V(c)), (g, V(w))))
    assert check_sub(CATT, DELTA, gam, COMP_PS).accepted
    t = stock_coh('comp', gam.terms())
    assert infer_tm(CATT, DELTA, t).inferred == Hom(OBJ, V(a), V(c))


def test_substitution_errors():
    assert code(check_sub(CATT, DELTA, Sub(((x, V(a)),)), COMP_PS)) == 'ArityMismatch'
    assert code(check_sub(CATT, DELTA, Sub(((y, V(a)),)), D0)) == 'NameMismatch'
    assert code(check_sub(CATT, DELTA, Sub(((x, V(v)),)), D0)) == 'TypeMismatch'
    assert check_sub(CATT, DELTA, Sub(), Ctx()).accepted


def test_side_conditions():
    assert check_op_side(COMP_PS, Hom(OBJ, X, Z)).accepted
    assert check_op_side(D1, Hom(OBJ, X, Y)).accepted
    assert code(check_op_side(COMP_PS, Hom(OBJ, X, Y))) == 'SideConditionViolation'
    assert code(check_eq_side(COMP_PS, Hom(OBJ, X, Z))) == 'SideConditionViolation'
    assert check_eq_side(D0, Hom(OBJ, X, X)).accepted
    assert code(check_op_side(D0, Hom(OBJ, X, X))) == 'BoundaryUndefined'
    assert check_eq_side(ASSOC_PS, STOCK['assoc'][2]).accepted
    assert code(check_eq_side(COMP_PS, OBJ)) == 'SideConditionViolation'


def test_op_and_eq_exclude_each_other():
    for G in enumerate_ps(5):
        for A in _candidate_types(G):
            assert not (check_op_side(G, A).accepted and check_eq_side(G, A).accepted)


def test_neutral_element_in_any_context():
    e = stock_coh('id', (UC,), MCATT)
    for D in (Ctx(), UNITS, desusp(DELTA)):
        assert ty_defeq(MCATT, D, infer_tm(MCATT, D, e).inferred, OBJ)


def test_unit_coherence_needs_the_unit_theory():
    e = stock_coh('id', (UC,), MCATT)
    assert code(infer_tm(CATT, Ctx(), e)) == 'TheoryViolation'
    assert code(infer_tm(GLOB_UNIT, Ctx(), e)) == 'TheoryViolation'


def test_eta_for_the_unit_type():
    G = Ctx(((a, UNIT),))
    assert ty_defeq(MCATT, G, Hom(UNIT, V(a), UC), OBJ)
    assert tm_defeq(MCATT, G, V(a), UC)
    assert not tm_defeq(GLOB, Ctx(((a, OBJ),)), V(a), V(b))
    assert sub_defeq(MCATT, G, Sub(((x, V(a)),)), Sub(((x, UC),)))
    assert not sub_defeq(MCATT, G, Sub(((x, V(a)),)), Sub(((y, UC),)))


def test_normalize():
    assert normalize(CATT, OBJ) == OBJ
    nf = normalize(MCATT, UNITS)
    assert nf.lookup(u) == OBJ_NF
    assert normalize(MCATT, nf) == nf
    t = stock_coh('id', (V(a),), MCATT)
    assert normalize(MCATT, t, UNITS).args.terms() == (UC,)


def test_judgments():
    J = Judgment(JudgmentKind.TM, DELTA, Hom(OBJ, V(a), V(b)), V(v))
    assert check_judgment(CATT, J).accepted
    bad = Judgment(JudgmentKind.TM, DELTA, Hom(OBJ, V(b), V(a)), V(v))
    assert check_judgment(CATT, bad).error.rule == 'conv'
    assert check_judgment(CATT, Judgment(JudgmentKind.PS, D2)).accepted
    assert not check_judgment(CATT, Judgment(JudgmentKind.PS, DELTA.prefix(2))).accepted
    assert check_judgment(CATT, Judgment(JudgmentKind.OP, COMP_PS, Hom(OBJ, X, Z))).accepted
    assert J.render() == f'{render_ctx(DELTA)} |- v : Hom[*](a, b)'


def test_report_schema():
    r = check_sub(CATT, DELTA, Sub(((x, V(v)),)), D0)
    row = r.to_dict()
    assert set(row) == {'schema', 'verdict', 'judgment', 'inferred', 'code', 'rule', 'span', 'detail'}
    assert row['schema'] == 1 and row['verdict'] == 'REJECT'
    json.dumps(row)
    ok = infer_tm(CATT, D1, F).to_dict()
    assert ok['inferred'] == 'Hom[*](x, y)' and ok['code'] is None


def test_stability_under_substitution():
    gam = Sub(((x, V(a)), (y, V(b)), (f, V(v)), (z, V(c)), (g, V(w))))
    for t in (F, Gv, stock_coh('comp', (X, Y, F, Z, Gv)), stock_coh('id', (Y,))):
        A = infer_tm(CATT, COMP_PS, t).inferred
        r = infer_tm(CATT, DELTA, apply(t, gam))
        assert r.accepted and r.inferred == apply(A, gam)


def test_index_checked_once():
    from mcatt.TT_kernel import _check_index
    infer_tm(CATT, COMP_PS, stock_coh('comp', (X, Y, F, Z, Gv)))
    infer_tm(CATT, COMP_PS, stock_coh('comp', (X, Y, F, Z, Gv)))
    assert _check_index.cache_info().hits >= 1


def test_errors_name_known_rules():
    from mcatt.TT_constants import RULES
    from mcatt.TT_errors import TypeMismatch
    assert code(check_ctx(CATT, UNITS)) == 'TheoryViolation'
    assert check_ctx(CATT, UNITS).error.rule in RULES
    with pytest.raises(ValueError):
        TypeMismatch('no such rule', rule='beta')

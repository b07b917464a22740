import gzip
import json

import pandas as pd
import pytest

from mcatt.TT_constants import TheoryId, CohKind
from mcatt.TT_syntax import Var, Hom, V, Ctx, Sub, OBJ, UC, OBJ_NF, render_ty
from mcatt.TT_parser import *
from mcatt.TT_elab import Elaborator, check_source
from mcatt.TT_errors import *
from mcatt.TT_kernel import Verdict
from mcatt.TT_translate import Direction
from mcatt.TT_oracle import COMP_PS
from mcatt import check_main, translate_main, adjunction_main, enum_ps_main, selftest_main, write_rows, load_source

CATT, MCATT = TheoryId.CATT, TheoryId.MCATT
COMP = 'coh comp (x : *) (y : *) (f : x -> y) (z : *) (g : y -> z) : x -> z\n'


def elaborated(text, theory=CATT):
    env, results = check_source(parse(text, '<test>', theory))
    return env, {d.name: r for d, r in results}


def test_parse_definitions():
    src = parse(COMP, 'a.catt')
    assert src.theory is CATT
    d, = src.items
    assert d.keyword is DefKind.COH and d.name == 'comp'
    assert [b.name for b in d.binders] == ['x', 'y', 'f', 'z', 'g']
    assert d.ty == SArrow(SName('x'), SName('z'))
    assert (d.line, d.column) == (1, 5)
    assert parse('', 'empty.mcatt').items == ()


def test_parse_terms():
    d, = parse('let t (a : *) : Hom[*](a, a) = comp (id a) k @[x := a, y := ()] # trailing\n', 'a.catt').items
    assert d.ty == SHom(SStar(), SName('a'), SName('a'))
    assert d.body == SApp('comp', (SApp('id', (SName('a'),)),
                                   SExplicit('k', (('x', SName('a')), ('y', SUnit())))))
    assert render_def(d) == 'let t (a : *) : Hom[*](a, a) = comp (id a) k @[x := a, y := ()]'


def test_parse_errors():
    with pytest.raises(ParseError) as e:
        parse('coh comp (x : *) : ->', 'bad.catt')
    assert e.value.span.startswith('bad.catt:1:')
    with pytest.raises(ParseError):
        theory_of('notes.txt')
    assert theory_of('lib.mcatt.gz') is MCATT


def test_render_round_trip(data_dir):
    for name in ('stdlib.catt', 'stdlib.mcatt'):
        src = load_source(data_dir / name)
        assert parse(render_source(src), src.path, src.theory) == src


def test_compact_application():
    env, res = elaborated(COMP + 'let cc (a : *) (b : *) (v : a -> b) (c : *) (w : b -> c) : a -> c = comp v w\n')
    assert res['cc'].accepted
    t = env['cc'].body
    a, b, v, c, w = (V(Var(s)) for s in 'abvcw')
    assert t.args == Sub(tuple(zip(COMP_PS.vars(), (a, b, v, c, w))))


def test_explicit_agrees_with_compact():
    env, res = elaborated(COMP + 'let p (a : *) (b : *) (v : a -> b) (c : *) (w : b -> c) : a -> c = comp v w\n'
                                 'let q (a : *) (b : *) (v : a -> b) (c : *) (w : b -> c) : a -> c = '
                                 'comp @[x := a, y := b, f := v, z := c, g := w]\n')
    assert res['p'].accepted and res['q'].accepted
    assert env['p'].body == env['q'].body


def test_elaborator_on_single_items():
    el = Elaborator(CATT)
    d, = parse(COMP, 'a.catt').items
    entry = el.define(d)
    assert entry.ctx == COMP_PS and entry.kind is CohKind.OP
    el.env['comp'] = entry
    a, b, v, c, w = (Var(s) for s in 'abvcw')
    G = Ctx(((a, OBJ), (b, OBJ), (v, Hom(OBJ, V(a), V(b))), (c, OBJ), (w, Hom(OBJ, V(b), V(c)))))
    t = el.tm(CATT, G, SApp('comp', (SName('v'), SName('w'))))
    assert t.args == Sub(tuple(zip(COMP_PS.vars(), (V(a), V(b), V(v), V(c), V(w)))))
    with pytest.raises(ElaborationMismatch):
        el.tm(CATT, G, SApp('comp', (SName('w'), SName('v'))))


def test_elaboration_errors():
    _, res = elaborated(COMP + 'let t (a : *) (v : a -> a) : a -> a = comp v\n')
    assert res['t'].error.code == 'ElaborationMismatch'
    _, res = elaborated(COMP + 'let t (a : *) (b : *) (v : a -> b) (w : a -> b) : a -> b = comp v w\n')
    assert res['t'].error.code == 'ElaborationMismatch'
    _, res = elaborated(COMP + 'let t (a : *) : a -> a = nope a\n')
    assert res['t'].error.code == 'ScopeError'
    _, res = elaborated(COMP + COMP)
    assert res['comp'].error.code == 'DuplicateVar'


def test_kinds_are_inferred():
    env, res = elaborated(COMP + 'coh id (x : *) : x -> x\n')
    assert str(env['comp'].kind) == 'op' and str(env['id'].kind) == 'eq'


def test_mcatt_applications():
    env, res = elaborated('coh comp (x : *) (y : *) (f : x -> y) (z : *) (g : y -> z) : x -> z\n'
                          'mcoh prod (x : *) (y : *) (f : x -> y) (z : *) (g : y -> z) : x -> z\n'
                          'mcoh e (x : *) : x -> x\n'
                          'let twice (t : *) : * = prod t t\n'
                          'let one : * = e\n'
                          'let lift (a : 1) (b : 1) (u : Hom[1](a, b)) : * = u\n', MCATT)
    assert all(r.accepted for r in res.values()), [str(r) for r in res.values()]
    t = env['twice'].body
    assert t.args.terms() == (UC, UC, V(Var('t')), UC, V(Var('t')))
    assert env['one'].body.args.terms() == (UC,)
    assert res['one'].inferred == OBJ_NF
    assert render_ty(res['lift'].inferred) == '*'


def test_theory_of_entries():
    _, res = elaborated('mcoh e (x : *) : x -> x\n')
    assert res['e'].error.code == 'TheoryViolation' and res['e'].error.rule == 'mcoh-intro'
    _, res = elaborated(COMP + 'let t (a : *) : * = comp\n', MCATT)
    assert res['t'].error.code == 'TheoryViolation'


# ---- corpus and drivers ----

def test_stdlib_checks(data_dir):
    for name in ('stdlib.catt', 'stdlib.mcatt'):
        t, out = check_main(data_dir / name, disable_print=True)
        assert out.ok, out.lines
        assert t >= 0
        assert all(r['verdict'] == 'ACCEPT' for r in out.rows)


@pytest.mark.parametrize('name, code', [
    ('bad_notps.catt', 'NotPs'),
    ('bad_sideconditions.catt', 'SideConditionViolation'),
    ('bad_eqside.catt', 'SideConditionViolation'),
    ('bad_mcoh.catt', 'TheoryViolation'),
    ('bad_let.catt', 'TypeMismatch'),
])
def test_negative_corpus(data_dir, name, code):
    _, out = check_main(data_dir / name, disable_print=True)
    assert not out.ok
    rejected = [r for r in out.rows if r['verdict'] == 'REJECT']
    assert rejected[0]['code'] == code
    assert rejected[0]['span'].startswith(str(data_dir / name))
    assert code in out.first_error


def test_json_report(data_dir):
    _, out = check_main(data_dir / 'bad_let.catt', as_json=True, disable_print=True)
    rows = [json.loads(line) for line in out.lines]
    assert [r['verdict'] for r in rows] == ['ACCEPT', 'REJECT', 'ACCEPT']
    assert rows[1]['rule'] == 'conv' and rows[1]['schema'] == 1


def test_gzip_source(tmp_path):
    fp = tmp_path / 'lib.catt'
    with gzip.open(fp, 'wt', encoding='utf-8') as fh:
        fh.write(COMP)
    _, out = check_main(fp, disable_print=True)
    assert out.ok


def test_translate(data_dir):
    out = translate_main(data_dir / 'stdlib.catt', disable_print=True)
    assert out.ok, out.lines
    assert any(line.startswith('mcoh comp ') for line in out.lines)
    assert all(r['verdict'] == 'ACCEPT' for r in out.rows)
    out = translate_main(data_dir / 'stdlib.mcatt', disable_print=True)
    assert out.ok, out.lines
    assert all(r['direction'] == 'rsusp' for r in out.rows)
    out = translate_main(data_dir / 'stdlib.catt', disable_print=True, direction=Direction.RSUSP)
    assert not out.ok


def test_adjunction(data_dir):
    for name in ('stdlib.catt', 'stdlib.mcatt'):
        out = adjunction_main(data_dir / name, disable_print=True)
        assert out.ok, out.lines
        assert {r['case'] for r in out.rows} >= {'index', 'naturality'}


def test_enum_ps():
    out = enum_ps_main(5, disable_print=True)
    assert out.lines[-1] == '# 4 ps-contexts with at most 5 variables'
    assert [r['size'] for r in out.rows] == [1, 3, 5, 5]


def test_selftest_and_csv(tmp_path):
    out = selftest_main(max_vars=3, samples=20, seed=0, fuel=64, disable_print=True)
    assert out.ok, out.lines
    assert out.lines[0].endswith(', 0 disagreements')
    write_rows(out.rows, tmp_path, 'selftest', compress=True)
    df = pd.read_csv(tmp_path / 'selftest.csv.gz')
    assert len(df) == len(out.rows)
    assert Verdict.ACCEPT.value in set(df['kernel'])
    assert set(df['theory']) == {t.value for t in TheoryId}


def test_undecodable_source_is_rejected(tmp_path):
    fp = tmp_path / 'latin.catt'
    fp.write_bytes(COMP.encode() + b'\xff\xfe\n')
    _, out = check_main(fp, disable_print=True)
    assert not out.ok
    row, = out.rows
    assert row['verdict'] == 'REJECT' and row['code'] == 'ParseError'
    assert row['span'] == str(fp)


def test_one_broken_file_does_not_stop_the_run(tmp_path, data_dir, monkeypatch):
    import run

    def boom(*args):
        raise RuntimeError('disk on fire')
    ok = run.process_file(data_dir / 'stdlib.catt', False, None, True)
    assert ok[2].ok
    monkeypatch.setattr(run, 'check_main', boom)
    fp, t, out = run.process_file(data_dir / 'stdlib.catt', False, None, True)
    assert not out.ok and 'RuntimeError' in out.first_error

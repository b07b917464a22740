from pathlib import Path

import numpy as np
import pandas as pd
from tqdm import tqdm

from .TT_constants import (TheoryId, COH_THEORIES, SELFTEST_MAX_VARS, SELFTEST_SAMPLES, SELFTEST_FUEL,
                           SELFTEST_DEPTH)
from .TT_syntax import Coh, dim_ctx, render_ctx, render_ty, render_tm
from .TT_kernel import Judgment, JudgmentKind, CheckReport, Verdict, ErrorInfo, check_judgment, normalize
from .TT_translate import (Direction, delooped, rsusp, desusp_judgment, rsusp_judgment,
                           translate_correctness, verify_adjunction)
from .TT_oracle import enumerate_ps, all_judgments, agreement, random_pair
from .TT_parser import SourceFile, DefKind, parse, theory_of
from .TT_elab import Entry, check_source
from .TT_errors import KernelError, TheoryViolation
from .utils import read_source, json_line, timer, timer_s
from .typing import *

CATT, MCATT = TheoryId.CATT, TheoryId.MCATT


class Outcome(NamedTuple):
    ok: bool
    rows: List[Row]
    lines: List[str]
    first_error: Optional[str] = None


def load_source(fp:Path, theory:Optional[TheoryId]=None) -> SourceFile:
    return parse(read_source(fp), str(fp), theory or theory_of(fp))


def _failed(fp:Path, e:KernelError) -> Outcome:
    row = {'file': str(fp), 'item': None, **CheckReport(Verdict.REJECT, str(fp), None, ErrorInfo.of(e)).to_dict()}
    return Outcome(False, [row], [f'[REJECT] {fp}', f'    {e}'], str(e))


def _loaded(fp:Path, theory:Optional[TheoryId]) -> Tuple[Optional[Dict[str, Entry]], Optional[list], Optional[Outcome]]:
    try:
        src = load_source(fp, theory)
    except KernelError as e:
        return None, None, _failed(fp, e)
    env, results = check_source(src)
    return env, results, None


@timer_s
def check_main(fp:Path, as_json:bool=False, theory:Optional[TheoryId]=None, disable_print=False):
    env, results, failed = _loaded(fp, theory)
    if failed:
        return (failed,)
    rows, lines, first = [], [], None
    for d, r in results:
        row = {'file': str(fp), 'item': d.name, **r.to_dict()}
        rows.append(row)
        if as_json:
            lines.append(json_line(row))
        else:
            lines.append(f'[{r.verdict.value}] {d.keyword} {d.name} : {r.judgment}')
        if r.error:
            msg = f'{r.error.span}: {r.error.code} [{r.error.rule}] {r.error.detail}'
            if not as_json:
                lines.append(f'    {msg}')
            first = first or msg
    ok = all(r.accepted for _, r in results)
    return (Outcome(ok, rows, lines, first),)


def _render_entry(keyword:str, name:str, e:Entry) -> str:
    return f'{keyword} {name} {render_ctx(e.ctx)} : {render_ty(e.ty)}'


def translate_main(fp:Path, theory:Optional[TheoryId]=None, disable_print=False,
                   direction:Optional[Direction]=None) -> Outcome:
    '''desusp a catt file or rsusp an mcatt file, checking the image of every definition.'''
    if direction is not None:
        theory = CATT if direction is Direction.DESUSP else MCATT
    try:
        theory = theory or theory_of(fp)
    except KernelError as e:
        return _failed(fp, e)
    if theory not in COH_THEORIES:
        return _failed(fp, TheoryViolation(f'{theory} has no translation', rule='rsusp'))
    env, results, failed = _loaded(fp, theory)
    if failed:
        return failed
    direction = Direction.DESUSP if theory is CATT else Direction.RSUSP
    rows, lines, ok = [], [], True
    for d, r in results:
        if not r.accepted:
            ok = False
            lines.append(f'# {d.name} skipped: {r.error.code} {r.error.detail}')
            continue
        e = env[d.name]
        if e.keyword is not DefKind.LET:
            # coherence indices stay CaTT judgments
            kw = 'mcoh' if direction is Direction.DESUSP else 'coh'
            lines.append(_render_entry(kw, d.name, e))
            continue
        J = e.judgment()
        image = desusp_judgment(J) if direction is Direction.DESUSP else rsusp_judgment(J)
        report = translate_correctness(J, direction)
        ok &= report.accepted
        lines.append(f'let {d.name} {render_ctx(image.ctx)} : {render_ty(image.ty)} = {render_tm(image.tm)}')
        if not report.accepted:
            lines.append(f'#   {report.error.code} [{report.error.rule}] {report.error.detail}')
        rows.append({'file': str(fp), 'item': d.name, 'direction': direction.value, **report.to_dict()})
    return Outcome(ok, rows, lines)


def _adjunction_cases(e:Entry) -> List[Tuple[str, dict]]:
    cases = []
    if e.keyword is not DefKind.LET:
        cases.append(('index', dict(Gc=e.ctx, Gm=delooped(e.ctx))))
    elif e.theory is CATT:
        cases.append(('ctx', dict(Gc=e.ctx, Gm=delooped(e.ctx))))
    else:
        Gm = normalize(MCATT, e.ctx)
        cases.append(('ctx', dict(Gc=rsusp(Gm), Gm=Gm)))
    # a definition whose body is a coherence gives a substitution into its index
    t = e.body
    if isinstance(t, Coh):
        if t.theory is CATT:
            cases.append(('naturality', dict(Gc=t.ps, Gm=delooped(t.ps), catt_subs=[(e.ctx, t.args)])))
        else:
            cases.append(('naturality', dict(Gc=t.ps, Gm=delooped(t.ps), mcatt_subs=[(e.ctx, t.args)])))
    return cases


def adjunction_main(fp:Path, theory:Optional[TheoryId]=None, disable_print=False) -> Outcome:
    env, results, failed = _loaded(fp, theory)
    if failed:
        return failed

    @timer(disable_print=disable_print)
    def verify_all():
        rows, lines, ok = [], [], True
        for d, r in tqdm(results, disable=disable_print):
            if not r.accepted:
                ok = False
                lines.append(f'# {d.name} skipped: {r.error.code} {r.error.detail}')
                continue
            for case, kw in _adjunction_cases(env[d.name]):
                rep = verify_adjunction(**kw)
                ok &= rep.holds
                status = 'OK' if rep.holds else 'FAIL'
                lines.append(f'[{status}] {d.name} ({case}): {render_ctx(rep.mctx)}')
                if rep.counterexample:
                    lines.append(f'    {rep.counterexample}')
                rows.append({'file': str(fp), 'item': d.name, 'case': case, **rep.to_dict()})
        return Outcome(ok, rows, lines)

    return verify_all()


def enum_ps_main(max_vars:int, disable_print=False) -> Outcome:
    @timer(disable_print=disable_print)
    def enumerate_all():
        return enumerate_ps(max_vars)

    ctxs = enumerate_all()
    lines = [render_ctx(G) for G in ctxs]
    lines.append(f'# {len(ctxs)} ps-contexts with at most {max_vars} variables')
    rows = [{'size': len(G), 'dim': dim_ctx(G), 'ctx': render_ctx(G)} for G in ctxs]
    return Outcome(True, rows, lines)


def _law_rows(rng:np.random.Generator, theory:TheoryId, samples:int, max_vars:int,
              disable_print=False) -> List[Row]:
    rows = []
    direction = Direction.DESUSP if theory is CATT else Direction.RSUSP
    for _ in tqdm(range(samples), disable=disable_print):
        pair = random_pair(rng, theory, max_vars)
        if pair is None:
            continue
        D, g, G = pair
        J = Judgment(JudgmentKind.SUB, D, sub=g, target=G)
        kernel = check_judgment(theory, J)
        image = translate_correctness(J, direction)
        if theory is CATT:
            adj = verify_adjunction(G, delooped(G), catt_subs=[(D, g)])
        else:
            adj = verify_adjunction(rsusp(normalize(MCATT, G)), G, mcatt_subs=[(D, g)])
        rows.append({
            'theory': theory.value,
            'kind': 'law',
            'judgment': J.render(),
            'kernel': kernel.verdict.value,
            'image': image.verdict.value,
            'adjunction': adj.holds,
            'agree': kernel.accepted and image.accepted and adj.holds,
        })
    return rows


def selftest_main(max_vars:int=SELFTEST_MAX_VARS, samples:int=SELFTEST_SAMPLES, seed:int=0,
                  fuel:int=SELFTEST_FUEL, disable_print=False, depth:int=SELFTEST_DEPTH) -> Outcome:
    '''Kernel against derivation search on the small universe of every theory, then translation laws on random substitutions.'''
    rng = np.random.default_rng(seed)

    @timer(disable_print=disable_print)
    def compare():
        rows = []
        for theory in TheoryId:
            js = all_judgments(theory, max_vars, depth)
            if not disable_print:
                print(f'>> {theory}: {len(js)} judgments, fuel {fuel}')
            rows += agreement(theory, js, fuel, disable_print)
            if theory in COH_THEORIES:
                rows += _law_rows(rng, theory, samples, max_vars, disable_print)
        return rows

    rows = compare()
    df = pd.DataFrame(rows)
    bad = df[~df['agree']]
    lines = [f'{len(df)} checks, {len(bad)} disagreements']
    lines += [f"[{r['theory']}] {r['kind']} {r['judgment']}" for _, r in bad.iterrows()]
    return Outcome(bad.empty, rows, lines)


def write_rows(rows:List[Row], out_dp:Path, name:str, compress:bool=False):
    if not rows:
        return
    out_dp.mkdir(parents=True, exist_ok=True)
    df = pd.DataFrame(rows)
    if compress:
        df.to_csv(out_dp / f'{name}.csv.gz', index=0, compression='gzip')
    else:
        df.to_csv(out_dp / f'{name}.csv', index=0)

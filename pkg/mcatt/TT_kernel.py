from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from .typing import *
from .TT_constants import TheoryId, CohKind, UNIT_THEORIES, SCHEMA_VERSION
from .TT_syntax import (Obj, Unit, Hom, V, UnitC, Coh, Ctx, Sub, UNIT, UC, OBJ_NF,
                        var_set, render_ty, render_tm, render_ctx, render_sub)
from .TT_subst import apply
from .TT_ps import check_ps, src, tgt
from .TT_errors import *

CATT, MCATT = TheoryId.CATT, TheoryId.MCATT


class Verdict(Enum):
    ACCEPT = 'ACCEPT'
    REJECT = 'REJECT'


class JudgmentKind(Enum):
    CTX = 'ctx'
    TY  = 'ty'
    TM  = 'tm'
    SUB = 'sub'
    PS  = 'ps'
    OP  = 'op'
    EQ  = 'eq'


@dataclass(frozen=True)
class Judgment:
    kind: JudgmentKind
    ctx: Ctx
    ty: Optional[Ty] = None
    tm: Optional[Tm] = None
    sub: Optional[Sub] = None
    target: Optional[Ctx] = None

    def render(self) -> str:
        G = render_ctx(self.ctx)
        k = self.kind
        if k is JudgmentKind.CTX:
            return f'{G} |-'
        if k is JudgmentKind.PS:
            return f'{G} |-ps'
        if k is JudgmentKind.TY:
            return f'{G} |- {render_ty(self.ty)}'
        if k is JudgmentKind.TM:
            return f'{G} |- {render_tm(self.tm)} : {render_ty(self.ty)}'
        if k is JudgmentKind.SUB:
            return f'{G} |- {render_sub(self.sub)} : {render_ctx(self.target)}'
        return f'{G} |-{k.value} {render_ty(self.ty)}'


@dataclass(frozen=True)
class ErrorInfo:
    code: str
    rule: str
    span: str
    detail: str

    @classmethod
    def of(cls, e:KernelError) -> 'ErrorInfo':
        return cls(e.code, e.rule, e.span, e.detail)


@dataclass(frozen=True)
class CheckReport:
    verdict: Verdict
    judgment: str
    inferred: Optional[Ty] = None
    error: Optional[ErrorInfo] = None

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPT

    def to_dict(self) -> Row:
        e = self.error
        return {
            'schema': SCHEMA_VERSION,
            'verdict': self.verdict.value,
            'judgment': self.judgment,
            'inferred': render_ty(self.inferred) if self.inferred is not None else None,
            'code': e.code if e else None,
            'rule': e.rule if e else None,
            'span': e.span if e else None,
            'detail': e.detail if e else None,
        }

    def __str__(self):
        s = f'[{self.verdict.value}] {self.judgment}'
        if self.error:
            s += f'\n    {self.error.code} [{self.error.rule}] {self.error.detail}'
        return s


def _report(judgment:str, fn:Callable[[], Optional[Ty]]) -> CheckReport:
    try:
        inferred = fn()
    except KernelError as e:
        return CheckReport(Verdict.REJECT, judgment, None, ErrorInfo.of(e))
    return CheckReport(Verdict.ACCEPT, judgment, inferred)


# ---- normal forms ----

def normalize(theory:TheoryId, e:Expr, G:Ctx=Ctx()) -> Expr:
    '''
    In the unit theories: every variable of type 1 becomes (), Obj unfolds to
    Hom[1]((), ()), and coherence arguments are normalized. Coherence indices
    are CaTT syntax and stay untouched. Identity in the other theories.
    '''
    if theory not in UNIT_THEORIES:
        return e
    return _nf(e, G)


def _nf(e:Expr, G:Ctx) -> Expr:
    if isinstance(e, Obj):
        return OBJ_NF
    if isinstance(e, (Unit, UnitC)):
        return e
    if isinstance(e, Hom):
        return Hom(_nf(e.base, G), _nf(e.src, G), _nf(e.tgt, G))
    if isinstance(e, V):
        return UC if isinstance(G.lookup(e.var), Unit) else e
    if isinstance(e, Coh):
        return replace(e, args=_nf(e.args, G))
    if isinstance(e, Sub):
        return Sub(tuple((x, _nf(t, G)) for x, t in e.maps))
    if isinstance(e, Ctx):
        out = []
        for x, A in e.bindings:
            out.append((x, _nf(A, Ctx(tuple(out)))))
        return Ctx(tuple(out))
    raise TypeError(f'not a syntax node: {e!r}')


def _ty_eq(th:TheoryId, G:Ctx, A:Ty, B:Ty) -> bool:
    if th in UNIT_THEORIES:
        return _nf(A, G) == _nf(B, G)
    return A == B


def _desusp(e:Expr) -> Expr:
    from .TT_translate import desusp
    return desusp(e)


# ---- rules ----

def _ctx(th:TheoryId, G:Ctx):
    seen = set()
    for k, (x, A) in enumerate(G.bindings):
        if x in seen:
            raise DuplicateVar(f'{x} is bound twice', rule='ce')
        try:
            _ty(th, G.prefix(k), A)
        except UnboundVariable as e:
            raise ScopeError(f'type of {x}: {e.detail}', rule='ce')
        seen.add(x)


def _ty(th:TheoryId, G:Ctx, A:Ty):
    if isinstance(A, Obj):
        return
    if isinstance(A, Unit):
        if th not in UNIT_THEORIES:
            raise TheoryViolation(f'the unit type does not exist in {th}', rule='Unit-intro')
        return
    if isinstance(A, Hom):
        _ty(th, G, A.base)
        for side in (A.src, A.tgt):
            T = _tm(th, G, side)
            if not _ty_eq(th, G, T, A.base):
                raise TypeMismatch(f'{render_tm(side)} : {render_ty(T)}, expected {render_ty(A.base)}',
                                   rule='Hom-intro')
        return
    raise TypeError(f'not a type: {A!r}')


def _tm(th:TheoryId, G:Ctx, t:Tm) -> Ty:
    if isinstance(t, V):
        A = G.lookup(t.var)
        if A is None:
            raise UnboundVariable(f'{t.var} is not bound in {render_ctx(G)}', rule='var')
        return _nf(A, G) if th in UNIT_THEORIES else A
    if isinstance(t, UnitC):
        if th not in UNIT_THEORIES:
            raise TheoryViolation(f'() does not exist in {th}', rule='()-intro')
        return UNIT
    if isinstance(t, Coh):
        if th not in (CATT, MCATT):
            raise TheoryViolation(f'{th} has no coherence constructors', rule=t.rule)
        if t.theory is not th:
            raise TheoryViolation(f'{t.keyword} {t.name} cannot be used in {th}', rule=t.rule)
        _check_index(t.kind, t.ps, t.ty)
        if th is CATT:
            _sub(CATT, G, t.args, t.ps)
            return apply(t.ty, t.args)
        _sub(MCATT, G, t.args, _nf(_desusp(t.ps), Ctx()))
        return _nf(apply(_desusp(t.ty), t.args), G)
    raise TypeError(f'not a term: {t!r}')


def _sub(th:TheoryId, D:Ctx, g:Sub, G:Ctx):
    if len(g) != len(G):
        raise ArityMismatch(f'{render_sub(g)} has {len(g)} components, {render_ctx(G)} has {len(G)} binders',
                            rule='se' if len(G) else 'es')
    done = []
    for (x, t), (y, A) in zip(g.maps, G.bindings):
        if x != y:
            raise NameMismatch(f'component {x} where {y} was expected', rule='se')
        want = apply(A, Sub(tuple(done)))
        T = _tm(th, D, t)
        if not _ty_eq(th, D, T, want):
            raise TypeMismatch(f'{x} := {render_tm(t)} has type {render_ty(T)}, expected {render_ty(want)}',
                               rule='se')
        done.append((x, t))


def _side_vars(where:str, B:Ty, t:Tm, bound:Ctx, rule:str):
    have, want = var_set(t) | var_set(B), var_set(bound)
    if have != want:
        missing = ', '.join(sorted(x.name for x in want - have)) or '-'
        extra = ', '.join(sorted(x.name for x in have - want)) or '-'
        raise SideConditionViolation(f'{where} {render_ctx(bound)}: {render_tm(t)} misses {missing}, extra {extra}',
                                     rule=rule)


def _side_typed(where:str, B:Ty, t:Tm, bound:Ctx, rule:str):
    _ty(CATT, bound, B)
    T = _tm(CATT, bound, t)
    if T != B:
        raise TypeMismatch(f'{render_tm(t)} : {render_ty(T)} in the {where}, expected {render_ty(B)}', rule=rule)


def _arrow(A:Ty, rule:str) -> Hom:
    if not isinstance(A, Hom):
        raise SideConditionViolation(f'{render_ty(A)} is not an arrow type', rule=rule)
    return A


def _op_side(G:Ctx, A:Ty):
    A = _arrow(A, 'op')
    s, g = src(G), tgt(G)
    _side_vars('source boundary', A.base, A.src, s, 'op')
    _side_vars('target boundary', A.base, A.tgt, g, 'op')
    _side_typed('source boundary', A.base, A.src, s, 'op')
    _side_typed('target boundary', A.base, A.tgt, g, 'op')


def _eq_side(G:Ctx, A:Ty):
    A = _arrow(A, 'eq')
    _side_vars('context', A.base, A.src, G, 'eq')
    _side_vars('context', A.base, A.tgt, G, 'eq')
    _side_typed('context', A.base, A.src, G, 'eq')
    _side_typed('context', A.base, A.tgt, G, 'eq')


@lru_cache(maxsize=None)
def _check_index(kind:CohKind, ps:Ctx, ty:Ty) -> bool:
    # Failures are not cached, they are raised again on the next lookup
    _ctx(CATT, ps)
    check_ps(ps)
    if kind is CohKind.OP:
        _op_side(ps, ty)
    else:
        _eq_side(ps, ty)
    return True


# ---- public checks ----

def check_ctx(theory:TheoryId, G:Ctx) -> CheckReport:
    return _report(f'{render_ctx(G)} |-', lambda: _ctx(theory, G))


def check_ty(theory:TheoryId, G:Ctx, A:Ty) -> CheckReport:
    return _report(f'{render_ctx(G)} |- {render_ty(A)}', lambda: _ty(theory, G, A))


def infer_tm(theory:TheoryId, G:Ctx, t:Tm) -> CheckReport:
    return _report(f'{render_ctx(G)} |- {render_tm(t)}', lambda: _tm(theory, G, t))


def check_sub(theory:TheoryId, D:Ctx, g:Sub, G:Ctx) -> CheckReport:
    return _report(f'{render_ctx(D)} |- {render_sub(g)} : {render_ctx(G)}', lambda: _sub(theory, D, g, G))


def check_op_side(G:Ctx, A:Ty) -> CheckReport:
    return _report(f'{render_ctx(G)} |-op {render_ty(A)}', lambda: _check_index(CohKind.OP, G, A) and None)


def check_eq_side(G:Ctx, A:Ty) -> CheckReport:
    return _report(f'{render_ctx(G)} |-eq {render_ty(A)}', lambda: _check_index(CohKind.EQ, G, A) and None)


def ty_defeq(theory:TheoryId, G:Ctx, A:Ty, B:Ty) -> bool:
    return _ty_eq(theory, G, A, B)


def tm_defeq(theory:TheoryId, G:Ctx, t:Tm, u:Tm) -> bool:
    return normalize(theory, t, G) == normalize(theory, u, G)


def sub_defeq(theory:TheoryId, D:Ctx, g:Sub, d:Sub) -> bool:
    return g.domain() == d.domain() and normalize(theory, g, D) == normalize(theory, d, D)


def infer(theory:TheoryId, G:Ctx, t:Tm) -> Ty:
    '''Type of t in G, raising the KernelError on failure.'''
    return _tm(theory, G, t)


def require_ty(theory:TheoryId, G:Ctx, A:Ty):
    _ty(theory, G, A)


def require_index(kind:CohKind, G:Ctx, A:Ty):
    _check_index(kind, G, A)


def _judgment(th:TheoryId, J:Judgment) -> Optional[Ty]:
    k = J.kind
    if k in (JudgmentKind.PS, JudgmentKind.OP, JudgmentKind.EQ):
        _ctx(CATT, J.ctx)
        check_ps(J.ctx)
        if k is JudgmentKind.OP:
            _check_index(CohKind.OP, J.ctx, J.ty)
        elif k is JudgmentKind.EQ:
            _check_index(CohKind.EQ, J.ctx, J.ty)
        return None
    _ctx(th, J.ctx)
    if k is JudgmentKind.TY:
        _ty(th, J.ctx, J.ty)
    elif k is JudgmentKind.TM:
        T = _tm(th, J.ctx, J.tm)
        if not _ty_eq(th, J.ctx, T, J.ty):
            raise TypeMismatch(f'{render_tm(J.tm)} : {render_ty(T)}, expected {render_ty(J.ty)}', rule='conv')
        return T
    elif k is JudgmentKind.SUB:
        _ctx(th, J.target)
        _sub(th, J.ctx, J.sub, J.target)
    return None


def check_judgment(theory:TheoryId, J:Judgment) -> CheckReport:
    '''Check J together with the contexts it presupposes.'''
    return _report(J.render(), lambda: _judgment(theory, J))


def clear_cache():
    _check_index.cache_clear()

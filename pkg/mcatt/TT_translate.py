from dataclasses import dataclass, replace
from enum import Enum
from .typing import *
from .TT_constants import TheoryId
from .TT_syntax import (Obj, Unit, Hom, V, UnitC, Coh, Ctx, Sub, NEW, OBJ, UNIT, UC,
                        render_ctx, render_sub, render_tm)
from .TT_subst import apply, compose, identity
from .TT_kernel import (Judgment, JudgmentKind, CheckReport, Verdict, ErrorInfo,
                        normalize, check_sub, check_judgment, sub_defeq)
from .TT_errors import KernelError, NotNormalized, TheoryViolation

CATT, MCATT = TheoryId.CATT, TheoryId.MCATT


class Direction(Enum):
    DESUSP = 'desusp'
    RSUSP  = 'rsusp'


def desusp(e:Expr) -> Expr:
    if isinstance(e, Obj):
        return UNIT
    if isinstance(e, (Unit, UnitC, V)):
        return e
    if isinstance(e, Hom):
        return Hom(desusp(e.base), desusp(e.src), desusp(e.tgt))
    if isinstance(e, Coh):
        if e.theory is MCATT:
            raise TheoryViolation(f'{e.keyword} {e.name} is already an MCaTT term', rule='mop-intro')
        return replace(e, args=desusp(e.args), theory=MCATT)
    if isinstance(e, Sub):
        return Sub(tuple((x, desusp(t)) for x, t in e.maps))
    if isinstance(e, Ctx):
        return Ctx(tuple((x, desusp(A)) for x, A in e.bindings))
    raise TypeError(f'not a syntax node: {e!r}')


def delooped(G:Ctx) -> Ctx:
    # normal form of the desuspended context
    return normalize(MCATT, desusp(G))


def rsusp(e:Expr, G:Ctx=Ctx()) -> Expr:
    '''
    Reduced suspension of normalized MCaTT syntax living in G. Contexts are
    translated on their own, substitutions go through rsusp_sub.
    '''
    if isinstance(e, Ctx):
        out = [(NEW, OBJ)]
        for k, (x, A) in enumerate(e.bindings):
            if isinstance(A, Unit):
                continue
            out.append((x, rsusp(A, e.prefix(k))))
        return Ctx(tuple(out))
    if isinstance(e, Unit):
        return OBJ
    if isinstance(e, Obj):
        return Hom(OBJ, V(NEW), V(NEW))
    if isinstance(e, Hom):
        return Hom(rsusp(e.base, G), rsusp(e.src, G), rsusp(e.tgt, G))
    if isinstance(e, UnitC):
        return V(NEW)
    if isinstance(e, V):
        if isinstance(G.lookup(e.var), Unit):
            raise NotNormalized(f'{e.var} : 1 should have been normalized to ()', rule='rsusp')
        return e
    if isinstance(e, Coh):
        if e.theory is not MCATT:
            raise TheoryViolation(f'{e.keyword} {e.name} is not an MCaTT term', rule='rsusp')
        inner = rsusp_sub(e.args, G, desusp(e.ps))
        return Coh(e.kind, e.ps, e.ty, compose(red_sub(e.ps), inner), CATT, e.name)
    raise TypeError(f'cannot suspend {e!r}')


def rsusp_sub(g:Sub, D:Ctx, G:Ctx) -> Sub:
    # D |- g : G in MCaTT, gives rsusp(D) |- rsusp_sub(g) : rsusp(G)
    out = [(NEW, V(NEW))]
    for (x, t), (_, A) in zip(g.maps, G.bindings):
        if isinstance(A, Unit):
            continue
        out.append((x, rsusp(t, D)))
    return Sub(tuple(out))


def red_sub(G:Ctx) -> Sub:
    '''The counit: rsusp(delooped(G)) |- red_sub(G) : G, every object goes to the base point.'''
    dG = delooped(G)
    return Sub(tuple((x, rsusp(normalize(MCATT, V(x), dG), dG)) for x in G.vars()))


def eta(G:Ctx) -> Tuple[Sub, Sub]:
    '''
    The unit G -> delooped(rsusp(G)) and its inverse, for a normalized MCaTT
    context G.
    '''
    fwd, inv = [(NEW, UC)], []
    for x, A in G.bindings:
        if isinstance(A, Unit):
            inv.append((x, UC))
        else:
            fwd.append((x, V(x)))
            inv.append((x, V(x)))
    return Sub(tuple(fwd)), Sub(tuple(inv))


@dataclass(frozen=True)
class AdjReport:
    ctx: Ctx                # CaTT side
    mctx: Ctx               # MCaTT side
    triangle1: bool         # desusp(red_sub) after eta is the identity on delooped(ctx)
    triangle2: bool         # red_sub after rsusp(eta) is the identity on rsusp(mctx)
    eta_iso: bool
    naturality: bool = True
    counterexample: Optional[str] = None

    @property
    def holds(self) -> bool:
        return self.triangle1 and self.triangle2 and self.eta_iso and self.naturality

    def to_dict(self) -> Row:
        return {
            'ctx': render_ctx(self.ctx),
            'mctx': render_ctx(self.mctx),
            'triangle1': self.triangle1,
            'triangle2': self.triangle2,
            'eta_iso': self.eta_iso,
            'naturality': self.naturality,
            'counterexample': self.counterexample,
        }


def _first_diff(g:Sub, d:Sub) -> str:
    for (x, t), (_, u) in zip(g.maps, d.maps):
        if t != u:
            return f'{x} := {render_tm(t)} vs {render_tm(u)}'
    return f'{render_sub(g)} vs {render_sub(d)}'


def check_eta_naturality(D:Ctx, g:Sub, G:Ctx) -> Optional[str]:
    '''eta_G o g == delooped(rsusp g) o eta_D for D |- g : G in MCaTT. Returns a counterexample or None.'''
    Dn, Gn = normalize(MCATT, D), normalize(MCATT, G)
    gn = normalize(MCATT, g, Dn)
    lhs = compose(eta(Gn)[0], gn)
    rhs = compose(desusp(rsusp_sub(gn, Dn, Gn)), eta(Dn)[0])
    if sub_defeq(MCATT, Dn, lhs, rhs):
        return None
    return f'unit naturality over {render_ctx(Dn)}: {_first_diff(lhs, rhs)}'


def check_counit_naturality(D:Ctx, g:Sub, G:Ctx) -> Optional[str]:
    '''g o red_sub(D) == red_sub(G) o rsusp(delooped g) for D |- g : G in CaTT.'''
    dD, dG = delooped(D), delooped(G)
    lhs = compose(g, red_sub(D))
    rhs = compose(red_sub(G), rsusp_sub(normalize(MCATT, desusp(g), dD), dD, dG))
    if lhs == rhs:
        return None
    return f'counit naturality over {render_ctx(D)}: {_first_diff(lhs, rhs)}'


def counit_law(D:Ctx, e:Expr) -> bool:
    # e[red_sub(D)] == rsusp(delooped e) for a type or term e of the CaTT context D
    dD = delooped(D)
    return apply(e, red_sub(D)) == rsusp(normalize(MCATT, desusp(e), dD), dD)


def verify_adjunction(Gc:Ctx, Gm:Ctx, catt_subs:Sequence[Tuple[Ctx, Sub]]=(),
                      mcatt_subs:Sequence[Tuple[Ctx, Sub]]=()) -> AdjReport:
    '''
    Check the two triangle identities at Gc (CaTT) and Gm (MCaTT), that eta_Gm
    is invertible, and naturality along the given substitutions D |- g : Gc and
    D |- g : Gm.
    '''
    bad = []

    # desusp(red_sub(Gc)) after eta at delooped(Gc) is the identity
    dGc = delooped(Gc)
    lhs = compose(desusp(red_sub(Gc)), eta(dGc)[0])
    triangle1 = sub_defeq(MCATT, dGc, lhs, identity(dGc))
    if not triangle1:
        bad.append(f'triangle1 at {render_ctx(Gc)}: {_first_diff(normalize(MCATT, lhs, dGc), identity(dGc))}')

    # red_sub(rsusp Gm) after rsusp(eta Gm) is the identity
    Gn = normalize(MCATT, Gm)
    S = rsusp(Gn)
    fwd, inv = eta(Gn)
    dS = delooped(S)
    lhs = compose(red_sub(S), rsusp_sub(fwd, Gn, dS))
    triangle2 = lhs == identity(S)
    if not triangle2:
        bad.append(f'triangle2 at {render_ctx(Gn)}: {_first_diff(lhs, identity(S))}')

    eta_iso = (check_sub(MCATT, Gn, fwd, dS).accepted
               and check_sub(MCATT, dS, inv, Gn).accepted
               and sub_defeq(MCATT, Gn, compose(inv, fwd), identity(Gn))
               and sub_defeq(MCATT, dS, compose(fwd, inv), identity(dS)))
    if not eta_iso:
        bad.append(f'unit at {render_ctx(Gn)} is not invertible')

    for D, g in catt_subs:
        c = check_counit_naturality(D, g, Gc)
        if c:
            bad.append(c)
    for D, g in mcatt_subs:
        c = check_eta_naturality(D, g, Gm)
        if c:
            bad.append(c)
    naturality = not any('naturality' in c for c in bad)
    return AdjReport(Gc, Gn, triangle1, triangle2, eta_iso, naturality, bad[0] if bad else None)


def desusp_judgment(J:Judgment) -> Judgment:
    return Judgment(J.kind, desusp(J.ctx),
                    None if J.ty is None else desusp(J.ty),
                    None if J.tm is None else desusp(J.tm),
                    None if J.sub is None else desusp(J.sub),
                    None if J.target is None else desusp(J.target))


def rsusp_judgment(J:Judgment) -> Judgment:
    G = normalize(MCATT, J.ctx)
    if J.kind is JudgmentKind.SUB:
        T = normalize(MCATT, J.target)
        g = normalize(MCATT, J.sub, G)
        return Judgment(J.kind, rsusp(G), sub=rsusp_sub(g, G, T), target=rsusp(T))
    ty = None if J.ty is None else rsusp(normalize(MCATT, J.ty, G), G)
    tm = None if J.tm is None else rsusp(normalize(MCATT, J.tm, G), G)
    return Judgment(J.kind, rsusp(G), ty, tm)


def translate_correctness(J:Judgment, direction:Direction) -> CheckReport:
    '''Check the image of J under desusp (J in CaTT) or rsusp (J in MCaTT).'''
    try:
        if direction is Direction.DESUSP:
            return check_judgment(MCATT, desusp_judgment(J))
        return check_judgment(CATT, rsusp_judgment(J))
    except KernelError as e:
        return CheckReport(Verdict.REJECT, J.render(), None, ErrorInfo.of(e))


def single_object(Gm:Ctx) -> int:
    # number of object binders left by the reduced suspension, always 1
    return sum(1 for _, A in rsusp(normalize(MCATT, Gm)).bindings if A == OBJ)

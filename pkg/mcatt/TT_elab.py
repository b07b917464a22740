from dataclasses import dataclass
from .typing import *
from .TT_constants import TheoryId, CohKind, COH_THEORIES
from .TT_syntax import Var, Hom, V, Coh, Ctx, Sub, OBJ, UNIT, UC, Unit, render_ty, render_tm
from .TT_subst import apply
from .TT_ps import check_ps, locally_maximal
from .TT_kernel import (Judgment, JudgmentKind, CheckReport, Verdict, ErrorInfo, check_judgment,
                        infer, normalize, ty_defeq, tm_defeq, require_ty, require_index)
from .TT_translate import delooped
from .TT_parser import DefKind, Def, SourceFile, SStar, SOne, SUnit, SName, SApp, SHom
from .TT_errors import *

CATT, MCATT = TheoryId.CATT, TheoryId.MCATT


@dataclass(frozen=True)
class Entry:
    keyword: DefKind
    name: str
    ctx: Ctx
    ty: Ty
    theory: TheoryId                # where applications of this entry live
    kind: Optional[CohKind] = None
    body: Optional[Tm] = None

    def target(self) -> Ctx:
        # the context an application's substitution must inhabit
        if self.keyword is DefKind.MCOH:
            return delooped(self.ctx)
        return normalize(self.theory, self.ctx)

    def instantiate(self, g:Sub) -> Tm:
        if self.keyword is DefKind.LET:
            return apply(self.body, g)
        return Coh(self.kind, self.ctx, self.ty, g, self.theory, self.name)

    def judgment(self) -> Judgment:
        if self.keyword is DefKind.LET:
            return Judgment(JudgmentKind.TM, self.ctx, self.ty, self.body)
        kind = JudgmentKind.OP if self.kind is CohKind.OP else JudgmentKind.EQ
        return Judgment(kind, self.ctx, self.ty)

    @property
    def check_theory(self) -> TheoryId:
        return CATT if self.keyword is not DefKind.LET else self.theory


class Elaborator:
    '''
    Turns surface definitions into core syntax. Compact applications `f a b`
    bind the locally maximal variables of the head's context in order, slots
    of type 1 get (), and everything else is solved by first order matching
    of the binder types against the types of the arguments.
    '''

    def __init__(self, theory:TheoryId, path:str='<input>', env:Optional[Dict[str, Entry]]=None):
        self.theory = theory
        self.path = path
        self.env = {} if env is None else env

    def _entry(self, name:str, th:TheoryId) -> Entry:
        e = self.env.get(name)
        if e is None:
            raise ScopeError(f'{name} is neither a variable nor a definition', rule='var')
        if e.theory is not th:
            raise TheoryViolation(f'{e.keyword} {name} lives in {e.theory} and cannot be used in {th}',
                                  rule='mop-intro' if th is MCATT else 'coh-intro')
        return e

    # ---- types and terms ----

    def ty(self, th:TheoryId, G:Ctx, s:STy) -> Ty:
        if isinstance(s, SStar):
            return OBJ
        if isinstance(s, SOne):
            return UNIT
        if isinstance(s, SHom):
            return Hom(self.ty(th, G, s.base), self.tm(th, G, s.src), self.tm(th, G, s.tgt))
        t, u = self.tm(th, G, s.src), self.tm(th, G, s.tgt)
        return Hom(infer(th, G, t), t, u)

    def tm(self, th:TheoryId, G:Ctx, s:STm) -> Tm:
        if isinstance(s, SUnit):
            return UC
        if isinstance(s, SName):
            if G.lookup(Var(s.name)) is not None:
                return V(Var(s.name))
            return self.app(th, G, s.name, ())
        if isinstance(s, SApp):
            return self.app(th, G, s.head, s.args)
        return self.explicit(th, G, s.head, s.assigns)

    def app(self, th:TheoryId, G:Ctx, head:str, args:Sequence[STm]) -> Tm:
        if G.lookup(Var(head)) is not None:
            raise ElaborationMismatch(f'{head} is a variable and takes no arguments', rule='elab')
        e = self._entry(head, th)
        T = e.target()
        units = [x for x, A in T.bindings if isinstance(A, Unit)]
        explicit = [x for x in locally_maximal(T) if x not in units]
        if len(args) != len(explicit):
            names = ' '.join(x.name for x in explicit)
            raise ElaborationMismatch(f'{head} takes {len(explicit)} arguments ({names}), got {len(args)}',
                                      rule='elab')
        tms = [self.tm(th, G, a) for a in args]
        sol = {x: UC for x in units}
        sol.update(zip(explicit, tms))
        pvars = set(T.vars())
        for x, t in zip(explicit, tms):
            self._match_ty(th, G, T.lookup(x), infer(th, G, t), sol, pvars)
        missing = [x.name for x in T.vars() if x not in sol]
        if missing:
            raise ElaborationAmbiguous(f'cannot infer {", ".join(missing)} in {head}, use {head} @[...]',
                                       rule='elab')
        return e.instantiate(Sub(tuple((x, sol[x]) for x in T.vars())))

    def explicit(self, th:TheoryId, G:Ctx, head:str, assigns:Sequence[Tuple[str, STm]]) -> Tm:
        e = self._entry(head, th)
        T = e.target()
        given = {}
        for name, s in assigns:
            if name in given:
                raise ElaborationMismatch(f'{name} is assigned twice in {head} @[...]', rule='elab')
            given[name] = s
        unknown = set(given) - {x.name for x in T.vars()}
        if unknown:
            raise ElaborationMismatch(f'{head} has no variable {", ".join(sorted(unknown))}', rule='elab')
        maps = []
        for x, A in T.bindings:
            if x.name in given:
                maps.append((x, self.tm(th, G, given[x.name])))
            elif isinstance(A, Unit):
                maps.append((x, UC))
            else:
                raise ElaborationMismatch(f'{head} @[...] is missing {x}', rule='elab')
        return e.instantiate(Sub(tuple(maps)))

    # ---- matching ----

    def _match_ty(self, th:TheoryId, G:Ctx, P:Ty, T:Ty, sol:Dict[Var, Tm], pvars:Set[Var]):
        if isinstance(P, Hom):
            T = normalize(th, T, G)
            if not isinstance(T, Hom):
                raise ElaborationMismatch(f'expected an arrow, got {render_ty(T)}', rule='elab')
            self._match_ty(th, G, P.base, T.base, sol, pvars)
            self._match_tm(th, G, P.src, T.src, sol, pvars)
            self._match_tm(th, G, P.tgt, T.tgt, sol, pvars)
        elif not ty_defeq(th, G, P, T):
            raise ElaborationMismatch(f'expected {render_ty(P)}, got {render_ty(T)}', rule='elab')

    def _match_tm(self, th:TheoryId, G:Ctx, p:Tm, u:Tm, sol:Dict[Var, Tm], pvars:Set[Var]):
        if isinstance(p, V) and p.var in pvars:
            x = p.var
            if x not in sol:
                sol[x] = u
            elif not tm_defeq(th, G, sol[x], u):
                raise ElaborationMismatch(f'{x} would be both {render_tm(sol[x])} and {render_tm(u)}',
                                          rule='elab')
            return
        if isinstance(p, Coh):
            try:
                p = apply(p, Sub(tuple(sol.items())))
            except UnboundVariable:
                raise ElaborationAmbiguous(f'cannot solve the arguments of {render_tm(p)}', rule='elab')
        if not tm_defeq(th, G, p, u):
            raise ElaborationMismatch(f'expected {render_tm(p)}, got {render_tm(u)}', rule='elab')

    # ---- definitions ----

    def _telescope(self, th:TheoryId, d:Def) -> Ctx:
        G = Ctx()
        for b in d.binders:
            x = Var(b.name)
            if x in G.vars():
                raise DuplicateVar(f'{x} is bound twice', rule='ce')
            A = self.ty(th, G, b.ty)
            require_ty(th, G, A)
            G = G.extend(x, A)
        return G

    def _kind(self, G:Ctx, A:Ty) -> CohKind:
        try:
            require_index(CohKind.OP, G, A)
            return CohKind.OP
        except KernelError as e1:
            try:
                require_index(CohKind.EQ, G, A)
                return CohKind.EQ
            except KernelError as e2:
                if isinstance(e1, SideConditionViolation) or isinstance(e2, SideConditionViolation):
                    raise SideConditionViolation(f'not an operation, {e1.detail}; not a coherence, {e2.detail}',
                                                 rule='op')
                raise e2

    def define(self, d:Def) -> Entry:
        if d.name in self.env:
            raise DuplicateVar(f'{d.name} is already defined', rule='elab')
        if d.keyword is DefKind.LET:
            th = self.theory
            G = self._telescope(th, d)
            A = self.ty(th, G, d.ty)
            require_ty(th, G, A)
            t = self.tm(th, G, d.body)
            T = infer(th, G, t)
            if not ty_defeq(th, G, A, T):
                raise TypeMismatch(f'{render_tm(t)} : {render_ty(T)}, declared {render_ty(A)}', rule='conv')
            return Entry(d.keyword, d.name, G, A, th, None, t)

        if self.theory not in COH_THEORIES:
            raise TheoryViolation(f'{d.keyword} definitions need a catt or mcatt file', rule='coh-intro')
        if d.keyword is DefKind.MCOH and self.theory is CATT:
            raise TheoryViolation(f'mcoh {d.name} cannot be declared in a catt file', rule='mcoh-intro')
        G = self._telescope(CATT, d)
        check_ps(G)
        A = self.ty(CATT, G, d.ty)
        kind = self._kind(G, A)
        return Entry(d.keyword, d.name, G, A, CATT if d.keyword is DefKind.COH else MCATT, kind)


def check_source(src:SourceFile) -> Tuple[Dict[str, Entry], List[Tuple[Def, CheckReport]]]:
    '''Elaborate every item and check its judgment with the kernel. Rejected items stay out of scope.'''
    el = Elaborator(src.theory, src.path)
    out = []
    for d in src.items:
        span = f'{src.path}:{d.line}:{d.column}'
        try:
            entry = el.define(d)
        except KernelError as e:
            e.at(span)
            out.append((d, CheckReport(Verdict.REJECT, f'{d.keyword} {d.name}', None, ErrorInfo.of(e))))
            continue
        report = check_judgment(entry.check_theory, entry.judgment())
        if report.accepted:
            el.env[d.name] = entry
        elif not report.error.span:
            report = CheckReport(report.verdict, report.judgment, None,
                                 ErrorInfo(report.error.code, report.error.rule, span, report.error.detail))
        out.append((d, report))
    return el.env, out

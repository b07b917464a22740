from enum import Enum
import numpy as np
from tqdm import tqdm
from .typing import *
from .TT_constants import TheoryId, CohKind, UNIT_THEORIES, COH_THEORIES
from .TT_syntax import (Var, Obj, Unit, Hom, V, UnitC, Coh, Ctx, Sub, OBJ, UNIT, UC, OBJ_NF,
                        var_set, dim_ty, render_ctx)
from .TT_subst import apply
from .TT_kernel import Judgment, JudgmentKind, check_judgment, normalize, infer
from .TT_translate import desusp, delooped
from .TT_errors import KernelError

CATT, MCATT = TheoryId.CATT, TheoryId.MCATT
JK = JudgmentKind


class Search(Enum):
    FOUND       = 'FOUND'
    NOT_FOUND   = 'NOT_FOUND'
    OUT_OF_FUEL = 'OUT_OF_FUEL'


FOUND, NOT_FOUND, OUT_OF_FUEL = Search.FOUND, Search.NOT_FOUND, Search.OUT_OF_FUEL


def _any(alts:Iterable[Callable[[], Search]]) -> Search:
    starved = False
    for alt in alts:
        r = alt()
        if r is FOUND:
            return FOUND
        starved |= r is OUT_OF_FUEL
    return OUT_OF_FUEL if starved else NOT_FOUND


def _all(premises:Iterable[Callable[[], Search]]) -> Search:
    starved = False
    for p in premises:
        r = p()
        if r is NOT_FOUND:
            return NOT_FOUND
        starved |= r is OUT_OF_FUEL
    return OUT_OF_FUEL if starved else FOUND


def _holds(b:bool) -> Callable[[], Search]:
    return lambda: FOUND if b else NOT_FOUND


# ---- ps-contexts ----

def enumerate_ps(max_vars:int) -> List[Ctx]:
    '''All ps-contexts with at most max_vars binders, variables named v0, v1, ...'''
    x0 = Var('v0')
    start = (((x0, OBJ),), x0, OBJ)
    seen, found = {start}, set()
    queue = [start]
    while queue:
        b, dang, A = queue.pop(0)
        nexts = []
        if A == OBJ:
            found.add(Ctx(b))
        if len(b) + 2 <= max_vars:   # pse
            y, f = Var(f'v{len(b)}'), Var(f'v{len(b) + 1}')
            B = Hom(A, V(dang), V(y))
            nexts.append((b + ((y, A), (f, B)), f, B))
        if isinstance(A, Hom):       # psd
            nexts.append((b, A.tgt.var, A.base))
        for s in nexts:
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return sorted(found, key=lambda G: (len(G), render_ctx(G)))


# ---- literal derivation search ----

class DerivationSearch:
    '''
    Depth bounded backward search over the inference rules. Definitional
    equality is the congruence closure of the eta rule for the unit type,
    never normalization. Every rule application costs one unit of fuel.
    '''

    def __init__(self, fuel:int):
        self.fuel = fuel
        self.never = set()          # goals with no derivation at any depth
        self.found_at = {}          # goal -> smallest fuel it was found with

    def run(self, theory:TheoryId, J:Judgment) -> Search:
        n = self.fuel
        k = J.kind
        if k is JudgmentKind.CTX:
            return self.ctx(theory, J.ctx, n)
        if k is JudgmentKind.TY:
            return self.ty(theory, J.ctx, J.ty, n)
        if k is JudgmentKind.TM:
            return self.tm(theory, J.ctx, J.tm, J.ty, n)
        if k is JudgmentKind.SUB:
            return self.sub(theory, J.ctx, J.sub, J.target, n)
        if k is JudgmentKind.PS:
            return self.ps(J.ctx, n)
        return self.side(k, J.ctx, J.ty, n)

    def _memo(self, key:tuple, n:int, derive:Callable[[], Search]) -> Search:
        if key in self.never:
            return NOT_FOUND
        if self.found_at.get(key, n + 1) <= n:
            return FOUND
        if n <= 0:
            return OUT_OF_FUEL
        r = derive()
        if r is NOT_FOUND:
            self.never.add(key)
        elif r is FOUND:
            self.found_at[key] = n
        return r

    # Gamma |-
    def ctx(self, th:TheoryId, G:Ctx, n:int) -> Search:
        def derive():
            if not G.bindings:
                return FOUND                                        # ec
            x, A = G.bindings[-1]
            rest = G.prefix(len(G) - 1)
            return _all([_holds(x not in rest.vars()),
                         lambda: self.ty(th, rest, A, n - 1)])      # ce
        return self._memo(('ctx', th, G), n, derive)

    # Gamma |- A
    def ty(self, th:TheoryId, G:Ctx, A:Ty, n:int) -> Search:
        if isinstance(A, Obj) and th in UNIT_THEORIES:
            A = OBJ_NF
        def derive():
            if isinstance(A, Obj):
                return self.ctx(th, G, n - 1)
            if isinstance(A, Unit):
                return self.ctx(th, G, n - 1) if th in UNIT_THEORIES else NOT_FOUND
            return _all([lambda: self.ty(th, G, A.base, n - 1),
                         lambda: self.tm(th, G, A.src, A.base, n - 1),
                         lambda: self.tm(th, G, A.tgt, A.base, n - 1)])
        return self._memo(('ty', th, G, A), n, derive)

    # Gamma |- t : A, the last step may be a conversion
    def tm(self, th:TheoryId, G:Ctx, t:Tm, A:Ty, n:int) -> Search:
        def derive():
            if isinstance(t, V):
                B = G.lookup(t.var)
                if B is None:
                    return NOT_FOUND
                return _all([lambda: self.ctx(th, G, n - 1),
                             lambda: self.conv(th, G, B, A, n - 1)])
            if isinstance(t, UnitC):
                if th not in UNIT_THEORIES:
                    return NOT_FOUND
                return _all([lambda: self.ctx(th, G, n - 1),
                             lambda: self.conv(th, G, UNIT, A, n - 1)])
            if th not in COH_THEORIES or t.theory is not th:
                return NOT_FOUND
            kind = JK.OP if t.kind is CohKind.OP else JK.EQ
            if th is CATT:
                target, ty = t.ps, t.ty
            else:
                target, ty = desusp(t.ps), desusp(t.ty)
            def typed():
                try:
                    B = apply(ty, t.args)
                except KernelError:
                    return NOT_FOUND
                return self.conv(th, G, B, A, n - 1)
            return _all([lambda: self.side(kind, t.ps, t.ty, n - 1),
                         lambda: self.sub(th, G, t.args, target, n - 1),
                         typed])
        return self._memo(('tm', th, G, t, A), n, derive)

    # Delta |- g : Gamma
    def sub(self, th:TheoryId, D:Ctx, g:Sub, G:Ctx, n:int) -> Search:
        def derive():
            if not G.bindings:
                return self.ctx(th, D, n - 1) if not g.maps else NOT_FOUND   # es
            if len(g) != len(G) or g.maps[-1][0] != G.bindings[-1][0]:
                return NOT_FOUND
            (_, t), (_, A) = g.maps[-1], G.bindings[-1]
            rest = Sub(g.maps[:-1])
            def last():
                try:
                    want = apply(A, rest)
                except KernelError:
                    return NOT_FOUND
                return self.tm(th, D, t, want, n - 1)
            return _all([lambda: self.sub(th, D, rest, G.prefix(len(G) - 1), n - 1),
                         lambda: self.ctx(th, G, n - 1),
                         last])                                              # se
        return self._memo(('sub', th, D, g, G), n, derive)

    # Gamma |- A == B, and the same for terms
    def conv(self, th:TheoryId, G:Ctx, A:Ty, B:Ty, n:int) -> Search:
        if A == B:
            return FOUND
        if th not in UNIT_THEORIES:
            return NOT_FOUND
        A = OBJ_NF if isinstance(A, Obj) else A
        B = OBJ_NF if isinstance(B, Obj) else B
        def derive():
            if isinstance(A, Unit) and isinstance(B, Unit):
                return FOUND
            if isinstance(A, Hom) and isinstance(B, Hom):
                return _all([lambda: self.conv(th, G, A.base, B.base, n - 1),
                             lambda: self.tm_eq(th, G, A.src, B.src, n - 1),
                             lambda: self.tm_eq(th, G, A.tgt, B.tgt, n - 1)])
            return NOT_FOUND
        return self._memo(('conv', th, G, A, B), n, derive)

    def tm_eq(self, th:TheoryId, G:Ctx, t:Tm, u:Tm, n:int) -> Search:
        if t == u:
            return FOUND
        def congruence():
            if not (isinstance(t, Coh) and isinstance(u, Coh)):
                return NOT_FOUND
            if (t.kind, t.theory, t.head) != (u.kind, u.theory, u.head) or len(t.args) != len(u.args):
                return NOT_FOUND
            return _all([lambda a=a, b=b: self.tm_eq(th, G, a, b, n - 1)
                         for a, b in zip(t.args.terms(), u.args.terms())])
        def derive():
            return _any([lambda: _all([lambda: self.tm(th, G, t, UNIT, n - 1),
                                       lambda: self.tm(th, G, u, UNIT, n - 1)]),   # eta
                         congruence])
        return self._memo(('tm_eq', th, G, t, u), n, derive)

    # Gamma |-ps
    def ps(self, G:Ctx, n:int) -> Search:
        def derive():
            objs = [x for x, A in G.bindings if A == OBJ]
            return _all([lambda: self.ctx(CATT, G, n - 1),
                         lambda: _any([lambda x=x: self.ps_var(G, x, OBJ, n - 1) for x in objs])])
        return self._memo(('ps', G), n, derive)

    # Gamma |-ps x : A
    def ps_var(self, G:Ctx, x:Var, A:Ty, n:int) -> Search:
        def derive():
            b = G.bindings
            alts = [_holds(b == ((x, OBJ),) and A == OBJ)]                       # pss
            if len(b) >= 3:
                (y, B), (f, C) = b[-2], b[-1]
                if f == x and C == A and isinstance(C, Hom) and C.base == B \
                        and C.tgt == V(y) and isinstance(C.src, V):
                    alts.append(lambda: self.ps_var(G.prefix(len(b) - 2), C.src.var, B, n - 1))  # pse
            for f, C in b:
                if isinstance(C, Hom) and C.base == A and C.tgt == V(x) and isinstance(C.src, V):
                    alts.append(lambda f=f, C=C: self.ps_var(G, f, C, n - 1))   # psd
            return _any(alts)
        return self._memo(('ps_var', G, x, A), n, derive)

    # Gamma |-op A and Gamma |-eq A
    def side(self, kind:JudgmentKind, G:Ctx, A:Ty, n:int) -> Search:
        def derive():
            if not isinstance(A, Hom):
                return NOT_FOUND
            premises = [lambda: self.ps(G, n - 1)]
            if kind is JK.EQ:
                s = t = G
            else:
                if not _ps_shape(G):
                    return NOT_FOUND
                d = max(dim_ty(B) for _, B in G.bindings)
                if d == 0:
                    return NOT_FOUND
                s, t = _face(G, d - 1, True), _face(G, d - 1, False)
            premises += [_holds(var_set(A.src) | var_set(A.base) == var_set(s)),
                         _holds(var_set(A.tgt) | var_set(A.base) == var_set(t)),
                         lambda: self.tm(CATT, s, A.src, A.base, n - 1),
                         lambda: self.tm(CATT, t, A.tgt, A.base, n - 1)]
            return _all(premises)
        return self._memo(('side', kind, G, A), n, derive)


def _ps_shape(G:Ctx) -> bool:
    b = G.bindings
    return len(b) % 2 == 1 and b[0][1] == OBJ


def _face(G:Ctx, i:int, minus:bool) -> Ctx:
    # Boundary by recursion on the last two binders
    b = G.bindings
    if len(b) == 1:
        return G
    rest = _face(G.prefix(len(b) - 2), i, minus)
    (y, A), (f, B) = b[-2], b[-1]
    d = dim_ty(A)
    if minus:
        return rest if d >= i else Ctx(rest.bindings + ((y, A), (f, B)))
    if d > i:
        return rest
    if d == i:
        return Ctx(rest.bindings[:-1] + ((y, A),))
    return Ctx(rest.bindings + ((y, A), (f, B)))


def derivation_search(theory:TheoryId, J:Judgment, fuel:int) -> Search:
    return DerivationSearch(fuel).run(theory, J)


# ---- stock coherences ----

def _h(A:Ty, s:Var, t:Var) -> Hom:
    return Hom(A, V(s), V(t))


x, y, z, w, f, g, h, a = (Var(s) for s in ('x', 'y', 'z', 'w', 'f', 'g', 'h', 'a'))
HXY = _h(OBJ, x, y)
D0      = Ctx(((x, OBJ),))
D1      = Ctx(((x, OBJ), (y, OBJ), (f, HXY)))
D2      = Ctx(D1.bindings + ((g, HXY), (a, _h(HXY, f, g))))
COMP_PS = Ctx(D1.bindings + ((z, OBJ), (g, _h(OBJ, y, z))))
ASSOC_PS = Ctx(COMP_PS.bindings + ((w, OBJ), (h, _h(OBJ, z, w))))


def stock_coh(name:str, args:Sequence[Tm], theory:TheoryId=CATT) -> Coh:
    kind, ps, ty = STOCK[name]
    return Coh(kind, ps, ty, Sub(tuple(zip(ps.vars(), args))), theory, name)


def _comp(p:Tm, q:Tm, r:Tm, s:Tm, t:Tm) -> Coh:
    return stock_coh('comp', (p, q, r, s, t))


STOCK = {
    'id':    (CohKind.EQ, D0, _h(OBJ, x, x)),
    'comp':  (CohKind.OP, COMP_PS, _h(OBJ, x, z)),
    'un':    (CohKind.OP, D1, HXY),
    'id1':   (CohKind.EQ, D1, _h(HXY, f, f)),
    'vcomp': (CohKind.OP, Ctx(D2.bindings + ((h, HXY), (Var('b'), _h(HXY, g, h)))), _h(HXY, f, h)),
}
_idx = Coh(*STOCK['id'][:3], Sub(((x, V(x)),)), CATT, 'id')
_idy = Coh(*STOCK['id'][:3], Sub(((x, V(y)),)), CATT, 'id')
STOCK['lunit'] = (CohKind.EQ, D1, Hom(HXY, _comp(V(x), V(x), _idx, V(y), V(f)), V(f)))
STOCK['runit'] = (CohKind.EQ, D1, Hom(HXY, _comp(V(x), V(y), V(f), V(y), _idy), V(f)))
STOCK['assoc'] = (CohKind.EQ, ASSOC_PS,
                  Hom(_h(OBJ, x, w),
                      _comp(V(x), V(z), _comp(V(x), V(y), V(f), V(z), V(g)), V(w), V(h)),
                      _comp(V(x), V(y), V(f), V(w), _comp(V(y), V(z), V(g), V(w), V(h)))))


# ---- random generators ----

def random_catt_ctx(rng:np.random.Generator, max_vars:int, prefix:str='a') -> Ctx:
    n = int(rng.integers(1, max_vars + 1))
    b = []
    for k in range(n):
        cands = [OBJ]
        for p, A in b:
            for q, B in b:
                if A == B and dim_ty(A) < 2:
                    cands.append(_h(A, p, q))
        b.append((Var(f'{prefix}{k}'), cands[int(rng.integers(len(cands)))]))
    return Ctx(tuple(b))


def random_mcatt_ctx(rng:np.random.Generator, max_vars:int, prefix:str='a') -> Ctx:
    n = int(rng.integers(1, max_vars + 1))
    b = []
    for k in range(n):
        G = Ctx(tuple(b))
        units = [UC] + [V(p) for p, A in b if isinstance(A, Unit)]
        cands = [UNIT, OBJ]
        cands += [Hom(UNIT, s, t) for s in units for t in units]
        nfs = [(p, normalize(MCATT, A, G)) for p, A in b]
        for p, A in nfs:
            for q, B in nfs:
                if A == B and not isinstance(A, Unit) and dim_ty(A, MCATT) < 1:
                    cands.append(_h(A, p, q))
        b.append((Var(f'{prefix}{k}'), cands[int(rng.integers(len(cands)))]))
    return Ctx(tuple(b))


def random_sub(rng:np.random.Generator, theory:TheoryId, D:Ctx, G:Ctx,
               pool:Sequence[Tuple[Tm, Ty]], tries:int=8) -> Optional[Sub]:
    '''Fill G left to right with pool terms of the right type, D |- g : G when it succeeds.'''
    for _ in range(tries):
        maps = []
        for v, A in G.bindings:
            want = normalize(theory, apply(A, Sub(tuple(maps))), D)
            cands = [t for t, T in pool if T == want]
            if not cands:
                break
            maps.append((v, cands[int(rng.integers(len(cands)))]))
        else:
            return Sub(tuple(maps))
    return None


def term_pool(rng:np.random.Generator, theory:TheoryId, D:Ctx, depth:int=1,
              tries:int=2) -> List[Tuple[Tm, Ty]]:
    '''Variables of D, then stock coherences applied to earlier pool terms, with their types.'''
    pool = [(V(v), normalize(theory, A, D)) for v, A in D.bindings]
    if theory in UNIT_THEORIES:
        pool.append((UC, UNIT))
    seen = {t for t, _ in pool}
    for _ in range(depth):
        new = []
        for name, (kind, ps, ty) in STOCK.items():
            target = ps if theory is CATT else delooped(ps)
            for _ in range(tries):
                g = random_sub(rng, theory, D, target, pool)
                if g is None:
                    continue
                t = Coh(kind, ps, ty, g, theory, name)
                if t in seen:
                    continue
                try:
                    new.append((t, infer(theory, D, t)))
                except KernelError:
                    continue
                seen.add(t)
        pool += new
    return pool


def random_pair(rng:np.random.Generator, theory:TheoryId, max_vars:int,
                depth:int=1) -> Optional[Tuple[Ctx, Sub, Ctx]]:
    # (D, g, G) with D |- g : G, or None when no substitution was found
    make = random_catt_ctx if theory is CATT else random_mcatt_ctx
    G, D = make(rng, max_vars, 'b'), make(rng, max_vars, 'a')
    g = random_sub(rng, theory, D, G, term_pool(rng, theory, D, depth))
    return None if g is None else (D, g, G)


# ---- kernel against search ----

def _candidate_types(G:Ctx) -> List[Ty]:
    out = [OBJ]
    for p, A in G.bindings:
        for q, B in G.bindings:
            out.append(_h(A, p, q))   # ill formed when A != B
    return out


def small_contexts(max_vars:int) -> List[Ctx]:
    '''Every context of object and arrow binders over earlier variables, plus ill-typed arrows.'''
    layer = [Ctx()]
    out = []
    for k in range(max_vars):
        nxt = []
        for G in layer:
            for A in _candidate_types(G):
                if isinstance(A, Hom) and dim_ty(A.base) > 0:
                    continue
                nxt.append(G.extend(Var(f'a{k}'), A))
        out += nxt
        layer = nxt
    return out


def enumerate_subs(theory:TheoryId, D:Ctx, G:Ctx, pool:Sequence[Tuple[Tm, Ty]],
                   limit:Optional[int]=None) -> List[Sub]:
    '''Substitutions D |- g : G with components from pool, in pool order, type directed.'''
    out = []

    def fill(maps, k):
        if k == len(G):
            out.append(Sub(tuple(maps)))
            return
        v, A = G.bindings[k]
        want = normalize(theory, apply(A, Sub(tuple(maps))), D)
        for t, T in pool:
            if limit is not None and len(out) >= limit:
                return
            if T == want:
                fill(maps + [(v, t)], k + 1)

    fill([], 0)
    return out


def _var_pool(theory:TheoryId, G:Ctx) -> List[Tuple[Tm, Ty]]:
    # one representative per normal form, so eta-equal units are not enumerated twice
    pool, seen = [], set()
    cands = [(V(v), A) for v, A in G.bindings]
    if theory in UNIT_THEORIES:
        cands.append((UC, UNIT))
    for t, A in cands:
        nf = normalize(theory, t, G)
        if nf not in seen:
            seen.add(nf)
            pool.append((t, normalize(theory, A, G)))
    return pool


def _coh_apps(theory:TheoryId, G:Ctx, pool:Sequence[Tuple[Tm, Ty]],
              per_coh:Optional[int]) -> List[Tuple[Coh, Sub, Ctx]]:
    apps = []
    for name, (kind, ps, ty) in STOCK.items():
        target = ps if theory is CATT else delooped(ps)
        subs = enumerate_subs(theory, G, target, pool, per_coh)
        # a mismatched substitution, built from the first pool terms
        terms = [t for t, _ in pool][:len(ps)]
        if len(terms) == len(ps):
            bad = Sub(tuple(zip(ps.vars(), terms)))
            if bad not in subs:
                subs.append(bad)
        apps += [(Coh(kind, ps, ty, g, theory, name), g, target) for g in subs]
    return apps


def all_judgments(theory:TheoryId, max_vars:int, depth:int=1,
                  per_coh:Optional[int]=2) -> List[Judgment]:
    '''
    Every context of at most max_vars binders from small_contexts and
    enumerate_ps, with its candidate types and variables and, in the theories
    with coherences, the stock coherences applied to terms of depth below
    `depth`. At most per_coh well typed substitutions are kept per coherence
    and context (None keeps all), plus one mismatched one. Accepted and
    rejected instances both occur.
    '''
    unit = theory in UNIT_THEORIES
    js = []
    ctxs = small_contexts(max_vars) + enumerate_ps(max_vars)
    ctxs.append(Ctx(((x, OBJ), (f, _h(OBJ, x, y)))))           # y unbound
    ctxs.append(Ctx(((x, OBJ), (x, OBJ))))                      # x bound twice
    for G in ctxs:
        Gt = desusp(G) if unit else G
        js.append(Judgment(JK.CTX, Gt))
        if theory is CATT:
            js.append(Judgment(JK.PS, G))
        for A in _candidate_types(G)[:6]:
            js.append(Judgment(JK.TY, Gt, desusp(A) if unit else A))
        for v, A in Gt.bindings:
            js.append(Judgment(JK.TM, Gt, A, V(v)))
            js.append(Judgment(JK.TM, Gt, OBJ, V(v)))
        if unit:
            js.append(Judgment(JK.TM, Gt, UNIT, UC))
            js.append(Judgment(JK.TY, Gt, Hom(UNIT, UC, UC)))
    if theory is CATT:
        for G in enumerate_ps(max_vars):
            for A in _candidate_types(G):
                js.append(Judgment(JK.OP, G, A))
                js.append(Judgment(JK.EQ, G, A))
    if theory not in COH_THEORIES:
        return js
    for G in ctxs:
        Gt = desusp(G) if unit else G
        pool = _var_pool(theory, Gt)
        for _ in range(depth - 1):
            for t, _, _ in _coh_apps(theory, Gt, pool, per_coh):
                try:
                    pool.append((t, normalize(theory, infer(theory, Gt, t), Gt)))
                except KernelError:
                    continue
        for t, g, target in _coh_apps(theory, Gt, pool, per_coh):
            try:
                expected = apply(t.ty if theory is CATT else desusp(t.ty), g)
            except KernelError:
                continue
            js.append(Judgment(JK.TM, Gt, expected, t))
            js.append(Judgment(JK.SUB, Gt, sub=g, target=target))
    return js


def agreement(theory:TheoryId, judgments:Sequence[Judgment], fuel:int,
              disable_print:bool=True) -> List[Row]:
    rows = []
    search = DerivationSearch(fuel)
    for Jg in tqdm(judgments, disable=disable_print):
        kernel = check_judgment(theory, Jg)
        oracle = search.run(theory, Jg)
        rows.append({
            'theory': theory.value,
            'kind': Jg.kind.value,
            'judgment': Jg.render(),
            'kernel': kernel.verdict.value,
            'oracle': oracle.value,
            'agree': (oracle is FOUND) == kernel.accepted and oracle is not OUT_OF_FUEL,
        })
    return rows

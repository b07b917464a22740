from dataclasses import dataclass
from enum import Enum
from .typing import *
from .TT_syntax import Var, Hom, V, Ctx, OBJ, dim_ty, render_ty, render_ctx
from .TT_errors import NotPs, BoundaryUndefined


class Sign(Enum):
    MINUS = '-'
    PLUS  = '+'


@dataclass(frozen=True)
class PsStep:
    rule: str                   # pss / pse / psd / ps
    args: Tuple[Var, ...] = ()


@dataclass(frozen=True)
class PsWitness:
    ctx: Ctx
    trace: Tuple[PsStep, ...]


def check_ps(G:Ctx) -> PsWitness:
    b = G.bindings
    if not b:
        raise NotPs('the empty context is not a ps-context', index=0, expected=OBJ, rule='pss')
    x, A = b[0]
    if A != OBJ:
        raise NotPs(f'first binder {x} : {render_ty(A)} is not an object', index=1, expected=OBJ, rule='pss')

    trace = [PsStep('pss', (x,))]
    seen = {x}
    dang, dang_ty = x, OBJ      # the dangling variable and its type
    i = 1
    while i < len(b):
        y, A = b[i]
        if i + 1 >= len(b):
            raise NotPs(f'{y} : {render_ty(A)} is not followed by an arrow out of the dangling variable',
                        index=i + 1, expected=dang_ty, rule='pse')
        f, B = b[i + 1]
        # psd until the dangling variable has the dimension of A
        while dim_ty(dang_ty) > dim_ty(A):
            dang, dang_ty = dang_ty.tgt.var, dang_ty.base
            trace.append(PsStep('psd', (dang,)))
        if A != dang_ty:
            raise NotPs(f'{y} : {render_ty(A)} cannot extend the dangling variable {dang} : {render_ty(dang_ty)}',
                        index=i + 1, expected=dang_ty, rule='pse')
        filler = Hom(A, V(dang), V(y))
        if B != filler:
            raise NotPs(f'{f} : {render_ty(B)} is not the filler {render_ty(filler)}',
                        index=i + 2, expected=filler, rule='pse')
        if y in seen or f in seen or y == f:
            raise NotPs(f'{y} or {f} is bound twice', index=i + 1, rule='pse')
        seen.update((y, f))
        trace.append(PsStep('pse', (y, f)))
        dang, dang_ty = f, B
        i += 2

    while dang_ty != OBJ:
        dang, dang_ty = dang_ty.tgt.var, dang_ty.base
        trace.append(PsStep('psd', (dang,)))
    trace.append(PsStep('ps', (dang,)))
    return PsWitness(G, tuple(trace))


def is_ps(G:Ctx) -> bool:
    try:
        check_ps(G)
    except NotPs:
        return False
    return True


def _pairs(G:Ctx) -> Iterator[Tuple[Binding, Binding]]:
    b = G.bindings
    for k in range(1, len(b), 2):
        yield b[k], b[k + 1]


def boundary(G:Ctx, i:int, sign:Sign) -> Ctx:
    check_ps(G)
    out = [G.bindings[0]]
    for (y, A), (f, B) in _pairs(G):
        d = dim_ty(A)
        if sign is Sign.MINUS:
            if d >= i:
                continue
        else:
            if d > i:
                continue
            if d == i:
                out = out[:-1] + [(y, A)]
                continue
        out += [(y, A), (f, B)]
    return Ctx(tuple(out))


def boundary_shifted(G:Ctx, i:int, sign:Sign) -> Ctx:
    # Same boundaries, indexed one higher: the cell of dimension i has its source at index i
    check_ps(G)
    out = [G.bindings[0]]
    for (y, A), (f, B) in _pairs(G):
        d = dim_ty(A)
        if sign is Sign.MINUS:
            if d >= i - 1:
                continue
        else:
            if d >= i:
                continue
            if d == i - 1:
                out = out[:-1] + [(y, A)]
                continue
        out += [(y, A), (f, B)]
    return Ctx(tuple(out))


def dim_ps(G:Ctx) -> int:
    check_ps(G)
    return max(dim_ty(A) for _, A in G.bindings)


def src(G:Ctx) -> Ctx:
    d = dim_ps(G)
    if d == 0:
        raise BoundaryUndefined(f'{render_ctx(G)} has dimension 0 and no source', rule='op')
    return boundary(G, d - 1, Sign.MINUS)


def tgt(G:Ctx) -> Ctx:
    d = dim_ps(G)
    if d == 0:
        raise BoundaryUndefined(f'{render_ctx(G)} has dimension 0 and no target', rule='op')
    return boundary(G, d - 1, Sign.PLUS)


def locally_maximal(G:Ctx) -> List[Var]:
    # Variables that are neither the source nor the target of a later binder
    b = G.bindings
    out = []
    for k, (x, _) in enumerate(b):
        used = False
        for _, B in b[k + 1:]:
            if isinstance(B, Hom) and (B.src == V(x) or B.tgt == V(x)):
                used = True
                break
        if not used:
            out.append(x)
    return out

from .typing import *
from .TT_syntax import Obj, Unit, Hom, V, UnitC, Coh, Ctx, Sub
from .TT_errors import UnboundVariable


def apply(e:Expr, g:Sub) -> Expr:
    '''e[g]. Raises UnboundVariable on a free variable outside the domain of g.'''
    if isinstance(e, (Obj, Unit, UnitC)):
        return e
    if isinstance(e, Hom):
        return Hom(apply(e.base, g), apply(e.src, g), apply(e.tgt, g))
    if isinstance(e, V):
        t = g.lookup(e.var)
        if t is None:
            raise UnboundVariable(f'{e.var} is not in the domain of the substitution', rule='var')
        return t
    if isinstance(e, Coh):
        return Coh(e.kind, e.ps, e.ty, compose(e.args, g), e.theory, e.name)
    if isinstance(e, Sub):
        return compose(e, g)
    raise TypeError(f'cannot substitute into {e!r}')


def compose(g:Sub, d:Sub) -> Sub:
    # g o d: for D |- g : G and T |- d : D, gives T |- g o d : G
    return Sub(tuple((x, apply(t, d)) for x, t in g.maps))


def identity(G:Ctx) -> Sub:
    return Sub(tuple((x, V(x)) for x in G.vars()))


def restrict(g:Sub, n:int) -> Sub:
    return Sub(g.maps[:n])



from dataclasses import dataclass, field
from functools import cached_property
from .typing import *
from .TT_constants import TheoryId, CohKind, UNIT_THEORIES, RESERVED_NAME, CONSTRUCTORS


@dataclass(frozen=True)
class Var:
    name: str
    reserved: bool = False

    def __str__(self):
        return self.name


NEW = Var(RESERVED_NAME, reserved=True)


@dataclass(frozen=True)
class Obj:
    pass


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Hom:
    base: Ty
    src: Tm
    tgt: Tm


@dataclass(frozen=True)
class V:
    var: Var


@dataclass(frozen=True)
class UnitC:
    pass


@dataclass(frozen=True)
class Ctx:
    bindings: Tuple[Binding, ...] = ()

    def __len__(self):
        return len(self.bindings)

    def __iter__(self):
        return iter(self.bindings)

    @cached_property
    def types(self) -> Dict[Var, Ty]:
        return dict(self.bindings)

    def lookup(self, x:Var) -> Optional[Ty]:
        return self.types.get(x)

    def vars(self) -> List[Var]:
        return [x for x, _ in self.bindings]

    def extend(self, x:Var, A:Ty) -> 'Ctx':
        return Ctx(self.bindings + ((x, A),))

    def prefix(self, n:int) -> 'Ctx':
        return Ctx(self.bindings[:n])


@dataclass(frozen=True)
class Sub:
    maps: Tuple[Mapping_, ...] = ()

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    @cached_property
    def table(self) -> Dict[Var, Tm]:
        return dict(self.maps) # rightmost binding wins

    def lookup(self, x:Var) -> Optional[Tm]:
        return self.table.get(x)

    def terms(self) -> Tuple[Tm, ...]:
        return tuple(t for _, t in self.maps)

    def domain(self) -> List[Var]:
        return [x for x, _ in self.maps]


@dataclass(frozen=True, eq=False)
class Coh:
    '''
    A coherence applied to a substitution. The index (ps, ty) is always a CaTT
    judgment; `theory` says whether this is a CaTT constructor or its MCaTT
    counterpart over the desuspended index. Two coherences are equal when their
    indices agree up to renaming of the ps variables and their argument terms
    agree positionally. The name is display only.
    '''
    kind: CohKind
    ps: Ctx
    ty: Ty
    args: Sub
    theory: TheoryId = TheoryId.CATT
    name: str = field(default='', compare=False)

    @cached_property
    def head(self) -> Tuple[Ctx, Ty]:
        return canonical(self.ps, self.ty)

    @cached_property
    def key(self):
        return (self.kind, self.theory, self.head, self.args.terms())

    def __eq__(self, other):
        if not isinstance(other, Coh):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def keyword(self) -> str:
        return CONSTRUCTORS[(self.theory, self.kind)][0]

    @property
    def rule(self) -> str:
        return CONSTRUCTORS[(self.theory, self.kind)][1]


OBJ  = Obj()
UNIT = Unit()
UC   = UnitC()
OBJ_NF = Hom(UNIT, UC, UC) # Obj in the unit theories


def var_set(e:Expr) -> VarSet:
    if isinstance(e, (Obj, Unit, UnitC)):
        return frozenset()
    if isinstance(e, Hom):
        return var_set(e.base) | var_set(e.src) | var_set(e.tgt)
    if isinstance(e, V):
        return frozenset((e.var,))
    if isinstance(e, Coh):
        return var_set(e.args)
    if isinstance(e, Sub):
        return frozenset().union(*(var_set(t) for _, t in e.maps))
    if isinstance(e, Ctx):
        return frozenset(e.vars())
    raise TypeError(f'not a syntax node: {e!r}')


def rename(e:Expr, rho:Renaming) -> Expr:
    # Coherence indices are closed, only their argument terms are renamed
    if isinstance(e, (Obj, Unit, UnitC)):
        return e
    if isinstance(e, Hom):
        return Hom(rename(e.base, rho), rename(e.src, rho), rename(e.tgt, rho))
    if isinstance(e, V):
        return V(rho.get(e.var, e.var))
    if isinstance(e, Coh):
        return Coh(e.kind, e.ps, e.ty, rename(e.args, rho), e.theory, e.name)
    if isinstance(e, Sub):
        return Sub(tuple((x, rename(t, rho)) for x, t in e.maps))
    if isinstance(e, Ctx):
        return Ctx(tuple((rho.get(x, x), rename(A, rho)) for x, A in e.bindings))
    raise TypeError(f'not a syntax node: {e!r}')


def canonical(ps:Ctx, ty:Ty) -> Tuple[Ctx, Ty]:
    rho = {x: Var(f'v{i}') for i, x in enumerate(ps.vars())}
    return rename(ps, rho), rename(ty, rho)


def dim_ty(A:Ty, theory:Optional[TheoryId]=None) -> int:
    if isinstance(A, Unit):
        return -2
    if isinstance(A, Obj):
        return -1 if theory in UNIT_THEORIES else 0
    if isinstance(A, Hom):
        return dim_ty(A.base, theory) + 1
    raise TypeError(f'not a type: {A!r}')


def dim_ctx(G:Ctx, theory:Optional[TheoryId]=None) -> int:
    return max((dim_ty(A, theory) for _, A in G.bindings), default=-1)


def is_obj(A:Ty) -> bool:
    # Obj, or its unfolding in the unit theories
    return isinstance(A, Obj) or A == OBJ_NF


# Rendering into the surface syntax. The output of render_ctx/render_ty/render_tm
# parses back, except for the reserved variable and anonymous coherences.

def render_ty(A:Ty) -> str:
    if is_obj(A):
        return '*'
    if isinstance(A, Unit):
        return '1'
    if isinstance(A, Hom):
        return f'Hom[{render_ty(A.base)}]({render_tm(A.src)}, {render_tm(A.tgt)})'
    raise TypeError(f'not a type: {A!r}')


def render_tm(t:Tm) -> str:
    if isinstance(t, V):
        return t.var.name
    if isinstance(t, UnitC):
        return '()'
    if isinstance(t, Coh):
        return f'{t.name or t.keyword} @[{render_maps(t.args)}]'
    raise TypeError(f'not a term: {t!r}')


def render_maps(g:Sub) -> str:
    return ', '.join(f'{x} := {render_tm(t)}' for x, t in g.maps)


def render_sub(g:Sub) -> str:
    return f'<{render_maps(g)}>'


def render_ctx(G:Ctx) -> str:
    if not G.bindings:
        return '.'
    return ' '.join(f'({x} : {render_ty(A)})' for x, A in G.bindings)


def render(e:Expr) -> str:
    if isinstance(e, Ctx):
        return render_ctx(e)
    if isinstance(e, Sub):
        return render_sub(e)
    if isinstance(e, (Obj, Unit, Hom)):
        return render_ty(e)
    return render_tm(e)

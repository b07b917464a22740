from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError
from .typing import *
from .TT_constants import TheoryId, EXTENSIONS
from .TT_errors import ParseError


GRAMMAR = r'''
    start: item*

    ?item: "coh" NAME binder* ":" ty               -> coh_def
         | "mcoh" NAME binder* ":" ty              -> mcoh_def
         | "let" NAME binder* ":" ty "=" tm        -> let_def

    binder: "(" NAME ":" ty ")"

    ?ty: "*"                                       -> star
       | "1"                                       -> one
       | "Hom" "[" ty "]" "(" tm "," tm ")"        -> hom
       | tm "->" tm                                -> arrow

    ?tm: NAME atom+                                -> app
       | atom

    ?atom: NAME                                    -> name
         | NAME "@" "[" assigns? "]"              -> explicit
         | "(" ")"                                 -> unit
         | "(" tm ")"

    assigns: assign ("," assign)*
    assign: NAME ":=" tm

    NAME: /[A-Za-z_][A-Za-z0-9_']*/
    COMMENT: /#[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
'''


class DefKind(Enum):
    COH  = 'coh'
    MCOH = 'mcoh'
    LET  = 'let'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SStar:
    pass


@dataclass(frozen=True)
class SOne:
    pass


@dataclass(frozen=True)
class SUnit:
    pass


@dataclass(frozen=True)
class SName:
    name: str


@dataclass(frozen=True)
class SApp:
    head: str
    args: Tuple[STm, ...]


@dataclass(frozen=True)
class SExplicit:
    head: str
    assigns: Tuple[Tuple[str, STm], ...]


@dataclass(frozen=True)
class SArrow:
    src: STm
    tgt: STm


@dataclass(frozen=True)
class SHom:
    base: STy
    src: STm
    tgt: STm


@dataclass(frozen=True)
class Binder:
    name: str
    ty: STy


@dataclass(frozen=True)
class Def:
    keyword: DefKind
    name: str
    binders: Tuple[Binder, ...]
    ty: STy
    body: Optional[STm] = None
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SourceFile:
    path: str
    theory: TheoryId
    items: Tuple[Def, ...]


@v_args(inline=True)
class _ToSurface(Transformer):
    def start(self, *items):
        return tuple(items)

    def _def(self, kw, name, rest, body=None):
        *binders, ty = rest
        return Def(kw, str(name), tuple(binders), ty, body, name.line, name.column)

    def coh_def(self, name, *rest):
        return self._def(DefKind.COH, name, rest)

    def mcoh_def(self, name, *rest):
        return self._def(DefKind.MCOH, name, rest)

    def let_def(self, name, *rest):
        return self._def(DefKind.LET, name, rest[:-1], rest[-1])

    def binder(self, name, ty):
        return Binder(str(name), ty)

    def star(self):
        return SStar()

    def one(self):
        return SOne()

    def hom(self, base, s, t):
        return SHom(base, s, t)

    def arrow(self, s, t):
        return SArrow(s, t)

    def app(self, head, *args):
        return SApp(str(head), tuple(args))

    def name(self, n):
        return SName(str(n))

    def explicit(self, head, assigns=()):
        return SExplicit(str(head), assigns)

    def assigns(self, *pairs):
        return tuple(pairs)

    def unit(self):
        return SUnit()

    def assign(self, n, t):
        return (str(n), t)


_parser = Lark(GRAMMAR, parser='lalr', propagate_positions=False)


def theory_of(path:Union[str, Path]) -> TheoryId:
    p = Path(path)
    suffixes = [s for s in p.suffixes if s != '.gz']
    ext = suffixes[-1] if suffixes else ''
    if ext not in EXTENSIONS:
        raise ParseError(f'{p.name}: unknown source extension {ext!r}, expected .catt or .mcatt', rule='parse')
    return EXTENSIONS[ext]


def parse(text:str, path:str='<input>', theory:Optional[TheoryId]=None) -> SourceFile:
    if theory is None:
        theory = theory_of(path)
    try:
        tree = _parser.parse(text)
        items = _ToSurface().transform(tree)
    except UnexpectedInput as e:
        raise ParseError(f'unexpected input: {_context(text, e)}', rule='parse',
                         span=f'{path}:{max(e.line, 0)}:{max(e.column, 0)}')
    except VisitError as e:
        raise ParseError(str(e.orig_exc), rule='parse', span=path)
    return SourceFile(str(path), theory, items)


def _context(text:str, e:UnexpectedInput) -> str:
    lines = e.get_context(text, span=20).splitlines()
    return lines[0].strip() if lines else '<end of input>'


# ---- rendering ----

def render_stm(t:STm, atom:bool=False) -> str:
    if isinstance(t, SName):
        return t.name
    if isinstance(t, SUnit):
        return '()'
    if isinstance(t, SExplicit):
        return f'{t.head} @[' + ', '.join(f'{x} := {render_stm(u)}' for x, u in t.assigns) + ']'
    s = ' '.join([t.head] + [render_stm(u, atom=True) for u in t.args])
    return f'({s})' if atom else s


def render_sty(A:STy) -> str:
    if isinstance(A, SStar):
        return '*'
    if isinstance(A, SOne):
        return '1'
    if isinstance(A, SArrow):
        return f'{render_stm(A.src)} -> {render_stm(A.tgt)}'
    return f'Hom[{render_sty(A.base)}]({render_stm(A.src)}, {render_stm(A.tgt)})'


def render_def(d:Def) -> str:
    binders = ''.join(f' ({b.name} : {render_sty(b.ty)})' for b in d.binders)
    s = f'{d.keyword} {d.name}{binders} : {render_sty(d.ty)}'
    if d.body is not None:
        s += f' = {render_stm(d.body)}'
    return s


def render_source(src:SourceFile) -> str:
    return ''.join(render_def(d) + '\n' for d in src.items)

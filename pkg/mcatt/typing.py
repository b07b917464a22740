from pathlib import Path
from typing import *

# Core syntax, forward references into TT_syntax
Ty   = Union['Obj', 'Unit', 'Hom']
Tm   = Union['V', 'UnitC', 'Coh']
Expr = Union['Obj', 'Unit', 'Hom', 'V', 'UnitC', 'Coh', 'Sub', 'Ctx']

Binding  = Tuple['Var', Ty]         # x : A
Mapping_ = Tuple['Var', Tm]         # x |-> t
VarSet   = FrozenSet['Var']
Renaming = Dict['Var', 'Var']

# Surface syntax
STm = Union['SName', 'SUnit', 'SApp', 'SExplicit']
STy = Union['SStar', 'SOne', 'SHom', 'SArrow']

Row     = Dict[str, Any]            # one line of a CSV / JSON report

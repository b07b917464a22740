from .TT_constants import RULES


class KernelError(Exception):
    def __init__(self, detail:str, rule:str='', span:str=''):
        if rule and rule not in RULES:
            raise ValueError(f'unknown rule name {rule!r}')
        super().__init__(detail)
        self.detail = detail
        self.rule = rule
        self.span = span

    @property
    def code(self) -> str:
        return type(self).__name__

    def at(self, span:str) -> 'KernelError':
        # Attach a source location, keeping the innermost one
        if not self.span:
            self.span = span
        return self

    def __str__(self):
        where = f'{self.span}: ' if self.span else ''
        return f'{where}{self.code} [{self.rule}] {self.detail}'


class DuplicateVar(KernelError): pass
class ScopeError(KernelError): pass
class TheoryViolation(KernelError): pass
class TypeMismatch(KernelError): pass
class UnboundVariable(KernelError): pass
class BoundaryUndefined(KernelError): pass
class SideConditionViolation(KernelError): pass
class SubstMismatch(KernelError): pass
class ArityMismatch(SubstMismatch): pass
class NameMismatch(SubstMismatch): pass
class NotNormalized(KernelError): pass
class ParseError(KernelError): pass
class ElaborationAmbiguous(KernelError): pass
class ElaborationMismatch(KernelError): pass


class NotPs(KernelError):
    def __init__(self, detail:str, index:int=0, expected=None, rule:str='ps', span:str=''):
        super().__init__(detail, rule, span)
        self.index = index          # 1-based binder position, 0 for the empty context
        self.expected = expected    # expected type of the dangling variable, if any

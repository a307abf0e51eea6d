"""Exception hierarchy shared by every layer of the toolkit."""

from __future__ import annotations


class FowlError(Exception):
    """Base class. ``span`` is the source span of the offending form, if known."""

    def __init__(self, message: str, span=None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is None:
            return self.message
        return f"{self.span}: {self.message}"


# core-ir

class UnboundVariable(FowlError):
    def __init__(self, name: str, span=None):
        super().__init__(f"unbound variable {name!r}", span)
        self.name = name


class StuckEliminator(FowlError):
    """An eliminator met a value that is neither canonical nor neutral."""


# judgement registry

class RegistryError(FowlError):
    pass


class DuplicateJudgement(RegistryError):
    pass


class DuplicateRule(RegistryError):
    pass


class UnknownRule(RegistryError):
    def __init__(self, judgement: str, tag: str, span=None):
        super().__init__(f"no {judgement} rule for {tag!r}", span)
        self.judgement = judgement
        self.tag = tag


class UnknownTag(RegistryError):
    pass


# reader / expander

class ReadError(FowlError):
    pass


class UnbalancedParen(ReadError):
    pass


class ExpandError(FowlError):
    pass


class UnknownForm(ExpandError):
    def __init__(self, head: str, span=None):
        super().__init__(f"unknown form {head!r}", span)
        self.head = head


class ArityError(ExpandError):
    def __init__(self, head: str, expected, got: int, span=None):
        super().__init__(f"{head}: expected {expected} argument(s), got {got}", span)
        self.head = head
        self.expected = expected
        self.got = got


class CompositionError(FowlError):
    pass


class AmbiguousForm(CompositionError):
    def __init__(self, head: str, a: str, b: str):
        super().__init__(f"form {head!r} is defined differently by {a} and {b}")
        self.head = head


class IllegalShadow(CompositionError):
    def __init__(self, head: str, why: str = "no parent defines it"):
        super().__init__(f"cannot shadow {head!r}: {why}")
        self.head = head


# elaboration

class ElaborationError(FowlError):
    pass


class FowlTypeError(ElaborationError):
    """Type mismatch. ``expected``/``got`` hold printed normal forms."""

    def __init__(self, message: str, span=None, expected: str | None = None,
                 got: str | None = None):
        detail = message
        if expected is not None or got is not None:
            detail = f"{message}\n  expected: {expected}\n  got:      {got}"
        super().__init__(detail, span)
        self.expected = expected
        self.got = got


class CannotSynthesize(ElaborationError):
    pass


class InconsistentTypes(FowlTypeError):
    pass


class DegenerateTiming(FowlError):
    pass

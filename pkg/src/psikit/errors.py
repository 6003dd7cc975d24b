"""Exception hierarchy shared by every psikit module."""

from __future__ import annotations


class PsikitError(Exception):
    """Base class for all library errors."""


class ResourceLimit(PsikitError):
    """A configured degree, term or variable bound was exceeded."""


class ContextMismatch(PsikitError, ValueError):
    """Operands live in different polynomial rings or presentations."""


class InfiniteDimension(PsikitError):
    """A quotient algebra was required to be finite dimensional but is not."""


class DuplicateName(PsikitError, ValueError):
    pass


class MalformedRelation(PsikitError, ValueError):
    pass


class BaseIncompatible(PsikitError, ValueError):
    pass


class RelationNotPreserved(PsikitError, ValueError):
    def __init__(self, relation, message=None):
        self.relation = relation
        super().__init__(message or f"relation {relation} does not map into the target ideal")


class ImageNotContained(PsikitError, ValueError):
    def __init__(self, generator, message=None):
        self.generator = generator
        super().__init__(message or f"image of {generator} is not contained in the target ideal")


class IncompatibleMultiplicative(PsikitError, ValueError):
    pass


class ImproperIdeal(PsikitError, ValueError):
    pass


class NotPrime(PsikitError, ValueError):
    pass


class UnsupportedFiber(PsikitError):
    pass


class UnsupportedSource(PsikitError):
    pass


class NotPsiAtPrime(PsikitError):
    pass


class NotCommonIdeal(PsikitError, ValueError):
    pass


class NotFiniteQuotient(PsikitError, ValueError):
    pass


class InvalidD(PsikitError, ValueError):
    pass


class TooLarge(PsikitError):
    pass


class NotARing(PsikitError, ValueError):
    def __init__(self, axiom, message=None):
        self.axiom = axiom
        super().__init__(message or f"ring axiom fails: {axiom}")


class IllTypedExpression(PsikitError, TypeError):
    pass


class MeaninglessFact(PsikitError, ValueError):
    pass


class InvalidTrace(PsikitError, ValueError):
    pass


class DslSyntaxError(PsikitError):
    def __init__(self, message, line, col):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class UnknownName(PsikitError):
    def __init__(self, name, line=None, col=None):
        self.name = name
        self.line = line
        self.col = col
        where = f" (line {line}, col {col})" if line is not None else ""
        super().__init__(f"unknown name {name!r}{where}")

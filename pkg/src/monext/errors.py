"""Exception types. Every error carries the offending witness in ``witness``."""


class MonoidError(Exception):
    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class NotAssociative(MonoidError):
    pass


class NoIdentityAtZero(MonoidError):
    pass


class NotHom(MonoidError):
    pass


class NotInjective(MonoidError):
    pass


class NotSurjective(MonoidError):
    pass


class NotKernel(MonoidError):
    pass


class NotCommutative(MonoidError):
    pass


class NotSchreier(MonoidError):
    pass


class SquareFails(MonoidError):
    pass


class RepsNotPreserved(MonoidError):
    pass


class NotWellDefined(MonoidError):
    pass


class AxiomViolation(MonoidError):
    pass


class AxiomA4Violation(AxiomViolation):
    pass


class NoRetraction(MonoidError):
    pass


class RetractionNotUnique(MonoidError):
    pass


class NotSReflexive(MonoidError):
    pass


class NotCentral(MonoidError):
    pass


class NotInternalMonoid(MonoidError):
    pass


class OmegaNotForced(MonoidError):
    pass


class NotActionPreserving(MonoidError):
    pass


class FactorizationHypothesisFails(MonoidError):
    pass


class FibreMismatch(MonoidError):
    pass


class InvalidFactorSystem(MonoidError):
    pass


class BoundExceeded(MonoidError):
    pass


class ParseError(MonoidError):
    pass


class CheckFailure(MonoidError):
    """A property that should hold by theory was observed to fail."""

"""Exception hierarchy shared by every module."""


class MWError(Exception):
    """Base class for library errors."""


class NotPrime(MWError):
    pass


class NotPrimePower(MWError):
    pass


class TooLarge(MWError):
    pass


class ZeroElement(MWError):
    pass


class NotAUnit(MWError):
    pass


class FieldMismatch(MWError):
    pass


class DimensionMismatch(MWError):
    pass


class ZeroSymbolEntry(MWError):
    pass


class UnsupportedMorphism(MWError):
    pass


class NotGlobalUnit(MWError):
    pass


class SupportMeetsZ(MWError):
    pass


class NoPreimageFound(MWError):
    """Raised only when the degree descent fails, which indicates a bug."""


class RelationSearchExhausted(MWError):
    pass


class NotStabilized(MWError):
    def __init__(self, certificate, message="presentation did not stabilize"):
        super().__init__(message)
        self.certificate = certificate


class InconsistentWithTheorem(MWError):
    def __init__(self, report, message="computed group violates the exact sequence"):
        super().__init__(message)
        self.report = report


class LiteralError(MWError, ValueError):
    pass

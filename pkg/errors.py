class MldkitError(Exception):
    """Base class for domain errors. The CLI maps these to exit code 1."""


class ParseError(MldkitError):
    """Malformed input. Carries the location of the offending value."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class UnboundedRegion(MldkitError):
    pass


class NegativeExponent(MldkitError):
    pass


class ZeroPolynomial(MldkitError):
    pass


class NotSemiInvariant(MldkitError):
    pass


class NotAdmissible(MldkitError):
    pass


class ZeroEquation(MldkitError):
    pass


class ZeroDivisor(MldkitError):
    pass


class UnsupportedDimension(MldkitError):
    pass


class EmptyEnumeration(MldkitError):
    pass


class CertificateMismatch(MldkitError):
    """A certified prediction disagreed with the direct discrepancy formula."""


class InvalidCone(MldkitError):
    pass


class NotRCartier(MldkitError):
    pass


class NotInCone(MldkitError):
    pass


class NotAFace(MldkitError):
    pass


class BelowThresholdAtZero(MldkitError):
    pass


class NotCoprime(MldkitError):
    pass


class SideConditionViolated(MldkitError):
    pass


class AmbiguousF(MldkitError):
    pass


class DegenerateInput(MldkitError):
    pass

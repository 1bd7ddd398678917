"""Exception types shared across the package."""


class FracposError(Exception):
    """Base class for all package errors."""


class UnknownGenerator(FracposError):
    pass


class ZeroElement(FracposError):
    pass


class DegreeTooLarge(FracposError):
    pass


class PresetMismatch(FracposError):
    pass


class HypothesisViolated(FracposError):
    pass


class NotHermitian(FracposError):
    pass


class RoundingLostPSD(FracposError):
    pass


class BadSize(FracposError):
    pass


class OddDegree(FracposError):
    pass


class NonRealShiftedPolynomial(FracposError):
    pass


class NotCommPreset(FracposError):
    pass


class SingularResolvent(FracposError):
    pass


class ZeroPolynomial(FracposError):
    pass


class ExprSyntaxError(FracposError):
    """Raised on malformed input text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BadInverse(FracposError):
    pass

"""Exception types raised across the package."""


class ToroidalError(ValueError):
    pass


class EmptyPolynomial(ToroidalError):
    pass


class ConstantTermZero(ToroidalError):
    pass


class SingularSystem(ToroidalError):
    pass


class ZeroPoint(ToroidalError):
    pass


class RankMismatch(ToroidalError):
    pass


class IndexOutOfRange(ToroidalError):
    pass


class InvalidLieData(ToroidalError):
    pass


class BasisSearchFailed(ToroidalError):
    pass


class NotWithinValidWindow(ToroidalError):
    """A computation needed module components beyond a truncated module's depth."""


class MissingRestrictionBound(ToroidalError):
    pass


class MissingWeightData(ToroidalError):
    pass


class NoTruncationBound(ToroidalError):
    """No finite k with x0^k p0(x0) alpha(x0, x) w regular in x0 could be certified."""


class WindowTooSmall(ToroidalError):
    pass


class NotInCategory(ToroidalError):
    pass


class DescriptorError(ToroidalError):
    """A JSON descriptor failed to parse or validate; ``field`` names the culprit."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field

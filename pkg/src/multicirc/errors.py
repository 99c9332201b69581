"""Exception types raised by the library.

Every domain error derives from :class:`CirculantError`; the CLI maps those to
exit status 1 and reports the class name.
"""


class CirculantError(Exception):
    """Base class for domain errors."""


class SingularMatrix(CirculantError):
    pass


class NotUnimodular(CirculantError):
    pass


class DimensionMismatch(CirculantError, ValueError):
    pass


class MatrixParseError(CirculantError, ValueError):
    def __init__(self, message, row=None, col=None):
        super().__init__(message)
        self.row = row
        self.col = col


class JumpNotInGroup(CirculantError):
    pass


class IdentityJump(CirculantError):
    pass


class AsymmetricJumpSet(CirculantError):
    pass


class MixedDirectedness(CirculantError):
    pass


class AlreadyConnected(CirculantError):
    pass


class NotAProductInstance(CirculantError):
    pass


class NotGenerating(CirculantError):
    pass


class WrongJumpCount(CirculantError):
    pass


class NotPrime(CirculantError):
    pass


class EvenPrime(CirculantError):
    pass


class FactorNotConnected(CirculantError):
    pass


class TooLarge(CirculantError):
    pass


class NotVertexTransitive(CirculantError):
    pass

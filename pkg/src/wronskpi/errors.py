"""Exception hierarchy shared by every module of the package."""


class WronskPiError(Exception):
    """Base class for all errors raised by this package."""


# -- series arithmetic -------------------------------------------------------

class SeriesError(WronskPiError, ArithmeticError):
    pass


class DivisionByZeroSeries(SeriesError, ZeroDivisionError):
    """The divisor has no nonzero coefficient below its truncation order."""


class NonLatticeRoot(SeriesError):
    """The leading exponent is not divisible by the requested root degree."""


class IrrationalRootLeadingCoefficient(SeriesError):
    """The leading coefficient has no rational n-th root."""


class FractionalExponentNegation(SeriesError):
    """q -> -q was requested on a series with non-integer exponents."""


class NegativeExponent(SeriesError):
    """A result would need a negative power of q."""


# -- modular functions -------------------------------------------------------

class UnsupportedLevel(WronskPiError, ValueError):
    pass


# -- registry ----------------------------------------------------------------

class RegistryError(WronskPiError):
    pass


class SchemaError(RegistryError, ValueError):
    pass


class UnknownAtom(RegistryError, KeyError):
    pass


class DuplicateId(RegistryError, ValueError):
    pass


class RootObstruction(RegistryError):
    """A fractional power has no rational series root, even after clearing."""


# -- numerics ----------------------------------------------------------------

class NumericError(WronskPiError, ArithmeticError):
    pass


class NomeOutOfRange(NumericError, ValueError):
    pass


class InsufficientOrder(NumericError):
    """The truncation order is too low for the requested precision."""


class NegativeEvenRoot(NumericError, ValueError):
    pass


# -- pi series ---------------------------------------------------------------

class DivergentSeries(WronskPiError, ValueError):
    """|X| >= 1, so the series does not converge."""


class InadmissibleLevel(WronskPiError, ValueError):
    pass

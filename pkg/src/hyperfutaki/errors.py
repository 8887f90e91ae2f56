"""Exception hierarchy shared by every module of the package."""


class HyperfutakiError(Exception):
    """Base class for all errors raised by hyperfutaki."""


class InputError(HyperfutakiError, ValueError):
    """Bad user input: unparsable text, wrong vector length, and so on."""


class MalformedInput(InputError):
    pass


class UnknownVariable(InputError):
    pass


class NotHomogeneous(InputError):
    pass


class EmptyPolynomial(InputError):
    pass


class NotTangent(HyperfutakiError):
    """The diagonal field does not preserve the hypersurface F = 0."""


class ScaleExceeded(HyperfutakiError):
    """Brute-force enumeration requested beyond the oracle scale."""


class BudgetExceeded(HyperfutakiError):
    """The series would need more terms than ``max_terms`` allows."""


class ZeroScale(HyperfutakiError):
    """Divided-difference path called with n - d + 1 == 0."""


class SigmaZero(HyperfutakiError):
    """sigma(X) vanishes, so its log-derivative is undefined."""


class NumericalError(HyperfutakiError):
    """A quantity that must be real came out with a large imaginary part."""


class NotConverged(HyperfutakiError):
    """Soliton search stopped without reaching the tolerance.

    The best iterate found is kept on ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result

"""Exception hierarchy shared by every module."""


class NNCalcError(ValueError):
    """Base class for all numeric/domain failures raised by nncalc."""


class DomainViolation(NNCalcError):
    pass


class OutOfRange(DomainViolation):
    """A value has no preimage under the relevant generator."""


class DivisionByZero(NNCalcError, ZeroDivisionError):
    pass


class InvalidParam(NNCalcError):
    pass


class NonFinite(NNCalcError, ArithmeticError):
    pass


class Overflow(NNCalcError, OverflowError):
    pass


class QuadratureFailure(NNCalcError):
    pass


class StepFailure(NNCalcError):
    pass


class RangeViolation(NNCalcError):
    """An escort map sent a probability outside [0, 1]."""


class NormalizationError(NNCalcError):
    pass

"""Bijection-induced arithmetics and the non-Newtonian calculus built on them."""
from ._kernels import BACKEND
from .arithmetic import (
    Arithmetic,
    Generator,
    Interval,
    arithmetic,
    embed,
    from_config,
    make_generator,
    mixed_add,
    mixed_div,
    mixed_mul,
    mixed_sub,
    neg,
    odot,
    ominus,
    oplus,
    oslash,
)
from .calculus import NNFunction, nn_derivative, nn_exp, nn_integral, nn_ln
from .errors import (
    DivisionByZero,
    DomainViolation,
    InvalidParam,
    NNCalcError,
    NonFinite,
    NormalizationError,
    OutOfRange,
    Overflow,
    QuadratureFailure,
    RangeViolation,
    StepFailure,
)

__version__ = "0.1.0"

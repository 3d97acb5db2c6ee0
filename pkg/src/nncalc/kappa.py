"""Kaniadakis kappa-calculus seen through non-Newtonian calculus.

With ``f_kappa(x) = arcsinh(kappa x)/kappa`` the kappa-derivative
``A'(x) sqrt(1 + kappa^2 x^2)`` is the non-Newtonian derivative of a map
``R_kappa -> R``. The kappa-exponential comes in two codomain conventions:

* ``kappa_exp``: ``R_kappa -> R``, ``exp(f_kappa(x))``
* ``kappa_exp_self``: ``R_kappa -> R_kappa``, ``f_kappa^-1(exp(f_kappa(x)))``

:func:`kappa_dual_derivative` implements the "derivative for inverse
functions" that divides by an ordinary ``delta`` although the codomain is
``R_kappa``. It is kept on purpose: it is inconsistent with the
non-Newtonian derivative, and :func:`kappa_nn_ln_derivative` gives the
consistent answer for ``Ln``. The two disagree for every ``kappa > 0``.
"""
import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import Arithmetic, kaniadakis_generator, kappa_forward, kappa_inverse
from .calculus import DEFAULT_REL_STEP, richardson_derivative
from .errors import DomainViolation, InvalidParam, NonFinite, Overflow

FIG1_HEADER = ("x", "exp_k1_k0", "exp_k1_k1")


@dataclass(frozen=True)
class KappaParams:
    kappa: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.kappa) or self.kappa < 0:
            raise InvalidParam(f"kappa must be finite and >= 0, got {self.kappa!r}")

    @property
    def generator(self):
        return kaniadakis_generator(self.kappa)

    @property
    def arithmetic(self):
        return Arithmetic(self.generator)

    @property
    def one(self):
        return float(kappa_inverse(1.0, self.kappa))


def kappa_arithmetic(kappa) -> Arithmetic:
    return Arithmetic(kaniadakis_generator(kappa))


def _finite(value, what):
    if not np.all(np.isfinite(value)):
        raise NonFinite(f"{what} is not finite")
    return value


def kappa_derivative(A, x, kappa, step=None):
    """``dA/dx * sqrt(1 + kappa^2 x^2)``."""
    x = float(x)
    h = DEFAULT_REL_STEP * (1.0 + abs(x)) if step is None else step
    with np.errstate(all="ignore"):
        d = float(richardson_derivative(A, x, h))
    return _finite(d * math.sqrt(1.0 + (kappa * x) ** 2), "kappa derivative")


def kappa_dual_derivative(A, y, kappa, step=None):
    """``lim (A(y+d) (-)_kappa A(y)) / d`` with an ordinary ``/``.

    Since ``f_kappa^-1`` has unit slope at 0 this equals
    ``d/dy f_kappa(A(y))``, which is what gets differenced here.
    """
    y = float(y)
    h = DEFAULT_REL_STEP * (1.0 + abs(y)) if step is None else step
    with np.errstate(all="ignore"):
        d = float(richardson_derivative(lambda t: kappa_forward(A(t), kappa), y, h))
    return _finite(d, "dual kappa derivative")


def kappa_nn_ln_derivative(y, kappa):
    """Non-Newtonian derivative of ``Ln: R -> R_kappa``: ``sinh(kappa/y)/kappa``."""
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainViolation("Ln derivative needs y > 0")
    with np.errstate(over="ignore"):
        out = kappa_inverse(1.0 / y, kappa)
    if np.any(np.isinf(out)):
        raise Overflow(f"sinh(kappa/y)/kappa overflows for kappa={kappa}")
    return out if out.ndim else float(out)


def kappa_exp(x, kappa):
    """``exp(arcsinh(kappa x)/kappa)``."""
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):
        out = np.exp(kappa_forward(x, kappa))
    if np.any(np.isinf(out) & np.isfinite(x)):
        raise Overflow(f"kappa_exp overflows for kappa={kappa}")
    return out if out.ndim else float(out)


def kappa_exp_self(x, kappa):
    """``sinh(kappa exp(arcsinh(kappa x)/kappa))/kappa``."""
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):
        out = kappa_inverse(np.exp(kappa_forward(x, kappa)), kappa)
    if np.any(np.isinf(out) & np.isfinite(x)):
        raise Overflow(f"kappa_exp_self overflows for kappa={kappa}")
    return out if out.ndim else float(out)


def kappa_ln(y, kappa):
    """Inverse of :func:`kappa_exp`: ``sinh(kappa ln y)/kappa`` for ``y > 0``."""
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainViolation("kappa_ln needs y > 0")
    with np.errstate(over="ignore"):
        out = kappa_inverse(np.log(y), kappa)
    if np.any(np.isinf(out)):
        raise Overflow(f"kappa_ln overflows for kappa={kappa}")
    return out if out.ndim else float(out)


def fig1_table(x_lo, x_hi, n_points, kappa):
    """Columns ``x``, ``kappa_exp(-x)``, ``kappa_exp_self(-x)`` on a log-spaced grid.

    Returns an ``(n_points, 3)`` array.
    """
    if not 0 < x_lo < x_hi:
        raise InvalidParam("need 0 < x_lo < x_hi")
    if n_points < 2:
        raise InvalidParam("need at least two points")
    x = np.logspace(math.log10(x_lo), math.log10(x_hi), int(n_points))
    return np.column_stack([x, kappa_exp(-x, kappa), kappa_exp_self(-x, kappa)])

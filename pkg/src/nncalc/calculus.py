"""Non-Newtonian derivative, integral, Exp and Ln.

Every operation is carried out on the conjugate ``A~ = f_Y o A o f_X^-1``, an
ordinary real function, and the result is mapped back with ``f_Y^-1``::

    DA/Dx            = f_Y^-1( A~'(f_X(x)) )
    int_lo^hi A Dx   = f_Y^-1( int_{f_X(lo)}^{f_X(hi)} A~(r) dr )
"""
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .arithmetic import Arithmetic, arithmetic
from .errors import DomainViolation, NonFinite, OutOfRange, QuadratureFailure

DEFAULT_REL_STEP = 1e-4
DEFAULT_INTEGRAL_TOL = 1e-10
MAX_PANELS = 2 ** 20


@dataclass(frozen=True)
class NNFunction:
    """A map ``A: X -> Y`` between two arithmetics."""

    dom: Arithmetic
    cod: Arithmetic
    map: Callable

    @classmethod
    def from_conjugate(cls, dom, cod, conj):
        """Build ``A = f_Y^-1 o conj o f_X`` from its real-line shadow."""
        def A(x):
            return cod.finv(conj(dom.f(x)))
        return cls(dom, cod, A)

    def __call__(self, x):
        return self.map(x)

    def conjugate(self, r):
        return self.cod.f(self.map(self.dom.finv(r)))

    def diagram_error(self, xs):
        """Max ``|f_Y(A(x)) - A~(f_X(x))|`` over ``xs``."""
        xs = np.asarray(xs, dtype=float)
        lhs = np.array([self.cod.f(self.map(x)) for x in xs], dtype=float)
        rhs = np.array([self.conjugate(self.dom.f(x)) for x in xs], dtype=float)
        return float(np.max(np.abs(lhs - rhs)))

    def oplus(self, other):
        """Pointwise ``A (+)_Y B``."""
        return NNFunction(self.dom, self.cod, lambda x: self.cod.oplus(self(x), other(x)))

    def odot(self, other):
        """Pointwise ``A (*)_Y B``."""
        return NNFunction(self.dom, self.cod, lambda x: self.cod.odot(self(x), other(x)))


def richardson_derivative(func, r0, h):
    """Central difference at ``r0`` with two step halvings of Richardson extrapolation."""
    d = []
    for k in range(3):
        hk = h / 2 ** k
        d.append((func(r0 + hk) - func(r0 - hk)) / (2.0 * hk))
    r1a = (4.0 * d[1] - d[0]) / 3.0
    r1b = (4.0 * d[2] - d[1]) / 3.0
    return (16.0 * r1b - r1a) / 15.0


def nn_derivative(F: NNFunction, x, step=None):
    r0 = float(F.dom.to_real(x))
    h = DEFAULT_REL_STEP * (1.0 + abs(r0)) if step is None else float(step)
    image = F.dom.generator.image
    if not (image.contains(r0 - h) and image.contains(r0 + h)):
        raise DomainViolation(f"difference stencil r0={r0:g} +/- {h:g} leaves {image}")
    with np.errstate(all="ignore"):
        d = float(richardson_derivative(F.conjugate, r0, h))
    if not math.isfinite(d):
        raise NonFinite(f"derivative of {F.map!r} at x={x!r} is not finite")
    return F.cod.from_real(d, OutOfRange)


def adaptive_simpson(func, a, b, tol=DEFAULT_INTEGRAL_TOL, max_panels=MAX_PANELS):
    """Adaptive Simpson quadrature of ``func`` over ``[a, b]`` to absolute ``tol``.

    Raises QuadratureFailure once more than ``max_panels`` panels are needed.
    """
    if a == b:
        return 0.0
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0

    def ev(t):
        v = float(func(t))
        if not math.isfinite(v):
            raise QuadratureFailure(f"integrand is not finite at r={t!r}")
        return v

    fa, fb = ev(a), ev(b)
    fm = ev(0.5 * (a + b))
    stack = [(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol)]
    parts = []
    panels = 1
    while stack:
        lo, hi, flo, fmid, fhi, whole, eps = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = ev(lm), ev(rm)
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            parts.append(left + right + delta / 15.0)
            continue
        panels += 1
        if panels > max_panels or lm == lo or rm == hi:
            raise QuadratureFailure(f"tolerance {tol:g} not reached within {max_panels} panels")
        stack.append((lo, mid, flo, flm, fmid, left, 0.5 * eps))
        stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * eps))
    return sign * math.fsum(parts)


def nn_integral(F: NNFunction, lo, hi, tol=DEFAULT_INTEGRAL_TOL):
    r_lo = float(F.dom.to_real(lo))
    r_hi = float(F.dom.to_real(hi))
    inner = adaptive_simpson(F.conjugate, r_lo, r_hi, tol)
    return F.cod.from_real(inner, OutOfRange)


def nn_exp(X: Arithmetic, Y: Arithmetic, x):
    """``Exp: X -> Y``, the solution of ``D Exp/Dx = Exp``, ``Exp(0_X) = 1_Y``."""
    with np.errstate(over="ignore"):
        e = np.exp(X.to_real(x))
    return Y.from_real(e, OutOfRange)


def nn_ln(X: Arithmetic, Y: Arithmetic, y):
    """``Ln: Y -> X``, the inverse of :func:`nn_exp`."""
    fy = Y.to_real(y)
    if np.any(np.asarray(fy) <= 0):
        raise DomainViolation(f"Ln needs f_Y(y) > 0, got {fy!r}")
    return X.from_real(np.log(fy), OutOfRange)


def exp_function(X, Y) -> NNFunction:
    return NNFunction(X, Y, lambda x: nn_exp(X, Y, x))


def ln_function(X, Y) -> NNFunction:
    return NNFunction(Y, X, lambda y: nn_ln(X, Y, y))


def generator_function(X) -> NNFunction:
    """``f_X`` viewed as a map ``X -> R``; its derivative is identically 1."""
    return NNFunction(X, arithmetic("identity"), X.f)


def inverse_generator_function(X) -> NNFunction:
    """``f_X^-1`` viewed as a map ``R -> X``; its derivative is ``1_X``."""
    return NNFunction(arithmetic("identity"), X, X.finv)

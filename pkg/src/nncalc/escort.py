"""Escort maps ``p -> g(p)`` that keep every probability vector normalized.

Binary case: ``g(p) + g(1-p) = 1`` for all ``p`` exactly when
``g(p) = 1/2 + h(p - 1/2)`` with odd ``h``. For ``n >= 3`` outcomes the only
such maps are affine, ``g(p) = (1 - a + 2ap)/(n + (2-n)a)`` with
``-1 <= a <= 1``.

The odd choice ``h(x) = sin(pi x)/2`` gives ``g(p) = sin^2(pi p/2)``. Extended
periodically to all of R it becomes the spin bijection whose inverse, used as
a generator, turns the uniform hidden-variable integral over a half circle
into the quantum law ``cos^2(theta/2)``.

Chaining binary filters is plain composition. Each factor below is an
ordinary conditional probability, and together they form a two-stage
Bernoulli-type process::

    fam = EscortFamily.spin()
    first = escort_binary(fam, p1)          # pass filter 1
    second = escort_binary(fam, p2)         # pass filter 2 given 1
    joint = first * second
"""
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels
from .arithmetic import Arithmetic, spin_generator
from .calculus import NNFunction, nn_integral
from .errors import DomainViolation, InvalidParam, RangeViolation

ODD_CHECK_TOL = 1e-12
BELL_TOL = 1e-10


def sine_odd_part(x):
    return 0.5 * np.sin(np.pi * np.asarray(x, dtype=float))


@dataclass(frozen=True)
class EscortFamily:
    """One admissible escort map.

    kind is ``"odd"`` (binary, ``h`` odd), ``"affine"`` (``a``, ``n``) or
    ``"spin"`` (``g(p) = sin^2(pi p/2)``, the odd family with ``h = sine_odd_part``).
    """

    kind: str
    h: Callable = None
    a: float = None
    n: int = None

    @classmethod
    def odd(cls, h, validate=True):
        fam = cls("odd", h=h)
        if validate:
            xs = np.linspace(-0.5, 0.5, 1001)
            err = np.max(np.abs(np.asarray(h(-xs)) + np.asarray(h(xs))))
            if not err <= ODD_CHECK_TOL:
                raise InvalidParam(f"h is not odd on [-1/2, 1/2] (max |h(-x)+h(x)| = {err:.3g})")
        return fam

    @classmethod
    def affine(cls, a, n):
        _check_affine(a, n)
        return cls("affine", a=float(a), n=int(n))

    @classmethod
    def spin(cls):
        return cls("spin", h=sine_odd_part)

    def g(self, p):
        p = np.asarray(p, dtype=float)
        if self.kind == "affine":
            return _affine(self.a, self.n, p)
        return 0.5 + np.asarray(self.h(p - 0.5), dtype=float)


def _check_affine(a, n):
    if not -1.0 <= a <= 1.0:
        raise InvalidParam(f"a={a} outside [-1, 1]")
    if int(n) != n or n < 3:
        raise InvalidParam(f"n={n} must be an integer >= 3")


def _affine(a, n, p):
    return (1.0 - a + 2.0 * a * p) / (n + (2 - n) * a)


def _check_unit(p, what="p"):
    p = np.asarray(p, dtype=float)
    if np.any(~(p >= 0)) or np.any(~(p <= 1)):
        raise InvalidParam(f"{what} must lie in [0, 1]")
    return p


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def escort_binary(fam: EscortFamily, p):
    """``g(p) = 1/2 + h(p - 1/2)``, checked to land in [0, 1]."""
    p = _check_unit(p)
    out = fam.g(p)
    if np.any(~(out >= 0)) or np.any(~(out <= 1)):
        raise RangeViolation("g(p) left [0, 1]; h is too steep")
    return _scalar(out)


def escort_affine(a, n, p):
    _check_affine(a, n)
    return _scalar(_affine(float(a), int(n), _check_unit(p)))


def quantum_conditional(theta):
    """``g((pi - theta)/pi)`` with ``g(p) = sin^2(pi p/2)``; equals ``cos^2(theta/2)``."""
    theta = np.asarray(theta, dtype=float)
    if np.any(~(theta >= 0)) or np.any(~(theta <= math.pi)):
        raise DomainViolation("theta must lie in [0, pi]")
    return _scalar(np.sin(0.5 * np.pi * (np.pi - theta) / np.pi) ** 2)


class SpinBijection:
    """``g(x) = n + sin^2(pi (x-n)/2)`` on ``[n, n+1]``; inverse by per-cell bisection."""

    def __call__(self, x):
        return _scalar(_kernels.spin_forward(np.atleast_1d(np.asarray(x, dtype=float))).reshape(np.shape(x)))

    def inverse(self, y):
        y = np.asarray(y, dtype=float)
        if not np.all(np.isfinite(y)):
            raise DomainViolation("spin inverse needs finite input")
        return _scalar(_kernels.spin_inverse(np.atleast_1d(y)).reshape(np.shape(y)))


def spin_arithmetic() -> Arithmetic:
    """Arithmetic with generator ``f = g^-1`` of the spin bijection."""
    return Arithmetic(spin_generator())


def hidden_variable_integral(alpha, beta, tol=1e-10):
    """Non-Newtonian integral of the uniform half-circle density.

    Integrates ``rho`` (conjugate density ``1/pi``) from ``alpha'`` to
    ``pi' (+) beta'`` where ``x' = f^-1(x)`` in the spin arithmetic; the
    result equals ``cos^2((alpha - beta)/2)``.
    """
    theta = alpha - beta
    if not 0.0 <= theta <= math.pi:
        raise DomainViolation("need 0 <= alpha - beta <= pi")
    X = spin_arithmetic()
    rho = NNFunction.from_conjugate(X, X, lambda r: 1.0 / math.pi)
    lo = X.embed(alpha)
    hi = X.oplus(X.embed(math.pi), X.embed(beta))
    return float(nn_integral(rho, lo, hi, tol))


def bell_rescaled_check(fam: EscortFamily, p4, tol=BELL_TOL) -> bool:
    """Whether the rescaled map ``p -> g(2p)/2`` keeps four Bell probabilities normalized.

    ``p4 = (p++, p+-, p-+, p--)`` with ``p++ + p+- = p-+ + p-- = 1/2``.
    """
    p4 = np.asarray(p4, dtype=float)
    if p4.shape != (4,) or np.any(~(p4 >= 0)):
        raise InvalidParam("p4 must be four nonnegative numbers")
    if abs(p4[0] + p4[1] - 0.5) > tol or abs(p4[2] + p4[3] - 0.5) > tol:
        raise InvalidParam("pair sums p++ + p+- and p-+ + p-- must both be 1/2")
    scaled = 0.5 * fam.g(np.clip(2.0 * p4, 0.0, 1.0))
    return bool(abs(math.fsum(scaled) - 1.0) < tol)


def escort_renormalized(p, q):
    """``p_k^q / sum_j p_j^q``: depends on the whole vector, not a single-variable map."""
    p = np.asarray(p, dtype=float)
    q = float(q)
    if p.ndim != 1 or np.any(p < 0) or abs(math.fsum(p) - 1.0) > 1e-12:
        raise InvalidParam("p must be a probability vector")
    if q <= 0 and np.any(p == 0):
        raise InvalidParam("q <= 0 needs strictly positive p")
    w = np.zeros_like(p)
    w[p > 0] = p[p > 0] ** q
    return w / math.fsum(w)


def correspondence_limit(a, p, n_list):
    """Rows ``(n, g_n(p), g_n(p) - p)`` of the affine escort map for each ``n``.

    With ``a = 1`` every row has ``g_n(p) = p``; with ``a = 0`` it is ``1/n``.
    """
    _check_unit(p)
    rows = []
    for n in n_list:
        g = escort_affine(a, n, p)
        rows.append((int(n), g, g - p))
    return np.array(rows, dtype=float)

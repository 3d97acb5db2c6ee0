"""Friedman scale factor, standard and non-Newtonian.

Standard (time in Hubble units)::

    da/dt = sqrt(Omega_L a^2 + Omega_M / a)
    a(t)  = (sqrt(Omega_M/Omega_L) sinh(3 sqrt(Omega_L) t / 2))^(2/3)

Non-Newtonian, with time in an arithmetic X and no cosmological constant::

    Da/Dt = sqrt(Omega / a)
    a(t)  = (3/2 sqrt(Omega) f_X(t))^(2/3)

The two coincide when ``f_X(t) = sqrt(Omega_M/Omega) sinh(kappa t)/kappa``
with ``kappa = 3 sqrt(Omega_L)/2`` (see :func:`matched_generator`).
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .arithmetic import Arithmetic, Generator, REAL_LINE
from .errors import DomainViolation, InvalidParam, StepFailure

TRAJECTORY_HEADER = ("t", "a_closed", "a_integrated", "a_standard")


@dataclass(frozen=True)
class CosmologyParams:
    omega_m: float = 0.3
    omega_lambda: float = 0.7
    # Omega of the non-Newtonian equation; defaults to omega_m
    omega: float = None

    def __post_init__(self):
        if self.omega is None:
            object.__setattr__(self, "omega", self.omega_m)
        for name in ("omega_m", "omega_lambda", "omega"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise InvalidParam(f"{name} must be finite and >= 0, got {v!r}")


def _positive_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)):
        raise DomainViolation("t must be > 0")
    return t


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def friedman_rhs(a, params: CosmologyParams):
    return np.sqrt(params.omega_lambda * a * a + params.omega_m / a)


def friedman_scale_factor(t, params: CosmologyParams):
    t = _positive_time(t)
    if params.omega_lambda == 0:
        a = (1.5 * math.sqrt(params.omega_m) * t) ** (2.0 / 3.0)
    else:
        k = 1.5 * math.sqrt(params.omega_lambda)
        a = (math.sqrt(params.omega_m / params.omega_lambda) * np.sinh(k * t)) ** (2.0 / 3.0)
    return _out(a)


def nn_friedman_scale_factor(t, Omega, X: Arithmetic):
    r = np.asarray(X.to_real(t), dtype=float)
    if np.any(~(r > 0)):
        raise DomainViolation("need f_X(t) > 0")
    return _out((1.5 * math.sqrt(Omega) * r) ** (2.0 / 3.0))


def matched_kappa(params: CosmologyParams):
    return 1.5 * math.sqrt(params.omega_lambda)


def matched_generator(params: CosmologyParams):
    """Generator that makes the non-Newtonian solution equal the standard one.

    Returns ``(generator, kappa)`` where
    ``f_X(t) = sqrt(Omega_M/Omega) sinh(kappa t)/kappa``.
    """
    if not (params.omega > 0 and params.omega_m > 0 and params.omega_lambda > 0):
        raise InvalidParam("matched generator needs Omega, Omega_M, Omega_L > 0")
    k = matched_kappa(params)
    c = math.sqrt(params.omega_m / params.omega)

    def forward(t):
        return c * np.sinh(k * np.asarray(t, dtype=float)) / k

    def inverse(r):
        return np.arcsinh(k * np.asarray(r, dtype=float) / c) / k

    gen = Generator(f"matched(kappa={k:.4f})", forward, inverse, REAL_LINE,
                    {"omega_m": params.omega_m, "omega_lambda": params.omega_lambda,
                     "omega": params.omega}, REAL_LINE)
    return gen, k


def nn_friedman_integrate(t_end, Omega, X: Arithmetic, steps=10_000, t_start=0.05):
    """RK4 on ``da/dr = sqrt(Omega/a)`` with ``r = f_X(t)``.

    Starts from the closed-form value at ``t_start`` and returns ``(t, a)``
    arrays with ``steps + 1`` samples uniform in ``r``.
    """
    if not t_end > t_start > 0:
        raise InvalidParam("need t_end > t_start > 0")
    if steps < 100:
        raise InvalidParam("need steps >= 100")
    r0 = float(X.to_real(t_start))
    r1 = float(X.to_real(t_end))
    a0 = nn_friedman_scale_factor(t_start, Omega, X)
    a = _kernels.rk4_sqrt(r0, a0, r1, int(steps), float(Omega))
    if not np.all(np.isfinite(a)) or np.any(a <= 0):
        raise StepFailure("integration produced a non-finite or nonpositive scale factor")
    r = np.linspace(r0, r1, int(steps) + 1)
    return np.asarray(X.from_real(r), dtype=float), a


def trajectory_table(params: CosmologyParams, X: Arithmetic, t_end=3.0, steps=10_000,
                     t_start=0.05, every=100):
    """Rows ``(t, a_closed, a_integrated, a_standard)``, one per ``every`` steps."""
    t, a_int = nn_friedman_integrate(t_end, params.omega, X, steps, t_start)
    idx = np.unique(np.r_[np.arange(0, t.size, every), t.size - 1])
    t, a_int = t[idx], a_int[idx]
    a_closed = np.asarray(nn_friedman_scale_factor(t, params.omega, X))
    a_std = np.asarray(friedman_scale_factor(t, params))
    return np.column_stack([t, a_closed, a_int, a_std])

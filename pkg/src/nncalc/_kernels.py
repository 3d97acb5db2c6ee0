"""Hot numeric loops.

Each kernel has two implementations with identical semantics:

* a scalar-loop version compiled with ``numba.njit`` when numba is importable
* a vectorized pure-numpy version

Set ``NNCALC_DISABLE_NUMBA=1`` to force the numpy path. The active choice is
exposed as :data:`BACKEND`. ``benchmarks/bench_kernels.py`` times both.
"""
import math
import os

import numpy as np

SPIN_BISECTION_ITERS = 64

_HALF_PI = 0.5 * math.pi


def _env_disabled():
    return os.environ.get("NNCALC_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


try:
    if _env_disabled():
        raise ImportError("numba disabled by NNCALC_DISABLE_NUMBA")
    from numba import njit
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"


# --- periodic sin^2 bijection -------------------------------------------------

def _spin_forward_loop(x, out):
    for i in range(x.size):
        n = math.floor(x[i])
        s = math.sin(_HALF_PI * (x[i] - n))
        out[i] = n + s * s
    return out


def _spin_inverse_loop(y, out, iters):
    for i in range(y.size):
        n = math.floor(y[i])
        target = y[i] - n
        lo = 0.0
        hi = 1.0
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            s = math.sin(_HALF_PI * mid)
            if s * s < target:
                lo = mid
            else:
                hi = mid
        out[i] = n + 0.5 * (lo + hi)
    return out


def _rk4_sqrt_loop(r0, a0, r1, steps, omega):
    # da/dr = sqrt(omega / a)
    h = (r1 - r0) / steps
    out = np.empty(steps + 1)
    a = a0
    out[0] = a
    for i in range(steps):
        k1 = math.sqrt(omega / a)
        k2 = math.sqrt(omega / (a + 0.5 * h * k1))
        k3 = math.sqrt(omega / (a + 0.5 * h * k2))
        k4 = math.sqrt(omega / (a + h * k3))
        a = a + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        out[i + 1] = a
    return out


def spin_forward_numpy(x):
    n = np.floor(x)
    s = np.sin(_HALF_PI * (x - n))
    return n + s * s


def spin_inverse_numpy(y, iters=SPIN_BISECTION_ITERS):
    n = np.floor(y)
    target = y - n
    lo = np.zeros_like(target)
    hi = np.ones_like(target)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = np.sin(_HALF_PI * mid) ** 2 < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return n + 0.5 * (lo + hi)


def rk4_sqrt_numpy(r0, a0, r1, steps, omega):
    # the recurrence is sequential; this is the interpreted reference
    return _rk4_sqrt_loop(r0, a0, r1, steps, omega)


if HAS_NUMBA:
    _spin_forward_jit = njit(cache=True)(_spin_forward_loop)
    _spin_inverse_jit = njit(cache=True)(_spin_inverse_loop)
    _rk4_sqrt_jit = njit(cache=True)(_rk4_sqrt_loop)

    def spin_forward_numba(x):
        flat = np.ascontiguousarray(x, dtype=np.float64).ravel()
        return _spin_forward_jit(flat, np.empty_like(flat)).reshape(np.shape(x))

    def spin_inverse_numba(y, iters=SPIN_BISECTION_ITERS):
        flat = np.ascontiguousarray(y, dtype=np.float64).ravel()
        return _spin_inverse_jit(flat, np.empty_like(flat), iters).reshape(np.shape(y))

    def rk4_sqrt_numba(r0, a0, r1, steps, omega):
        return _rk4_sqrt_jit(float(r0), float(a0), float(r1), int(steps), float(omega))

    spin_forward = spin_forward_numba
    spin_inverse = spin_inverse_numba
    rk4_sqrt = rk4_sqrt_numba
else:
    spin_forward = spin_forward_numpy
    spin_inverse = spin_inverse_numpy
    rk4_sqrt = rk4_sqrt_numpy

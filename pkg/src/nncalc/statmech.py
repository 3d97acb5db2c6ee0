"""Kolmogorov-Nagumo means, Renyi/Shannon entropies and non-Newtonian MaxEnt.

Entropies are in nats unless ``base`` is given.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .arithmetic import Arithmetic, Generator, arithmetic
from .errors import InvalidParam, NormalizationError, OutOfRange

PROB_TOL = 1e-12
SHANNON_SWITCH = 1e-6


def as_probability_vector(p, tol=PROB_TOL):
    """Validate entries in [0, 1] summing to one; return a float array."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidParam("probability vector must be a nonempty 1-D sequence")
    if np.any(~np.isfinite(p)) or np.any(p < 0) or np.any(p > 1):
        raise InvalidParam("probabilities must lie in [0, 1]")
    if abs(math.fsum(p) - 1.0) > tol:
        raise NormalizationError(f"probabilities sum to {math.fsum(p)!r}, not 1")
    return p


@dataclass(frozen=True)
class EnergySpectrum:
    E: np.ndarray
    arith: Arithmetic = field(default_factory=lambda: arithmetic("identity"))

    def __post_init__(self):
        E = np.asarray(self.E, dtype=float)
        if E.ndim != 1 or E.size == 0 or not np.all(np.isfinite(E)):
            raise InvalidParam("energies must be a nonempty finite 1-D sequence")
        object.__setattr__(self, "E", E)

    def conjugate(self):
        return np.asarray(self.arith.to_real(self.E), dtype=float)


@dataclass(frozen=True)
class MaxEntSolution:
    p: np.ndarray
    C: float
    beta: float
    alpha: float
    # f_X(p_k): ordinary Gibbs weights in conjugate coordinates
    weights: np.ndarray
    residual: float


def _kn_inputs(p, a):
    p = as_probability_vector(p)
    a = np.asarray(a, dtype=float)
    if a.shape != p.shape:
        raise InvalidParam("p and a must have the same length")
    return p, a


def kn_mean(f: Generator, p, a):
    """Kolmogorov-Nagumo average ``f^-1(sum_k p_k f(a_k))``."""
    p, a = _kn_inputs(p, a)
    X = Arithmetic(f)
    return float(X.from_real(math.fsum(p * X.to_real(a)), OutOfRange))


def kn_mean_as_nd_probability(f: Generator, p, a):
    """The same average written as ``(+)_k p'_k (*) a_k`` with ``p'_k = f^-1(p_k)``."""
    p, a = _kn_inputs(p, a)
    X = Arithmetic(f)
    p_nd = X.embed(p)
    terms = [X.odot(pk, ak) for pk, ak in zip(np.atleast_1d(p_nd), a)]
    return float(X.sum(terms))


def nd_probabilities(f: Generator, p):
    """``p'_k = f^-1(p_k)``."""
    return Arithmetic(f).embed(as_probability_vector(p))


def kn_translation_check(f: Generator, p, a, c, tol=1e-9) -> bool:
    """Whether ``<a + c>_f = <a>_f + c`` holds to ``tol``."""
    a = np.asarray(a, dtype=float)
    lhs = kn_mean(f, p, a + c)
    rhs = kn_mean(f, p, a) + c
    return bool(abs(lhs - rhs) < tol)


def _log(x, base):
    return math.log(x) if base is None else math.log(x, base)


def shannon_entropy(p, base=None):
    p = as_probability_vector(p)
    nz = p[p > 0]
    s = math.fsum(nz * np.log(1.0 / nz))
    return s if base is None else s / math.log(base)


def renyi_entropy(p, q, base=None):
    """``ln(sum_k p_k^q)/(1-q)``; within 1e-6 of ``q = 1`` this is Shannon's."""
    p = as_probability_vector(p)
    q = float(q)
    if abs(q - 1.0) < SHANNON_SWITCH:
        return shannon_entropy(p, base)
    if q <= 0 and np.any(p == 0):
        raise InvalidParam(f"q={q} <= 0 is undefined with zero-probability entries")
    nz = p[p > 0]
    s = math.log(math.fsum(nz ** q)) / (1.0 - q)
    return s if base is None else s / math.log(base)


def nn_shannon_entropy(X: Arithmetic, Z: Arithmetic, p, tol=1e-10):
    """``f_Z^-1(sum_k u_k ln(1/u_k))`` with ``u_k = f_X(p_k)``.

    The ``u_k`` must form an ordinary probability vector (non-Newtonian
    normalization ``(+)_k p_k = 1_X``).
    """
    u = np.asarray(X.to_real(np.asarray(p, dtype=float)), dtype=float)
    if np.any(u <= 0) or np.any(u > 1):
        raise NormalizationError("f_X(p_k) must lie in (0, 1]")
    if abs(math.fsum(u) - 1.0) > tol:
        raise NormalizationError(f"sum f_X(p_k) = {math.fsum(u)!r}, not 1")
    return Z.from_real(math.fsum(u * np.log(1.0 / u)), OutOfRange)


def free_energy_bracket(weights, energies, alpha, beta):
    """The real-valued bracket of the free energy in conjugate coordinates.

    ``sum u ln(1/u) + alpha sum u - beta sum u eps`` with ``u = f_X(p)`` and
    ``eps = f_E(E)``.
    """
    u = np.asarray(weights, dtype=float)
    eps = np.asarray(energies, dtype=float)
    return math.fsum(u * np.log(1.0 / u)) + alpha * math.fsum(u) - beta * math.fsum(u * eps)


def free_energy_gradient(weights, energies, alpha, beta):
    u = np.asarray(weights, dtype=float)
    return -np.log(u) - 1.0 + alpha - beta * np.asarray(energies, dtype=float)


def free_energy(X: Arithmetic, Z: Arithmetic, spectrum: EnergySpectrum, p, alpha, beta):
    """``F = S (+)_Z alpha_Z (*)_Z N (-)_Z beta_Z (*)_Z H`` as an element of Z."""
    u = np.asarray(X.to_real(np.asarray(p, dtype=float)), dtype=float)
    return Z.from_real(free_energy_bracket(u, spectrum.conjugate(), alpha, beta), OutOfRange)


def maxent_solve(X: Arithmetic, spectrum: EnergySpectrum, beta) -> MaxEntSolution:
    """Maximize the non-Newtonian entropy at fixed non-Newtonian energy.

    In conjugate coordinates the stationarity condition is the ordinary
    Gibbs problem, so ``f_X(p_k) = C exp(-beta f_E(E_k))`` with
    ``C = 1/sum_k exp(-beta f_E(E_k))`` and multiplier ``alpha = 1 + ln C``.
    """
    beta = float(beta)
    if not math.isfinite(beta):
        raise InvalidParam("beta must be finite")
    eps = spectrum.conjugate()
    x = -beta * eps
    shift = np.max(x)
    w = np.exp(x - shift)
    total = math.fsum(w)
    weights = w / total
    log_C = -(shift + math.log(total))
    alpha = 1.0 + log_C
    p = np.asarray(X.from_real(weights, OutOfRange), dtype=float)
    grad = free_energy_gradient(weights, eps, alpha, beta)
    residual = float(np.max(np.abs(grad)))
    return MaxEntSolution(p=p, C=math.exp(log_C), beta=beta, alpha=alpha,
                          weights=weights, residual=residual)

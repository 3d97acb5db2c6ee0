"""Generators and the non-Diophantine arithmetics they induce.

A :class:`Generator` is a strictly monotone bijection ``f`` from an interval
onto (part of) the real line, given together with its closed-form inverse.
Every generator induces a field structure on its domain by conjugation::

    x (+) y = f^-1(f(x) + f(y))        x (*) y = f^-1(f(x) * f(y))

and likewise for subtraction and division. :class:`Arithmetic` packages those
operations with the relocated neutral elements ``0_X = f^-1(0)`` and
``1_X = f^-1(1)``.

Mixed operations take operands from two arithmetics and land in a third::

    >>> X, Y = arithmetic("log"), arithmetic("neglog")
    >>> round(mixed_add(Y, X, X.embed(2), Y, Y.embed(2)), 6)
    -54.59815
"""
import json
import math
import operator
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import _kernels
from .errors import DivisionByZero, DomainViolation, InvalidParam, OutOfRange

# |kappa*x| and |1-q| below this use series / limiting forms
SERIES_CUTOFF = 1e-4

CATALOG_NAMES = ("identity", "log", "neglog", "kaniadakis", "renyi", "affine_escort", "spin")


@dataclass(frozen=True)
class Interval:
    lo: float = -math.inf
    hi: float = math.inf
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return bool(np.all(above & below))

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:g}, {self.hi:g}{right}"


REAL_LINE = Interval()
POSITIVE = Interval(0.0, math.inf)
NEGATIVE = Interval(-math.inf, 0.0)


@dataclass(frozen=True, eq=False)
class Generator:
    """A named bijection ``f`` with inverse, used to induce an arithmetic.

    ``image`` is ``f(domain)``; when omitted it is computed from the domain
    endpoints, which is valid for any continuous strictly monotone ``f`` that
    accepts infinite arguments.
    """

    label: str
    forward: Callable
    inverse: Callable
    domain: Interval = REAL_LINE
    params: Mapping[str, float] = field(default_factory=dict)
    image: Interval = None
    name: str = None

    def __post_init__(self):
        if self.image is None:
            with np.errstate(all="ignore"):
                a = float(self.forward(self.domain.lo))
                b = float(self.forward(self.domain.hi))
            if a <= b:
                img = Interval(a, b, self.domain.lo_closed, self.domain.hi_closed)
            else:
                img = Interval(b, a, self.domain.hi_closed, self.domain.lo_closed)
            object.__setattr__(self, "image", img)

    def __call__(self, x):
        return self.forward(x)

    def __repr__(self):
        ps = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"Generator({self.label}{', ' if ps else ''}{ps})"

    def sample_grid(self, n=1000, window=20.0):
        """``n`` points strictly inside the domain, clipped to a finite window."""
        lo, hi = self.domain.lo, self.domain.hi
        t = np.linspace(0.0, 1.0, n + 2)[1:-1]
        if math.isfinite(lo) and math.isfinite(hi):
            return lo + (hi - lo) * t
        if math.isfinite(lo):
            return lo + np.logspace(-8, math.log10(window) + 6, n)
        if math.isfinite(hi):
            return hi - np.logspace(-8, math.log10(window) + 6, n)[::-1]
        return np.linspace(-window, window, n)

    def check(self, n=1000, window=20.0):
        """Verify round-trip and strict monotonicity on a grid; return max error."""
        x = self.sample_grid(n, window)
        fx = np.asarray(self.forward(x), dtype=float)
        back = np.asarray(self.inverse(fx), dtype=float)
        err = np.abs(back - x) / (1.0 + np.abs(x))
        worst = float(np.max(err))
        if not worst <= 1e-10:
            raise InvalidParam(f"{self!r}: round-trip error {worst:.3g} exceeds 1e-10")
        d = np.diff(fx)
        if not (np.all(d > 0) or np.all(d < 0)):
            raise InvalidParam(f"{self!r}: not strictly monotone on the sample grid")
        return worst

    def to_config(self) -> dict:
        if self.name is None:
            raise InvalidParam(f"{self!r} is not a catalog generator")
        return {"name": self.name, "params": dict(self.params)}


# --- catalog ------------------------------------------------------------------

def identity_generator():
    return Generator("identity", _identity, _identity, REAL_LINE, {}, REAL_LINE, "identity")


def _identity(x):
    return np.asarray(x, dtype=float) * 1.0


def log_generator():
    """``f = ln`` on the positive half-line."""
    return Generator("log", np.log, np.exp, POSITIVE, {}, REAL_LINE, "log")


def neglog_generator():
    """``f(x) = ln(-x)`` on the negative half-line, ``f^-1(r) = -e^r``."""
    return Generator("neglog", lambda x: np.log(-np.asarray(x, dtype=float)),
                     lambda r: -np.exp(r), NEGATIVE, {}, REAL_LINE, "neglog")


def kappa_forward(x, kappa):
    """``arcsinh(kappa x) / kappa`` with a series branch for small ``kappa x``."""
    x = np.asarray(x, dtype=float)
    if kappa == 0:
        return x * 1.0
    u = kappa * x
    k2x2 = u * u
    with np.errstate(all="ignore"):
        direct = np.arcsinh(u) / kappa
    series = x * (1.0 - k2x2 / 6.0 + 3.0 * k2x2 * k2x2 / 40.0)
    return np.where(np.abs(u) < SERIES_CUTOFF, series, direct)


def kappa_inverse(r, kappa):
    """``sinh(kappa r) / kappa``; overflows to inf for huge ``kappa r``."""
    r = np.asarray(r, dtype=float)
    if kappa == 0:
        return r * 1.0
    u = kappa * r
    k2r2 = u * u
    with np.errstate(all="ignore"):
        direct = np.sinh(u) / kappa
    series = r * (1.0 + k2r2 / 6.0 + k2r2 * k2r2 / 120.0)
    return np.where(np.abs(u) < SERIES_CUTOFF, series, direct)


def kaniadakis_generator(kappa):
    kappa = float(kappa)
    if not math.isfinite(kappa):
        raise InvalidParam("kappa must be finite")
    # f_kappa is even in kappa, so the sign carries no information
    k = abs(kappa)
    return Generator(f"kaniadakis(kappa={kappa:g})",
                     lambda x: kappa_forward(x, k), lambda r: kappa_inverse(r, k),
                     REAL_LINE, {"kappa": kappa}, REAL_LINE, "kaniadakis")


def renyi_generator(q):
    """``f_q(x) = exp((1-q) x)``, inverse ``ln(y) / (1-q)``.

    For ``|1 - q| < SERIES_CUTOFF`` the affinely equivalent form
    ``(f_q - 1)/(1 - q) = expm1((1-q) x)/(1-q)`` is used instead; it has the
    same Kolmogorov-Nagumo means, no cancellation, and tends to the identity,
    which is what ``q == 1`` returns.
    """
    q = float(q)
    if not math.isfinite(q):
        raise InvalidParam("q must be finite")
    if q == 1.0:
        return Generator("renyi(q=1)", _identity, _identity, REAL_LINE, {"q": q},
                         REAL_LINE, "renyi")
    c = 1.0 - q
    if abs(c) < SERIES_CUTOFF:
        def forward(x):
            return np.expm1(c * np.asarray(x, dtype=float)) / c

        def inverse(y):
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.log1p(c * np.asarray(y, dtype=float)) / c

        image = Interval(-1.0 / c, math.inf) if c > 0 else Interval(-math.inf, -1.0 / c)
        return Generator(f"renyi(q={q:g}, normalized)", forward, inverse, REAL_LINE,
                         {"q": q}, image, "renyi")

    def forward(x):
        return np.exp(c * np.asarray(x, dtype=float))

    def inverse(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log(y) / c

    return Generator(f"renyi(q={q:g})", forward, inverse, REAL_LINE, {"q": q},
                     POSITIVE, "renyi")


def affine_escort_generator(a, n):
    """Affine generator whose inverse is ``g(p) = (1 - a + 2 a p)/(n + (2 - n) a)``."""
    a = float(a)
    if not -1.0 <= a <= 1.0:
        raise InvalidParam(f"a={a} outside [-1, 1]")
    if int(n) != n or n < 3:
        raise InvalidParam(f"n={n} must be an integer >= 3")
    if a == 0.0:
        raise InvalidParam("a=0 gives the constant map 1/n, which is not a bijection")
    n = int(n)
    denom = n + (2 - n) * a

    def inverse(p):
        return (1.0 - a + 2.0 * a * np.asarray(p, dtype=float)) / denom

    def forward(y):
        return (np.asarray(y, dtype=float) * denom - 1.0 + a) / (2.0 * a)

    return Generator(f"affine_escort(a={a:g}, n={n})", forward, inverse, REAL_LINE,
                     {"a": a, "n": n}, REAL_LINE, "affine_escort")


def spin_generator():
    """``f = g^-1`` for the periodic bijection ``g(x) = n + sin^2(pi (x-n)/2)``.

    ``g`` is closed-form; ``f`` is evaluated by bisection inside the unit cell.
    """
    return Generator("spin", _spin_f, _spin_g, REAL_LINE, {}, REAL_LINE, "spin")


def _spin_g(x):
    x = np.asarray(x, dtype=float)
    return _kernels.spin_forward(x) if x.ndim else _kernels.spin_forward(x.reshape(1))[0]


def _spin_f(y):
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y)):
        raise DomainViolation("spin bijection inverse needs finite input")
    return _kernels.spin_inverse(y) if y.ndim else _kernels.spin_inverse(y.reshape(1))[0]


_BUILDERS = {
    "identity": identity_generator,
    "log": log_generator,
    "neglog": neglog_generator,
    "kaniadakis": kaniadakis_generator,
    "renyi": renyi_generator,
    "affine_escort": affine_escort_generator,
    "spin": spin_generator,
}


def make_generator(name, **params) -> Generator:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise InvalidParam(f"unknown generator {name!r}; expected one of {CATALOG_NAMES}") from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise InvalidParam(f"bad parameters for {name!r}: {exc}") from None


def from_config(config) -> Generator:
    """Build a generator from ``{"name": ..., "params": {...}}`` (dict or JSON text)."""
    if isinstance(config, (str, bytes)):
        config = json.loads(config)
    if not isinstance(config, Mapping) or "name" not in config:
        raise InvalidParam("generator config must be an object with a 'name' key")
    return make_generator(config["name"], **dict(config.get("params") or {}))


def to_config_json(gen: Generator) -> str:
    return json.dumps(gen.to_config(), sort_keys=True)


def affine_transform(gen: Generator, scale, shift=0.0) -> Generator:
    """The generator ``scale * f + shift``; leaves Kolmogorov-Nagumo means unchanged."""
    if scale == 0:
        raise InvalidParam("scale must be nonzero")
    return Generator(f"{scale:g}*{gen.label}+{shift:g}",
                     lambda x: scale * np.asarray(gen.forward(x)) + shift,
                     lambda y: gen.inverse((np.asarray(y, dtype=float) - shift) / scale),
                     gen.domain, dict(gen.params))


# --- arithmetic ---------------------------------------------------------------

@dataclass(frozen=True)
class Arithmetic:
    generator: Generator

    @property
    def f(self):
        return self.generator.forward

    @property
    def finv(self):
        return self.generator.inverse

    @property
    def domain(self) -> Interval:
        return self.generator.domain

    @property
    def zero(self):
        return self.embed(0.0)

    @property
    def one(self):
        return self.embed(1.0)

    def __repr__(self):
        return f"Arithmetic({self.generator.label})"

    def to_real(self, x):
        """``f(x)`` after checking ``x`` lies in the domain."""
        if not self.domain.contains(x):
            raise DomainViolation(f"{x!r} is outside the domain {self.domain} of {self.generator.label}")
        return self.f(x)

    def from_real(self, r, exc=DomainViolation):
        """``f^-1(r)`` after checking ``r`` has a preimage."""
        if not self.generator.image.contains(r):
            raise exc(f"{r!r} has no preimage under {self.generator.label} "
                      f"(image {self.generator.image})")
        return self.finv(r)

    def embed(self, r):
        """``r_X = f^-1(r)``."""
        return self.from_real(r, OutOfRange)

    def oplus(self, x, y):
        return self.from_real(self.to_real(x) + self.to_real(y))

    def ominus(self, x, y):
        return self.from_real(self.to_real(x) - self.to_real(y))

    def odot(self, x, y):
        return self.from_real(self.to_real(x) * self.to_real(y))

    def oslash(self, x, y):
        fy = self.to_real(y)
        if np.any(np.asarray(fy) == 0):
            raise DivisionByZero(f"f({y!r}) = 0 in {self.generator.label}")
        return self.from_real(self.to_real(x) / fy)

    def neg(self, x):
        """``(-)x = 0_X (-) x = f^-1(-f(x))``."""
        return self.from_real(-self.to_real(x), OutOfRange)

    def sum(self, values):
        """n-ary ``(+)``: ``f^-1(sum f(x_k))``."""
        return self.from_real(np.sum(self.to_real(np.asarray(values, dtype=float))))


def arithmetic(name="identity", **params) -> Arithmetic:
    return Arithmetic(make_generator(name, **params))


def embed(arith: Arithmetic, r):
    return arith.embed(r)


def oplus(arith: Arithmetic, x, y):
    return arith.oplus(x, y)


def ominus(arith: Arithmetic, x, y):
    return arith.ominus(x, y)


def odot(arith: Arithmetic, x, y):
    return arith.odot(x, y)


def oslash(arith: Arithmetic, x, y):
    return arith.oslash(x, y)


def neg(arith: Arithmetic, x):
    return arith.neg(x)


def _mixed(op, target, a1, x, a2, y):
    fx = a1.to_real(x)
    fy = a2.to_real(y)
    if op is operator.truediv and np.any(np.asarray(fy) == 0):
        raise DivisionByZero(f"f({y!r}) = 0 in {a2.generator.label}")
    return target.from_real(op(fx, fy), OutOfRange)


def mixed_add(target: Arithmetic, a1: Arithmetic, x, a2: Arithmetic, y):
    """``f_T^-1(f_1(x) + f_2(y))``; with ``target = a1`` this is the two-arithmetic form."""
    return _mixed(operator.add, target, a1, x, a2, y)


def mixed_sub(target, a1, x, a2, y):
    return _mixed(operator.sub, target, a1, x, a2, y)


def mixed_mul(target, a1, x, a2, y):
    return _mixed(operator.mul, target, a1, x, a2, y)


def mixed_div(target, a1, x, a2, y):
    return _mixed(operator.truediv, target, a1, x, a2, y)

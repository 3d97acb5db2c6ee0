"""Quick invariant checks run by ``nncalc selfcheck``.

Each check returns True on success; an exception counts as a failure.
"""
import math

import numpy as np

from . import cosmo, escort, kappa, statmech
from .arithmetic import Arithmetic, arithmetic, make_generator, mixed_add
from .calculus import NNFunction, nn_derivative, nn_integral

CATALOG = [("identity", {}), ("log", {}), ("neglog", {}), ("kaniadakis", {"kappa": 1.0}),
           ("renyi", {"q": 2.0}), ("affine_escort", {"a": 0.5, "n": 4}), ("spin", {})]


def _close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def check_generators(rng):
    return all(make_generator(n, **p).check() <= 1e-10 for n, p in CATALOG)


def check_field_axioms(rng):
    for name, params in CATALOG:
        if name == "renyi":
            continue
        X = arithmetic(name, **params)
        for _ in range(20):
            x, y, z = (X.embed(r) for r in rng.uniform(-2, 2, 3))
            if not (_close(X.f(X.oplus(x, y)), X.f(x) + X.f(y), 1e-9)
                    and _close(X.f(X.odot(x, X.oplus(y, z))),
                               X.f(X.oplus(X.odot(x, y), X.odot(x, z))), 1e-9)):
                return False
    return True


def check_mixed_sums(rng):
    X, Y = arithmetic("log"), arithmetic("neglog")
    e2, e4 = math.exp(2), math.exp(4)
    got = [mixed_add(X, X, e2, X, e2), mixed_add(X, X, e2, Y, -e2),
           mixed_add(Y, X, e2, Y, -e2), mixed_add(Y, Y, -e2, Y, -e2)]
    return all(_close(g, w, 1e-12) for g, w in zip(got, [e4, e4, -e4, -e4]))


def check_exponential_derivative(rng):
    F = NNFunction(arithmetic("log"), arithmetic("identity"), lambda x: x)
    return all(_close(nn_derivative(F, x), x, 1e-6) for x in rng.uniform(0.1, 10, 20))


def check_fundamental_theorem(rng):
    X, Y = arithmetic("kaniadakis", kappa=0.5), arithmetic("log")
    A = NNFunction.from_conjugate(X, Y, lambda r: math.cos(r) + r)
    lo = X.embed(-0.5)
    G = NNFunction(X, Y, lambda x: nn_integral(A, lo, x))
    return all(_close(Y.f(nn_derivative(G, X.embed(r))), Y.f(A(X.embed(r))), 1e-6)
               for r in rng.uniform(-1, 1, 5))


def check_kappa_inconsistency(rng):
    dual = kappa.kappa_dual_derivative(lambda y: kappa.kappa_ln(y, 1.0), 0.5, 1.0)
    nn = kappa.kappa_nn_ln_derivative(0.5, 1.0)
    return abs(dual - 2.0) < 1e-6 and abs(nn - math.sinh(2.0)) < 1e-12 and nn - dual > 1.6


def check_fig1_tails(rng):
    t = kappa.fig1_table(1e-2, 1e4, 200, 1.0)
    tail = t[t[:, 0] >= 100]
    ratio = np.log(tail[:, 1]) / np.log(tail[:, 2])
    return bool(np.all(np.abs(ratio - 1) <= 0.01))


def check_renyi_uniform(rng):
    return all(_close(statmech.renyi_entropy(np.full(n, 1 / n), q), math.log(n), 1e-10)
               for n in (2, 5, 17) for q in (0.5, 2.0, 5.0))


def check_maxent(rng):
    sol = statmech.maxent_solve(arithmetic("log"), statmech.EnergySpectrum([0.0, 1.0]), 1.0)
    g = np.exp([0.0, -1.0]) / (1 + math.exp(-1))
    return bool(np.allclose(sol.weights, g, rtol=0, atol=1e-12) and sol.residual < 1e-8)


def check_escort_normalization(rng):
    fam = escort.EscortFamily.spin()
    p = rng.uniform(0, 1, 1000)
    ok = np.max(np.abs(fam.g(p) + fam.g(1 - p) - 1)) <= 1e-12
    for n in (3, 6, 12):
        q = rng.dirichlet(np.ones(n))
        ok &= abs(math.fsum(escort.escort_affine(-0.5, n, q)) - 1) <= 1e-12
    return bool(ok)


def check_hidden_variable(rng):
    for _ in range(5):
        beta = rng.uniform(-2, 2)
        alpha = beta + rng.uniform(0, math.pi)
        if abs(escort.hidden_variable_integral(alpha, beta)
               - math.cos((alpha - beta) / 2) ** 2) > 1e-8:
            return False
    return True


def check_cosmology(rng):
    params = cosmo.CosmologyParams()
    gen, k = cosmo.matched_generator(params)
    X = Arithmetic(gen)
    t = np.linspace(0.05, 3, 50)
    a_std = cosmo.friedman_scale_factor(t, params)
    a_nn = cosmo.nn_friedman_scale_factor(t, params.omega, X)
    ts, a_int = cosmo.nn_friedman_integrate(3.0, params.omega, X, steps=10_000)
    end = cosmo.nn_friedman_scale_factor(ts[-1], params.omega, X)
    return (round(k, 4) == 1.2550 and bool(np.all(np.abs(a_nn - a_std) <= 1e-10 * a_std))
            and abs(a_int[-1] - end) / end < 1e-6)


CHECKS = [(name[len("check_"):], fn) for name, fn in sorted(globals().items())
          if name.startswith("check_") and callable(fn)]


def run_checks(rng=None):
    """Run every check; return ``[(name, passed)]`` in a fixed order."""
    rng = np.random.default_rng(0) if rng is None else rng
    results = []
    for name, fn in CHECKS:
        try:
            ok = bool(fn(rng))
        except Exception:
            ok = False
        results.append((name, ok))
    return results

"""Exit criteria, each at its stated tolerance. One PASS/FAIL line per check."""
import math
import time

import numpy as np
import pytest

from nncalc import cosmo, escort, kappa, statmech
from nncalc.arithmetic import Arithmetic, Generator, arithmetic, make_generator, mixed_add, oplus
from nncalc.calculus import (
    NNFunction,
    generator_function,
    inverse_generator_function,
    nn_derivative,
    nn_integral,
)

LOG = arithmetic("log")
NEGLOG = arithmetic("neglog")
I = arithmetic("identity")


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def five_point(func, x, h=1e-3):
    return (-func(x + 2 * h) + 8 * func(x + h) - 8 * func(x - h) + func(x - 2 * h)) / (12 * h)


def test_c01_mixed_sums(acceptance):
    start = time.perf_counter()
    e2, e4 = math.exp(2), math.exp(4)
    got = [oplus(LOG, e2, e2),
           mixed_add(LOG, LOG, e2, NEGLOG, -e2),
           mixed_add(NEGLOG, LOG, e2, NEGLOG, -e2),
           oplus(NEGLOG, -e2, -e2)]
    elapsed = time.perf_counter() - start
    err = max(rel_err(g, w) for g, w in zip(got, [e4, e4, -e4, -e4]))
    ok = err <= 1e-12 and elapsed < 1.0
    acceptance(1, "2+2 in ln / ln(-x) arithmetics", ok, f"max rel err {err:.2e}, {elapsed:.3f}s")
    assert ok


def test_c02_identity_map_is_exponential(acceptance):
    F = NNFunction(LOG, I, lambda x: x)
    xs = np.linspace(0.1, 10, 100)
    d_err = max(rel_err(nn_derivative(F, x), x) for x in xs)
    rng = np.random.default_rng(2)
    pairs = rng.uniform(0.1, 10, (100, 2))
    h_err = max(rel_err(F(LOG.oplus(a, b)), F(a) * F(b)) for a, b in pairs)
    ok = d_err <= 1e-6 and h_err <= 1e-10
    acceptance(2, "D A = A and A(x+y) = A(x)A(y)", ok,
               f"derivative rel err {d_err:.2e}, homomorphism rel err {h_err:.2e}")
    assert ok


KAPPA_CASES = {
    "exp": (lambda t: math.exp(0.5 * t), lambda t: 0.5 * math.exp(0.5 * t)),
    "cubic": (lambda t: t ** 3 + t, lambda t: 3 * t * t + 1),
    "atan": (math.atan, lambda t: 1 / (1 + t * t)),
}


def test_c03_kappa_derivative(acceptance):
    worst = 0.0
    for A, dA in KAPPA_CASES.values():
        for kap in (0.5, 1.0, 2.0):
            for x in np.linspace(-5, 5, 41):
                oracle = five_point(A, x) * math.sqrt(1 + (kap * x) ** 2)
                assert rel_err(five_point(A, x), dA(x)) < 1e-9  # oracle sanity
                worst = max(worst, rel_err(kappa.kappa_derivative(A, x, kap), oracle))
    ok = worst <= 1e-6
    acceptance(3, "kappa derivative = A' sqrt(1+k^2x^2)", ok, f"max rel err {worst:.2e}")
    assert ok


def test_c04_inconsistency_witness(acceptance):
    dual = kappa.kappa_dual_derivative(lambda y: kappa.kappa_ln(y, 1.0), 0.5, 1.0)
    nn = kappa.kappa_nn_ln_derivative(0.5, 1.0)
    ok = abs(dual - 2.0) <= 1e-6 and abs(nn - math.sinh(2.0)) <= 1e-12 and nn - dual > 1.6
    acceptance(4, "dual vs non-Newtonian Ln derivative", ok,
               f"dual {dual:.9f}, nn {nn:.6f}, gap {nn - dual:.4f}")
    assert ok


def test_c05_fig1_tails(acceptance):
    t = kappa.fig1_table(1e-2, 1e4, 200, 1.0)
    ratio = np.log(t[:, 1]) / np.log(t[:, 2])
    tail = ratio[t[:, 0] >= 100]
    head = ratio[t[:, 0] <= 1]
    tail_ok = bool(np.all((tail >= 0.99) & (tail <= 1.01)))
    head_ok = bool(np.any(np.abs(head - 1) > 0.05))
    ok = tail_ok and head_ok and tail.size > 0
    acceptance(5, "exp_k tails identical, heads distinct", ok,
               f"tail ratio in [{tail.min():.5f}, {tail.max():.5f}] over {tail.size} pts, "
               f"max head deviation {np.max(np.abs(head - 1)):.3f}")
    assert ok


def test_c06_renyi_suite(acceptance):
    uni_err = max(abs(statmech.renyi_entropy(np.full(n, 1 / n), q) - math.log(n))
                  for n in range(2, 21) for q in (0.5, 2.0, 5.0))
    uni_ok = acceptance("6a", "uniform S_q = ln n", uni_err <= 1e-10, f"max err {uni_err:.2e}")

    rng = np.random.default_rng(6)
    gaps = []
    for _ in range(100):
        p = rng.dirichlet(np.ones(5))
        s1 = statmech.shannon_entropy(p)
        gaps += [abs(statmech.renyi_entropy(p, q) - s1) for q in (1 - 1e-4, 1 + 1e-4)]
    gaps = np.array(gaps)
    near_ok = acceptance("6b", "|S_q - Shannon| < 1e-6 at q = 1 +- 1e-4", bool(gaps.max() < 1e-6),
                         f"max gap {gaps.max():.2e}, {np.sum(gaps < 1e-6)}/{gaps.size} below 1e-6")

    trans = True
    for q in (0.5, 2.0, 3.0):
        f = make_generator("renyi", q=q)
        for _ in range(20):
            p = rng.dirichlet(np.ones(4))
            trans &= statmech.kn_translation_check(f, p, rng.uniform(-2, 2, 4), rng.uniform(-2, 2))
    cube = Generator("cube", lambda x: np.asarray(x, dtype=float) ** 3, np.cbrt)
    cube_fails = not statmech.kn_translation_check(cube, [0.5, 0.5], [0.0, 1.0], 1.0)
    trans_ok = acceptance("6c", "KN translation: exponential holds, cube fails",
                          bool(trans) and cube_fails, f"exponential {bool(trans)}, cube violates {cube_fails}")
    assert uni_ok and near_ok and trans_ok


ODD_H = [lambda x: x, escort.sine_odd_part, lambda x: 4 * np.asarray(x) ** 3,
         lambda x: 0.5 * np.tanh(np.asarray(x)) / math.tanh(0.5), lambda x: 0 * np.asarray(x)]


def test_c07_odd_part_escort(acceptance):
    p = np.random.default_rng(7).uniform(0, 1, 10_000)
    worst = max(np.max(np.abs(escort.EscortFamily.odd(h).g(p)
                              + escort.EscortFamily.odd(h).g(1 - p) - 1)) for h in ODD_H)
    bad = escort.EscortFamily.odd(lambda x: np.asarray(x) ** 2, validate=False)
    bad_err = np.max(np.abs(bad.g(p) + bad.g(1 - p) - 1))
    ok = worst <= 1e-12 and bad_err > 1e-12
    acceptance(7, "odd-h escort normalization", ok,
               f"max err {worst:.2e} over 5 families, non-odd counterexample err {bad_err:.3f}")
    assert ok


def test_c08_affine_escort(acceptance):
    rng = np.random.default_rng(8)
    worst, end_err, neg = 0.0, 0.0, False
    for n in range(3, 13):
        for a in (-1.0, -0.5, 0.0, 0.5, 1.0):
            for _ in range(100):
                worst = max(worst, abs(math.fsum(escort.escort_affine(a, n, rng.dirichlet(np.ones(n)))) - 1))
            d = n + (2 - n) * a
            end_err = max(end_err, abs(escort.escort_affine(a, n, 0.0) - (1 - a) / d),
                          abs(escort.escort_affine(a, n, 1.0) - (1 + a) / d))
        grid_a = np.linspace(-1, 1, 201)
        neg |= any(np.any(escort.escort_affine(a, n, np.linspace(0, 1, 101)) < 0) for a in grid_a)
    ok = worst <= 1e-12 and end_err <= 1e-15 and not neg
    acceptance(8, "affine escort normalization", ok,
               f"max sum err {worst:.2e}, endpoint err {end_err:.1e}, negative values {neg}")
    assert ok


def test_c09_hidden_variable(acceptance):
    rng = np.random.default_rng(9)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        beta = rng.uniform(-math.pi, math.pi)
        alpha = beta + rng.uniform(0, math.pi)
        worst = max(worst, abs(escort.hidden_variable_integral(alpha, beta)
                               - math.cos((alpha - beta) / 2) ** 2))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed < 5.0
    acceptance(9, "hidden-variable integral = cos^2", ok, f"max err {worst:.2e}, {elapsed:.2f}s")
    assert ok


def test_c10_cosmology(acceptance):
    params = cosmo.CosmologyParams(0.3, 0.7)
    gen, k = cosmo.matched_generator(params)
    X = Arithmetic(gen)
    kappa_ok = "%.4f" % k == "1.2550"

    c, kk = math.sqrt(0.3 / 0.7), 1.5 * math.sqrt(0.7)
    res = 0.0
    for t in np.linspace(0.1, 3, 300):
        dadt = (2 / 3) * (c * math.sinh(kk * t)) ** (-1 / 3) * c * kk * math.cosh(kk * t)
        res = max(res, abs(dadt - cosmo.friedman_rhs(cosmo.friedman_scale_factor(t, params), params)))

    ts = np.linspace(0.05, 3, 300)
    a_std = cosmo.friedman_scale_factor(ts, params)
    eq = float(np.max(np.abs(cosmo.nn_friedman_scale_factor(ts, params.omega, X) - a_std) / a_std))

    t_int, a_int = cosmo.nn_friedman_integrate(3.0, params.omega, X, steps=10_000)
    closed = cosmo.nn_friedman_scale_factor(t_int, params.omega, X)
    rk = float(np.max(np.abs(a_int - closed) / closed))

    ok = kappa_ok and res < 1e-8 and eq <= 1e-10 and rk < 1e-6
    acceptance(10, "Friedman closed forms, matching, RK4", ok,
               f"kappa {k:.4f}, residual {res:.2e}, equivalence {eq:.2e}, RK4 rel err {rk:.2e}")
    assert ok


def test_c11_maxent(acceptance):
    spectrum = statmech.EnergySpectrum([0.0, 1.0])
    plain = statmech.maxent_solve(I, spectrum, 1.0)
    logx = statmech.maxent_solve(LOG, spectrum, 1.0)
    gibbs = np.array([1.0, math.exp(-1.0)]) / (1 + math.exp(-1.0))
    e1 = float(np.max(np.abs(plain.p - [0.731059, 0.268941])))
    e2 = float(np.max(np.abs(np.log(logx.p) - gibbs)))
    res = max(plain.residual, logx.residual)
    ok = e1 <= 1e-6 and e2 <= 1e-6 and res < 1e-8
    acceptance(11, "MaxEnt Gibbs weights", ok,
               f"identity err {e1:.1e}, ln-conjugate err {e2:.1e}, stationarity {res:.1e}")
    assert ok


ARITHS = [I, LOG, arithmetic("kaniadakis", kappa=1.0), arithmetic("kaniadakis", kappa=0.5),
          arithmetic("affine_escort", a=0.5, n=4), arithmetic("spin")]


def _close(a, b, tol=1e-6):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _cases(seed):
    rng = np.random.default_rng(seed)
    for _ in range(50):
        X, Y = (ARITHS[i] for i in rng.integers(0, len(ARITHS), 2))
        yield X, Y, rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4), rng.uniform(-1.5, 1.5, 2)


def _poly(c):
    return lambda r: c[0] + r * (c[1] + r * (c[2] + r * c[3]))


def test_c12_calculus_properties(acceptance):
    counts = dict(leibniz=0, additivity=0, trivial=0, ftc_d_of_int=0, ftc_int_of_d=0)
    for X, Y, ca, cb, (r, r0) in _cases(12):
        A = NNFunction.from_conjugate(X, Y, _poly(ca))
        B = NNFunction.from_conjugate(X, Y, _poly(cb))
        x, lo = X.embed(r), X.embed(r0)
        dA, dB = nn_derivative(A, x), nn_derivative(B, x)
        counts["additivity"] += _close(Y.f(nn_derivative(A.oplus(B), x)), Y.f(Y.oplus(dA, dB)))
        rhs = Y.oplus(Y.odot(dA, B(x)), Y.odot(A(x), dB))
        counts["leibniz"] += _close(Y.f(nn_derivative(A.odot(B), x)), Y.f(rhs))
        counts["trivial"] += (_close(nn_derivative(generator_function(X), x), 1.0)
                              and _close(nn_derivative(inverse_generator_function(X), r), X.one))
        G = NNFunction(X, Y, lambda s: nn_integral(A, lo, s))
        counts["ftc_d_of_int"] += _close(Y.f(nn_derivative(G, x)), Y.f(A(x)))
        P = NNFunction.from_conjugate(X, Y, lambda s, c=ca: 2.0 + math.tanh(c[0] + c[1] * s + c[2] * s * s))
        dP = NNFunction(X, Y, lambda s: nn_derivative(P, s))
        counts["ftc_int_of_d"] += _close(Y.f(nn_integral(dP, lo, x, tol=1e-9)), Y.f(Y.ominus(P(x), P(lo))))
    ok = all(v == 50 for v in counts.values())
    acceptance(12, "calculus laws on 50 random cases each", ok,
               ", ".join(f"{k} {v}/50" for k, v in counts.items()))
    assert ok

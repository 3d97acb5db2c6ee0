"""Command-line table emitters.

Every subcommand writes one table (CSV with 15 significant digits and LF line
endings, or JSON) to stdout or ``--out``. Exit codes: 0 success, 1 usage
error, 2 numeric or domain failure.
"""
import argparse
import ast
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import cosmo, escort, kappa, statmech
from .arithmetic import (Arithmetic, from_config, make_generator, mixed_add, mixed_div,
                         mixed_mul, mixed_sub)
from .calculus import NNFunction, nn_derivative, nn_exp, nn_integral, nn_ln
from .errors import NNCalcError

SUBCOMMANDS = ("arith", "derive", "integrate", "explog", "fig1", "entropy", "knmean",
               "maxent", "escort", "bell", "cosmo", "selfcheck")
FLOAT_FMT = "%.15g"
SEED_ENV = "NNCALC_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


# --- run configuration ----------------------------------------------------------

@dataclass
class RunConfig:
    """Everything that determines a run's output."""

    subcommand: str
    options: dict = field(default_factory=dict)
    format: str = "csv"
    out: str = None
    seed: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else dict(text)
        if data.get("subcommand") not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand in config: {data.get('subcommand')!r}")
        unknown = set(data) - {"subcommand", "options", "format", "out", "seed"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


_COMMON = {"format", "out", "seed", "config", "dump_config", "subcommand"}


def _to_run_config(ns) -> RunConfig:
    opts = {k: v for k, v in sorted(vars(ns).items()) if k not in _COMMON}
    return RunConfig(ns.subcommand, opts, ns.format, ns.out, ns.seed)


# --- parsing helpers ------------------------------------------------------------------

def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _param(text):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return [key, float(value)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {key} needs a number, got {value!r}")


def _arith(name, params, config):
    if config:
        text = open(config).read() if os.path.exists(config) else config
        return Arithmetic(from_config(text))
    kw = {k: (int(v) if k == "n" else v) for k, v in (params or [])}
    return Arithmetic(make_generator(name, **kw))


_EXPR_FUNCS = {name: getattr(np, name) for name in
               ("sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh", "tanh",
                "arcsinh", "arctan", "abs")}
_EXPR_CONSTS = {"pi": math.pi, "e": math.e}
_EXPR_NODES = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Load,
               ast.Constant, ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd)


def parse_expr(text, var="x"):
    """Compile a one-variable arithmetic expression; only numbers, ``var``,
    ``pi``, ``e`` and a few numpy functions are allowed."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"bad expression {text!r}: {exc.msg}")
    allowed = {var, *_EXPR_FUNCS, *_EXPR_CONSTS}
    for node in ast.walk(tree):
        if not isinstance(node, _EXPR_NODES):
            raise UsageError(f"expression element {type(node).__name__} not allowed")
        if isinstance(node, ast.Name) and node.id not in allowed:
            raise UsageError(f"unknown name {node.id!r} in expression")
        if isinstance(node, ast.Constant) and not isinstance(node.value, (int, float)):
            raise UsageError("only numeric constants are allowed")
        if isinstance(node, ast.Call) and (not isinstance(node.func, ast.Name)
                                           or node.func.id not in _EXPR_FUNCS or node.keywords):
            raise UsageError("only calls to the listed functions are allowed")
    code = compile(tree, "<expr>", "eval")
    env = {"__builtins__": {}, **_EXPR_FUNCS, **_EXPR_CONSTS}
    return lambda x: float(eval(code, env, {var: x}))


def _grid(ns):
    if ns.at:
        return ns.at
    return list(np.linspace(ns.xmin, ns.xmax, ns.points))


# --- output ------------------------------------------------------------------------

def _fmt(v):
    if isinstance(v, np.ndarray) and v.ndim == 0:
        v = v.item()
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return FLOAT_FMT % v
    return str(v)


def _jsonable(v):
    if isinstance(v, np.ndarray) and v.ndim == 0:
        v = v.item()
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return v


def render(header, rows, fmt, meta=None):
    if fmt == "json":
        doc = {"columns": list(header), "rows": [[_jsonable(v) for v in r] for r in rows]}
        if meta:
            doc["meta"] = {k: _jsonable(v) for k, v in meta.items()}
        return json.dumps(doc, sort_keys=True) + "\n"
    lines = [",".join(header)] + [",".join(_fmt(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


# --- subcommands ---------------------------------------------------------------------

def cmd_arith(ns, rng):
    X = _arith(ns.gen, ns.param, ns.gen_config)
    op = ns.op
    if op in ("zero", "one"):
        return ("result",), [(getattr(X, op),)]
    if op == "embed":
        return ("r", "result"), [(ns.lhs, X.embed(ns.lhs))]
    if op == "neg":
        return ("x", "result"), [(ns.lhs, X.neg(ns.lhs))]
    if ns.rhs is None:
        raise UsageError(f"--op {op} needs --rhs")
    if ns.mixed_gen:
        Y = _arith(ns.mixed_gen, ns.mixed_param, None)
        T = _arith(ns.target_gen, ns.target_param, None) if ns.target_gen else X
        fn = {"add": mixed_add, "sub": mixed_sub, "mul": mixed_mul, "div": mixed_div}[op]
        return ("lhs", "rhs", "result"), [(ns.lhs, ns.rhs, fn(T, X, ns.lhs, Y, ns.rhs))]
    fn = {"add": X.oplus, "sub": X.ominus, "mul": X.odot, "div": X.oslash}[op]
    return ("lhs", "rhs", "result"), [(ns.lhs, ns.rhs, fn(ns.lhs, ns.rhs))]


def _xy(ns):
    X = _arith(ns.gen, ns.param, ns.gen_config)
    Y = _arith(ns.ygen, ns.yparam, ns.ygen_config)
    return X, Y


def cmd_derive(ns, rng):
    X, Y = _xy(ns)
    F = NNFunction(X, Y, parse_expr(ns.expr))
    return ("x", "A", "derivative"), [(x, F(x), nn_derivative(F, x, ns.step)) for x in _grid(ns)]


def cmd_integrate(ns, rng):
    X, Y = _xy(ns)
    F = NNFunction(X, Y, parse_expr(ns.expr))
    return ("lo", "hi", "integral"), [(ns.lo, ns.hi, nn_integral(F, ns.lo, ns.hi, ns.tol))]


def cmd_explog(ns, rng):
    X, Y = _xy(ns)
    rows = []
    for x in _grid(ns):
        y = nn_exp(X, Y, x)
        rows.append((x, y, nn_ln(X, Y, y)))
    return ("x", "exp", "ln_exp"), rows


def cmd_fig1(ns, rng):
    table = kappa.fig1_table(ns.xmin, ns.xmax, ns.points, ns.kappa)
    return kappa.FIG1_HEADER, [tuple(r) for r in table]


def _probabilities(ns, rng):
    if ns.p:
        return [np.asarray(ns.p, dtype=float)]
    return [rng.dirichlet(np.ones(ns.n)) for _ in range(ns.samples)]


def cmd_entropy(ns, rng):
    rows = []
    for i, p in enumerate(_probabilities(ns, rng)):
        s1 = statmech.shannon_entropy(p, ns.base)
        for q in ns.q:
            rows.append((i, q, statmech.renyi_entropy(p, q, ns.base), s1))
    return ("sample", "q", "renyi", "shannon"), rows


def cmd_knmean(ns, rng):
    f = _arith(ns.gen, ns.param, ns.gen_config).generator
    p, a = np.asarray(ns.p), np.asarray(ns.a)
    mean = statmech.kn_mean(f, p, a)
    nd = statmech.kn_mean_as_nd_probability(f, p, a)
    ok = statmech.kn_translation_check(f, p, a, ns.shift)
    return ("mean", "nd_form", "translation_ok"), [(mean, nd, ok)]


def cmd_maxent(ns, rng):
    X = _arith(ns.gen, ns.param, ns.gen_config)
    sol = statmech.maxent_solve(X, statmech.EnergySpectrum(ns.energies), ns.beta)
    rows = [(k, e, p, w) for k, (e, p, w) in enumerate(zip(ns.energies, sol.p, sol.weights))]
    meta = {"C": sol.C, "alpha": sol.alpha, "beta": sol.beta, "residual": sol.residual}
    return ("k", "E", "p", "weight"), rows, meta


def cmd_escort(ns, rng):
    mode = ns.mode
    if mode == "binary":
        fam = escort.EscortFamily.spin()
        return ("p", "g"), [(p, escort.escort_binary(fam, p)) for p in ns.p]
    if mode == "affine":
        return ("p", "g"), [(p, escort.escort_affine(ns.a, ns.n, p)) for p in ns.p]
    if mode == "correspondence":
        if len(ns.p) != 1:
            raise UsageError("correspondence mode takes a single --p")
        rows = escort.correspondence_limit(ns.a, ns.p[0], ns.n_list)
        return ("n", "g", "g_minus_p"), [(int(r[0]), r[1], r[2]) for r in rows]
    thetas = np.linspace(0.0, math.pi, ns.points)
    rows = []
    for t in thetas:
        row = [t, escort.quantum_conditional(t)]
        if mode == "hidden":
            row.append(escort.hidden_variable_integral(t, 0.0))
        rows.append(tuple(row))
    header = ("theta", "quantum", "hidden_variable") if mode == "hidden" else ("theta", "quantum")
    return header, rows


def cmd_bell(ns, rng):
    fam = escort.EscortFamily.spin()
    if ns.p4:
        cases = [ns.p4]
    else:
        cases = []
        for _ in range(ns.samples):
            u, v = rng.uniform(0, 0.5, 2)
            cases.append([u, 0.5 - u, v, 0.5 - v])
    rows = [(*p4, escort.bell_rescaled_check(fam, p4)) for p4 in cases]
    return ("p_pp", "p_pm", "p_mp", "p_mm", "normalized"), rows


def cmd_cosmo(ns, rng):
    params = cosmo.CosmologyParams(ns.omega_m, ns.omega_lambda, ns.omega)
    if ns.report_kappa:
        k = cosmo.matched_kappa(params)
        return ("kappa",), [("%.4f" % k,)], {"kappa": k}
    gen, k = cosmo.matched_generator(params)
    table = cosmo.trajectory_table(params, Arithmetic(gen), ns.t_end, ns.steps,
                                   ns.t_start, ns.every)
    return cosmo.TRAJECTORY_HEADER, [tuple(r) for r in table], {"kappa": k}


def cmd_selfcheck(ns, rng):
    from .selfcheck import run_checks
    results = run_checks(rng)
    failed = sum(not ok for _, ok in results)
    meta = {"passed": len(results) - failed, "failed": failed}
    return ("check", "passed"), results, meta


COMMANDS = {name: globals()[f"cmd_{name}"] for name in SUBCOMMANDS}


# --- parser --------------------------------------------------------------------------

def _add_gen(p, prefix="", label="X"):
    p.add_argument(f"--{prefix}gen", default="identity",
                   help=f"catalog generator for {label} (identity, log, neglog, kaniadakis, "
                        "renyi, affine_escort, spin)")
    p.add_argument(f"--{prefix}param", action="append", type=_param, metavar="K=V",
                   help=f"generator parameter for {label}, repeatable (e.g. kappa=1)")
    p.add_argument(f"--{prefix}gen-config", metavar="JSON",
                   help=f"generator config for {label} as a file or inline JSON")


def _add_grid(p, lo=0.1, hi=2.0, n=5):
    p.add_argument("--at", type=_floats, help="comma-separated evaluation points")
    p.add_argument("--xmin", type=float, default=lo)
    p.add_argument("--xmax", type=float, default=hi)
    p.add_argument("--points", type=int, default=n)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0,
                        help=f"RNG seed for randomized tables; {SEED_ENV} overrides it")
    common.add_argument("--config", help="RunConfig JSON file supplying option defaults")
    common.add_argument("--dump-config", action="store_true",
                        help="print the canonical RunConfig JSON and exit")

    parser = _Parser(prog="nncalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    p = add("arith", "Arithmetic induced by a generator: x (+) y = f^-1(f(x) + f(y)) and "
                     "friends, including mixed operations across two arithmetics.")
    _add_gen(p)
    p.add_argument("--op", required=True,
                   choices=("add", "sub", "mul", "div", "neg", "embed", "zero", "one"))
    p.add_argument("--lhs", type=float, default=0.0)
    p.add_argument("--rhs", type=float)
    p.add_argument("--mixed-gen", help="arithmetic of the right operand for a mixed operation")
    p.add_argument("--mixed-param", action="append", type=_param, metavar="K=V")
    p.add_argument("--target-gen", help="arithmetic of a mixed result (default: --gen)")
    p.add_argument("--target-param", action="append", type=_param, metavar="K=V")

    for name, text in (("derive", "Non-Newtonian derivative of A: X -> Y, computed by "
                                  "conjugating to ordinary calculus."),
                       ("integrate", "Non-Newtonian integral of A: X -> Y over [lo, hi].")):
        p = add(name, text)
        _add_gen(p)
        _add_gen(p, "y", "Y")
        p.add_argument("--expr", required=True,
                       help="A(x) as an expression in x, e.g. 'x**2 + sin(x)'")
        if name == "derive":
            _add_grid(p)
            p.add_argument("--step", type=float, help="conjugate-space step (default relative 1e-4)")
        else:
            p.add_argument("--lo", type=float, required=True)
            p.add_argument("--hi", type=float, required=True)
            p.add_argument("--tol", type=float, default=1e-10)

    p = add("explog", "Non-Newtonian exponential and logarithm between two arithmetics.")
    _add_gen(p)
    _add_gen(p, "y", "Y")
    _add_grid(p, -1.0, 1.0, 5)

    p = add("fig1", "Kappa-exponentials exp_k(-x) of both kinds on a log grid; "
                    "the curves differ at small x and share their tails.")
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--xmin", type=float, default=1e-2)
    p.add_argument("--xmax", type=float, default=1e4)
    p.add_argument("--points", type=int, default=200)

    p = add("entropy", "Renyi and Shannon entropies of given or random distributions.")
    p.add_argument("--p", type=_floats, help="probability vector (default: random)")
    p.add_argument("--q", type=_floats, default=[0.5, 1.0, 2.0])
    p.add_argument("--n", type=int, default=4, help="size of random distributions")
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--base", type=float)

    p = add("knmean", "Kolmogorov-Nagumo mean f^-1(sum p f(a)) and its translation property.")
    _add_gen(p)
    p.add_argument("--p", type=_floats, required=True)
    p.add_argument("--a", type=_floats, required=True)
    p.add_argument("--shift", type=float, default=1.0)

    p = add("maxent", "Maximum non-Newtonian entropy at fixed energy: Gibbs weights in "
                      "conjugate coordinates.")
    _add_gen(p)
    p.add_argument("--energies", type=_floats, default=[0.0, 1.0])
    p.add_argument("--beta", type=float, default=1.0)

    p = add("escort", "Normalization-preserving escort maps, the quantum cos^2 law and the "
                      "hidden-variable integral that reproduces it.")
    p.add_argument("--mode", default="quantum",
                   choices=("binary", "affine", "correspondence", "quantum", "hidden"))
    p.add_argument("--p", type=_floats, default=[0.25, 0.5, 0.75])
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--n-list", type=_ints, default=[3, 10, 100])
    p.add_argument("--points", type=int, default=9)

    p = add("bell", "Four-outcome rescaled escort normalization check.")
    p.add_argument("--p4", type=_floats)
    p.add_argument("--samples", type=int, default=5)

    p = add("cosmo", "Scale factor from the standard Friedman equation and from its "
                     "non-Newtonian form with the matched time arithmetic.")
    p.add_argument("--omega-m", type=float, default=0.3)
    p.add_argument("--omega-lambda", type=float, default=0.7)
    p.add_argument("--omega", type=float, help="Omega of the non-Newtonian equation "
                                               "(default: --omega-m)")
    p.add_argument("--t-start", type=float, default=0.05)
    p.add_argument("--t-end", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--every", type=int, default=500)
    p.add_argument("--report-kappa", action="store_true",
                   help="print only the matched kappa to 4 decimals")

    add("selfcheck", "Run the built-in invariant checks and report pass/fail counts.")
    return parser


def parse(argv) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.config:
        try:
            with open(ns.config) as fh:
                cfg = RunConfig.from_json(fh.read())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}")
        if cfg.subcommand != ns.subcommand:
            raise UsageError(f"config is for {cfg.subcommand!r}, not {ns.subcommand!r}")
        sp = parser._subparsers._group_actions[0].choices[ns.subcommand]
        sp.set_defaults(**cfg.options, format=cfg.format, out=cfg.out, seed=cfg.seed)
        ns = parser.parse_args(argv)
    env_seed = os.environ.get(SEED_ENV)
    if env_seed is not None:
        try:
            ns.seed = int(env_seed)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env_seed!r}")
    rc = _to_run_config(ns)
    rc.options["dump_config"] = ns.dump_config
    return rc


def execute(rc: RunConfig) -> str:
    ns = argparse.Namespace(**rc.options)
    rng = np.random.default_rng(rc.seed)
    res = COMMANDS[rc.subcommand](ns, rng)
    header, rows = res[0], res[1]
    meta = res[2] if len(res) > 2 else None
    if rc.subcommand == "cosmo" and ns.report_kappa and rc.format == "csv":
        return rows[0][0] + "\n"
    return render(header, rows, rc.format, meta)


def main(argv=None) -> int:
    try:
        rc = parse(sys.argv[1:] if argv is None else argv)
        dump = rc.options.pop("dump_config")
        if dump:
            sys.stdout.write(rc.to_json() + "\n")
            return 0
        text = execute(rc)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except NNCalcError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    if rc.out:
        with open(rc.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if rc.subcommand == "selfcheck" and "0 failed" not in _selfcheck_summary(text, rc.format):
        return 2
    return 0


def _selfcheck_summary(text, fmt):
    if fmt == "json":
        meta = json.loads(text)["meta"]
        passed, failed = meta["passed"], meta["failed"]
    else:
        flags = [line.rsplit(",", 1)[1] for line in text.splitlines()[1:]]
        passed, failed = flags.count("1"), flags.count("0")
    summary = f"selfcheck: {passed} passed, {failed} failed"
    sys.stderr.write(summary + "\n")
    return summary


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Every library operation is reachable as a subcommand with JSON-valued
flags, or batched through a job file (``lagsem run job.json``).  Scalar
results go to stdout in a compact human-readable form; structured
results are written to ``--out`` as canonical JSON (sorted keys, fixed
separators) or CSV for sampled functions, so identical inputs yield
byte-identical artifacts.

Exit codes: 0 success, 1 verification-suite violation, 2 parse error,
3 precondition (domain) error raised by the library.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from . import ndim as ndim_mod
from . import semigroup as semigroup_mod
from . import verify as verify_mod
from .core import (
    CapacityError,
    ComplexPoly,
    ContractivityError,
    ShiftConditionError,
    _coerce_pair,
)
from .kernel import gauss_laguerre, k_theta, w_theta
from .operator import (
    apply_phi,
    exp_delta_decomposed,
    exp_delta_series,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3

_COMMANDS = ("apply", "exp", "solve", "solve-nd", "kernel", "quad", "verify")


class CLIError(Exception):
    """CLI-level failure carrying its intended process exit code."""

    def __init__(self, message: str, code: int = EXIT_PARSE):
        super().__init__(message)
        self.code = code


# ----------------------------------------------------------------------
# parsing and formatting helpers
# ----------------------------------------------------------------------

def _parse_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CLIError(f"invalid JSON for {what}: {exc}", EXIT_PARSE) from None


def _parse_poly(value, what: str) -> ComplexPoly:
    """A polynomial from a JSON list of numbers or [re, im] pairs."""
    if isinstance(value, str):
        value = _parse_json(value, what)
    if not isinstance(value, list) or not value:
        raise CLIError(f"{what} must be a nonempty JSON list", EXIT_PARSE)
    try:
        return ComplexPoly(tuple(_coerce_pair(v) for v in value))
    except (TypeError, ValueError) as exc:
        raise CLIError(f"bad coefficients for {what}: {exc}", EXIT_PARSE) from None


def _parse_points(value, what: str) -> list[complex]:
    if isinstance(value, str):
        value = _parse_json(value, what)
    if not isinstance(value, list) or not value:
        raise CLIError(f"{what} must be a nonempty JSON list", EXIT_PARSE)
    try:
        return [_coerce_pair(v) for v in value]
    except (TypeError, ValueError) as exc:
        raise CLIError(f"bad entries for {what}: {exc}", EXIT_PARSE) from None


def _parse_scalar(value, what: str) -> complex:
    if isinstance(value, str):
        value = _parse_json(value, what)
    try:
        return _coerce_pair(value)
    except (TypeError, ValueError) as exc:
        raise CLIError(f"bad value for {what}: {exc}", EXIT_PARSE) from None


def _fmt_number(v) -> str:
    """Compact scalar form: ints unadorned, reals bare, complex as [re, im]."""
    z = complex(v)
    if z.imag == 0.0:
        r = z.real
        if r == int(r) and abs(r) < 1e15:
            return str(int(r))
        return repr(r)
    return f"[{z.real!r}, {z.imag!r}]"


def _fmt_values(vals) -> str:
    return "[" + ", ".join(_fmt_number(v) for v in vals) + "]"


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _samples_csv(t: float, zs, vals) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "re(z)", "im(z)", "re(f)", "im(f)"])
    for z, v in zip(zs, vals):
        z = complex(z)
        v = complex(v)
        writer.writerow([repr(float(t)), repr(z.real), repr(z.imag),
                         repr(v.real), repr(v.imag)])
    return buf.getvalue()


def _require_keys(obj: dict, allowed: dict, what: str) -> dict:
    """Strict parameter extraction: unknown keys are parse errors."""
    unknown = set(obj) - set(allowed)
    if unknown:
        raise CLIError(
            f"unknown field(s) in {what}: {', '.join(sorted(unknown))}",
            EXIT_PARSE)
    out = {}
    for key, (required, default) in allowed.items():
        if key in obj:
            out[key] = obj[key]
        elif required:
            raise CLIError(f"missing required field '{key}' in {what}",
                           EXIT_PARSE)
        else:
            out[key] = default
    return out


def _float_field(params: dict, key: str, what: str) -> float:
    try:
        return float(params[key])
    except (TypeError, ValueError):
        raise CLIError(f"field '{key}' in {what} must be a number",
                       EXIT_PARSE) from None


# ----------------------------------------------------------------------
# command implementations (shared by flag mode and job mode)
# ----------------------------------------------------------------------

def _run_apply(params: dict, out_path: str | None, precision: dict) -> int:
    p = _require_keys(params, {
        "phi": (True, None), "f": (True, None),
        "theta": (True, None), "omega": (True, None),
    }, "apply params")
    phi = _parse_poly(p["phi"], "phi")
    f = _parse_poly(p["f"], "f")
    result = apply_phi(phi, f, _float_field(p, "theta", "apply"),
                       _float_field(p, "omega", "apply"))
    print(_fmt_values(result.coeffs))
    if out_path:
        _write_text(out_path, _canonical_json(result.to_dict()))
    return EXIT_OK


def _run_exp(params: dict, out_path: str | None, precision: dict) -> int:
    p = _require_keys(params, {
        "f": (True, None), "theta": (True, None), "omega": (True, None),
        "a": (True, None), "route": (False, "dec"), "z": (False, None),
    }, "exp params")
    f = _parse_poly(p["f"], "f")
    theta = _float_field(p, "theta", "exp")
    omega = _float_field(p, "omega", "exp")
    a = _float_field(p, "a", "exp")
    route = p["route"]
    if route not in ("series", "dec", "int"):
        raise CLIError("route must be one of: series, dec, int", EXIT_PARSE)
    if route == "int":
        if p["z"] is None:
            raise CLIError("route 'int' needs sample points z", EXIT_PARSE)
        zs = _parse_points(p["z"], "z")
        tol = float(precision.get("tol", 1e-9))
        vals = semigroup_mod.exp_integral(f, theta, omega, a, zs, tol=tol)
        print(_fmt_values(vals))
        if out_path:
            _write_text(out_path, _samples_csv(a, zs, vals))
        return EXIT_OK
    if route == "series":
        result = exp_delta_series(f, theta, omega, a)
    else:
        result = exp_delta_decomposed(f, theta, omega, a)
    print(_fmt_values(result.coeffs))
    if out_path:
        _write_text(out_path, _canonical_json(result.to_dict()))
    return EXIT_OK


def _run_solve(params: dict, out_path: str | None, precision: dict) -> int:
    p = _require_keys(params, {
        "h": (True, None), "epsilon": (False, 0.0),
        "theta": (True, None), "omega": (True, None),
        "t": (True, None), "z": (True, None), "route": (False, "auto"),
    }, "solve params")
    data = semigroup_mod.InitialData(_float_field(p, "epsilon", "solve"),
                                     _parse_poly(p["h"], "h"))
    t = _float_field(p, "t", "solve")
    zs = _parse_points(p["z"], "z")
    if p["route"] not in ("auto", "shift", "integral"):
        raise CLIError("route must be one of: auto, shift, integral",
                       EXIT_PARSE)
    vals = semigroup_mod.solve_cauchy(
        data, _float_field(p, "theta", "solve"),
        _float_field(p, "omega", "solve"), t, zs, route=p["route"])
    print(_fmt_values(vals))
    if out_path:
        _write_text(out_path, _samples_csv(t, zs, vals))
    return EXIT_OK


def _run_solve_nd(params: dict, out_path: str | None, precision: dict) -> int:
    p = _require_keys(params, {
        "h": (True, None), "epsilon": (False, 0.0),
        "N": (True, None), "d": (True, None), "b": (True, None),
        "t": (True, None), "x": (True, None),
    }, "solve-nd params")
    try:
        dim = int(p["N"])
    except (TypeError, ValueError):
        raise CLIError("field 'N' must be an integer", EXIT_PARSE) from None
    data = semigroup_mod.InitialData(_float_field(p, "epsilon", "solve-nd"),
                                     _parse_poly(p["h"], "h"))
    prob = ndim_mod.RadialProblem(dim, _float_field(p, "d", "solve-nd"),
                                  _float_field(p, "b", "solve-nd"), data)
    x = p["x"]
    if isinstance(x, str):
        x = _parse_json(x, "x")
    if not isinstance(x, list) or len(x) != dim:
        raise CLIError(f"x must be a JSON list of {dim} reals", EXIT_PARSE)
    try:
        xs = np.asarray([x], dtype=np.float64)
    except (TypeError, ValueError):
        raise CLIError("x must contain real numbers", EXIT_PARSE) from None
    t = _float_field(p, "t", "solve-nd")
    vals = ndim_mod.solve_cauchy_nd(prob, t, xs)
    print(_fmt_number(vals[0]))
    if out_path:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t"] + [f"x{i}" for i in range(dim)]
                        + ["re(F)", "im(F)"])
        v = complex(vals[0])
        writer.writerow([repr(float(t))] + [repr(float(c)) for c in x]
                        + [repr(v.real), repr(v.imag)])
        _write_text(out_path, buf.getvalue())
    return EXIT_OK


def _run_kernel(params: dict, out_path: str | None, precision: dict) -> int:
    p = _require_keys(params, {
        "fn": (True, None), "theta": (True, None),
        "xi": (False, None), "z": (False, None), "s": (False, None),
    }, "kernel params")
    theta = _float_field(p, "theta", "kernel")
    tol = float(precision.get("tol", 1e-15))
    if p["fn"] == "w_theta":
        if p["xi"] is None:
            raise CLIError("w_theta needs xi", EXIT_PARSE)
        value = w_theta(theta, _parse_scalar(p["xi"], "xi"), tol=tol)
    elif p["fn"] == "k_theta":
        if p["z"] is None or p["s"] is None:
            raise CLIError("k_theta needs z and s", EXIT_PARSE)
        try:
            s = float(p["s"])
        except (TypeError, ValueError):
            raise CLIError("s must be a real number", EXIT_PARSE) from None
        value = k_theta(theta, _parse_scalar(p["z"], "z"), s, tol=tol)
    else:
        raise CLIError("fn must be one of: w_theta, k_theta", EXIT_PARSE)
    print(_fmt_number(value))
    if out_path:
        _write_text(out_path, _canonical_json(
            {"fn": p["fn"], "theta": theta,
             "value": [complex(value).real, complex(value).imag]}))
    return EXIT_OK


def _run_quad(params: dict, out_path: str | None, precision: dict) -> int:
    p = _require_keys(params, {"theta": (True, None), "n": (True, None)},
                      "quad params")
    try:
        n = int(p["n"])
    except (TypeError, ValueError):
        raise CLIError("field 'n' must be an integer", EXIT_PARSE) from None
    rule = gauss_laguerre(_float_field(p, "theta", "quad"), n)
    doc = _canonical_json(rule.to_dict())
    sys.stdout.write(doc)
    if out_path:
        _write_text(out_path, doc)
    return EXIT_OK


def _run_verify(params: dict, out_path: str | None, precision: dict) -> int:
    p = _require_keys(params, {
        "suite": (False, "all"), "seed": (False, 2024),
        "trials": (False, 200),
    }, "verify params")
    suite = p["suite"]
    if suite not in ("zeros", "trotter", "cauchy", "normbound", "all"):
        raise CLIError(
            "suite must be one of: zeros, trotter, cauchy, normbound, all",
            EXIT_PARSE)
    try:
        seed = int(p["seed"])
        trials = int(p["trials"])
    except (TypeError, ValueError):
        raise CLIError("seed and trials must be integers", EXIT_PARSE) from None
    class_tol = float(precision.get("class_tol", verify_mod.DEFAULT_CLASS_TOL))

    report: dict = {"seed": seed, "trials": trials}
    ok = True
    if suite in ("zeros", "all"):
        rep = verify_mod.zero_preservation_suite(seed=seed, trials=trials,
                                                 tol=class_tol)
        report["zeros"] = rep
        ok = ok and rep["asserted_violations"] == 0
        print(f"zeros: {rep['asserted_violations']} asserted violations, "
              f"{rep['sections']['exploratory']['violation_count']} "
              f"exploratory findings ({trials} trials/section)")
    if suite in ("trotter", "all"):
        rep = verify_mod.trotter_suite()
        report["trotter"] = rep
        ok = ok and rep["rate_ok"]
        print(f"trotter: errors {rep['errors']} rate_ok={rep['rate_ok']}")
    if suite in ("cauchy", "all"):
        rep = verify_mod.cauchy_suite(seed=seed, trials=min(trials, 64))
        report["cauchy"] = rep
        ok = ok and rep["ok"]
        print(f"cauchy: worst relative error {rep['worst_rel_error']:.3e} "
              f"ok={rep['ok']}")
    if suite in ("normbound", "all"):
        rep = verify_mod.norm_bound_suite(seed=seed, cases=trials)
        report["normbound"] = rep
        ok = ok and rep["ok"]
        print(f"normbound: {rep['checked'] - rep['failure_count']}"
              f"/{rep['checked']} cases ok")
    if out_path:
        _write_text(out_path, _canonical_json(report))
    return EXIT_OK if ok else EXIT_VIOLATION


_RUNNERS = {
    "apply": _run_apply,
    "exp": _run_exp,
    "solve": _run_solve,
    "solve-nd": _run_solve_nd,
    "kernel": _run_kernel,
    "quad": _run_quad,
    "verify": _run_verify,
}


# ----------------------------------------------------------------------
# job files
# ----------------------------------------------------------------------

def _run_job(path: str) -> int:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CLIError(f"cannot read job file: {exc}", EXIT_PARSE) from None
    job = _parse_json(text, "job file")
    if not isinstance(job, dict):
        raise CLIError("job file must contain a JSON object", EXIT_PARSE)
    spec = _require_keys(job, {
        "command": (True, None), "params": (True, None),
        "output_path": (False, None), "precision": (False, {}),
    }, "job spec")
    command = spec["command"]
    if command not in _COMMANDS:
        raise CLIError(
            f"unknown command '{command}' (expected one of: "
            f"{', '.join(_COMMANDS)})", EXIT_PARSE)
    params = spec["params"]
    if not isinstance(params, dict):
        raise CLIError("'params' must be a JSON object", EXIT_PARSE)
    precision = spec["precision"] or {}
    if not isinstance(precision, dict):
        raise CLIError("'precision' must be a JSON object", EXIT_PARSE)
    unknown_prec = set(precision) - {"tol", "class_tol"}
    if unknown_prec:
        raise CLIError("unknown precision field(s): "
                       + ", ".join(sorted(unknown_prec)), EXIT_PARSE)
    return _RUNNERS[command](params, spec["output_path"], precision)


# ----------------------------------------------------------------------
# argument parser
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lagsem",
        description="Operational calculus of the generalized Laguerre "
                    "operator (theta + omega z) D + z D^2: exact symbol "
                    "action, semigroup evaluation, Cauchy solvers and "
                    "verification suites.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(sp):
        sp.add_argument("--out", default=None, metavar="PATH",
                        help="write the canonical JSON/CSV artifact here")

    sp = sub.add_parser("apply", help="apply a polynomial symbol phi(Delta) "
                                      "to a polynomial exactly")
    sp.add_argument("--phi", required=True, help="symbol coefficients, JSON")
    sp.add_argument("--f", required=True, help="argument coefficients, JSON")
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--omega", type=float, required=True)
    add_out(sp)
    sp.set_defaults(handler=lambda a: _run_apply(
        {"phi": a.phi, "f": a.f, "theta": a.theta, "omega": a.omega},
        a.out, {}))

    sp = sub.add_parser("exp", help="evaluate exp(a*Delta) by the series, "
                                    "decomposition, or kernel-integral route")
    sp.add_argument("--f", required=True, help="coefficients, JSON")
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--omega", type=float, required=True)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--route", choices=("series", "dec", "int"),
                    default="dec")
    sp.add_argument("--z", default=None,
                    help="sample points for route 'int', JSON list")
    sp.add_argument("--tol", type=float, default=None,
                    help="quadrature stabilization tolerance (route 'int', "
                         "default 1e-9)")
    add_out(sp)
    sp.set_defaults(handler=lambda a: _run_exp(
        {"f": a.f, "theta": a.theta, "omega": a.omega, "a": a.a,
         "route": a.route, "z": a.z},
        a.out, {} if a.tol is None else {"tol": a.tol}))

    sp = sub.add_parser("solve", help="evaluate the Cauchy solution for "
                                      "data exp(-epsilon z) h(z)")
    sp.add_argument("--h", required=True, help="coefficients of h, JSON")
    sp.add_argument("--epsilon", type=float, default=0.0)
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--omega", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--z", required=True, help="sample points, JSON list")
    sp.add_argument("--route", choices=("auto", "shift", "integral"),
                    default="auto")
    add_out(sp)
    sp.set_defaults(handler=lambda a: _run_solve(
        {"h": a.h, "epsilon": a.epsilon, "theta": a.theta, "omega": a.omega,
         "t": a.t, "z": a.z, "route": a.route}, a.out, {}))

    sp = sub.add_parser("solve-nd", help="solve the isotropic N-dimensional "
                                         "drift-diffusion problem")
    sp.add_argument("--N", type=int, required=True, dest="N")
    sp.add_argument("--d", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--h", required=True,
                    help="radial profile coefficients, JSON")
    sp.add_argument("--epsilon", type=float, default=0.0)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--x", required=True, help="evaluation point, JSON list")
    add_out(sp)
    sp.set_defaults(handler=lambda a: _run_solve_nd(
        {"h": a.h, "epsilon": a.epsilon, "N": a.N, "d": a.d, "b": a.b,
         "t": a.t, "x": a.x}, a.out, {}))

    sp = sub.add_parser("kernel", help="evaluate the entire kernel function "
                                       "w_theta or the kernel K_theta")
    sp.add_argument("--fn", choices=("w_theta", "k_theta"), required=True)
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--xi", default=None, help="argument for w_theta, JSON")
    sp.add_argument("--z", default=None, help="first argument for k_theta")
    sp.add_argument("--s", type=float, default=None,
                    help="second argument for k_theta (real, >= 0)")
    add_out(sp)
    sp.set_defaults(handler=lambda a: _run_kernel(
        {"fn": a.fn, "theta": a.theta, "xi": a.xi, "z": a.z, "s": a.s},
        a.out, {}))

    sp = sub.add_parser("quad", help="dump a Gauss quadrature rule for the "
                                     "measure s^(theta-1) e^(-s) ds")
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    add_out(sp)
    sp.set_defaults(handler=lambda a: _run_quad(
        {"theta": a.theta, "n": a.n}, a.out, {}))

    sp = sub.add_parser("verify", help="run the randomized verification "
                                       "suites")
    sp.add_argument("--suite",
                    choices=("zeros", "trotter", "cauchy", "normbound",
                             "all"),
                    default="all")
    sp.add_argument("--seed", type=int, default=2024)
    sp.add_argument("--trials", type=int, default=200)
    add_out(sp)
    sp.set_defaults(handler=lambda a: _run_verify(
        {"suite": a.suite, "seed": a.seed, "trials": a.trials}, a.out, {}))

    sp = sub.add_parser("run", help="execute a JSON job file")
    sp.add_argument("job", help="path to the job spec")
    sp.set_defaults(handler=lambda a: _run_job(a.job))

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.handler(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ContractivityError, ShiftConditionError, CapacityError,
            ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

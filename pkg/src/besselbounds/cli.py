"""Command-line front end with machine-readable, deterministic output.

Every subcommand prints one JSON object of the shape

    {"op": ..., "inputs": ..., "value": ..., "intermediates": ...,
     "hypotheses": ..., "warnings": ...}

with numbers serialized at 17 significant digits so downstream comparisons
can round-trip them exactly.  Identical argv produces byte-identical JSON;
nothing time- or host-dependent enters the payload.

Exit codes: 0 success, 1 input/usage error, 2 hypothesis violation (a bound
is vacuous or inapplicable) or a failed verify battery.
"""

from __future__ import annotations

import argparse
import sys

from . import bounds as bd
from . import ode as od
from . import oracle as orc
from . import report as rpt
from . import verify as vf
from .bessel import (
    bowman_solution,
    eval_J,
    eval_J_derivative,
    eval_Y,
    lommel_residuals,
    ratio_next_over_current,
)
from .errors import BesselBoundsError, HypothesisViolated
from .zeros import ZeroRequest, bessel_zero, char_root

_EXIT_OK = 0
_EXIT_INPUT = 1
_EXIT_HYPOTHESIS = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems via exit code 1."""

    def error(self, message):  # noqa: D102 - argparse override
        raise _UsageError(message)


# ----------------------------- serialization ---------------------------------

def _format_scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if v != v:
            return '"nan"'
        if v == float("inf"):
            return '"inf"'
        if v == float("-inf"):
            return '"-inf"'
        return format(v, ".17g")
    return '"' + str(v).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_json(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    if isinstance(obj, dict):
        inner = ",".join(f"{_format_scalar(str(k))}:{to_json(v)}"
                         for k, v in sorted(obj.items(), key=lambda kv: str(kv[0])))
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(to_json(v) for v in obj) + "]"
    return _format_scalar(obj)


def _flatten(prefix: str, obj, rows: list[tuple[str, str]]) -> None:
    if isinstance(obj, dict):
        for k in sorted(obj, key=str):
            _flatten(f"{prefix}{k}." if prefix else f"{k}.", obj[k], rows)
        return
    if isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}{i}.", v, rows)
        return
    rows.append((prefix.rstrip("."), _format_scalar(obj).strip('"')))


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(to_json(payload) + "\n")
    elif fmt == "csv":
        rows: list[tuple[str, str]] = []
        _flatten("", payload, rows)
        sys.stdout.write("key,value\n")
        for key, value in rows:
            sys.stdout.write(f"{key},{value}\n")
    else:
        rows = []
        _flatten("", payload, rows)
        for key, value in rows:
            sys.stdout.write(f"{key} = {value}\n")


def _payload(op: str, inputs: dict, value, intermediates: dict | None = None,
             hypotheses: list | None = None, warnings: list | None = None,
             extra: dict | None = None) -> dict:
    payload = {
        "op": op,
        "inputs": inputs,
        "value": value,
        "intermediates": intermediates or {},
        "hypotheses": hypotheses or [],
        "warnings": warnings or [],
    }
    if extra:
        payload.update(extra)
    return payload


# ------------------------------- subcommands ----------------------------------

def _cmd_bessel(args) -> tuple[dict, int]:
    kind = args.kind
    inputs = {"kind": kind, "nu": args.nu, "x": args.x}
    if kind == "j":
        res = eval_J(args.nu, args.x, args.tol)
        return _payload("bessel", inputs, res.value,
                        {"abs_err_estimate": res.abs_err_estimate,
                         "terms_used": res.terms_used}), _EXIT_OK
    if kind == "y":
        res = eval_Y(args.nu, args.x, args.tol)
        return _payload("bessel", inputs, res.value,
                        {"abs_err_estimate": res.abs_err_estimate,
                         "terms_used": res.terms_used}), _EXIT_OK
    if kind == "jprime":
        return _payload("bessel", inputs,
                        eval_J_derivative(args.nu, args.x, args.tol)), _EXIT_OK
    if kind == "ratio":
        return _payload("bessel", inputs,
                        ratio_next_over_current(args.nu, args.x, args.tol)), _EXIT_OK
    if kind == "lommel":
        r1, r2 = lommel_residuals(args.nu, args.x, args.tol)
        return _payload("bessel", inputs, None,
                        {"cross_product_residual": r1,
                         "wronskian_residual": r2}), _EXIT_OK
    # bowman
    for name in ("alpha", "beta", "gamma_exp", "a", "b"):
        if getattr(args, name) is None:
            raise _UsageError(f"--{name.replace('_', '-')} is required for kind=bowman")
    inputs = {"kind": kind, "m": args.nu, "x": args.x, "alpha": args.alpha,
              "beta": args.beta, "gamma_exp": args.gamma_exp,
              "A": args.a, "B": args.b}
    value = bowman_solution(args.alpha, args.beta, args.gamma_exp, args.nu,
                            args.a, args.b, args.x, args.tol)
    return _payload("bessel", inputs, value), _EXIT_OK


def _cmd_zero(args) -> tuple[dict, int]:
    root = bessel_zero(ZeroRequest(nu=args.nu, k=args.k))
    return _payload("zero", {"nu": args.nu, "k": args.k}, root), _EXIT_OK


def _cmd_char_root(args) -> tuple[dict, int]:
    res = char_root(args.dim, args.c)
    return _payload("char-root", {"dim": args.dim, "c": args.c}, res.root,
                    {"root": res.root, "bracket_lo": res.bracket[0],
                     "bracket_hi": res.bracket[1]},
                    extra={"root": res.root}), _EXIT_OK


_BOUND_NAMES = ("quotient", "cotangent", "isoperimetric", "dirichlet",
                "robin-threshold", "robin-ball", "dirac", "mit", "yamabe",
                "dirac-conformal", "pform", "pform-ball", "gap", "gallot-meyer")


def _cmd_bound(args) -> tuple[dict, int]:
    name = args.name
    geo = None
    if name not in ("gap",):
        geo = bd.GeometrySpec(n=args.dim, H0=args.h0, R=args.radius)
    cur = bd.CurvatureInputs(
        min_scalar=args.min_scalar, gamma=args.gamma, sigma_p=args.sigma_p,
        p=args.p, tau=args.tau, im_lambda=args.im_lambda, nu_1p=args.nu_1p,
        inf_W_minus_T=args.inf_w_minus_t,
    )
    if name == "quotient":
        report = bd.quotient_lower_bound(geo, _require(args, "lam"))
    elif name == "cotangent":
        report = bd.cotangent_bound(geo, _require(args, "lam"))
    elif name == "isoperimetric":
        report = bd.isoperimetric_bound(geo)
    elif name == "dirichlet":
        report = bd.dirichlet_faber_krahn(geo)
    elif name == "robin-threshold":
        report = bd.robin_threshold_bound(geo, _require(args, "tau"),
                                          _require(args, "tau0"))
    elif name == "robin-ball":
        report = bd.robin_ball_eigenvalue(args.dim, args.h0,
                                          _require(args, "tau"))
    elif name == "dirac":
        report = bd.dirac_bound(geo, cur)
    elif name == "mit":
        _require(args, "im_lambda")
        report = bd.mit_bound(geo, cur)
    elif name == "yamabe":
        report = bd.yamabe_bound(geo, cur)
    elif name == "dirac-conformal":
        report = bd.dirac_conformal_bound(geo, cur)
    elif name == "pform":
        report = bd.pform_bound(geo, cur, _require(args, "tau0"))
    elif name == "pform-ball":
        report = bd.pform_ball_comparison(geo, cur)
    elif name == "gap":
        report = bd.gap_bound(cur)
    else:
        report = bd.gallot_meyer_bound(geo, cur)

    inputs = {k: v for k, v in vars(args).items()
              if k not in ("func", "output", "name", "command") and v is not None}
    inputs["bound"] = name
    body = report.as_dict()
    payload = _payload("bound", inputs, body.pop("value"),
                       body.pop("intermediates"), body.pop("hypotheses"),
                       body.pop("warnings"), extra=body)
    code = _EXIT_OK
    if payload["value"] is None or not report.informative:
        code = _EXIT_HYPOTHESIS
    return payload, code


def _require(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise _UsageError(f"--{name.replace('_', '-')} is required for this bound")
    return value


def _cmd_ode(args) -> tuple[dict, int]:
    prob = od.OdeProblem(n=args.dim, H0=args.h0, lam=args.lam,
                         y0=args.y0, yp0=args.yp0, r_max=args.r_max)
    sol = od.integrate_ivp(prob, grid_points=args.grid_points)
    if args.csv:
        od.export_trajectory_csv(sol, args.csv)
    det = od.determinant_check(prob)
    inputs = {"dim": args.dim, "h0": args.h0, "lam": args.lam,
              "y0": args.y0, "yp0": args.yp0, "r_max": args.r_max}
    inter = {"A": sol.A, "B": sol.B, "max_residual": sol.max_residual,
             "determinant": det["determinant"],
             "determinant_predicted": det["predicted"]}
    if sol.R0 is not None:
        inter["R0"] = sol.R0
        inter["theta_at_R0"] = (1.0 - sol.R0 * prob.H0) ** (prob.n - 1)
    return _payload("ode", inputs, sol.max_residual, inter), _EXIT_OK


def _cmd_oracle(args) -> tuple[dict, int]:
    if args.taus:
        taus = [float(t) for t in args.taus.split(",")]
        rows = orc.robin_sweep(args.dim, args.radius, taus,
                               grid_points=args.grid)
        if args.csv:
            orc.export_sweep_csv(rows, args.csv)
        inputs = {"dim": args.dim, "radius": args.radius, "taus": taus,
                  "grid": args.grid}
        return _payload("oracle", inputs,
                        [lam for _, lam in rows],
                        {"taus": [t for t, _ in rows]}), _EXIT_OK
    prob = orc.RadialProblem(n=args.dim, R=args.radius, bc=args.bc,
                             tau=args.tau or 0.0, grid_points=args.grid)
    spec = orc.solve_lowest(prob)
    if args.csv:
        orc.export_eigenvector_csv(spec, args.csv)
    inputs = {"dim": args.dim, "radius": args.radius, "bc": args.bc,
              "tau": args.tau, "grid": args.grid}
    return _payload("oracle", inputs, spec.lambda_1_extrapolated,
                    {"lambda_1_grid": spec.lambda_1,
                     "order_estimate": spec.order_estimate}), _EXIT_OK


def _cmd_verify(args) -> tuple[dict, int]:
    result = vf.run_battery(args.suite, nmax=args.nmax, dim=args.dim,
                            tau=args.tau, grid=args.grid)
    inputs = {"suite": args.suite}
    for key in ("nmax", "dim", "tau", "grid"):
        if getattr(args, key) is not None:
            inputs[key] = getattr(args, key)
    payload = _payload("verify", inputs, result["pass"],
                       extra={"checks": result["checks"]})
    return payload, _EXIT_OK if result["pass"] else _EXIT_HYPOTHESIS


def _cmd_report(args) -> tuple[dict, int]:
    paths = rpt.render_report(args.out_dir, n=args.dim, h0=args.h0,
                              lam=args.lam, grid_points=args.grid)
    inputs = {"out_dir": args.out_dir, "dim": args.dim, "h0": args.h0,
              "lam": args.lam, "grid": args.grid}
    return _payload("report", inputs, paths), _EXIT_OK


# --------------------------------- parser -------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(
        prog="besselbounds",
        description="Bessel-quotient eigenvalue bounds, their roots, and "
                    "two independent numerical oracles.",
        epilog="The environment variable SPEC_TOL overrides the default "
               "series tolerance 1e-12 used by the Bessel evaluations.",
    )
    parser.add_argument("--output", choices=("json", "csv", "plain"),
                        default="json", help="serialization format")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bessel", help="evaluate J, Y, derivatives, quotients")
    p.add_argument("--kind", choices=("j", "y", "jprime", "ratio", "lommel",
                                      "bowman"), default="j")
    p.add_argument("--nu", type=float, required=True,
                   help="order (the Bessel order m for kind=bowman)")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None, help="bowman exponent")
    p.add_argument("--beta", type=float, default=None, help="bowman scale")
    p.add_argument("--gamma-exp", type=float, default=None, dest="gamma_exp")
    p.add_argument("--a", type=float, default=None, help="bowman J coefficient")
    p.add_argument("--b", type=float, default=None,
                   help="bowman second-branch coefficient")
    p.set_defaults(func=_cmd_bessel)

    p = sub.add_parser("zero", help="k-th positive zero of J_nu")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_zero)

    p = sub.add_parser("char-root",
                       help="root of x J_{n/2}/J_{n/2-1}(x) = c below the first zero")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(func=_cmd_char_root)

    p = sub.add_parser("bound", help="closed-form eigenvalue bounds")
    p.add_argument("name", choices=_BOUND_NAMES)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--h0", type=float, default=1.0)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--lam", type=float, default=None)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--tau0", type=float, default=None)
    p.add_argument("--min-scalar", type=float, default=0.0, dest="min_scalar")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--sigma-p", type=float, default=None, dest="sigma_p")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--im-lambda", type=float, default=None, dest="im_lambda")
    p.add_argument("--nu-1p", type=float, default=None, dest="nu_1p")
    p.add_argument("--inf-w-minus-t", type=float, default=None,
                   dest="inf_w_minus_t")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("ode", help="comparison equation: integrate and compare")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--h0", type=float, default=1.0)
    p.add_argument("--lam", type=float, required=True)
    p.add_argument("--y0", type=float, required=True)
    p.add_argument("--yp0", type=float, required=True)
    p.add_argument("--r-max", type=float, required=True, dest="r_max")
    p.add_argument("--grid-points", type=int, default=1001, dest="grid_points")
    p.add_argument("--csv", default=None,
                   help="write the trajectory table here; columns "
                        "r,y_numeric,y_closed_form,residual")
    p.set_defaults(func=_cmd_ode)

    p = sub.add_parser("oracle", help="radial finite-difference eigensolver")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--bc", choices=("dirichlet", "neumann", "robin"),
                   default="dirichlet")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--taus", default=None,
                   help="comma-separated ascending list; runs a Robin sweep")
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--csv", default=None,
                   help="write columns r,u (single solve) or "
                        "tau,lambda_1 (sweep)")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="run an invariant battery")
    p.add_argument("suite", choices=vf.SUITES)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("report", help="render figures plus CSV twins")
    p.add_argument("--out-dir", required=True, dest="out_dir")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--h0", type=float, default=1.0)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=2048)
    p.set_defaults(func=_cmd_report)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        parser.print_usage(sys.stderr)
        return _EXIT_INPUT
    try:
        payload, code = args.func(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return _EXIT_INPUT
    except HypothesisViolated as exc:
        _emit(_payload(args.command, {}, None,
                       warnings=[str(exc)],
                       extra={"error": "HypothesisViolated"}), args.output)
        return _EXIT_HYPOTHESIS
    except BesselBoundsError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return _EXIT_INPUT
    except ValueError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return _EXIT_INPUT
    _emit(payload, args.output)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""Invariant batteries behind the CLI `verify` subcommand.

Each battery returns {"suite", "checks": [{name, tolerance, observed, pass}],
"pass"} where observed is the worst value seen for that check.  Grids are
fixed and incommensurate with pi so that zeros of the trig closed forms are
not hit by accident; points that land too close to a zero of a denominator
are skipped rather than inflating a relative error artificially.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from . import bounds as bd
from .bessel import (
    eval_J,
    eval_J_derivative,
    eval_Y,
    j_derivative_forms,
    lommel_residuals,
    ratio_next_over_current,
)
from .ode import (
    OdeProblem,
    closed_form_coefficients,
    closed_form_eval,
    determinant_check,
    integrate_ivp,
)
from .oracle import RadialProblem, robin_flux_identity_gap, solve_lowest
from .zeros import (
    airy_floor,
    alpha_constant,
    alpha_series,
    bessel_zero,
    char_root,
    freitas_ratio_check,
    mcmahon_seed,
    quotient_series,
)

SUITES = ("bessel-identities", "zeros", "ode", "robin-ball",
          "bounds-consistency", "freitas")


def _check(name: str, tolerance: float, observed: float, ok: bool | None = None) -> dict:
    if ok is None:
        ok = observed <= tolerance
    return {"name": name, "tolerance": tolerance,
            "observed": observed, "pass": bool(ok)}


def _assemble(suite: str, checks: list[dict]) -> dict:
    return {"suite": suite, "checks": checks,
            "pass": all(c["pass"] for c in checks)}


# ----------------------------- trig closed forms -----------------------------

def _trig_J(nu: float, x: float) -> float:
    """Explicit half-integer closed forms used as test oracles only."""
    c = math.sqrt(2.0 / (math.pi * x))
    s, co = math.sin(x), math.cos(x)
    forms = {
        0.5: c * s,
        -0.5: c * co,
        1.5: c * (s / x - co),
        -1.5: c * (-co / x - s),
        2.5: c * ((3.0 / x**2 - 1.0) * s - 3.0 / x * co),
    }
    return forms[nu]


# ------------------------------- batteries -----------------------------------

def battery_bessel_identities() -> dict:
    checks = []
    xs = [0.1 + 0.37 * i for i in range(81)]            # 0.1 .. 29.7

    # Recurrence closure |J_{nu+1} - (2 nu/x) J_nu + J_{nu-1}|
    worst = 0.0
    orders = [0.5 * i for i in range(21)]               # 0 .. 10
    for nu in orders:
        for x in xs[::4]:
            jm1 = eval_J(nu - 1.0, x).value
            j0 = eval_J(nu, x).value
            jp1 = eval_J(nu + 1.0, x).value
            scale = max(abs(jm1), abs(j0), abs(jp1))
            resid = abs(jp1 - (2.0 * nu / x) * j0 + jm1)
            worst = max(worst, resid / scale if scale > 0 else 0.0)
    checks.append(_check("recurrence_closure", 1e-10, worst))

    # Cross-product identities on x in [0.05, 50], |nu| <= 10.
    worst = 0.0
    for nu in [-10.0, -5.5, -3.0, -2.5, -1.0, -0.5, 0.0, 0.5, 1.0, 2.5, 3.0, 5.5, 10.0]:
        for x in [0.05, 0.31, 1.07, 2.14, 5.03, 9.7, 16.3, 24.9, 33.1, 41.7, 50.0]:
            r1, r2 = lommel_residuals(nu, x)
            budget = 1e-10 * max(1.0, 1.0 / x)
            worst = max(worst, r1 / budget, r2 / budget)
    checks.append(_check("lommel_and_wronskian", 1.0, worst))

    # Three derivative expressions agree pairwise.
    worst = 0.0
    for nu in [0.0, 0.5, 1.0, 2.5, 3.0, 7.0, 10.0]:
        for x in xs[::5]:
            d1, d2, d3 = j_derivative_forms(nu, x)
            scale = max(abs(d1), abs(d2), abs(d3))
            if scale < 1e-3 * math.sqrt(2.0 / (math.pi * max(x, 1.0))):
                continue    # derivative nearly vanishes; relative test meaningless
            worst = max(worst,
                        abs(d1 - d2) / scale, abs(d2 - d3) / scale,
                        abs(d1 - d3) / scale)
    checks.append(_check("derivative_three_forms", 1e-10, worst))

    # Half-integer orders against the trig closed forms.
    worst = 0.0
    for nu in (0.5, -0.5, 1.5, -1.5, 2.5):
        for x in xs:
            ref = _trig_J(nu, x)
            amp = math.sqrt(2.0 / (math.pi * x))
            if abs(ref) < 1e-2 * amp:
                continue
            worst = max(worst, abs(eval_J(nu, x).value - ref) / abs(ref))
    checks.append(_check("half_integer_exactness", 1e-10, worst))

    # Both quotients strictly increase below the first zero of J_nu.
    increasing = True
    for nu in [0.5 * i for i in range(11)]:             # 0 .. 5
        j1 = bessel_zero(nu, 1)
        grid = np.linspace(j1 * 1e-3, j1 * (1.0 - 1e-3), 1000)
        jn = np.array([eval_J(nu, float(x)).value for x in grid])
        jn1 = np.array([eval_J(nu + 1.0, float(x)).value for x in grid])
        ratio = jn1 / jn
        if not np.all(np.diff(ratio) > 0.0):
            increasing = False
        yn = np.array([eval_Y(nu, float(x)).value for x in grid])
        if not np.all(np.diff(yn / jn) > 0.0):
            increasing = False
    checks.append(_check("quotient_monotonicity", 0.0, 0.0 if increasing else 1.0,
                         ok=increasing))

    # Small-argument limit x J_nu / J_{nu+1} -> 2 (nu + 1).
    worst = 0.0
    for nu in [0.0, 0.5, 1.0, 2.0, 3.5, 5.0]:
        got = 1e-4 / ratio_next_over_current(nu, 1e-4)
        worst = max(worst, abs(got - 2.0 * (nu + 1.0)) / (2.0 * (nu + 1.0)))
    checks.append(_check("small_x_quotient_limit", 1e-6, worst))

    return _assemble("bessel-identities", checks)


def battery_zeros(nmax_airy: int = 50) -> dict:
    checks = []

    # Interlacing j_{nu,k} < j_{nu+1,k} < j_{nu,k+1}.
    ok = True
    for nu in [0.5 * i for i in range(13)]:             # 0 .. 6
        a = [bessel_zero(nu, k) for k in range(1, 22)]
        b = [bessel_zero(nu + 1.0, k) for k in range(1, 21)]
        for k in range(20):
            if not (a[k] < b[k] < a[k + 1]):
                ok = False
    checks.append(_check("interlacing", 0.0, 0.0 if ok else 1.0, ok=ok))

    # McMahon seed within 10% relative and improving with k >= 3.
    worst_gap = 0.0
    monotone = True
    for nu in [0.0, 1.0, 2.5, 5.0]:
        gaps = []
        for k in range(3, 21):
            z = bessel_zero(nu, k)
            gaps.append(abs(z - mcmahon_seed(nu, k)))
            worst_gap = max(worst_gap, gaps[-1] / z)
        if any(g2 > g1 * (1.0 + 1e-9) for g1, g2 in zip(gaps, gaps[1:])):
            monotone = False
    checks.append(_check("mcmahon_seed_gap", 0.10, worst_gap))
    checks.append(_check("mcmahon_gap_decreasing", 0.0,
                         0.0 if monotone else 1.0, ok=monotone))

    # Airy floor for the first zero, and the floor value above n/2.
    ok_floor = True
    ok_half = True
    for nu in range(1, nmax_airy + 1):
        if bessel_zero(float(nu), 1) < airy_floor(float(nu)):
            ok_floor = False
    for n in range(3, nmax_airy + 1):
        if airy_floor(0.5 * n - 1.0) <= 0.5 * n:
            ok_half = False
    checks.append(_check("airy_floor", 0.0, 0.0 if ok_floor else 1.0, ok=ok_floor))
    checks.append(_check("airy_floor_above_half_dim", 0.0,
                         0.0 if ok_half else 1.0, ok=ok_half))

    # char_root sign structure on 100 interior samples.
    ok_sign = True
    for n, c in [(3, 2.0), (4, 1.0), (2, 1.0)]:
        root = char_root(n, c)
        nu = 0.5 * n - 1.0
        j1 = bessel_zero(nu, 1)
        for t in np.linspace(0.01, 0.99, 100):
            x = float(t * root.root)
            g = x * eval_J(nu + 1.0, x).value / eval_J(nu, x).value - c
            if g >= 0.0:
                ok_sign = False
        for t in np.linspace(0.001, 0.999, 100):
            x = float(root.root + t * (j1 * (1.0 - 1e-6) - root.root))
            g = x * eval_J(nu + 1.0, x).value / eval_J(nu, x).value - c
            if g <= 0.0:
                ok_sign = False
    checks.append(_check("char_root_bracketing", 0.0,
                         0.0 if ok_sign else 1.0, ok=ok_sign))

    # Series and quotient forms of alpha agree.
    worst = 0.0
    for n in range(2, 11):
        nu = 0.5 * n - 1.0
        j1 = bessel_zero(nu, 1)
        for frac in (0.3, 0.6, 0.9):
            tau0 = frac * j1
            direct = tau0 * eval_J(nu + 1.0, tau0).value / eval_J(nu, tau0).value
            series = alpha_series(n, tau0)
            worst = max(worst, abs(series - direct) / max(1.0, abs(direct)))
    checks.append(_check("alpha_series_consistency", 1e-8, worst))

    # Quotient-of-Bessel series against the direct ratio.
    worst = 0.0
    for nu in (0.0, 0.5, 1.0, 4.0):
        j1 = bessel_zero(nu, 1)
        for frac in (0.2, 0.5, 0.8):
            x = frac * j1
            worst = max(worst, abs(quotient_series(nu, x)
                                   - ratio_next_over_current(nu, x))
                        / abs(ratio_next_over_current(nu, x)))
    checks.append(_check("quotient_series_consistency", 1e-8, worst))

    return _assemble("zeros", checks)


def battery_ode() -> dict:
    checks = []

    # Numeric IVP against the closed form over the standard matrix.
    worst = 0.0
    for n in (2, 3, 4, 5):
        for lam in (0.5, 1.0, 2.0):
            prob = OdeProblem(n=n, H0=1.0, lam=lam, y0=1.0, yp0=-float(n),
                              r_max=0.999)
            sol = integrate_ivp(prob)
            worst = max(worst, sol.max_residual / float(np.max(np.abs(sol.values))))
    checks.append(_check("ivp_vs_closed_form", 1e-7, worst))

    # Ball-generated data put the second-kind coefficient at zero.
    worst = 0.0
    for n in (2, 3, 4, 5):
        a, b = _ball_coefficients(n, tau=1.0)
        worst = max(worst, abs(b) / abs(a))
    checks.append(_check("ball_data_second_coefficient", 1e-8, worst))

    # A 1 percent perturbation of the boundary integral is detected.
    ok_detect = True
    for n in (2, 3):
        a, b = _ball_coefficients(n, tau=1.0, boundary_factor=1.01)
        if abs(b) / abs(a) < 1e-4:
            ok_detect = False
    checks.append(_check("perturbed_data_detected", 0.0,
                         0.0 if ok_detect else 1.0, ok=ok_detect))

    # d/dr [s^(n/2) J_{n/2}(z s)] = -sqrt(lam) s^(n/2) J_{n/2-1}(z s).
    worst = 0.0
    for n in (2, 3, 5):
        lam, h0 = 1.3, 1.0
        z = math.sqrt(lam) / h0
        half = 0.5 * n

        def branch(r: float) -> float:
            s = 1.0 - r * h0
            return s**half * eval_J(half, z * s).value

        for r in (0.1, 0.4, 0.7):
            step = 1e-6
            fd = (branch(r + step) - branch(r - step)) / (2.0 * step)
            s = 1.0 - r * h0
            exact = -math.sqrt(lam) * s**half * eval_J(half - 1.0, z * s).value
            worst = max(worst, abs(fd - exact))
    checks.append(_check("branch_derivative_identity", 1e-7, worst))

    # Closed form satisfies the equation (central differences, step 1e-5).
    worst = 0.0
    for n, lam in ((2, 1.0), (3, 2.0)):
        prob = OdeProblem(n=n, H0=1.0, lam=lam, y0=1.0, yp0=-2.0, r_max=0.99)
        a, b = closed_form_coefficients(prob)
        step = 1e-5
        for r in np.linspace(0.05, 0.95, 19):
            y0 = closed_form_eval(prob, a, b, float(r))
            yp = (closed_form_eval(prob, a, b, float(r) + step)
                  - closed_form_eval(prob, a, b, float(r) - step)) / (2.0 * step)
            ypp = (closed_form_eval(prob, a, b, float(r) + step)
                   - 2.0 * y0
                   + closed_form_eval(prob, a, b, float(r) - step)) / step**2
            resid = ypp + (n - 1) * 1.0 / (1.0 - r * 1.0) * yp + lam * y0
            worst = max(worst, abs(resid) / max(abs(y0), 1.0))
    checks.append(_check("closed_form_ode_residual", 1e-5, worst))

    # Constant forcing >= 0 produces a trajectory dominating the unforced one
    # up to its first zero.
    worst = 0.0
    base_prob = OdeProblem(n=3, H0=1.0, lam=1.0, y0=1.0, yp0=-3.0, r_max=0.999)
    base = integrate_ivp(base_prob)
    r0 = base.R0 if base.R0 is not None else base_prob.r_max
    mask = base.grid <= r0
    for delta in (0.01, 0.1):
        forced = integrate_ivp(base_prob, forcing=delta)
        gap = np.min(forced.values[mask] - base.values[mask])
        worst = max(worst, max(0.0, -float(gap)))
    checks.append(_check("forcing_domination", 1e-9, worst))

    # Determinant of the coefficient system matches its closed form.
    worst = 0.0
    for n in (2, 3, 4, 5):
        prob = OdeProblem(n=n, H0=1.0, lam=1.0, y0=1.0, yp0=-1.0, r_max=0.9)
        worst = max(worst, determinant_check(prob)["abs_difference"])
    checks.append(_check("coefficient_determinant", 1e-12, worst))

    return _assemble("ode", checks)


def _ball_coefficients(n: int, tau: float,
                       boundary_factor: float = 1.0) -> tuple[float, float]:
    """Coefficients from data generated by the first Robin eigenfunction of
    the unit ball (H0 = 1): u(r) = r^(1-n/2) J_{n/2-1}(kappa r), with the
    volume integral done by quadrature."""
    kappa = char_root(n, tau).root
    lam = kappa**2
    m = 0.5 * n - 1.0
    y0, _ = quad(lambda r: eval_J(m, kappa * r).value * r ** (m + 1.0),
                 0.0, 1.0, epsabs=1e-14, epsrel=1e-13)
    yp0 = -eval_J(m, kappa).value * boundary_factor
    prob = OdeProblem(n=n, H0=1.0, lam=lam, y0=y0, yp0=yp0, r_max=0.999)
    return closed_form_coefficients(prob)


def battery_robin_ball(dim: int = 3, tau: float = 1.0,
                       grid_points: int = 4096) -> dict:
    checks = []
    prob = RadialProblem(n=dim, R=1.0, bc="robin", tau=tau,
                         grid_points=grid_points)
    spec = solve_lowest(prob)
    closed = char_root(dim, tau).root ** 2
    rel = abs(spec.lambda_1_extrapolated - closed) / closed
    checks.append(_check(f"oracle_vs_root_n{dim}_tau{tau}", 1e-5, rel))
    checks.append(_check("flux_identity", 0.02,
                         robin_flux_identity_gap(prob, spec)))
    order = spec.order_estimate
    checks.append(_check("scheme_order_near_2", 0.2, abs(order - 2.0)))
    return _assemble("robin-ball", checks)


def battery_bounds_consistency() -> dict:
    checks = []

    # Threshold bound instantiated at the ball root reproduces the ball value.
    worst = 0.0
    alpha_gap = 0.0
    for n in (2, 3, 4):
        for tau in (0.5, 1.0, 2.0):
            geo = bd.GeometrySpec(n=n, H0=1.0)
            ball = bd.robin_ball_eigenvalue(n, 1.0, tau)
            tau0 = ball.intermediates["x_star"]
            thr = bd.robin_threshold_bound(geo, tau, tau0)
            worst = max(worst, abs((thr.value or 0.0) - (ball.value or 0.0)))
            alpha_gap = max(alpha_gap,
                            abs(thr.intermediates["alpha"] - tau / 1.0))
    checks.append(_check("ball_self_consistency", 1e-9, worst))
    checks.append(_check("alpha_equals_tau_over_h0", 1e-9, alpha_gap))

    # Conformal route dominates the direct route.
    ok = True
    for n in range(3, 51):
        tau0 = char_root(n, float(n - 1)).root
        tau1 = char_root(n, 0.5 * (n - 2)).root
        if not n * tau1**2 / (n - 2) > n * tau0**2 / (2.0 * (n - 1)):
            ok = False
        for h0 in (0.5, 1.0, 2.0):
            for ms in (0.0, 1.0):
                geo = bd.GeometrySpec(n=n, H0=h0)
                cur = bd.CurvatureInputs(min_scalar=ms)
                if not (bd.dirac_conformal_bound(geo, cur).value
                        > bd.dirac_bound(geo, cur).value):
                    ok = False
    checks.append(_check("conformal_dominates_direct", 0.0,
                         0.0 if ok else 1.0, ok=ok))

    # Ball eigenvalue increases in tau and stays below the Dirichlet value.
    ok = True
    taus = [0.1 * 10 ** (4.0 * i / 29.0) for i in range(30)]     # 0.1 .. 1000
    prev = 0.0
    dirichlet = bd.dirichlet_faber_krahn(bd.GeometrySpec(n=3, H0=1.0)).value
    for tau in taus:
        lam = bd.robin_ball_eigenvalue(3, 1.0, tau).value
        if lam <= prev or lam >= dirichlet:
            ok = False
        prev = lam
    checks.append(_check("robin_ball_monotone_below_dirichlet", 0.0,
                         0.0 if ok else 1.0, ok=ok))

    # Threshold chain with the Airy choice of tau0, evaluated at tau = alpha H0.
    ok = True
    for n in range(3, 21):
        tau0 = airy_floor(0.5 * n - 1.0)
        tau = alpha_constant(n, tau0)
        if not (tau0**2 > 0.25 * n**2 > n * tau - tau**2):
            ok = False
    checks.append(_check("airy_threshold_chain", 0.0,
                         0.0 if ok else 1.0, ok=ok))

    # Quotient coefficient tends to n H0 as lam -> 0+.
    worst = 0.0
    for n in (2, 3, 5):
        geo = bd.GeometrySpec(n=n, H0=1.0)
        got = bd.quotient_lower_bound(geo, 1e-8).value
        worst = max(worst, abs(got - n * 1.0))
    checks.append(_check("quotient_small_lambda_limit", 1e-3, worst))

    return _assemble("bounds-consistency", checks)


def battery_freitas(nmax: int = 50) -> dict:
    checks = []
    worst_margin = 0.0
    ok = True
    for n in range(3, nmax + 1):
        ratio_sq, floor, passed = freitas_ratio_check(n)
        if not passed:
            ok = False
        worst_margin = max(worst_margin, floor - ratio_sq)
        strict = 0.5 * (n - 2) / (n - 1)
        if not ratio_sq > strict:
            ok = False
    checks.append(_check("ratio_floor", 0.0, worst_margin, ok=ok))
    return _assemble("freitas", checks)


def run_battery(name: str, **options) -> dict:
    if name == "bessel-identities":
        return battery_bessel_identities()
    if name == "zeros":
        return battery_zeros(nmax_airy=int(options.get("nmax") or 50))
    if name == "ode":
        return battery_ode()
    if name == "robin-ball":
        return battery_robin_ball(dim=int(options.get("dim") or 3),
                                  tau=float(options.get("tau") or 1.0),
                                  grid_points=int(options.get("grid") or 4096))
    if name == "bounds-consistency":
        return battery_bounds_consistency()
    if name == "freitas":
        return battery_freitas(nmax=int(options.get("nmax") or 50))
    raise ValueError(f"unknown verify suite {name!r}; choose from {SUITES}")

"""The flat-comparison second-order ODE and its closed-form Bessel solution.

The equation is

    y'' + (n-1) H0 / (1 - r H0) * y' + lam * y = 0,
    y(0) = y0,  y'(0) = yp0,

whose solutions, after the substitution s = 1 - r H0, are

    y(r) = s^(n/2) ( A J_{n/2}(z s) + B W(z s) ),    z = sqrt(lam)/H0,

with W = J_{-n/2} for odd n and W = Y_{n/2} for even n.  The coefficient
pair (A, B) is obtained by solving the 2x2 linear system coming from the
initial conditions numerically; the determinant has the closed forms
2 H0 sin(pi n / 2) / pi (odd) and -2 H0 / pi (even, via the Wronskian),
which are asserted as a diagnostic rather than used for the solve, since
printed prefactor conventions for the even case are easy to get wrong.

The numerical route integrates the same initial value problem with an
adaptive Dormand-Prince 4(5) pair and reports the sup-distance to the
closed form.  The coefficient is singular at r = 1/H0; integration refuses
to run closer than (1 - 1e-3)/H0 and the equality case (solution vanishing
at the singular endpoint) is detected from B = 0, not by integrating into
the singularity.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .bessel import eval_J, eval_Y
from .errors import DomainError, StepUnderflow

_R_MAX_FRACTION = 1.0 - 1e-3


@dataclass(frozen=True)
class OdeProblem:
    """Problem data; y0 plays the role of a volume integral, yp0 of minus a
    boundary integral, but any initial data are accepted."""

    n: int
    H0: float
    lam: float
    y0: float
    yp0: float
    r_max: float

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.n}")
        if self.H0 <= 0.0:
            raise DomainError(f"H0 must be positive, got {self.H0}")
        if self.lam <= 0.0:
            raise DomainError(f"lam must be positive, got {self.lam}")
        if self.r_max <= 0.0 or self.r_max * self.H0 >= 1.0:
            raise DomainError(
                f"r_max must satisfy 0 < r_max < 1/H0; got {self.r_max}"
            )


@dataclass
class OdeSolution:
    problem: OdeProblem
    grid: np.ndarray
    values: np.ndarray          # numeric trajectory
    closed_form: np.ndarray     # closed form on the same grid
    A: float
    B: float
    R0: float | None            # first zero, when one occurs before r_max
    max_residual: float         # sup |numeric - closed| over the grid


@dataclass(frozen=True)
class FirstZeroInfo:
    r: float | None
    theta: float | None                 # (1 - r H0)^(n-1) at the zero
    vanishes_at_inner_radius: bool      # y -> 0 as r -> 1/H0 (B = 0 case)


def _branch_order(n: int) -> float:
    return 0.5 * n


def _second_kind(n: int, arg: float) -> float:
    if n % 2 == 1:
        return eval_J(-0.5 * n, arg).value
    return eval_Y(0.5 * n, arg).value


def closed_form_coefficients(prob: OdeProblem) -> tuple[float, float]:
    """Solve the 2x2 initial-condition system for (A, B).

    Rows: values at r = 0 and derivatives at r = 0, using
    d/dr [s^(n/2) J_{n/2}(z s)]  = -sqrt(lam) s^(n/2) J_{n/2-1}(z s),
    d/dr [s^(n/2) J_{-n/2}(z s)] = +sqrt(lam) s^(n/2) J_{-n/2+1}(z s),
    d/dr [s^(n/2) Y_{n/2}(z s)]  = -sqrt(lam) s^(n/2) Y_{n/2-1}(z s).
    """
    n = prob.n
    z = math.sqrt(prob.lam) / prob.H0
    sq = math.sqrt(prob.lam)
    half = 0.5 * n
    if n % 2 == 1:
        mat = np.array([
            [eval_J(half, z).value, eval_J(-half, z).value],
            [-sq * eval_J(half - 1.0, z).value, sq * eval_J(-half + 1.0, z).value],
        ])
    else:
        mat = np.array([
            [eval_J(half, z).value, eval_Y(half, z).value],
            [-sq * eval_J(half - 1.0, z).value, -sq * eval_Y(half - 1.0, z).value],
        ])
    a, b = np.linalg.solve(mat, np.array([prob.y0, prob.yp0]))
    return float(a), float(b)


def determinant_check(prob: OdeProblem) -> dict[str, float]:
    """Determinant of the coefficient system against its closed form.

    Odd n: 2 H0 sin(pi n/2)/pi by the first cross-product identity.
    Even n: -2 H0/pi by the Wronskian (derived here; kept as a diagnostic).
    """
    n = prob.n
    z = math.sqrt(prob.lam) / prob.H0
    sq = math.sqrt(prob.lam)
    half = 0.5 * n
    if n % 2 == 1:
        det = sq * (eval_J(half, z).value * eval_J(-half + 1.0, z).value
                    + eval_J(-half, z).value * eval_J(half - 1.0, z).value)
        predicted = 2.0 * prob.H0 / math.pi * math.sin(math.pi * n / 2.0)
    else:
        det = sq * (eval_Y(half, z).value * eval_J(half - 1.0, z).value
                    - eval_J(half, z).value * eval_Y(half - 1.0, z).value)
        predicted = -2.0 * prob.H0 / math.pi
    return {"determinant": det, "predicted": predicted,
            "abs_difference": abs(det - predicted)}


def closed_form_eval(prob: OdeProblem, A: float, B: float, r: float) -> float:
    """Evaluate the displayed solution branch at radius r in [0, r_max]."""
    if r < 0.0 or r > prob.r_max * (1.0 + 1e-12):
        raise DomainError(f"r = {r} outside [0, r_max = {prob.r_max}]")
    if A == 0.0 and B == 0.0:
        return 0.0
    s = 1.0 - r * prob.H0
    z = math.sqrt(prob.lam) / prob.H0
    arg = z * s
    half = 0.5 * prob.n
    total = 0.0
    if A != 0.0:
        total += A * eval_J(half, arg).value
    if B != 0.0:
        total += B * _second_kind(prob.n, arg)
    return s**half * total


def integrate_ivp(prob: OdeProblem, grid_points: int = 1001,
                  forcing: float = 0.0, rtol: float = 1e-10,
                  atol: float | None = None) -> OdeSolution:
    """Integrate the initial value problem and compare with the closed form.

    forcing adds a constant to the right-hand side (used to check that the
    solution of the inequality dominates the solution of the equality).
    The closed-form comparison columns are only meaningful for forcing = 0.
    """
    if prob.r_max > _R_MAX_FRACTION / prob.H0 * (1.0 + 1e-12):
        raise StepUnderflow(
            f"r_max = {prob.r_max} is closer to the singularity 1/H0 than "
            f"the cap {_R_MAX_FRACTION / prob.H0}"
        )
    n, h0, lam = prob.n, prob.H0, prob.lam
    if atol is None:
        atol = 1e-12 * max(1.0, abs(prob.y0), abs(prob.yp0))

    def rhs(r, y):
        return (y[1], forcing - (n - 1) * h0 / (1.0 - r * h0) * y[1] - lam * y[0])

    grid = np.linspace(0.0, prob.r_max, grid_points)
    sol = solve_ivp(rhs, (0.0, prob.r_max), (prob.y0, prob.yp0), method="RK45",
                    rtol=rtol, atol=atol, t_eval=grid)
    if not sol.success:
        raise StepUnderflow(f"integration failed: {sol.message}")
    values = sol.y[0]

    a, b = closed_form_coefficients(prob)
    closed = np.array([closed_form_eval(prob, a, b, r) for r in grid])
    if forcing == 0.0:
        max_residual = float(np.max(np.abs(values - closed)))
    else:
        max_residual = float("nan")

    solution = OdeSolution(problem=prob, grid=grid, values=values,
                           closed_form=closed, A=a, B=b, R0=None,
                           max_residual=max_residual)
    info = first_zero(solution)
    solution.R0 = info.r
    return solution


def first_zero(sol: OdeSolution) -> FirstZeroInfo:
    """First positive zero of the closed-form trajectory, if any.

    A sign change on the grid is refined by bisection to 1e-10.  When the
    trajectory has no zero before r_max, B = 0 identifies the boundary case:
    the J-branch carries the factor s^(n/2) J_{n/2}(z s) -> 0 while the
    second-kind branch tends to a nonzero constant, so y vanishes at the
    singular endpoint exactly when B does.  That case reports theta = 0.
    """
    prob = sol.problem
    y = sol.closed_form
    sign = np.sign(y)
    idx = np.where((sign[:-1] != sign[1:]) & (sign[:-1] != 0.0))[0]
    if idx.size:
        lo = float(sol.grid[idx[0]])
        hi = float(sol.grid[idx[0] + 1])
        f_lo = closed_form_eval(prob, sol.A, sol.B, lo)
        while hi - lo > 1e-10:
            mid = 0.5 * (lo + hi)
            f_mid = closed_form_eval(prob, sol.A, sol.B, mid)
            if (f_mid < 0.0) == (f_lo < 0.0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        r0 = 0.5 * (lo + hi)
        theta = (1.0 - r0 * prob.H0) ** (prob.n - 1)
        return FirstZeroInfo(r=r0, theta=theta, vanishes_at_inner_radius=False)
    scale = abs(sol.A) + abs(sol.B)
    if scale > 0.0 and abs(sol.B) <= 1e-10 * scale:
        return FirstZeroInfo(r=None, theta=0.0, vanishes_at_inner_radius=True)
    return FirstZeroInfo(r=None, theta=None, vanishes_at_inner_radius=False)


def export_trajectory_csv(sol: OdeSolution, path: str) -> None:
    """Write (r, y_numeric, y_closed_form, residual) rows."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["r", "y_numeric", "y_closed_form", "residual"])
        for r, yn, yc in zip(sol.grid, sol.values, sol.closed_form):
            writer.writerow([f"{r:.17g}", f"{yn:.17g}", f"{yc:.17g}",
                             f"{yn - yc:.17g}"])

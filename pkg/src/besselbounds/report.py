"""Figure + CSV report rendering for the CLI `report` subcommand.

Each figure is written as a PNG next to a CSV holding exactly the plotted
numbers, so downstream scripts never have to scrape pixels.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .bessel import eval_J  # noqa: E402
from .bounds import GeometrySpec, dirichlet_faber_krahn, robin_ball_eigenvalue  # noqa: E402
from .ode import OdeProblem, integrate_ivp  # noqa: E402
from .oracle import robin_sweep  # noqa: E402
from .zeros import bessel_zero  # noqa: E402


def _write_csv(path: Path, header: list[str], rows: list[list[float]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([f"{v:.17g}" for v in row])


def _fig_bessel_quotient(out: Path, n: int) -> list[Path]:
    nu = 0.5 * n - 1.0
    j1 = bessel_zero(nu, 1)
    xs = np.linspace(j1 * 1e-3, j1 * 0.999, 400)
    jn = np.array([eval_J(nu, float(x)).value for x in xs])
    jn1 = np.array([eval_J(nu + 1.0, float(x)).value for x in xs])
    quotient = xs * jn1 / jn

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
    ax1.plot(xs, jn, label=f"J_{nu:g}")
    ax1.plot(xs, jn1, label=f"J_{nu + 1:g}")
    ax1.axvline(j1, color="gray", ls=":", lw=0.8)
    ax1.set_xlabel("x")
    ax1.legend(frameon=False)
    ax1.set_title(f"Bessel functions, orders {nu:g} and {nu + 1:g}")
    ax2.plot(xs, quotient, color="tab:red")
    ax2.set_xlabel("x")
    ax2.set_title("x J_{n/2}(x) / J_{n/2-1}(x)")
    fig.tight_layout()
    png = out / "bessel_quotient.png"
    fig.savefig(png, dpi=150)
    plt.close(fig)

    csv_path = out / "bessel_quotient.csv"
    _write_csv(csv_path, ["x", "J_lower", "J_upper", "x_quotient"],
               [[float(x), float(a), float(b), float(q)]
                for x, a, b, q in zip(xs, jn, jn1, quotient)])
    return [png, csv_path]


def _fig_ode(out: Path, n: int, h0: float, lam: float) -> list[Path]:
    prob = OdeProblem(n=n, H0=h0, lam=lam, y0=1.0, yp0=-float(n),
                      r_max=0.999 / h0)
    sol = integrate_ivp(prob)

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.4, 5.2), sharex=True)
    ax1.plot(sol.grid, sol.values, label="adaptive integrator")
    ax1.plot(sol.grid, sol.closed_form, "--", label="Bessel closed form")
    if sol.R0 is not None:
        ax1.axvline(sol.R0, color="gray", ls=":", lw=0.8, label="first zero")
    ax1.legend(frameon=False)
    ax1.set_title(f"Comparison equation, n={n}, H0={h0:g}, lambda={lam:g}")
    ax2.semilogy(sol.grid, np.abs(sol.values - sol.closed_form) + 1e-20)
    ax2.set_xlabel("r")
    ax2.set_ylabel("|difference|")
    fig.tight_layout()
    png = out / "comparison_ode.png"
    fig.savefig(png, dpi=150)
    plt.close(fig)

    csv_path = out / "comparison_ode.csv"
    _write_csv(csv_path, ["r", "y_numeric", "y_closed_form", "residual"],
               [[float(r), float(a), float(b), float(a - b)]
                for r, a, b in zip(sol.grid, sol.values, sol.closed_form)])
    return [png, csv_path]


def _fig_robin_sweep(out: Path, n: int, grid_points: int) -> list[Path]:
    taus = [10.0 ** e for e in np.linspace(-2, 3, 11)]
    oracle_rows = robin_sweep(n, 1.0, taus, grid_points=grid_points)
    closed = [robin_ball_eigenvalue(n, 1.0, t).value for t in taus]
    dirichlet = dirichlet_faber_krahn(GeometrySpec(n=n, H0=1.0)).value

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.semilogx(taus, closed, "-", label="root of the quotient equation")
    ax.semilogx([t for t, _ in oracle_rows], [l for _, l in oracle_rows],
                "o", mfc="none", label="finite-difference oracle")
    ax.axhline(dirichlet, color="gray", ls=":", lw=0.9,
               label="Dirichlet ball value")
    ax.set_xlabel("tau")
    ax.set_ylabel("lambda_1")
    ax.set_title(f"First Robin eigenvalue of the unit ball, n={n}")
    ax.legend(frameon=False)
    fig.tight_layout()
    png = out / "robin_sweep.png"
    fig.savefig(png, dpi=150)
    plt.close(fig)

    csv_path = out / "robin_sweep.csv"
    _write_csv(csv_path, ["tau", "lambda_oracle", "lambda_closed_form"],
               [[float(t), float(lo), float(lc)]
                for (t, lo), lc in zip(oracle_rows, closed)])
    return [png, csv_path]


def render_report(out_dir: str, n: int = 3, h0: float = 1.0, lam: float = 1.0,
                  grid_points: int = 2048) -> list[str]:
    """Render all report figures and their CSV twins; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    written += _fig_bessel_quotient(out, n)
    written += _fig_ode(out, n, h0, lam)
    written += _fig_robin_sweep(out, n, grid_points)
    return [str(p) for p in written]

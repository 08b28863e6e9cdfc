"""Closed-form eigenvalue lower bounds with explicit hypothesis bookkeeping.

Every calculator returns a BoundReport carrying the numeric bound, the full
hypothesis list (including manifold-level assumptions that cannot be checked
from scalar inputs and are therefore recorded as caller-asserted), the
strictness flag, the equality case, and the intermediate quantities (the
characteristic roots tau0/tau1, the threshold constant alpha, the Bessel
zeros involved).

Bounds that can legitimately come out nonpositive (the spectral gap, the
second curvature-operator branch, the boundary/volume quotient past the
first zero of the numerator order) are returned with informative=False
rather than raising: they are valid, just vacuous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bessel import eval_J
from .errors import (
    DenominatorNonpositive,
    DimensionError,
    DomainError,
    HypothesisViolated,
)
from .zeros import alpha_constant, bessel_zero, char_root

_REL_SLACK = 1e-12  # comparison slack so equality cases survive rounding


@dataclass(frozen=True)
class GeometrySpec:
    """Scalar comparison data: dimension, mean-curvature floor, flat model.

    Only the K = 0 comparison model is supported by the bound formulas; if
    an inner radius R is supplied it must satisfy R <= 1/H0, the positivity
    range of the comparison density (1 - r H0)^(n-1).
    """

    n: int
    H0: float
    K: float = 0.0
    R: float | None = None

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 2:
            raise DimensionError(f"dimension must be an integer >= 2, got {self.n}")
        if self.K != 0.0:
            raise DomainError("only the flat comparison model K = 0 is supported")
        if not math.isfinite(self.H0) or self.H0 < 0.0:
            raise DomainError(f"mean-curvature floor must be >= 0, got {self.H0}")
        if self.R is not None:
            if self.R <= 0.0:
                raise DomainError(f"inner radius must be positive, got {self.R}")
            if self.H0 > 0.0 and self.R > 1.0 / self.H0 * (1.0 + _REL_SLACK):
                raise DomainError(
                    f"inner radius {self.R} exceeds 1/H0 = {1.0 / self.H0}"
                )


@dataclass(frozen=True)
class CurvatureInputs:
    """Analytic curvature data the caller supplies; nothing here is computed.

    min_scalar is min of the scalar curvature; gamma a positive floor of the
    curvature operator; sigma_p the p-curvature floor; tau the Robin
    parameter; im_lambda the imaginary part for the MIT condition; nu_1p the
    first Steklov eigenvalue on p-forms; inf_W_minus_T the infimum of the
    Bochner-minus-immersion term entering the gap estimate.
    """

    min_scalar: float = 0.0
    gamma: float | None = None
    sigma_p: float | None = None
    p: int | None = None
    tau: float | None = None
    im_lambda: float | None = None
    nu_1p: float | None = None
    inf_W_minus_T: float | None = None

    def __post_init__(self) -> None:
        if self.p is not None and (int(self.p) != self.p or self.p < 1):
            raise DomainError(f"form degree must be an integer >= 1, got {self.p}")
        if self.gamma is not None and self.gamma <= 0.0:
            raise DomainError(f"curvature-operator floor must be > 0, got {self.gamma}")
        if self.im_lambda is not None and self.im_lambda < 0.0:
            raise DomainError(f"im_lambda must be >= 0, got {self.im_lambda}")


@dataclass(frozen=True)
class Hypothesis:
    name: str
    satisfied: bool
    detail: str = ""
    asserted: bool = False  # lives on the manifold; recorded, not checkable


@dataclass
class BoundReport:
    """A computed bound together with everything needed to trust it."""

    bound_name: str
    value: float | None
    strict: bool
    hypotheses: list[Hypothesis]
    equality_case: str
    intermediates: dict[str, float] = field(default_factory=dict)
    informative: bool = True
    warnings: list[str] = field(default_factory=list)
    explanation: str | None = None

    def hypotheses_ok(self) -> bool:
        return all(h.satisfied for h in self.hypotheses)

    def as_dict(self) -> dict:
        return {
            "bound_name": self.bound_name,
            "value": self.value,
            "strict": self.strict,
            "hypotheses": [
                {"name": h.name, "satisfied": h.satisfied,
                 "detail": h.detail, "asserted": h.asserted}
                for h in self.hypotheses
            ],
            "equality_case": self.equality_case,
            "intermediates": dict(self.intermediates),
            "informative": self.informative,
            "warnings": list(self.warnings),
            "explanation": self.explanation,
        }


def _ric_hypothesis() -> Hypothesis:
    return Hypothesis("Ric >= 0", True,
                      "caller-asserted; not checkable from scalar inputs",
                      asserted=True)


def _h0_hypothesis(H0: float) -> Hypothesis:
    return Hypothesis("H0 > 0", H0 > 0.0, f"H0 = {H0}")


def _require_h0(geo: GeometrySpec) -> None:
    if geo.H0 <= 0.0:
        raise DomainError("this bound needs a positive mean-curvature floor")


def quotient_lower_bound(geo: GeometrySpec, lam: float) -> BoundReport:
    """Lower bound for the boundary/volume integral quotient of a positive
    function f with Delta f <= lam f:

        sqrt(lam) J_{n/2-1}(sqrt(lam)/H0) / J_{n/2}(sqrt(lam)/H0),

    valid while sqrt(lam)/H0 < j_{n/2,1}.  The coefficient is positive below
    j_{n/2-1,1} and carries no information between the two zeros, where the
    report flags it as uninformative.
    """
    _require_h0(geo)
    if lam <= 0.0:
        raise DomainError(f"lam must be positive, got {lam}")
    n = geo.n
    x = math.sqrt(lam) / geo.H0
    j_upper = bessel_zero(0.5 * n, 1)
    j_lower = bessel_zero(0.5 * n - 1.0, 1)
    if x >= j_upper:
        raise HypothesisViolated(
            f"sqrt(lam)/H0 = {x:.9f} >= j_(n/2,1) = {j_upper:.9f}"
        )
    num = eval_J(0.5 * n - 1.0, x).value
    den = eval_J(0.5 * n, x).value
    value = math.sqrt(lam) * num / den
    report = BoundReport(
        bound_name="quotient_lower_bound",
        value=value,
        strict=False,
        hypotheses=[
            _ric_hypothesis(),
            _h0_hypothesis(geo.H0),
            Hypothesis("sqrt(lam)/H0 < j_(n/2,1)", True,
                       f"{x:.9f} < {j_upper:.9f}"),
            Hypothesis("Delta f <= lam f for a positive f", True,
                       "caller-asserted", asserted=True),
        ],
        equality_case=f"geodesic ball of radius 1/H0 = {1.0 / geo.H0}",
        intermediates={"x": x, "j_half_n_minus_1_first": j_lower,
                       "j_half_n_first": j_upper},
    )
    if x >= j_lower:
        report.informative = value > 0.0
        report.warnings.append(
            f"sqrt(lam)/H0 = {x:.9f} is not below j_(n/2-1,1) = {j_lower:.9f}; "
            "the coefficient is nonpositive there and the bound is vacuous"
        )
    return report


def cotangent_bound(geo: GeometrySpec, lam: float) -> BoundReport:
    """Flat analogue of the quotient bound for H0 = 0 via the inner radius:

        sqrt(lam) cot(sqrt(lam) R),   valid while sqrt(lam) R < pi/2.
    """
    if geo.R is None:
        raise DomainError("the H0 = 0 bound needs the inner radius R")
    if lam <= 0.0:
        raise DomainError(f"lam must be positive, got {lam}")
    s = math.sqrt(lam) * geo.R
    if s >= 0.5 * math.pi:
        raise HypothesisViolated(
            f"sqrt(lam) R = {s:.9f} >= pi/2; the cotangent bound does not apply"
        )
    value = math.sqrt(lam) / math.tan(s)
    return BoundReport(
        bound_name="cotangent_bound",
        value=value,
        strict=False,
        hypotheses=[
            _ric_hypothesis(),
            Hypothesis("H0 >= 0 with inner radius R", True,
                       f"H0 = {geo.H0}, R = {geo.R}"),
            Hypothesis("sqrt(lam) R < pi/2", True, f"{s:.9f} < {0.5 * math.pi:.9f}"),
        ],
        equality_case="not attained in the flat-floor comparison",
        intermediates={"sqrt_lam_R": s},
    )


def isoperimetric_bound(geo: GeometrySpec) -> BoundReport:
    """Vol(boundary)/Vol(M) >= n H0 for positive subharmonic weights (f = 1)."""
    _require_h0(geo)
    value = geo.n * geo.H0
    return BoundReport(
        bound_name="isoperimetric_bound",
        value=value,
        strict=False,
        hypotheses=[_ric_hypothesis(), _h0_hypothesis(geo.H0)],
        equality_case=f"geodesic ball of radius 1/H0 = {1.0 / geo.H0}",
        intermediates={},
    )


def dirichlet_faber_krahn(geo: GeometrySpec) -> BoundReport:
    """First Dirichlet eigenvalue is at least H0^2 j_{n/2-1,1}^2 (ball value)."""
    _require_h0(geo)
    j1 = bessel_zero(0.5 * geo.n - 1.0, 1)
    value = geo.H0**2 * j1**2
    return BoundReport(
        bound_name="dirichlet_faber_krahn",
        value=value,
        strict=False,
        hypotheses=[_ric_hypothesis(), _h0_hypothesis(geo.H0)],
        equality_case="isometric to the ball B_{H0}",
        intermediates={"j_half_n_minus_1_first": j1},
    )


def robin_threshold_bound(geo: GeometrySpec, tau: float, tau0: float) -> BoundReport:
    """lambda_1(tau, M) >= H0^2 tau0^2 once tau >= alpha H0.

    alpha is the quotient constant of tau0; for tau below the threshold the
    hypothesis fails and the report carries no value.
    """
    _require_h0(geo)
    if tau <= 0.0:
        raise DomainError(f"Robin parameter must be positive, got {tau}")
    alpha = alpha_constant(geo.n, tau0)
    threshold = alpha * geo.H0
    ok = tau >= threshold * (1.0 - _REL_SLACK)
    hyps = [
        _ric_hypothesis(),
        _h0_hypothesis(geo.H0),
        Hypothesis("tau >= alpha * H0", ok,
                   f"tau = {tau}, alpha*H0 = {threshold:.12g}"),
    ]
    inter = {"alpha": alpha, "tau0": tau0, "threshold": threshold}
    if not ok:
        return BoundReport(
            bound_name="robin_threshold_bound",
            value=None,
            strict=False,
            hypotheses=hyps,
            equality_case="ball B_{H0} with tau = alpha H0",
            intermediates=inter,
            informative=False,
            explanation=f"tau = {tau} is below the threshold alpha*H0 = {threshold:.12g}",
        )
    return BoundReport(
        bound_name="robin_threshold_bound",
        value=geo.H0**2 * tau0**2,
        strict=False,
        hypotheses=hyps,
        equality_case="ball B_{H0} with tau = alpha H0",
        intermediates=inter,
    )


def robin_ball_eigenvalue(n: int, H0: float, tau: float) -> BoundReport:
    """First Robin eigenvalue of the ball B_{H0}, which is simultaneously the
    comparison lower bound for lambda_1(tau, M) on any admissible M.

    The eigenvalue is (H0 x*)^2 where x* is the unique root of
    J_{n/2}(x)/J_{n/2-1}(x) = tau/(H0 x) inside (0, j_{n/2-1,1}).
    """
    if H0 <= 0.0:
        raise DomainError(f"H0 must be positive, got {H0}")
    if tau <= 0.0:
        raise DomainError(f"Robin parameter must be positive, got {tau}")
    root = char_root(n, tau / H0)
    value = (H0 * root.root) ** 2
    j1 = bessel_zero(0.5 * n - 1.0, 1)
    return BoundReport(
        bound_name="robin_ball_eigenvalue",
        value=value,
        strict=False,
        hypotheses=[
            _ric_hypothesis(),
            _h0_hypothesis(H0),
            Hypothesis("x* inside (0, j_(n/2-1,1))", 0.0 < root.root < j1,
                       f"x* = {root.root:.12g}, j = {j1:.12g}"),
        ],
        equality_case="isometric to the ball B_{H0}",
        intermediates={"x_star": root.root, "c": tau / H0,
                       "j_half_n_minus_1_first": j1},
    )


def dirac_bound(geo: GeometrySpec, cur: CurvatureInputs) -> BoundReport:
    """Squared Dirac eigenvalue bound under CHI/gAPS/mgAPS boundary conditions:

        lambda^2 > n min(S)/(4(n-1)) + n H0^2 tau0^2 / (2(n-1)),

    tau0 the characteristic root for the constant n-1.  Strict: equality
    would force a Killing spinor on a scalar-flat ball.
    """
    _require_h0(geo)
    n = geo.n
    tau0 = char_root(n, float(n - 1)).root
    value = (n * cur.min_scalar / (4.0 * (n - 1))
             + n * geo.H0**2 * tau0**2 / (2.0 * (n - 1)))
    return BoundReport(
        bound_name="dirac_bound",
        value=value,
        strict=True,
        hypotheses=[
            _ric_hypothesis(),
            _h0_hypothesis(geo.H0),
            Hypothesis("spin structure, CHI/gAPS/mgAPS boundary condition",
                       True, "caller-asserted", asserted=True),
        ],
        equality_case="cannot be realized",
        intermediates={"tau0": tau0, "c": float(n - 1)},
    )


def mit_bound(geo: GeometrySpec, cur: CurvatureInputs) -> BoundReport:
    """MIT-bag Dirac bound |lambda|^2 >= n min(S)/(4(n-1)) + n H0 Im(lambda)."""
    _require_h0(geo)
    if cur.im_lambda is None:
        raise DomainError("mit_bound needs im_lambda (Im of the eigenvalue)")
    n = geo.n
    value = n * cur.min_scalar / (4.0 * (n - 1)) + n * geo.H0 * cur.im_lambda
    return BoundReport(
        bound_name="mit_bound",
        value=value,
        strict=False,
        hypotheses=[
            _h0_hypothesis(geo.H0),
            Hypothesis("Im(lambda) >= 0", cur.im_lambda >= 0.0,
                       f"im_lambda = {cur.im_lambda}"),
            Hypothesis("spin structure, MIT bag boundary condition", True,
                       "caller-asserted", asserted=True),
        ],
        equality_case=("eigenspinor is an imaginary Killing spinor and the "
                       "boundary is totally umbilical with constant mean curvature"),
        intermediates={},
    )


def yamabe_bound(geo: GeometrySpec, cur: CurvatureInputs) -> BoundReport:
    """Conformal-Laplacian bound mu_1 >= min(S) + 4(n-1)/(n-2) tau1^2 H0^2,
    with tau1 the characteristic root for the constant (n-2)/2.
    """
    if geo.n < 3:
        raise DimensionError(f"the conformal bound needs n >= 3, got {geo.n}")
    _require_h0(geo)
    n = geo.n
    tau1 = char_root(n, 0.5 * (n - 2)).root
    value = cur.min_scalar + 4.0 * (n - 1) / (n - 2) * tau1**2 * geo.H0**2
    return BoundReport(
        bound_name="yamabe_bound",
        value=value,
        strict=False,
        hypotheses=[_ric_hypothesis(), _h0_hypothesis(geo.H0)],
        equality_case="isometric to a round ball in R^n",
        intermediates={"tau1": tau1, "c": 0.5 * (n - 2)},
    )


def dirac_conformal_bound(geo: GeometrySpec, cur: CurvatureInputs) -> BoundReport:
    """Dirac bound through the conformal route (CHI or MIT bag):

        |lambda|^2 > n min(S)/(4(n-1)) + n tau1^2 H0^2 / (n-2).

    Dominates dirac_bound whenever min(S) enters both with the same weight;
    the report carries the sibling value for comparison.
    """
    if geo.n < 3:
        raise DimensionError(f"the conformal route needs n >= 3, got {geo.n}")
    _require_h0(geo)
    n = geo.n
    tau1 = char_root(n, 0.5 * (n - 2)).root
    value = (n * cur.min_scalar / (4.0 * (n - 1))
             + n * tau1**2 * geo.H0**2 / (n - 2))
    direct = dirac_bound(geo, cur)
    report = BoundReport(
        bound_name="dirac_conformal_bound",
        value=value,
        strict=True,
        hypotheses=[
            _ric_hypothesis(),
            _h0_hypothesis(geo.H0),
            Hypothesis("spin structure, CHI or MIT bag boundary condition",
                       True, "caller-asserted", asserted=True),
        ],
        equality_case="cannot be realized",
        intermediates={"tau1": tau1, "dirac_bound_value": direct.value or 0.0,
                       "tau0": direct.intermediates["tau0"]},
    )
    if direct.value is not None and value < direct.value:
        report.warnings.append(
            "conformal route came out below the direct route; expected dominance failed"
        )
    return report


def pform_bound(geo: GeometrySpec, cur: CurvatureInputs, tau0: float) -> BoundReport:
    """Robin p-form bound lambda_{1,p}(tau) > sigma_p^2 tau0^2 / (2 p^2).

    Implemented with the sufficient threshold tau >= sigma_p (alpha/(2p) - 1);
    the sharp statement allows an extra margin -epsilon that is not
    constructive, so this condition is slightly stronger than needed.
    """
    if cur.p is None or cur.sigma_p is None or cur.tau is None:
        raise DomainError("pform_bound needs p, sigma_p and tau")
    n, p = geo.n, cur.p
    if not 1 <= p <= n - 1:
        raise DomainError(f"form degree must satisfy 1 <= p <= n-1, got {p}")
    if cur.sigma_p <= 0.0:
        raise DomainError(f"sigma_p must be positive, got {cur.sigma_p}")
    alpha = alpha_constant(n, tau0)
    threshold = cur.sigma_p * (alpha / (2.0 * p) - 1.0)
    ok = cur.tau >= threshold * (1.0 - math.copysign(_REL_SLACK, threshold))
    value = cur.sigma_p**2 * tau0**2 / (2.0 * p**2)
    hyps = [
        Hypothesis("nonnegative curvature operator", True,
                   "caller-asserted", asserted=True),
        Hypothesis("sigma_p > 0", True, f"sigma_p = {cur.sigma_p}"),
        Hypothesis("tau >= sigma_p (alpha/(2p) - 1)", ok,
                   f"tau = {cur.tau}, threshold = {threshold:.12g} "
                   "(epsilon-free sufficient form)"),
    ]
    inter = {"alpha": alpha, "tau0": tau0, "threshold": threshold,
             "H0": cur.sigma_p / p}
    if not ok:
        return BoundReport(
            bound_name="pform_bound",
            value=None,
            strict=True,
            hypotheses=hyps,
            equality_case="not attained",
            intermediates=inter,
            informative=False,
            explanation=f"tau = {cur.tau} below the sufficient threshold {threshold:.12g}",
        )
    return BoundReport(
        bound_name="pform_bound",
        value=value,
        strict=True,
        hypotheses=hyps,
        equality_case="not attained",
        intermediates=inter,
    )


def pform_ball_comparison(geo: GeometrySpec, cur: CurvatureInputs) -> BoundReport:
    """lambda_{1,p}(tau) > lambda_1(tau, B_{H0})/2 with H0 = sigma_p / p."""
    if cur.p is None or cur.sigma_p is None or cur.tau is None:
        raise DomainError("pform_ball_comparison needs p, sigma_p and tau")
    if cur.sigma_p <= 0.0:
        raise DomainError(f"sigma_p must be positive, got {cur.sigma_p}")
    if cur.tau <= 0.0:
        raise DomainError(f"tau must be positive, got {cur.tau}")
    n, p = geo.n, cur.p
    if not 1 <= p <= n - 1:
        raise DomainError(f"form degree must satisfy 1 <= p <= n-1, got {p}")
    h0 = cur.sigma_p / p
    ball = robin_ball_eigenvalue(n, h0, cur.tau)
    value = (ball.value or 0.0) / 2.0
    return BoundReport(
        bound_name="pform_ball_comparison",
        value=value,
        strict=True,
        hypotheses=[
            Hypothesis("nonnegative curvature operator", True,
                       "caller-asserted", asserted=True),
            Hypothesis("sigma_p > 0", True, f"sigma_p = {cur.sigma_p}"),
        ],
        equality_case="not attained",
        intermediates={"H0": h0, "ball_eigenvalue": ball.value or 0.0,
                       "x_star": ball.intermediates["x_star"]},
    )


def gap_bound(cur: CurvatureInputs) -> BoundReport:
    """Gap between consecutive-degree Robin eigenvalues:

        lambda_{1,p}(tau) - lambda_{1,p-1}(tau) >= inf(W^[p] - T^[p]) / p.

    For a flat ambient space the infimum is 0 and the statement reduces to
    monotonicity in the degree.
    """
    if cur.p is None or cur.inf_W_minus_T is None:
        raise DomainError("gap_bound needs p and inf_W_minus_T")
    if cur.sigma_p is None or cur.sigma_p < 0.0:
        raise DomainError("gap_bound needs the p-convexity floor sigma_p >= 0")
    value = cur.inf_W_minus_T / cur.p
    report = BoundReport(
        bound_name="gap_bound",
        value=value,
        strict=False,
        hypotheses=[
            Hypothesis("isometric immersion into Euclidean space", True,
                       "caller-asserted", asserted=True),
            Hypothesis("sigma_p >= 0 (p-convex boundary)", True,
                       f"sigma_p = {cur.sigma_p}"),
        ],
        equality_case="not characterized",
        intermediates={"inf_W_minus_T": cur.inf_W_minus_T, "p": float(cur.p)},
    )
    if cur.inf_W_minus_T == 0.0:
        report.warnings.append(
            "Euclidean p-convex case: the gap bound states "
            "lambda_{1,p}(tau) >= lambda_{1,p-1}(tau)"
        )
    if value < 0.0:
        report.informative = False
        report.warnings.append("negative gap bound carries no information")
    return report


def gallot_meyer_bound(geo: GeometrySpec, cur: CurvatureInputs) -> BoundReport:
    """Curvature-operator bound with c = max(p+1, n-p+1):

        tau >= -c/(c-1) sigma_p:   lambda_{1,p}(tau) >= p(n-p) c/(c-1) gamma,
        otherwise:                 p(n-p)(nu_1p + tau) gamma
                                   / ((c-1)/c nu_1p - sigma_p),

    the second branch requiring a strictly positive denominator (and only
    arising when sigma_p < 0).
    """
    if cur.p is None or cur.gamma is None or cur.sigma_p is None or cur.tau is None:
        raise DomainError("gallot_meyer_bound needs p, gamma, sigma_p and tau")
    n, p = geo.n, cur.p
    if not 1 <= p <= n - 1:
        raise DomainError(f"form degree must satisfy 1 <= p <= n-1, got {p}")
    c = float(max(p + 1, n - p + 1))
    threshold = -c / (c - 1.0) * cur.sigma_p
    inter = {"c": c, "threshold": threshold}
    hyps = [
        Hypothesis("curvature operator >= gamma > 0", True,
                   f"gamma = {cur.gamma}, caller-asserted", asserted=True),
    ]
    if cur.tau >= threshold:
        value = p * (n - p) * c / (c - 1.0) * cur.gamma
        hyps.append(Hypothesis("tau >= -c/(c-1) sigma_p", True,
                               f"tau = {cur.tau}, threshold = {threshold:.12g}"))
        return BoundReport(
            bound_name="gallot_meyer_bound",
            value=value,
            strict=False,
            hypotheses=hyps,
            equality_case="not characterized",
            intermediates=inter,
        )
    if cur.nu_1p is None:
        raise DomainError("the second branch needs the Steklov eigenvalue nu_1p")
    denom = (c - 1.0) / c * cur.nu_1p - cur.sigma_p
    inter["denominator"] = denom
    inter["nu_1p"] = cur.nu_1p
    if denom <= 0.0:
        raise DenominatorNonpositive(
            f"(c-1)/c nu_1p - sigma_p = {denom:.12g} must be positive"
        )
    value = p * (n - p) * (cur.nu_1p + cur.tau) * cur.gamma / denom
    hyps.append(Hypothesis("tau < -c/(c-1) sigma_p (second branch)", True,
                           f"tau = {cur.tau}, threshold = {threshold:.12g}"))
    hyps.append(Hypothesis("sigma_p < 0 on this branch", cur.sigma_p < 0.0,
                           f"sigma_p = {cur.sigma_p}"))
    report = BoundReport(
        bound_name="gallot_meyer_bound",
        value=value,
        strict=False,
        hypotheses=hyps,
        equality_case="not characterized",
        intermediates=inter,
    )
    if cur.nu_1p + cur.tau <= 0.0:
        report.warnings.append(
            "nu_1p + tau <= 0: the derivation divides by it, treat with care"
        )
    if value <= 0.0:
        report.informative = False
        report.warnings.append("nonpositive bound carries no information")
    return report

"""Bessel-quotient eigenvalue bounds with independent numerical verification.

The package has five working parts: series evaluation of J/Y and their
identities (`bessel`), zeros and characteristic roots (`zeros`), the
closed-form bound calculators (`bounds`), the comparison ODE with its
Bessel solution (`ode`), and a radial finite-difference eigensolver used
as a ground-truth oracle (`oracle`).  `verify` bundles the cross-module
invariant batteries and `cli` exposes everything on the command line.
"""

from .bessel import (
    BesselOrder,
    BesselValue,
    bowman_solution,
    eval_J,
    eval_J_derivative,
    eval_Y,
    eval_Y_derivative,
    j_derivative_forms,
    lommel_residuals,
    ratio_next_over_current,
)
from .bounds import (
    BoundReport,
    CurvatureInputs,
    GeometrySpec,
    Hypothesis,
    cotangent_bound,
    dirac_bound,
    dirac_conformal_bound,
    dirichlet_faber_krahn,
    gallot_meyer_bound,
    gap_bound,
    isoperimetric_bound,
    mit_bound,
    pform_ball_comparison,
    pform_bound,
    quotient_lower_bound,
    robin_ball_eigenvalue,
    robin_threshold_bound,
    yamabe_bound,
)
from .errors import (
    BesselBoundsError,
    BracketFailure,
    ConvergenceFailure,
    DegenerateGrid,
    DenominatorNonpositive,
    DimensionError,
    DomainError,
    HypothesisViolated,
    NearPoleError,
    NonConvergence,
    NoRootInInterval,
    OrderOutOfRange,
    StepUnderflow,
)
from .ode import (
    FirstZeroInfo,
    OdeProblem,
    OdeSolution,
    closed_form_coefficients,
    closed_form_eval,
    determinant_check,
    first_zero,
    integrate_ivp,
)
from .oracle import RadialProblem, RadialSpectrum, robin_sweep, solve_lowest
from .zeros import (
    CharRoot,
    ZeroRequest,
    airy_floor,
    alpha_constant,
    alpha_series,
    bessel_zero,
    char_root,
    freitas_ratio_check,
    mcmahon_seed,
    quotient_series,
)

__version__ = "0.1.0"

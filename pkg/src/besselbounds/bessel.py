"""Bessel functions of the first and second kind, real order, by direct series.

J_nu is summed from its ascending power series

    J_nu(x) = sum_k (-1)^k (x/2)^(nu+2k) / (k! Gamma(nu+k+1)),

Y_nu comes from the quotient (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi) for
non-integer order and from the log / harmonic-sum expansion for integer
order.  Negative integer orders reduce through J_{-n} = (-1)^n J_n and
Y_{-n} = (-1)^n Y_n.

Evaluation strategy: a plain double-precision pass with compensated (Kahan)
summation and a running bound on the accumulated term magnitude.  The
alternating series cancels catastrophically once x is large (the term
magnitudes sum to roughly I_nu(x)), so whenever the predicted rounding error
exceeds the requested tolerance the same series is re-summed in extended
precision with guard digits sized from the measured cancellation.  No
asymptotic expansions are used; the hard cap of 500 terms limits direct
evaluation to roughly x <= 300, far beyond every desk-scale use here.

All functions are pure; nothing in this module caches state.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import mpmath

from .errors import DomainError, NearPoleError, NonConvergence, OrderOutOfRange

MAX_ORDER = 200.0
MAX_TERMS = 500

# Euler's constant, 20 digits.
EULER_GAMMA = 0.57721566490153286061

_EPS = 2.220446049250313e-16
_TINY = 1e-300


def default_tolerance() -> float:
    """Default relative series tolerance; SPEC_TOL overrides it."""
    return float(os.environ.get("SPEC_TOL", "1e-12"))


@dataclass(frozen=True)
class BesselOrder:
    """Real order nu, restricted to the practical envelope |nu| <= 200."""

    nu: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.nu):
            raise OrderOutOfRange(f"order must be finite, got {self.nu}")
        if abs(self.nu) > MAX_ORDER:
            raise OrderOutOfRange(f"|nu| = {abs(self.nu)} exceeds {MAX_ORDER}")

    @property
    def is_integer(self) -> bool:
        return float(self.nu).is_integer()

    @property
    def is_half_integer(self) -> bool:
        return (2.0 * self.nu).is_integer() and not self.is_integer


@dataclass(frozen=True)
class BesselValue:
    """Evaluation result with an error estimate for the series summed.

    abs_err_estimate bounds the truncation error of the series actually
    summed plus the accumulated rounding of the summation pass.
    """

    x: float
    value: float
    abs_err_estimate: float
    terms_used: int

    def __post_init__(self) -> None:
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")
        if self.abs_err_estimate < 0.0:
            raise ValueError("abs_err_estimate must be >= 0")


def _order_value(nu: float | BesselOrder) -> float:
    if isinstance(nu, BesselOrder):
        return nu.nu
    return BesselOrder(float(nu)).nu


def _recip_gamma(a: float) -> float:
    """1/Gamma(a); zero at the poles (nonpositive integers).

    For a <= 0.5 the reflection formula 1/Gamma(a) = sin(pi a) Gamma(1-a)/pi
    is used, so the series below is defined entirely through 1/Gamma.
    May raise OverflowError for very negative a; callers fall back to the
    extended-precision path in that case.
    """
    if a > 0.5:
        return 1.0 / math.gamma(a)
    if a == math.floor(a):
        return 0.0
    return math.sin(math.pi * a) * math.gamma(1.0 - a) / math.pi


def _amplitude(x: float) -> float:
    """Rough oscillation amplitude of J at argument x, used as a scale floor."""
    if x <= 1.0:
        return 1.0
    return math.sqrt(2.0 / (math.pi * x))


def _j_series_float(nu: float, x: float, tol: float):
    """One double-precision pass over the ascending series.

    Returns (value, truncation_bound, terms_used, abs_term_sum) or None when
    the leading coefficient leaves the double range.
    """
    half = 0.5 * x
    try:
        t = half**nu * _recip_gamma(nu + 1.0)
    except OverflowError:
        return None
    if t == 0.0:
        # Leading term underflowed; within |nu| <= 200 and x <= 300 the
        # remaining terms are smaller still, so the value underflows honestly.
        return (0.0, 0.0, 1, 0.0)
    if math.isinf(t):
        return None
    q = half * half
    s = t
    comp = 0.0
    abs_sum = abs(t)
    k = 0
    while k < MAX_TERMS:
        k += 1
        t = -t * q / (k * (nu + k))
        y = t - comp
        tt = s + y
        comp = (tt - s) - y
        s = tt
        at = abs(t)
        abs_sum += at
        if at <= tol * (abs(s) + _TINY):
            return (s, at, k + 1, abs_sum)
    raise NonConvergence(
        f"J series for nu={nu}, x={x} not below tol within {MAX_TERMS} terms"
    )


def _j_series_mp(nu: float, x: float, tol: float, dps: int):
    """Same series summed at dps working digits; returns (value, trunc, terms, abs_sum)."""
    with mpmath.workdps(dps):
        half = mpmath.mpf(x) / 2
        t = half ** mpmath.mpf(nu) * mpmath.rgamma(nu + 1)
        q = half * half
        s = t
        abs_sum = abs(t)
        tol_mp = mpmath.mpf(tol)
        tiny = mpmath.mpf(10) ** -300
        k = 0
        while k < MAX_TERMS:
            k += 1
            t = -t * q / (k * (nu + k))
            s += t
            at = abs(t)
            abs_sum += at
            if at <= tol_mp * (abs(s) + tiny):
                round_err = abs_sum * mpmath.mpf(10) ** (5 - dps)
                return float(s), float(at + round_err), k + 1, float(abs_sum)
        raise NonConvergence(
            f"J series for nu={nu}, x={x} not below tol within {MAX_TERMS} terms"
        )


def _mp_digits(abs_sum: float, target_abs: float) -> int:
    """Working digits so that rounding on abs_sum stays below target_abs."""
    if abs_sum <= 0.0 or target_abs <= 0.0:
        return 30
    need = math.log10(abs_sum) - math.log10(target_abs)
    return int(max(25.0, need + 10.0))


def eval_J(nu: float | BesselOrder, x: float, tol: float | None = None) -> BesselValue:
    """Bessel function of the first kind by its ascending series.

    x = 0 is allowed only for nu >= 0.  The default relative tolerance is
    1e-12 (SPEC_TOL overrides); the result's abs_err_estimate reports what
    was actually achieved.
    """
    nu = _order_value(nu)
    if tol is None:
        tol = default_tolerance()
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"J requires x >= 0, got {x}")
    if x == 0.0:
        if nu < 0.0:
            raise DomainError("J_nu(0) undefined for nu < 0")
        return BesselValue(x=0.0, value=1.0 if nu == 0.0 else 0.0,
                           abs_err_estimate=0.0, terms_used=1)
    if nu < 0.0 and float(nu).is_integer():
        inner = eval_J(-nu, x, tol)
        sign = -1.0 if int(-nu) % 2 else 1.0
        return BesselValue(x=x, value=sign * inner.value,
                           abs_err_estimate=inner.abs_err_estimate,
                           terms_used=inner.terms_used)

    res = _j_series_float(nu, x, tol)
    if res is not None:
        value, trunc, terms, abs_sum = res
        err = trunc + 4.0 * _EPS * abs_sum
        if err <= tol * max(abs(value), _TINY):
            return BesselValue(x=x, value=value, abs_err_estimate=err,
                               terms_used=terms)
        # The float value is only a usable scale when its error is smaller
        # than itself; otherwise fall back to the oscillation amplitude.
        if abs(value) > err:
            scale_guess = abs(value)
        else:
            scale_guess = _amplitude(x) * 1e-6
        dps = _mp_digits(abs_sum, tol * scale_guess)
    else:
        # Exponent range exceeded in double; size the extended pass from the
        # crude envelope log10 sum |terms| <~ x log10(e) + |nu log10(x/2)|.
        dps = int(40 + 0.45 * x + abs(nu) * abs(math.log10(0.5 * x) if x > 0 else 1.0))
    value, err, terms, abs_sum_mp = _j_series_mp(nu, x, tol, dps)
    if err > tol * max(abs(value), _TINY):
        # One retry with the deficit made up; beyond that report honestly.
        trusted = abs(value) if abs(value) > err else _amplitude(x) * 1e-9
        deficit = max(0.0, math.log10(err / (tol * max(trusted, _TINY))))
        dps = int(dps + deficit + 10)
        value, err, terms, abs_sum_mp = _j_series_mp(nu, x, tol, dps)
    return BesselValue(x=x, value=value, abs_err_estimate=err, terms_used=terms)


def _y_integer_float(n: int, x: float, tol: float):
    """Double-precision pass of the integer-order Y expansion.

    Y_n = (2/pi) J_n (ln(x/2) + gamma)
          - (1/pi) sum_{k<n} (n-k-1)!/k! (x/2)^{2k-n}
          + (1/pi) sum_k (-1)^{k-1} (H_k + H_{k+n}) (x/2)^{2k+n} / (k! (k+n)!)

    with H_0 = 0.  Returns (value, err_estimate, terms) or None if the
    double range is exceeded.
    """
    half = 0.5 * x
    jv = eval_J(float(n), x, tol=tol * 0.05)
    log_factor = math.log(half) + EULER_GAMMA
    log_term = (2.0 / math.pi) * jv.value * log_factor
    err = (2.0 / math.pi) * (jv.abs_err_estimate * abs(log_factor)
                             + abs(jv.value) * _EPS * 2.0)

    fin = 0.0
    try:
        for k in range(n):
            fin += (math.factorial(n - k - 1) / math.factorial(k)) * half ** (2 * k - n)
    except OverflowError:
        return None
    if math.isinf(fin):
        return None
    err += 2.0 * _EPS * fin / math.pi

    # Harmonic-sum series; empty harmonic sum (k = 0) is 0.
    try:
        m = half**n / math.factorial(n)
    except OverflowError:
        return None
    q = half * half
    hk = 0.0
    hnk = sum(1.0 / i for i in range(1, n + 1))
    sign = -1.0
    s = sign * (hk + hnk) * m
    abs_sum = abs(s)
    terms = 1
    acc = log_term - fin / math.pi + s / math.pi
    k = 0
    while k < MAX_TERMS:
        k += 1
        m = m * q / (k * (k + n))
        hk += 1.0 / k
        hnk += 1.0 / (k + n)
        sign = -sign
        t = sign * (hk + hnk) * m
        s += t
        abs_sum += abs(t)
        terms += 1
        acc = log_term - fin / math.pi + s / math.pi
        if abs(t) <= tol * (abs(acc) + _TINY):
            break
    else:
        raise NonConvergence(f"Y series for n={n}, x={x} exceeded {MAX_TERMS} terms")
    err += (abs(t) + 4.0 * _EPS * abs_sum) / math.pi
    return acc, err, terms + jv.terms_used, abs_sum


def _y_integer_mp(n: int, x: float, tol: float, dps: int):
    with mpmath.workdps(dps):
        half = mpmath.mpf(x) / 2
        # J_n at matching precision.
        t = half ** n / mpmath.factorial(n)
        q = half * half
        j = t
        k = 0
        while k < MAX_TERMS:
            k += 1
            t = -t * q / (k * (n + k))
            j += t
            if abs(t) <= mpmath.mpf(tol) * 0.01 * (abs(j) + mpmath.mpf(10) ** -300):
                break
        else:
            raise NonConvergence(f"J series inside Y for n={n}, x={x}")
        log_term = 2 / mpmath.pi * j * (mpmath.log(half) + mpmath.euler)
        fin = mpmath.mpf(0)
        for i in range(n):
            fin += mpmath.factorial(n - i - 1) / mpmath.factorial(i) * half ** (2 * i - n)
        m = half ** n / mpmath.factorial(n)
        hk = mpmath.mpf(0)
        hnk = mpmath.fsum(mpmath.mpf(1) / i for i in range(1, n + 1))
        sign = mpmath.mpf(-1)
        s = sign * (hk + hnk) * m
        abs_sum = abs(s)
        terms = 1
        k = 0
        while k < MAX_TERMS:
            k += 1
            m = m * q / (k * (k + n))
            hk += mpmath.mpf(1) / k
            hnk += mpmath.mpf(1) / (k + n)
            sign = -sign
            t = sign * (hk + hnk) * m
            s += t
            abs_sum += abs(t)
            terms += 1
            acc = log_term - fin / mpmath.pi + s / mpmath.pi
            if abs(t) <= mpmath.mpf(tol) * (abs(acc) + mpmath.mpf(10) ** -300):
                break
        else:
            raise NonConvergence(f"Y series for n={n}, x={x} exceeded {MAX_TERMS} terms")
        acc = log_term - fin / mpmath.pi + s / mpmath.pi
        round_err = (abs_sum + abs(fin) + abs(log_term)) * mpmath.mpf(10) ** (5 - dps)
        return float(acc), float(abs(t) + round_err), terms


def eval_Y(nu: float | BesselOrder, x: float, tol: float | None = None) -> BesselValue:
    """Bessel function of the second kind.

    Non-integer order uses Y_nu = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi);
    integer order uses the log / harmonic-sum expansion.  Y is singular at
    x = 0, so x must be strictly positive.
    """
    nu = _order_value(nu)
    if tol is None:
        tol = default_tolerance()
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"Y requires x > 0 (singular at 0), got {x}")

    order = BesselOrder(nu)
    if order.is_integer:
        n = int(nu)
        if n < 0:
            inner = eval_Y(float(-n), x, tol)
            sign = -1.0 if (-n) % 2 else 1.0
            return BesselValue(x=x, value=sign * inner.value,
                               abs_err_estimate=inner.abs_err_estimate,
                               terms_used=inner.terms_used)
        res = _y_integer_float(n, x, tol)
        if res is not None:
            value, err, terms, _ = res
            if math.isfinite(value) and err <= tol * max(abs(value), _TINY):
                return BesselValue(x=x, value=value, abs_err_estimate=err,
                                   terms_used=terms)
        dps = int(30 + 0.5 * x + n)
        value, err, terms = _y_integer_mp(n, x, tol, dps)
        if err > tol * max(abs(value), _TINY):
            dps = int(dps + math.log10(err / (tol * max(abs(value), _TINY))) + 10)
            value, err, terms = _y_integer_mp(n, x, tol, dps)
        if abs(value) > 1e306:
            raise DomainError(f"Y_{n}({x}) exceeds the double range")
        return BesselValue(x=x, value=value, abs_err_estimate=err, terms_used=terms)

    if order.is_half_integer:
        # cos(nu pi) = 0 exactly; sin(nu pi) = (-1)^m for nu = m + 1/2.
        m = int(math.floor(nu))
        sin_pi = -1.0 if m % 2 else 1.0
        jm = eval_J(-nu, x, tol * 0.25)
        value = -jm.value / sin_pi
        err = jm.abs_err_estimate + 2.0 * _EPS * abs(value)
        return BesselValue(x=x, value=value, abs_err_estimate=err,
                           terms_used=jm.terms_used)

    sin_pi = math.sin(math.pi * nu)
    cos_pi = math.cos(math.pi * nu)
    jp = eval_J(nu, x, tol * 0.1)
    jm = eval_J(-nu, x, tol * 0.1)
    value = (jp.value * cos_pi - jm.value) / sin_pi
    err = (abs(cos_pi) * jp.abs_err_estimate + jm.abs_err_estimate) / abs(sin_pi)
    err += 4.0 * _EPS * (abs(jp.value * cos_pi) + abs(jm.value)) / abs(sin_pi)
    return BesselValue(x=x, value=value, abs_err_estimate=err,
                       terms_used=jp.terms_used + jm.terms_used)


def eval_J_derivative(nu: float | BesselOrder, x: float,
                      tol: float | None = None) -> float:
    """J'_nu(x) through the lower-order recurrence J_{nu-1} - (nu/x) J_nu."""
    nu = _order_value(nu)
    if tol is None:
        tol = default_tolerance()
    if x <= 0.0:
        raise DomainError(f"derivative recurrences require x > 0, got {x}")
    jm1 = eval_J(nu - 1.0, x, tol * 0.1)
    j0 = eval_J(nu, x, tol * 0.1)
    return jm1.value - (nu / x) * j0.value


def j_derivative_forms(nu: float | BesselOrder, x: float,
                       tol: float | None = None) -> tuple[float, float, float]:
    """The three recurrence expressions for J'_nu, for consistency checking.

    Returns (half-difference form, lower-order form, upper-order form):
    (J_{nu-1} - J_{nu+1})/2,  J_{nu-1} - (nu/x) J_nu,  (nu/x) J_nu - J_{nu+1}.
    """
    nu = _order_value(nu)
    if tol is None:
        tol = default_tolerance()
    if x <= 0.0:
        raise DomainError(f"derivative recurrences require x > 0, got {x}")
    jm1 = eval_J(nu - 1.0, x, tol * 0.1).value
    j0 = eval_J(nu, x, tol * 0.1).value
    jp1 = eval_J(nu + 1.0, x, tol * 0.1).value
    return (0.5 * (jm1 - jp1), jm1 - (nu / x) * j0, (nu / x) * j0 - jp1)


def eval_Y_derivative(nu: float | BesselOrder, x: float,
                      tol: float | None = None) -> float:
    """Y'_nu(x); Y satisfies the same recurrences as J."""
    nu = _order_value(nu)
    if tol is None:
        tol = default_tolerance()
    if x <= 0.0:
        raise DomainError(f"derivative recurrences require x > 0, got {x}")
    ym1 = eval_Y(nu - 1.0, x, tol * 0.1)
    y0 = eval_Y(nu, x, tol * 0.1)
    return ym1.value - (nu / x) * y0.value


def ratio_next_over_current(nu: float | BesselOrder, x: float,
                            tol: float | None = None) -> float:
    """J_{nu+1}(x) / J_nu(x) by direct quotient.

    Rejects x within 1e-8 of a zero of the denominator; the Newton distance
    |J_nu / J'_nu| is the proximity estimate (zeros of J_nu are simple).
    """
    nu = _order_value(nu)
    if tol is None:
        tol = default_tolerance()
    if x <= 0.0:
        raise DomainError(f"quotient requires x > 0, got {x}")
    den = eval_J(nu, x, tol * 0.1)
    num = eval_J(nu + 1.0, x, tol * 0.1)
    jprime = eval_J_derivative(nu, x, tol)
    if den.value == 0.0:
        raise NearPoleError(f"J_{nu}({x}) vanishes")
    if abs(jprime) > 0.0 and abs(den.value / jprime) < 1e-8:
        raise NearPoleError(
            f"x={x} is within 1e-8 of a zero of J_{nu} "
            f"(Newton distance {abs(den.value / jprime):.2e})"
        )
    return num.value / den.value


def lommel_residuals(nu: float | BesselOrder, x: float,
                     tol: float | None = None) -> tuple[float, float]:
    """Absolute residuals of the two cross-product identities.

    First:  |J_{nu-1} J_{-nu} + J_nu J_{-nu+1} - 2 sin(pi nu)/(pi x)|
    Second: |Y_nu J_{nu+1} - Y_{nu+1} J_nu - 2/(pi x)|
    """
    nu = _order_value(nu)
    if tol is None:
        tol = default_tolerance()
    if x <= 0.0:
        raise DomainError(f"identities require x > 0, got {x}")
    order = BesselOrder(nu)
    sin_pi = 0.0 if order.is_integer else math.sin(math.pi * nu)
    first = (eval_J(nu - 1.0, x, tol).value * eval_J(-nu, x, tol).value
             + eval_J(nu, x, tol).value * eval_J(-nu + 1.0, x, tol).value
             - 2.0 * sin_pi / (math.pi * x))
    second = (eval_Y(nu, x, tol).value * eval_J(nu + 1.0, x, tol).value
              - eval_Y(nu + 1.0, x, tol).value * eval_J(nu, x, tol).value
              - 2.0 / (math.pi * x))
    return abs(first), abs(second)


def bowman_solution(alpha: float, beta: float, gamma_exp: float,
                    m: float | BesselOrder, A: float, B: float,
                    x: float, tol: float | None = None) -> float:
    """Evaluate y(x) = x^alpha (A J_m(beta x^gamma) + B W(beta x^gamma)).

    W is Y_m for integer m and J_{-m} otherwise, matching the two solution
    branches of the transformed equation

        y'' - (2 alpha - 1)/x y'
            + (beta^2 gamma^2 x^(2 gamma - 2) + (alpha^2 - m^2 gamma^2)/x^2) y = 0.
    """
    m = _order_value(m)
    if tol is None:
        tol = default_tolerance()
    if x <= 0.0:
        raise DomainError(f"solution evaluated for x > 0, got {x}")
    if beta <= 0.0:
        raise DomainError(f"beta must be positive, got {beta}")
    if A == 0.0 and B == 0.0:
        return 0.0
    arg = beta * x**gamma_exp
    total = 0.0
    if A != 0.0:
        total += A * eval_J(m, arg, tol).value
    if B != 0.0:
        if BesselOrder(m).is_integer:
            total += B * eval_Y(m, arg, tol).value
        else:
            total += B * eval_J(-m, arg, tol).value
    return x**alpha * total

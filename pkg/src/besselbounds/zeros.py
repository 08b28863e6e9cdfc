"""Zeros of J_nu and roots of the characteristic quotient equations.

bessel_zero locates j_{nu,k} by sequential scanning (guaranteed indexing)
for small k and by a corrected McMahon seed plus Newton polish once the
seed is deep in its asymptotic regime.  char_root finds the unique root of

    g(x) = x J_{n/2}(x) / J_{n/2-1}(x) - c

on (0, j_{n/2-1,1}), where g increases from -c to +infinity; this single
generic path serves every characteristic constant (the trig shortcuts that
exist for odd n live in the tests only).

A process-wide memo table of computed zeros is kept under a lock; results
never depend on the cache, it only avoids rescanning.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

from .bessel import (
    BesselOrder,
    default_tolerance,
    eval_J,
    eval_J_derivative,
    _amplitude,
)
from .errors import (
    BracketFailure,
    DimensionError,
    DomainError,
    NoRootInInterval,
    NonConvergence,
)

# First negative zero of the Airy function, as used in the j_{nu,1} floor.
AIRY_A1 = -2.3381

_SCAN_TOL = 1e-6
_POLISH_TOL = 1e-13
_SERIES_REACH = 250.0  # largest argument the 500-term series resolves
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class ZeroRequest:
    """k-th positive zero of J_nu; the interlacing theory needs nu >= -1."""

    nu: float
    k: int

    def __post_init__(self) -> None:
        BesselOrder(self.nu)
        if self.k < 1:
            raise DomainError(f"zero index must be >= 1, got {self.k}")
        if self.nu < -1.0:
            raise DomainError(f"zeros supported for nu >= -1, got {self.nu}")


@dataclass(frozen=True)
class CharRoot:
    """Root of x J_{n/2}/J_{n/2-1}(x) = c with the bracket that isolated it."""

    n: int
    c: float
    root: float
    bracket: tuple[float, float]

    def __post_init__(self) -> None:
        lo, hi = self.bracket
        if not (lo < self.root < hi):
            raise ValueError("root must lie inside its bracket")


_zero_cache: dict[float, list[float]] = {}
_cache_lock = threading.Lock()


def mcmahon_seed(nu: float, k: int) -> float:
    """Leading-order zero location (k + nu/2 - 1/4) pi, for seeding only."""
    return (k + 0.5 * nu - 0.25) * math.pi


def _mcmahon_refined(nu: float, k: int) -> float:
    """McMahon location with three correction terms in 1/(8 beta)."""
    beta = mcmahon_seed(nu, k)
    mu = 4.0 * nu * nu
    b8 = 8.0 * beta
    return (beta
            - (mu - 1.0) / b8
            - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8**3)
            - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0)
            / (15.0 * b8**5))


def _sign_J(nu: float, x: float) -> float:
    """Sign of J_nu(x), as cheaply as the sign can be trusted.

    A loose-tolerance evaluation suffices whenever its error estimate is
    dominated by the value itself; only probes landing close to a zero (or
    deep in the cancellation regime) pay for a tight evaluation.
    """
    res = eval_J(nu, x, 1e-2)
    if res.abs_err_estimate < 0.25 * abs(res.value):
        return math.copysign(1.0, res.value)
    res = eval_J(nu, x, _POLISH_TOL)
    return math.copysign(1.0, res.value)


def _refine_zero(nu: float, lo: float, hi: float) -> float:
    """Bisection to width 1e-6, then safeguarded Newton."""
    s_lo = _sign_J(nu, lo)
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if _sign_J(nu, mid) == s_lo:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(12):
        f = eval_J(nu, x, _POLISH_TOL).value
        fp = eval_J_derivative(nu, x, _POLISH_TOL)
        if fp == 0.0:
            break
        step = f / fp
        x_new = x - step
        if not (lo <= x_new <= hi):
            # Overshoot: fall back to a bisection step on the live bracket.
            if math.copysign(1.0, f) == s_lo:
                lo = x
            else:
                hi = x
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 1e-15 * x:
            x = x_new
            break
        x = x_new
    return x


def _scan_start(nu: float) -> tuple[float, float]:
    """Starting abscissa and step for the sequential zero scan.

    Zeros of J_nu exceed nu for nu > 0; for nu < 1/2 the first zero can sit
    close to the origin, so the scan starts tiny with a finer step.
    """
    if nu >= 0.5:
        return max(0.5, nu), 1.0
    return 1e-4, 0.05


def _extend_zero_list(nu: float, upto_k: int) -> list[float]:
    """Grow the cached, strictly increasing list of zeros of J_nu to upto_k."""
    with _cache_lock:
        zs = list(_zero_cache.get(nu, []))
    if len(zs) >= upto_k:
        return zs
    if zs:
        x = zs[-1] + 0.05
        step = 1.0
    else:
        x, step = _scan_start(nu)
    s_prev = _sign_J(nu, x)
    guard = 0
    while len(zs) < upto_k:
        if step < 1.0 and x >= 1.0:
            step = 1.0
        x_next = x + step
        s_next = _sign_J(nu, x_next)
        if s_next != s_prev:
            zs.append(_refine_zero(nu, x, x_next))
        x, s_prev = x_next, s_next
        guard += 1
        if guard > 20000:
            raise BracketFailure(
                f"scan for zeros of J_{nu} exhausted its budget at x={x}"
            )
    with _cache_lock:
        known = _zero_cache.setdefault(nu, [])
        if len(zs) > len(known):
            _zero_cache[nu] = zs
    return zs


def bessel_zero(nu: float | BesselOrder | ZeroRequest, k: int | None = None) -> float:
    """k-th positive zero of J_nu.

    Small indices come from the sequential scan (which cannot mislabel a
    zero); for k > 20 the refined McMahon seed is Newton-polished whenever
    it is deep enough in its asymptotic regime (8 beta >= 2 mu), and the
    scan is the fallback otherwise.
    """
    if isinstance(nu, ZeroRequest):
        req = nu
    else:
        if k is None:
            raise DomainError("bessel_zero needs an index k")
        req = ZeroRequest(nu=float(nu if not isinstance(nu, BesselOrder) else nu.nu),
                          k=int(k))
    nu_v, k_v = req.nu, req.k

    with _cache_lock:
        cached = _zero_cache.get(nu_v, [])
        if len(cached) >= k_v:
            return cached[k_v - 1]

    if k_v > 20:
        beta = mcmahon_seed(nu_v, k_v)
        mu = 4.0 * nu_v * nu_v
        if 8.0 * beta >= 2.0 * mu:
            seed = _mcmahon_refined(nu_v, k_v)
            if seed > _SERIES_REACH:
                # Beyond the 500-term series envelope the seed cannot be
                # polished or residual-checked, but this deep in the
                # asymptotic regime its own error is already negligible.
                return seed
            root = _polish_from_seed(nu_v, seed)
            _check_residual(nu_v, root)
            return root
    zs = _extend_zero_list(nu_v, k_v)
    root = zs[k_v - 1]
    _check_residual(nu_v, root)
    return root


def _polish_from_seed(nu: float, seed: float) -> float:
    x = seed
    lo, hi = seed - 1.2, seed + 1.2
    for _ in range(8):
        f = eval_J(nu, x, _POLISH_TOL).value
        fp = eval_J_derivative(nu, x, _POLISH_TOL)
        if fp == 0.0:
            break
        x_new = x - f / fp
        if not (lo <= x_new <= hi):
            raise BracketFailure(
                f"Newton from McMahon seed {seed} for nu={nu} left its bracket"
            )
        if abs(x_new - x) <= 1e-15 * x:
            return x_new
        x = x_new
    return x


def _check_residual(nu: float, root: float) -> None:
    val = abs(eval_J(nu, root, _POLISH_TOL).value)
    scale = max(abs(eval_J(nu + 1.0, root, _POLISH_TOL).value), _amplitude(root))
    if val > 1e-11 * scale:
        raise NonConvergence(
            f"zero of J_{nu} at {root} has residual {val:.2e} above 1e-11 scale"
        )


def zeros_for_series(nu: float, count: int, n_exact: int = 20) -> list[float]:
    """Zeros j_{nu,1..count} for series summation.

    The first n_exact come from the solver; beyond that the refined McMahon
    expansion is used directly, whose error is far below what the quotient
    series weights 2x/(j^2 - x^2) can resolve.
    """
    head = _extend_zero_list(nu, min(count, n_exact))[:count]
    if count <= n_exact:
        return head
    return head + [_mcmahon_refined(nu, k) for k in range(n_exact + 1, count + 1)]


def quotient_series(nu: float, x: float, n_zeros: int = 200) -> float:
    """J_{nu+1}(x)/J_nu(x) summed over zeros: sum_k 2x / (j_{nu,k}^2 - x^2).

    Explicit terms run to 5*n_zeros (McMahon beyond the solver head), then
    the remainder is an integral comparison against McMahon-asymptotic
    zeros with the first correction folded into the lower limit.
    """
    if x <= 0.0:
        raise DomainError(f"quotient series requires x > 0, got {x}")
    zs = zeros_for_series(nu, 5 * n_zeros)
    if x >= zs[0]:
        # The series representation is only used below the first zero here.
        raise DomainError(f"x={x} is not below j_({nu},1)={zs[0]:.6f}")
    s = 0.0
    for z in reversed(zs):  # ascending term size; small terms first
        s += 2.0 * x / (z * z - x * x)
    mu = 4.0 * nu * nu
    beta_mid = (5 * n_zeros + 0.5 + 0.5 * nu - 0.25) * math.pi
    u = beta_mid - (mu - 1.0) / (8.0 * beta_mid)
    s += (1.0 / math.pi) * math.log((u + x) / (u - x))
    return s


def _quotient(nu: float, x: float, tol: float) -> float:
    """x J_{nu+1}(x) / J_nu(x) with matched evaluation tolerance."""
    num = eval_J(nu + 1.0, x, tol).value
    den = eval_J(nu, x, tol).value
    return x * num / den


@lru_cache(maxsize=4096)
def char_root(n: int, c: float) -> CharRoot:
    """Unique root of g(x) = x J_{n/2}(x)/J_{n/2-1}(x) - c on (0, j_{n/2-1,1}).

    g increases monotonically from -c at 0+ to +infinity at the end of the
    interval (its series over zeros has positive terms), so a root exists
    exactly when c > 0 and monotone bracketing enforces uniqueness.  No
    statement is made outside this interval.  Results are memoized; the
    returned record is immutable.
    """
    if n < 2 or int(n) != n:
        raise DimensionError(f"dimension must be an integer >= 2, got {n}")
    if c <= 0.0:
        raise NoRootInInterval(
            f"g tends to {-c} >= 0 at 0+ and increases; no root for c = {c}"
        )
    nu = 0.5 * n - 1.0
    j1 = bessel_zero(nu, 1)
    lo = j1 * 1e-3
    hi = j1 * (1.0 - 1e-9)
    # Lower the left edge if the root sits very close to the origin.
    while _quotient(nu, lo, _SCAN_TOL) - c >= 0.0:
        lo *= 0.125
        if lo < 1e-280:
            raise NoRootInInterval(f"no sign change above x=0 for c={c}")
    if _quotient(nu, hi, _SCAN_TOL) - c <= 0.0:
        raise BracketFailure(
            f"g({hi}) <= 0 despite the pole at j_({nu},1); c={c} out of reach"
        )
    # Coarse bisection stops while |g| still dominates the evaluation noise;
    # a tight-tolerance phase then carries the bracket to rounding level, so
    # the final Newton polish starts from a certainly-correct enclosure.
    b_lo, b_hi = lo, hi
    while b_hi - b_lo > 1e-4 * j1:
        mid = 0.5 * (b_lo + b_hi)
        if _quotient(nu, mid, _SCAN_TOL) - c < 0.0:
            b_lo = mid
        else:
            b_hi = mid
    while b_hi - b_lo > 1e-10 * j1:
        mid = 0.5 * (b_lo + b_hi)
        if _quotient(nu, mid, _POLISH_TOL) - c < 0.0:
            b_lo = mid
        else:
            b_hi = mid
    x = 0.5 * (b_lo + b_hi)
    # Newton with g'(x) = x - 2 nu q + x q^2 where q = J_{nu+1}/J_nu,
    # a consequence of the derivative recurrences.
    gp = 1.0
    for _ in range(4):
        q = _quotient(nu, x, _POLISH_TOL) / x
        g = x * q - c
        gp = x - 2.0 * nu * q + x * q * q
        if gp <= 0.0 or abs(g) == 0.0:
            break
        x_new = x - g / gp
        if abs(x_new - x) <= 4.0 * _EPS * x:
            x = x_new
            break
        x = x_new
    resid = abs(_quotient(nu, x, _POLISH_TOL) - c)
    # Representation floor: moving x by one ulp moves g by about g' * eps * x.
    floor = 8.0 * _EPS * abs(gp) * x
    if resid > 1e-10 * max(1.0, abs(c)) + floor:
        raise NonConvergence(f"char root residual {resid:.2e} for n={n}, c={c}")
    return CharRoot(n=int(n), c=float(c), root=x, bracket=(lo, hi))


def alpha_series(n: int, tau0: float, n_zeros: int = 200) -> float:
    """Series form sum_k 2 tau0^2 / (j_{n/2-1,k}^2 - tau0^2) with tail estimate."""
    nu = 0.5 * n - 1.0
    return tau0 * quotient_series(nu, tau0, n_zeros=n_zeros)


def alpha_constant(n: int, tau0: float, tol: float | None = None,
                   cross_check: bool = True) -> float:
    """The threshold constant alpha = tau0 J_{n/2}(tau0) / J_{n/2-1}(tau0).

    Requires 0 < tau0 < j_{n/2-1,1}.  The equivalent series over zeros is
    summed as an independent cross-check (1e-8 relative agreement) unless
    disabled; the direct quotient is what is returned.
    """
    if n < 2 or int(n) != n:
        raise DimensionError(f"dimension must be an integer >= 2, got {n}")
    if tol is None:
        tol = default_tolerance()
    nu = 0.5 * n - 1.0
    j1 = bessel_zero(nu, 1)
    if not (0.0 < tau0 < j1):
        raise DomainError(
            f"tau0 must lie in (0, j_({nu},1)) = (0, {j1:.9f}), got {tau0}"
        )
    direct = _quotient(nu, tau0, tol)
    if cross_check:
        series = alpha_series(n, tau0)
        if abs(series - direct) > 1e-8 * max(1.0, abs(direct)):
            raise NonConvergence(
                f"alpha series {series!r} and quotient {direct!r} disagree "
                f"beyond 1e-8 for n={n}, tau0={tau0}"
            )
    return direct


def airy_floor(nu: float) -> float:
    """Lower bound nu - a1/2^(1/3) nu^(1/3) for the first zero j_{nu,1}, nu > 0."""
    if nu <= 0.0:
        raise DomainError(f"the floor applies to nu > 0, got {nu}")
    return nu - AIRY_A1 / 2.0 ** (1.0 / 3.0) * nu ** (1.0 / 3.0)


def freitas_ratio_check(n: int) -> tuple[float, float, bool]:
    """Squared ratio of the two characteristic roots against its dimensional floor.

    Computes tau0 = char_root(n, n-1) and tau1 = char_root(n, (n-2)/2) and
    returns ((tau1/tau0)^2, (n+1)(n+1-sqrt(4n+1))/(n(n-1)), flag).  The flag
    also requires tau1 < tau0, which the monotonicity of g guarantees.
    """
    if n < 3:
        raise DimensionError(f"the ratio floor is stated for n >= 3, got {n}")
    tau0 = char_root(n, float(n - 1)).root
    tau1 = char_root(n, 0.5 * (n - 2)).root
    ratio_sq = (tau1 / tau0) ** 2
    floor = (n + 1) * (n + 1 - math.sqrt(4.0 * n + 1.0)) / (n * (n - 1))
    return ratio_sq, floor, bool(ratio_sq >= floor and tau1 < tau0)

"""Half-integer closed forms and small helpers shared by the tests.

These trig expressions serve as independent oracles; the library itself
never routes through them.
"""

from __future__ import annotations

import math


def amplitude(x: float) -> float:
    return math.sqrt(2.0 / (math.pi * x))


def j_half(nu: float, x: float) -> float:
    c = amplitude(x)
    s, co = math.sin(x), math.cos(x)
    forms = {
        0.5: c * s,
        -0.5: c * co,
        1.5: c * (s / x - co),
        -1.5: c * (-co / x - s),
        2.5: c * ((3.0 / x**2 - 1.0) * s - 3.0 / x * co),
        -2.5: c * ((3.0 / x**2 - 1.0) * co + 3.0 / x * s),
    }
    return forms[nu]


def y_half(nu: float, x: float) -> float:
    # Y_{m+1/2} = (-1)^(m+1) J_{-m-1/2}
    m = int(math.floor(nu))
    return (-1.0) ** (m + 1) * j_half(-nu, x)


def bisect(fn, lo: float, hi: float, iters: int = 200) -> float:
    f_lo = fn(lo)
    assert f_lo * fn(hi) < 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if fn(mid) * f_lo > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)

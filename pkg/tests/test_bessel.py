import math

import pytest
import scipy.special as sps

from besselbounds import (
    BesselOrder,
    DomainError,
    NearPoleError,
    NonConvergence,
    OrderOutOfRange,
    bowman_solution,
    eval_J,
    eval_J_derivative,
    eval_Y,
    j_derivative_forms,
    lommel_residuals,
    ratio_next_over_current,
)
from trigforms import amplitude, bisect, j_half, y_half

SQRT_2_OVER_PI2 = math.sqrt(2.0 / math.pi**2)


class TestOrderType:
    def test_flags(self):
        assert BesselOrder(3.0).is_integer
        assert not BesselOrder(3.0).is_half_integer
        assert BesselOrder(-2.5).is_half_integer
        assert not BesselOrder(0.3).is_integer
        assert not BesselOrder(0.3).is_half_integer

    def test_envelope(self):
        with pytest.raises(OrderOutOfRange):
            BesselOrder(200.5)
        with pytest.raises(OrderOutOfRange):
            BesselOrder(float("nan"))


class TestEvalJ:
    def test_at_origin(self):
        assert eval_J(0.0, 0.0).value == 1.0
        assert eval_J(2.0, 0.0).value == 0.0
        with pytest.raises(DomainError):
            eval_J(-0.5, 0.0)
        with pytest.raises(DomainError):
            eval_J(0.0, -1.0)

    def test_half_integer_spots(self):
        assert eval_J(0.5, math.pi / 2).value == pytest.approx(2.0 / math.pi, rel=1e-14)
        assert eval_J(-0.5, math.pi).value == pytest.approx(-SQRT_2_OVER_PI2, rel=1e-13)

    def test_first_zero_by_series_bisection(self):
        # Independent location of the first zero straight off the series.
        root = bisect(lambda x: eval_J(0.0, x).value, 2.0, 3.0)
        assert abs(root - 2.404825557695773) < 1e-12
        assert abs(eval_J(0.0, 2.404825557695773).value) < 1e-10

    def test_error_estimate_honored(self):
        for nu, x in [(0.0, 1.0), (2.5, 10.0), (0.0, 50.0), (10.0, 45.0)]:
            res = eval_J(nu, x, tol=1e-12)
            assert res.abs_err_estimate <= 1e-12 * abs(res.value)
            assert res.terms_used >= 1

    def test_against_independent_library(self):
        for nu in (0.0, 1.0, 2.5, -1.5, 7.0, 0.25):
            for x in (0.05, 0.7, 3.3, 11.0, 27.0, 50.0):
                assert eval_J(nu, x).value == pytest.approx(
                    float(sps.jv(nu, x)), rel=1e-11, abs=1e-13)

    def test_negative_integer_reduction(self):
        assert eval_J(-3.0, 2.0).value == pytest.approx(-eval_J(3.0, 2.0).value,
                                                        rel=1e-14)

    def test_term_budget_exhaustion(self):
        with pytest.raises(NonConvergence):
            eval_J(0.0, 400.0)

    def test_order_cap(self):
        with pytest.raises(OrderOutOfRange):
            eval_J(201.0, 1.0)


class TestEvalY:
    def test_half_integer_quotient_reduction(self):
        # Y_{1/2}(pi) = -J_{-1/2}(pi)
        assert eval_Y(0.5, math.pi).value == pytest.approx(SQRT_2_OVER_PI2, rel=1e-13)
        for x in (0.4, 2.1, 9.3):
            assert eval_Y(1.5, x).value == pytest.approx(y_half(1.5, x), rel=1e-12)

    def test_singular_origin(self):
        with pytest.raises(DomainError):
            eval_Y(0.0, 0.0)
        with pytest.raises(DomainError):
            eval_Y(2.0, -1.0)

    def test_wronskian_self_check_at_integer_order(self):
        x = 1.0
        lhs = (eval_Y(2.0, x).value * eval_J(3.0, x).value
               - eval_Y(3.0, x).value * eval_J(2.0, x).value)
        assert abs(lhs - 2.0 / (math.pi * x)) < 1e-10

    def test_against_independent_library(self):
        for nu in (0.0, 1.0, 2.0, 5.0, 0.25, -1.5):
            for x in (0.1, 0.5, 2.0, 13.0, 31.0):
                assert eval_Y(nu, x).value == pytest.approx(
                    float(sps.yv(nu, x)), rel=1e-10, abs=1e-12)

    def test_negative_integer_reduction(self):
        assert eval_Y(-2.0, 3.0).value == pytest.approx(eval_Y(2.0, 3.0).value,
                                                        rel=1e-14)
        assert eval_Y(-3.0, 3.0).value == pytest.approx(-eval_Y(3.0, 3.0).value,
                                                        rel=1e-14)


class TestDerivative:
    def test_at_first_zero_equals_minus_next_order(self):
        j01 = 2.404825557695773
        d = eval_J_derivative(0.0, j01)
        assert d == pytest.approx(-eval_J(1.0, j01).value, rel=1e-12)
        assert d == pytest.approx(-0.5191474972894669, rel=1e-9)

    def test_half_integer_closed_form(self):
        # d/dx sqrt(2/(pi x)) sin x at x = pi equals -sqrt(2/pi^2)
        assert eval_J_derivative(0.5, math.pi) == pytest.approx(-SQRT_2_OVER_PI2,
                                                                rel=1e-12)

    def test_against_finite_difference(self):
        h = 1e-6
        fd = (eval_J(3.0, 5.0 + h).value - eval_J(3.0, 5.0 - h).value) / (2 * h)
        assert abs(eval_J_derivative(3.0, 5.0) - fd) < 1e-7

    def test_three_forms_agree(self):
        for nu in (0.0, 0.5, 2.0, 6.5):
            for x in (0.3, 1.7, 8.1, 23.9):
                d1, d2, d3 = j_derivative_forms(nu, x)
                scale = max(abs(d1), abs(d2), abs(d3))
                if scale < 1e-3 * amplitude(x):
                    continue
                assert abs(d1 - d2) <= 1e-10 * scale
                assert abs(d2 - d3) <= 1e-10 * scale


class TestRatio:
    def test_half_integer_value(self):
        expected = (math.sin(1.0) / 1.0 - math.cos(1.0)) / math.sin(1.0)
        assert ratio_next_over_current(0.5, 1.0) == pytest.approx(expected, rel=1e-12)

    def test_small_argument_leading_term(self):
        assert ratio_next_over_current(0.0, 1e-4) == pytest.approx(5e-5, abs=1e-12)

    def test_near_pole_guard(self):
        with pytest.raises(NearPoleError):
            ratio_next_over_current(0.0, 2.404825557695773)

    def test_monotone_below_first_zero(self):
        j1 = 2.404825557695773
        prev = -math.inf
        for i in range(1, 200):
            x = j1 * i / 200.0
            cur = ratio_next_over_current(0.0, x)
            assert cur > prev
            prev = cur


class TestLommel:
    def test_half_integer_exact(self):
        r1, r2 = lommel_residuals(0.5, 1.0)
        assert r1 < 1e-12 and r2 < 1e-12

    def test_small_argument(self):
        r1, r2 = lommel_residuals(3.0, 0.1)
        assert r1 <= 1e-10 * 10.0 and r2 <= 1e-10 * 10.0

    def test_integer_order_first_identity_degenerates(self):
        # sin(pi nu) = 0, so the first residual is |J_{n-1} J_{-n} + J_n J_{-n+1}|.
        r1, _ = lommel_residuals(2.0, 1.3)
        assert r1 < 1e-12

    @pytest.mark.parametrize("nu", [-10.0, -2.5, 0.0, 0.5, 4.0, 10.0])
    @pytest.mark.parametrize("x", [0.05, 1.0, 7.7, 26.0, 50.0])
    def test_envelope(self, nu, x):
        r1, r2 = lommel_residuals(nu, x)
        budget = 1e-10 * max(1.0, 1.0 / x)
        assert r1 <= budget and r2 <= budget

    @pytest.mark.parametrize("nu", [0.0, 0.5, 3.0, 10.0])
    @pytest.mark.parametrize("x", [0.1, 1.0, 13.0, 30.0, 50.0])
    def test_wronskian_scaled_tolerance(self, nu, x):
        # The second identity alone holds to the tighter 1e-10 / x budget.
        _, r2 = lommel_residuals(nu, x)
        assert r2 <= 1e-10 / x


class TestBowman:
    def test_closed_form_half_order(self):
        got = bowman_solution(0.5, 1.0, 1.0, 0.5, 1.0, 0.0, 1.0)
        assert got == pytest.approx(math.sqrt(2.0 / math.pi) * math.sin(1.0),
                                    rel=1e-12)

    def test_zero_coefficients(self):
        assert bowman_solution(1.0, 2.0, 0.7, 1.5, 0.0, 0.0, 0.9) == 0.0

    @pytest.mark.parametrize("params", [
        (1.5, 2.0, 1.0, 1.5, 1.0, 1.0, 0.7),
        (0.5, 1.0, 1.0, 0.5, 1.0, 0.0, 1.0),
        (1.0, 1.0, 2.0, 2.0, 0.3, -0.2, 1.3),
    ])
    def test_differential_equation_residual(self, params):
        a, b, g, m, ca, cb, x = params

        def y(t: float) -> float:
            return bowman_solution(a, b, g, m, ca, cb, t)

        h = 1e-4
        y0 = y(x)
        yp = (y(x + h) - y(x - h)) / (2 * h)
        ypp = (y(x + h) - 2 * y0 + y(x - h)) / h**2
        resid = (ypp - (2 * a - 1) / x * yp
                 + (b**2 * g**2 * x ** (2 * g - 2) + (a**2 - m**2 * g**2) / x**2) * y0)
        assert abs(resid) <= 1e-6 * max(1.0, abs(y0))


class TestSpecInvariants:
    def test_recurrence_closure(self):
        for nu in [0.5 * i for i in range(21)]:
            for x in [0.1, 1.3, 5.9, 14.7, 29.5]:
                jm1 = eval_J(nu - 1.0, x).value
                j0 = eval_J(nu, x).value
                jp1 = eval_J(nu + 1.0, x).value
                scale = max(abs(jm1), abs(j0), abs(jp1))
                assert abs(jp1 - 2.0 * nu / x * j0 + jm1) <= 1e-10 * scale

    def test_half_integer_exactness_envelope(self):
        for nu in (0.5, -0.5, 1.5, -1.5, 2.5):
            for i in range(60):
                x = 0.1 + 0.5 * i
                ref = j_half(nu, x)
                if abs(ref) < 1e-2 * amplitude(x):
                    continue
                assert eval_J(nu, x).value == pytest.approx(ref, rel=1e-10)

    def test_small_x_quotient_limit(self):
        for nu in (0.0, 1.0, 2.5, 5.0):
            got = 1e-4 / ratio_next_over_current(nu, 1e-4)
            assert got == pytest.approx(2.0 * (nu + 1.0), rel=1e-6)

    def test_y_over_j_increasing(self):
        j1 = 2.404825557695773
        xs = [j1 * (0.02 + 0.96 * i / 120.0) for i in range(121)]
        vals = [eval_Y(0.0, x).value / eval_J(0.0, x).value for x in xs]
        assert all(b > a for a, b in zip(vals, vals[1:]))

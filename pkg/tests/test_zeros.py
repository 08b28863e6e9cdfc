import math

import pytest
import scipy.special as sps

from besselbounds import (
    DimensionError,
    DomainError,
    NoRootInInterval,
    ZeroRequest,
    airy_floor,
    alpha_constant,
    alpha_series,
    bessel_zero,
    char_root,
    eval_J,
    freitas_ratio_check,
    mcmahon_seed,
    quotient_series,
    ratio_next_over_current,
)

J01 = 2.404825557695773


class TestZeroRequest:
    def test_validation(self):
        with pytest.raises(DomainError):
            ZeroRequest(nu=0.0, k=0)
        with pytest.raises(DomainError):
            ZeroRequest(nu=-1.5, k=1)
        ZeroRequest(nu=-1.0, k=2)


class TestBesselZero:
    def test_sine_zeros(self):
        assert bessel_zero(0.5, 3) == pytest.approx(3.0 * math.pi, rel=1e-13)
        assert bessel_zero(0.5, 1) == pytest.approx(math.pi, rel=1e-13)

    def test_first_zero_of_j0(self):
        assert abs(bessel_zero(0.0, 1) - J01) < 1e-10

    def test_request_form(self):
        assert bessel_zero(ZeroRequest(nu=1.0, k=2)) == bessel_zero(1.0, 2)

    def test_residual_postcondition(self):
        for nu, k in [(0.0, 1), (2.5, 4), (6.0, 20), (1.0, 30)]:
            root = bessel_zero(nu, k)
            scale = max(abs(eval_J(nu + 1.0, root).value),
                        math.sqrt(2.0 / (math.pi * root)))
            assert abs(eval_J(nu, root).value) <= 1e-11 * scale

    def test_strictly_increasing_in_k(self):
        roots = [bessel_zero(3.5, k) for k in range(1, 25)]
        assert all(b > a for a, b in zip(roots, roots[1:]))

    def test_against_independent_library(self):
        for order in (0, 1, 4):
            ref = sps.jn_zeros(order, 40)
            for k in (1, 2, 10, 25, 40):
                assert bessel_zero(float(order), k) == pytest.approx(
                    float(ref[k - 1]), rel=1e-12)

    def test_deep_mcmahon_regime(self):
        ref = sps.jn_zeros(0, 200)
        assert bessel_zero(0.0, 200) == pytest.approx(float(ref[-1]), abs=1e-9)

    def test_interlacing_sample(self):
        for nu in (0.0, 1.5, 4.0):
            a = [bessel_zero(nu, k) for k in range(1, 8)]
            b = [bessel_zero(nu + 1.0, k) for k in range(1, 7)]
            for k in range(6):
                assert a[k] < b[k] < a[k + 1]

    def test_mcmahon_seed_quality(self):
        for nu in (0.0, 2.0):
            gaps = [abs(bessel_zero(nu, k) - mcmahon_seed(nu, k))
                    for k in range(3, 15)]
            assert all(g / bessel_zero(nu, k + 3) < 0.10
                       for k, g in enumerate(gaps))
            assert all(g2 <= g1 for g1, g2 in zip(gaps, gaps[1:]))

    def test_airy_floor_for_half_order(self):
        # nu = 1/2: first zero is pi, floor is 0.5 + 2.3381/2^(1/3) * 0.5^(1/3)
        floor = airy_floor(0.5)
        assert floor == pytest.approx(1.973, abs=2e-3)
        assert math.pi >= floor

    def test_airy_floor_sweep(self):
        for nu in range(1, 26):
            assert bessel_zero(float(nu), 1) >= airy_floor(float(nu))


class TestCharRoot:
    def test_tan_reduction_for_dirac_constant(self):
        # n = 3, c = 2 reduces to tan x = -x.
        assert char_root(3, 2.0).root == pytest.approx(2.028757838, abs=1e-9)

    def test_cot_reduction_for_yamabe_constant(self):
        # n = 3, c = 1/2 reduces to tan x = 2x.
        assert char_root(3, 0.5).root == pytest.approx(1.165561185, abs=1e-9)

    def test_exact_right_angle(self):
        assert char_root(3, 1.0).root == pytest.approx(math.pi / 2, rel=1e-12)

    def test_even_dimension_series_path(self):
        root = char_root(4, 3.0)
        nu = 1.0
        g = root.root * eval_J(2.0, root.root).value / eval_J(1.0, root.root).value
        assert g == pytest.approx(3.0, abs=1e-10)

    def test_bracket_contains_root(self):
        res = char_root(5, 4.0)
        lo, hi = res.bracket
        assert lo < res.root < hi

    def test_root_below_first_zero(self):
        for n, c in [(2, 0.5), (3, 10.0), (6, 1.0), (11, 25.0)]:
            res = char_root(n, c)
            assert 0.0 < res.root < bessel_zero(0.5 * n - 1.0, 1)

    def test_no_root_for_nonpositive_constant(self):
        with pytest.raises(NoRootInInterval):
            char_root(3, 0.0)
        with pytest.raises(NoRootInInterval):
            char_root(3, -1.0)

    def test_dimension_validation(self):
        with pytest.raises(DimensionError):
            char_root(1, 1.0)

    def test_large_constant_approaches_first_zero(self):
        # Dirichlet limit of the Robin characteristic equation.
        root = char_root(3, 1e6).root
        assert root < math.pi
        assert root > math.pi - 1e-2

    def test_tiny_constant(self):
        # Root behaves like sqrt(2 n c) / ... for small c; just check it exists
        # and is small and positive.
        root = char_root(3, 1e-8).root
        assert 0.0 < root < 1e-3


class TestAlpha:
    def test_trig_value_at_right_angle(self):
        # alpha(3, pi/2) = 1 - (pi/2) cot(pi/2) = 1.
        assert alpha_constant(3, math.pi / 2) == pytest.approx(1.0, abs=1e-12)

    def test_definition_of_characteristic_root(self):
        tau0 = char_root(3, 2.0).root
        assert alpha_constant(3, tau0) == pytest.approx(2.0, abs=1e-9)

    def test_two_dimensional_series_vs_quotient(self):
        # First series term 2/(j_{0,1}^2 - 1); full sum matches the direct
        # quotient J_1(1)/J_0(1).
        first_term = 2.0 / (J01**2 - 1.0)
        assert first_term == pytest.approx(0.4181313491, abs=1e-9)
        direct = alpha_constant(2, 1.0)
        assert direct == pytest.approx(
            eval_J(1.0, 1.0).value / eval_J(0.0, 1.0).value, rel=1e-12)
        assert alpha_series(2, 1.0) == pytest.approx(direct, rel=1e-8)

    def test_range_validation(self):
        with pytest.raises(DomainError):
            alpha_constant(3, math.pi)      # j_{1/2,1} = pi is excluded
        with pytest.raises(DomainError):
            alpha_constant(3, 0.0)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    @pytest.mark.parametrize("frac", [0.3, 0.6, 0.9])
    def test_series_consistency(self, n, frac):
        tau0 = frac * bessel_zero(0.5 * n - 1.0, 1)
        direct = alpha_constant(n, tau0)
        assert alpha_series(n, tau0) == pytest.approx(direct,
                                                      rel=1e-8, abs=1e-8)


class TestQuotientSeries:
    def test_against_direct_ratio(self):
        for nu, x in [(0.5, 1.0), (1.0, 2.0), (0.0, 2.2), (4.0, 3.0)]:
            assert quotient_series(nu, x) == pytest.approx(
                ratio_next_over_current(nu, x), rel=1e-8)

    def test_rejects_x_beyond_first_zero(self):
        with pytest.raises(DomainError):
            quotient_series(0.0, 3.0)


class TestFreitas:
    def test_three_dimensional_values(self):
        ratio_sq, floor, ok = freitas_ratio_check(3)
        assert ok
        assert floor == pytest.approx(4.0 * (4.0 - math.sqrt(13.0)) / 6.0,
                                      rel=1e-12)
        assert ratio_sq == pytest.approx((1.165561185 / 2.028757838) ** 2,
                                         abs=1e-8)
        # Strict consequence for the bound comparison.
        assert ratio_sq > (3.0 - 2.0) / (2.0 * (3.0 - 1.0))

    def test_sweep_and_trend(self):
        r3 = freitas_ratio_check(3)[0]
        for n in range(3, 31):
            _, _, ok = freitas_ratio_check(n)
            assert ok
        # Ratio creeps toward 1 as the dimension grows.
        assert freitas_ratio_check(200)[0] > r3

    def test_dimension_validation(self):
        with pytest.raises(DimensionError):
            freitas_ratio_check(2)

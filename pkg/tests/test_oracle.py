import csv
import math

import numpy as np
import pytest

from besselbounds import (
    DegenerateGrid,
    DomainError,
    RadialProblem,
    bessel_zero,
    char_root,
    robin_sweep,
    solve_lowest,
)
from besselbounds.oracle import (
    boundary_value,
    export_eigenvector_csv,
    export_sweep_csv,
    robin_flux_identity_gap,
)

J01 = 2.404825557695773


class TestValidation:
    def test_grid_floor(self):
        with pytest.raises(DegenerateGrid):
            RadialProblem(n=3, R=1.0, bc="dirichlet", grid_points=32)

    def test_bad_bc(self):
        with pytest.raises(DomainError):
            RadialProblem(n=3, R=1.0, bc="periodic")
        with pytest.raises(DomainError):
            RadialProblem(n=3, R=1.0, bc="robin", tau=0.0)

    def test_bad_geometry(self):
        with pytest.raises(DomainError):
            RadialProblem(n=1, R=1.0, bc="dirichlet")
        with pytest.raises(DomainError):
            RadialProblem(n=3, R=-1.0, bc="dirichlet")


class TestClosedFormTargets:
    def test_dirichlet_three_dimensional(self):
        spec = solve_lowest(RadialProblem(n=3, R=1.0, bc="dirichlet",
                                          grid_points=2048))
        assert spec.lambda_1_extrapolated == pytest.approx(math.pi**2, rel=1e-6)

    def test_dirichlet_two_dimensional(self):
        spec = solve_lowest(RadialProblem(n=2, R=1.0, bc="dirichlet",
                                          grid_points=2048))
        assert spec.lambda_1_extrapolated == pytest.approx(J01**2, rel=1e-6)

    def test_robin_trig_case(self):
        spec = solve_lowest(RadialProblem(n=3, R=1.0, bc="robin", tau=1.0,
                                          grid_points=2048))
        assert spec.lambda_1_extrapolated == pytest.approx((math.pi / 2) ** 2,
                                                           rel=1e-6)

    def test_neumann_constant_mode(self):
        spec = solve_lowest(RadialProblem(n=3, R=1.0, bc="neumann",
                                          grid_points=1024))
        assert abs(spec.lambda_1_extrapolated) < 1e-7

    def test_radius_scaling(self):
        spec = solve_lowest(RadialProblem(n=3, R=2.0, bc="dirichlet",
                                          grid_points=2048))
        assert spec.lambda_1_extrapolated == pytest.approx(math.pi**2 / 4.0,
                                                           rel=1e-6)

    @pytest.mark.parametrize("n,tau", [(2, 0.5), (3, 2.0), (4, 1.0)])
    def test_robin_matches_characteristic_root(self, n, tau):
        spec = solve_lowest(RadialProblem(n=n, R=1.0, bc="robin", tau=tau,
                                          grid_points=2048))
        target = char_root(n, tau).root ** 2
        assert spec.lambda_1_extrapolated == pytest.approx(target, rel=1e-6)


class TestSchemeProperties:
    def test_eigenvector_positive(self):
        for bc, tau in (("dirichlet", 0.0), ("neumann", 0.0), ("robin", 1.0)):
            spec = solve_lowest(RadialProblem(n=3, R=1.0, bc=bc, tau=tau,
                                              grid_points=512))
            assert np.all(spec.eigenvector > 0.0)

    def test_convergence_order_against_closed_form(self):
        # Observed order from errors against the known eigenvalue.
        from besselbounds.oracle import _lowest_pair
        target = char_root(3, 1.0).root ** 2
        prob = RadialProblem(n=3, R=1.0, bc="robin", tau=1.0)
        e1 = abs(_lowest_pair(prob, 512)[0] - target)
        e2 = abs(_lowest_pair(prob, 1024)[0] - target)
        assert 1.8 <= math.log2(e1 / e2) <= 2.2

    def test_reported_order_estimate(self):
        spec = solve_lowest(RadialProblem(n=2, R=1.0, bc="dirichlet",
                                          grid_points=1024))
        assert 1.8 <= spec.order_estimate <= 2.2

    def test_flux_identity(self):
        prob = RadialProblem(n=3, R=1.0, bc="robin", tau=1.0, grid_points=1024)
        spec = solve_lowest(prob)
        assert robin_flux_identity_gap(prob, spec) < 0.02

    def test_boundary_value_reconstruction(self):
        prob = RadialProblem(n=3, R=1.0, bc="dirichlet", grid_points=512)
        spec = solve_lowest(prob)
        assert boundary_value(prob, spec) == 0.0

    def test_boundary_ordering_neumann_robin_dirichlet(self):
        lam_d = solve_lowest(RadialProblem(n=3, R=1.0, bc="dirichlet",
                                           grid_points=1024)).lambda_1_extrapolated
        lam_n = solve_lowest(RadialProblem(n=3, R=1.0, bc="neumann",
                                           grid_points=1024)).lambda_1_extrapolated
        for tau in (0.1, 1.0, 10.0):
            lam_r = solve_lowest(RadialProblem(n=3, R=1.0, bc="robin", tau=tau,
                                               grid_points=1024)).lambda_1_extrapolated
            assert lam_n <= lam_r <= lam_d


class TestSweep:
    def test_increasing_with_limits(self):
        rows = robin_sweep(3, 1.0, [0.01, 1.0, 100.0], grid_points=1024)
        values = [lam for _, lam in rows]
        assert values[0] < values[1] < values[2]
        assert values[2] == pytest.approx(math.pi**2, rel=0.05)

    def test_neumann_limit(self):
        rows = robin_sweep(3, 1.0, [1e-6], grid_points=1024)
        assert rows[0][1] <= 1e-5

    def test_each_point_matches_root_characterization(self):
        rows = robin_sweep(3, 1.0, [0.1, 1.0, 10.0], grid_points=2048)
        j1 = bessel_zero(0.5, 1)
        for tau, lam in rows:
            assert math.sqrt(lam) * 1.0 < j1
            target = char_root(3, tau * 1.0).root ** 2    # (x*/R)^2 with R = 1
            assert lam == pytest.approx(target, rel=1e-5)

    def test_input_validation(self):
        with pytest.raises(DomainError):
            robin_sweep(3, 1.0, [1.0, 0.5])
        with pytest.raises(DomainError):
            robin_sweep(3, 1.0, [-1.0, 0.5])


class TestCsvExport:
    def test_eigenvector_csv(self, tmp_path):
        prob = RadialProblem(n=3, R=1.0, bc="dirichlet", grid_points=128)
        spec = solve_lowest(prob)
        path = tmp_path / "vec.csv"
        export_eigenvector_csv(spec, str(path))
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["r", "u"]
        assert len(rows) == 129

    def test_sweep_csv(self, tmp_path):
        rows_in = robin_sweep(3, 1.0, [0.5, 1.5], grid_points=256)
        path = tmp_path / "sweep.csv"
        export_sweep_csv(rows_in, str(path))
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["tau", "lambda_1"]
        assert float(rows[1][0]) == 0.5

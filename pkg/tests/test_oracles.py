import math

import numpy as np
import pytest

import logitweibull as lw
from logitweibull.oracles import BracketError, QuadratureConfig


class TestIntegrateHalfline:
    def test_exponential(self):
        r = lw.integrate_halfline(lambda x: math.exp(-x))
        assert r.value == pytest.approx(1.0, abs=1e-12)
        assert r.error_estimate >= 0
        assert r.evaluations > 0

    def test_x_exponential(self):
        r = lw.integrate_halfline(lambda x: x * math.exp(-x))
        assert r.value == pytest.approx(1.0, abs=1e-10)

    def test_weibull_moment(self):
        r = lw.integrate_halfline(lambda x: lw.pdf((1.5, 2.5), x) * x**2.5)
        assert r.value == pytest.approx(1.5**2.5, abs=1e-8)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            QuadratureConfig(rel_tol=-1.0)
        with pytest.raises(ValueError):
            QuadratureConfig(max_subdivisions=0)


class TestExpectationQuadrature:
    def test_exp1_mean(self):
        assert lw.expectation_quadrature((1, 1), lambda x: x).value == pytest.approx(1.0, abs=1e-10)

    def test_exp1_log_moment(self):
        v = lw.expectation_quadrature((1, 1), math.log).value
        assert v == pytest.approx(-lw.EULER_GAMMA, abs=1e-9)

    def test_cube_moment(self):
        assert lw.expectation_quadrature((2, 3), lambda x: x**3).value == pytest.approx(8.0, abs=1e-8)


class TestExpectationMonteCarlo:
    def test_exp1_mean(self):
        r = lw.expectation_montecarlo((1, 1), lambda x: x, 0, 100000)
        assert abs(r.value - 1.0) < 3 * r.error_estimate
        assert r.evaluations == 100000

    def test_log_moment(self):
        r = lw.expectation_montecarlo((1, 1), np.log, 0, 200000)
        assert abs(r.value + lw.EULER_GAMMA) < 3 * r.error_estimate

    def test_cube_moment(self):
        r = lw.expectation_montecarlo((2, 3), lambda x: x**3, 0, 100000)
        assert abs(r.value - 8.0) < 3 * r.error_estimate

    def test_agrees_with_quadrature(self):
        q = lw.expectation_quadrature((2, 0.5), lambda x: x)
        mc = lw.expectation_montecarlo((2, 0.5), lambda x: x, 3, 200000)
        assert abs(q.value - mc.value) < 4 * (mc.error_estimate + q.error_estimate)

    def test_rejects_tiny_n(self):
        with pytest.raises(ValueError):
            lw.expectation_montecarlo((1, 1), lambda x: x, 0, 1)


class TestFiniteDifferences:
    def test_bilinear_gradient(self):
        g = lw.finite_diff_gradient(lambda th: th.a * th.b, (2, 3), 1e-5)
        assert g == pytest.approx([3.0, 2.0], abs=1e-8)

    def test_quadratic_gradient(self):
        g = lw.finite_diff_gradient(lambda th: th.a**2, (1, 1), 1e-5)
        assert g == pytest.approx([2.0, 0.0], abs=1e-8)

    def test_quadratic_hessian(self):
        h = lw.finite_diff_hessian(lambda th: th.a**2 + th.b**2, (1.3, 0.7), 1e-4)
        assert h == pytest.approx(np.diag([2.0, 2.0]), abs=1e-6)

    def test_bilinear_hessian(self):
        h = lw.finite_diff_hessian(lambda th: th.a * th.b, (2, 5), 1e-4)
        assert h[0, 1] == pytest.approx(1.0, abs=1e-6)

    def test_step_clipped_near_axis(self):
        # theta - step would go nonpositive; the step is clipped with a warning
        with pytest.warns(UserWarning):
            g = lw.finite_diff_gradient(lambda th: th.a, (1e-6, 1.0), 1e-5)
        assert g[0] == pytest.approx(1.0, abs=1e-6)

    def test_gradient_of_potential_matches_dual_coordinates(self):
        fd = lw.finite_diff_gradient(lambda th: lw.potential_closed(th, 1.0), (1, 1), 1e-5)
        eta = lw.dual_coordinates((1, 1), 1.0)
        assert fd == pytest.approx(list(eta), abs=1e-8)


class TestFindRootBracketed:
    def test_linear(self):
        assert lw.find_root_bracketed(lambda x: x - 2, 0, 5, 1e-12) == pytest.approx(2.0, abs=1e-10)

    def test_sqrt2(self):
        r = lw.find_root_bracketed(lambda x: x**2 - 2, 1, 2, 1e-12)
        assert r == pytest.approx(math.sqrt(2), abs=1e-10)

    def test_constraint_at_unit_point(self):
        r = lw.find_root_bracketed(lambda x: lw.constraint_residual((1, 1), x), 1, 2, 1e-12)
        assert 1.37 < r < 1.38

    def test_residual_bound(self):
        for tol in (1e-6, 1e-10, 1e-12):
            r = lw.find_root_bracketed(lambda x: math.cos(x) - x, 0, 1, tol)
            assert abs(math.cos(r) - r) <= 10 * tol

    def test_bracket_error(self):
        with pytest.raises(BracketError):
            lw.find_root_bracketed(lambda x: x + 10, 0, 1, 1e-10)


class TestNestedPolynomialIntegral:
    def test_constant(self):
        assert lw.nested_polynomial_integral([1.0], 2.0) == pytest.approx(2.0, abs=1e-15)

    def test_linear(self):
        assert lw.nested_polynomial_integral([0.0, 1.0], 1.0) == pytest.approx(1 / 6, abs=1e-15)

    def test_link_at_unit_point(self):
        # r(u) = (u - 1)/2, the link at theta=(1,1), x=1
        assert lw.nested_polynomial_integral([-0.5, 0.5], 1.0) == pytest.approx(-1 / 6, abs=1e-15)

    def test_against_nested_quadrature(self):
        rng = np.random.default_rng(5)
        from scipy.integrate import quad

        for _ in range(10):
            coeffs = rng.uniform(-2, 2, 4)
            u0 = rng.uniform(0.1, 3.0)
            r = np.polynomial.Polynomial(coeffs)
            inner = lambda v: quad(r, 0.0, v, epsabs=1e-14)[0]
            expected = quad(inner, 0.0, u0, epsabs=1e-13, limit=200)[0]
            assert lw.nested_polynomial_integral(coeffs, u0) == pytest.approx(expected, abs=1e-12)

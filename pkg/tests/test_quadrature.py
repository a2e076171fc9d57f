import math

import numpy as np
import pytest

from kepler_stieltjes.errors import DomainError
from kepler_stieltjes.quadrature import integrate
from tests.utils import assert_close
from tests.utils.oracles import mp_bessel


class TestIntegrate:
    def test_sine(self):
        result = integrate(np.sin, 0.0, math.pi)
        assert result.converged
        assert_close(result.value, 2.0, abs_=1e-13)

    @pytest.mark.parametrize("degree", range(0, 11))
    def test_monomials(self, degree):
        result = integrate(lambda x: x**degree, 0.0, 1.0)
        assert_close(result.value, 1.0 / (degree + 1), abs_=1e-14, what=f"x^{degree}")

    def test_bessel_integrand(self):
        # J_5(2.5) = (1/pi) int_0^pi cos(5 theta - 2.5 sin theta) dtheta
        result = integrate(lambda th: np.cos(5 * th - 2.5 * np.sin(th)), 0.0, math.pi)
        assert_close(result.value / math.pi, mp_bessel(5, 2.5), abs_=1e-14)

    def test_complex_integrand(self):
        result = integrate(lambda x: np.exp(1j * x), 0.0, math.pi)
        assert isinstance(result.value, complex)
        assert_close(result.value, 2j, abs_=1e-13)

    def test_split_hints_outside_are_ignored(self):
        result = integrate(np.cos, 0.0, 1.0, split_hints=[-1.0, 0.5, 2.0])
        assert_close(result.value, math.sin(1.0), abs_=1e-14)

    def test_error_estimate_is_honest(self):
        # integrable endpoint singularity, slow to converge
        result = integrate(lambda x: 1.0 / np.sqrt(x + 1e-12), 0.0, 1.0, tol_abs=1e-8, tol_rel=1e-8)
        exact = 2.0 * (math.sqrt(1.0 + 1e-12) - math.sqrt(1e-12))
        assert abs(result.value - exact) <= 10.0 * result.abs_error_estimate + 1e-14

    def test_budget_exhaustion(self):
        result = integrate(
            lambda x: np.sin(1.0 / (x + 1e-3)), 0.0, 1.0, tol_abs=1e-15, tol_rel=1e-15, panel_budget=4
        )
        assert not result.converged
        assert result.panels_used <= 4
        assert math.isfinite(result.value)

    def test_diagnostics(self):
        result = integrate(np.exp, 0.0, 1.0, split_hints=[0.25, 0.5])
        assert result.panels_used >= 3
        assert result.smallest_panel <= 0.25
        assert result.abs_error_estimate <= result.tolerance

    @pytest.mark.parametrize("a, b", [(1.0, 1.0), (2.0, 1.0)])
    def test_bad_interval(self, a, b):
        with pytest.raises(DomainError):
            integrate(np.sin, a, b)

    def test_bad_tolerance(self):
        with pytest.raises(DomainError):
            integrate(np.sin, 0.0, 1.0, tol_abs=0.0)

import cmath
import math
import statistics

import pytest

from kepler_stieltjes import accel, integral_rep, kepler, stieltjes
from kepler_stieltjes.errors import CutError, DomainError, IllConditionedWarning
from kepler_stieltjes.schemas import IntegralRepResult
from kepler_stieltjes.verify.resummation import truncates_to
from tests.utils import assert_close

# printed truncated to 6 decimals
TABLE_ONE_LIMIT = complex(-1.001838, 1.238765)


class TestSIntegral:
    @pytest.mark.parametrize("eps", [0.3, 1.0])
    def test_fixed_points(self, eps):
        orbit = kepler.make_orbit(eps)
        assert integral_rep.s_integral(orbit, math.pi) == 0.0
        assert integral_rep.s_integral(orbit, 0.0) == 0.0

    @pytest.mark.parametrize("M", [0.1, 1.0, 2.0, 3.0])
    def test_parabolic_against_oracle(self, M, parabolic):
        psi = kepler.solve_kepler_oracle(parabolic, M, tol=1e-15).psi
        assert_close(M + integral_rep.s_integral(parabolic, M), psi, abs_=1e-10, what=f"psi({M})")

    def test_against_series(self):
        orbit = kepler.make_orbit(0.5)
        expected = accel.kapteyn_s_series(orbit, 0.5, tol=1e-13).imag
        assert_close(integral_rep.s_integral(orbit, 0.5), expected, abs_=1e-10)

    @pytest.mark.parametrize("M", [0.3, 1.2, 2.5])
    def test_odd_symmetry(self, M):
        orbit = kepler.make_orbit(0.8)
        s = integral_rep.s_integral(orbit, M)
        assert s > 0.0
        assert_close(integral_rep.s_integral(orbit, 2 * math.pi - M), -s, abs_=1e-12)

    def test_detailed(self, parabolic):
        result = integral_rep.s_integral_detailed(parabolic, 1.0)
        assert isinstance(result, IntegralRepResult)
        assert result.panels_used > 0
        assert result.abs_error <= 1e-12
        assert not result.ill_conditioned

    def test_precision_levels(self, parabolic):
        psi = kepler.solve_kepler_oracle(parabolic, 0.5, tol=1e-15).psi
        for precision in [10, 15, 20, 25]:
            err = abs(0.5 + integral_rep.s_integral(parabolic, 0.5, precision) - psi)
            assert err <= max(10.0 ** (2 - precision), 1e-13), f"precision {precision}: {err:.3e}"

    def test_degenerate_orbit(self, circular):
        assert integral_rep.s_integral(circular, 1.0) == 0.0
        assert integral_rep.s_complex_integral(circular, 1.0) == 0j

    @pytest.mark.parametrize("precision", [0, 12, 30])
    def test_invalid_precision(self, precision, parabolic):
        with pytest.raises(DomainError):
            integral_rep.s_integral(parabolic, 1.0, precision)

    def test_ill_conditioned_warning(self, monkeypatch, parabolic):
        monkeypatch.setattr(integral_rep, "ILL_CONDITIONED_PANEL", 1.0)
        with pytest.warns(IllConditionedWarning):
            result = integral_rep.s_integral_detailed(parabolic, 0.5)
        assert result.ill_conditioned

    @pytest.mark.slow
    def test_precision_median_near_corner(self, parabolic):
        grid = [0.05 * k for k in range(1, 62)]
        errors = {}
        for precision in [10, 25]:
            errs = []
            for M in grid:
                psi = kepler.solve_kepler_oracle(parabolic, M, tol=1e-15).psi
                errs.append(abs(M + integral_rep.s_integral(parabolic, M, precision) - psi) / psi)
            errors[precision] = statistics.median(errs)
        assert errors[25] <= max(errors[10], 1e-15)


class TestComplexIntegral:
    @pytest.mark.parametrize("eps", [0.5, 0.9, 1.0])
    @pytest.mark.parametrize("M", [0.4, 2.0, 4.0, 5.5])
    def test_imaginary_part(self, eps, M):
        orbit = kepler.make_orbit(eps)
        value = integral_rep.s_complex_integral(orbit, M)
        assert_close(value.imag, integral_rep.s_integral(orbit, M), abs_=1e-10)

    def test_real_part_against_series(self):
        orbit = kepler.make_orbit(0.5)
        expected = accel.kapteyn_s_series(orbit, 1.0, tol=1e-13)
        assert_close(integral_rep.s_complex_integral(orbit, 1.0), expected, abs_=1e-10)

    def test_against_stieltjes_route(self):
        orbit = kepler.make_orbit(0.9)
        z = cmath.exp(complex(orbit.lam, 2.0))
        expected = stieltjes.stieltjes_value(z, stieltjes.StieltjesDensity(orbit))
        assert_close(integral_rep.s_complex_integral(orbit, 2.0), expected, abs_=1e-8)

    def test_conjugate_symmetry(self):
        orbit = kepler.make_orbit(0.7)
        value = integral_rep.s_complex_integral(orbit, 1.3)
        mirrored = integral_rep.s_complex_integral(orbit, 2 * math.pi - 1.3)
        assert_close(mirrored, value.conjugate(), abs_=1e-12)

    def test_zero_anomaly_is_real(self):
        # SS(eps; 0) = 2 sum J_n(n eps)/n, no imaginary part
        value = integral_rep.s_complex_integral(kepler.make_orbit(0.5), 0.0)
        assert abs(value.imag) <= 1e-12
        expected = accel.kapteyn_s_series(kepler.make_orbit(0.5), 0.0, tol=1e-13).real
        assert_close(value.real, expected, abs_=1e-10)


class TestContinuation:
    def test_divergent_case(self, table_one):
        orbit, z = table_one
        result = integral_rep.kapteyn_continuation(z, orbit)
        assert result.z == z
        assert truncates_to(result.value, TABLE_ONE_LIMIT), result.value
        assert result.quadrature_error <= 1e-10

    def test_origin(self, parabolic):
        assert integral_rep.kapteyn_continuation(0, parabolic).value == 0j

    @pytest.mark.parametrize("z", [0.3, -1.0 + 0.5j, 1.2j])
    def test_inside_disk(self, z):
        orbit = kepler.make_orbit(0.5)
        direct = accel.kapteyn_partial_sums(z, orbit, 250).sums[-1]
        assert_close(integral_rep.kapteyn_continuation(z, orbit).value, direct, abs_=1e-10)

    def test_kepler_solution(self):
        # z = exp(iM) gives SS/2
        orbit = kepler.make_orbit(0.6)
        value = integral_rep.kapteyn_continuation(cmath.exp(1j * 1.1), orbit).value
        assert_close(2.0 * value, integral_rep.s_complex_integral(orbit, 1.1), abs_=1e-10)

    def test_cut(self):
        orbit = kepler.make_orbit(0.9)
        with pytest.raises(CutError):
            integral_rep.kapteyn_continuation(2.0, orbit)
        with pytest.raises(CutError):
            integral_rep.kapteyn_continuation(orbit.radius, orbit)
        # the negative axis is fine
        value = integral_rep.kapteyn_continuation(-2.0, orbit).value
        assert abs(value.imag) <= 1e-14

    def test_degenerate_orbit(self, circular):
        assert integral_rep.kapteyn_continuation(5.0, circular).value == 0j

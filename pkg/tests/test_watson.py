import math

import numpy as np
import pytest

from kepler_stieltjes import watson
from kepler_stieltjes.errors import DomainError
from kepler_stieltjes.kepler import make_orbit
from kepler_stieltjes.schemas import PhasePoint
from tests.utils import assert_close
from tests.utils.oracles import mp_bessel, mp_bessel_scaled, mp_phase_f


class TestPhase:
    @pytest.mark.parametrize("eps", [1e-3, 0.1, 0.5, 0.9, 0.999, 1.0])
    def test_lambda_identity(self, eps):
        orbit = make_orbit(eps)
        assert abs(watson.phase_F(0.0, orbit) + orbit.lam) <= 1e-13

    def test_closed_form_at_half_pi(self, parabolic):
        assert_close(watson.phase_F(math.pi / 2, parabolic), math.acosh(math.pi / 2), rel=1e-14)

    @pytest.mark.parametrize("theta, eps", [(1.0, 0.5), (2.5, 0.9), (0.3, 1.0), (3.0, 0.2)])
    def test_against_extended_precision(self, theta, eps):
        assert_close(watson.phase_F(theta, make_orbit(eps)), mp_phase_f(theta, eps), rel=1e-13)

    @pytest.mark.parametrize("theta", [1e-6, 1e-3, 0.05])
    def test_near_zero(self, theta):
        # theta - eps sin(theta) cancels here
        assert_close(watson.phase_F(theta, make_orbit(0.5)), mp_phase_f(theta, 0.5), abs_=1e-14)
        assert_close(watson.phase_F(theta, make_orbit(1.0)), mp_phase_f(theta, 1.0), abs_=1e-14)

    def test_endpoint(self):
        assert watson.phase_F(math.pi, make_orbit(0.5)) == math.inf
        assert watson.phase_G(math.pi, make_orbit(0.5)) == math.inf

    def test_monotonic(self):
        theta = np.linspace(0.0, math.pi, 500)[1:-1]
        for eps in [0.05, 0.5, 1.0]:
            assert np.all(np.diff(watson.phase_f_array(theta, make_orbit(eps))) > 0)

    def test_shifted_phase(self):
        orbit = make_orbit(0.7)
        assert watson.phase_G(0.0, orbit) == pytest.approx(0.0, abs=1e-15)
        assert_close(watson.phase_G(1.0, orbit), watson.phase_F(1.0, orbit) + orbit.lam, abs_=1e-15)
        assert watson.phase_G(1.0, orbit) > 0.0

    def test_circular_phase(self, circular):
        assert_close(watson.phase_G(math.pi / 2, circular), math.log(math.pi / 2) + 1.0, rel=1e-15)
        assert watson.phase_G(0.0, circular) == 0.0

    def test_domain(self, parabolic, circular):
        for theta in [-0.1, math.pi + 1e-9]:
            with pytest.raises(DomainError):
                watson.phase_F(theta, parabolic)
            with pytest.raises(DomainError):
                watson.phase_G(theta, parabolic)
        with pytest.raises(DomainError):
            watson.phase_F(1.0, circular)

    def test_phase_point(self, parabolic):
        point = watson.phase_point(1.0, parabolic)
        assert isinstance(point, PhasePoint)
        assert point.theta == 1.0
        assert point.value == watson.phase_F(1.0, parabolic)


class TestBessel:
    def test_first_order(self):
        assert_close(watson.bessel_watson(1, make_orbit(0.5)), 0.2422684577, abs_=1e-10)
        assert_close(watson.bessel_watson(1, make_orbit(0.5)), mp_bessel(1, 0.5), rel=1e-11)

    def test_parabolic(self, parabolic):
        assert_close(watson.bessel_watson(5, parabolic), mp_bessel(5, 5.0), rel=1e-10)
        # lambda = 0, nothing to scale
        assert_close(watson.bessel_scaled(1, parabolic), mp_bessel(1, 1.0), rel=1e-12)

    def test_small_eccentricity(self):
        eps = 1e-3
        value = watson.bessel_watson(1, make_orbit(eps))
        assert_close(value, mp_bessel(1, eps), rel=1e-10)
        assert_close(value, eps / 2, rel=1e-6)

    @pytest.mark.parametrize("n, eps", [(40, 0.9), (7, 0.3), (120, 0.99), (25, 1.0)])
    def test_scaled(self, n, eps):
        assert_close(watson.bessel_scaled(n, make_orbit(eps)), mp_bessel_scaled(n, eps), rel=1e-10)

    def test_siegel_bound(self):
        for eps in [0.1, 0.5, 0.9, 1.0]:
            orbit = make_orbit(eps)
            assert all(0.0 < watson.bessel_scaled(n, orbit) <= 1.0 for n in range(1, 60))

    def test_asymptotics(self):
        orbit = make_orbit(0.5)
        ratio = watson.bessel_scaled(200, orbit) / watson.bessel_asymptotic_scaled(200, orbit)
        assert abs(ratio - 1.0) <= 0.01

    @pytest.mark.parametrize("n", [1, 2, 5, 10, 40])
    def test_circular_limit(self, n, circular):
        exact = math.exp(n * math.log(n) - n - math.lgamma(n + 1))
        assert_close(watson.bessel_scaled(n, circular), exact, rel=1e-10)

    def test_domain(self, parabolic, circular):
        for n in [0, -1, 1.5]:
            with pytest.raises(DomainError):
                watson.bessel_scaled(n, parabolic)
        with pytest.raises(DomainError):
            watson.bessel_watson(1, circular)
        with pytest.raises(DomainError):
            watson.bessel_asymptotic_scaled(10, parabolic)


class TestBesselReference:
    @pytest.mark.parametrize("n, x", [(50, 45.0), (10, 150.0), (200, 180.0), (0, 2.5), (3, 0.1)])
    def test_against_mpmath(self, n, x):
        assert_close(watson.bessel_reference(n, x), mp_bessel(n, x), rel=1e-12, abs_=1e-15)

    def test_origin(self):
        assert watson.bessel_reference(0, 0.0) == 1.0
        assert watson.bessel_reference(3, 0.0) == 0.0

    @pytest.mark.parametrize("n, x", [(-1, 1.0), (201, 1.0), (1.5, 1.0), (1, -1.0), (1, 200.5)])
    def test_domain(self, n, x):
        with pytest.raises(DomainError):
            watson.bessel_reference(n, x)

import math

import pytest

from kepler_stieltjes import kepler
from kepler_stieltjes.errors import ConvergenceError, DomainError
from kepler_stieltjes.schemas import EccentricAnomaly, MeanAnomaly, OrbitParams
from tests.utils import assert_close
from tests.utils.oracles import bisection_psi, mp_chi, mp_lambda


class TestOrbit:
    @pytest.mark.parametrize("eps", [0.6, 0.9, 0.999, 1e-3, 0.2])
    def test_decay_exponent(self, eps):
        orbit = kepler.make_orbit(eps)
        assert_close(orbit.chi, mp_chi(eps), rel=1e-15, what=f"chi({eps})")
        assert_close(orbit.lam, mp_lambda(eps), rel=1e-13, what=f"lambda({eps})")

    def test_limits(self):
        assert kepler.make_orbit(1.0).lam == 0.0
        assert kepler.make_orbit(1.0).parabolic
        circular = kepler.make_orbit(0.0)
        assert circular.lam == -math.inf
        assert circular.degenerate
        assert circular.radius == math.inf

    def test_lambda_is_negative(self):
        for eps in [0.1, 0.5, 0.99]:
            assert kepler.make_orbit(eps).lam < 0.0

    @pytest.mark.parametrize("eps", [-0.1, 1.0 + 1e-12, math.nan])
    def test_domain(self, eps):
        with pytest.raises(DomainError):
            kepler.make_orbit(eps)

    def test_lambda_alias(self):
        orbit = OrbitParams(eps=0.5, chi=math.sqrt(0.75), **{"lambda": -0.1})
        assert orbit.lam == -0.1
        assert "lambda" in orbit.model_dump(by_alias=True)

    @pytest.mark.parametrize("eps, chi", [(2.0, 0.0), (-0.5, 0.0), (0.5, 0.5), (1.0, 0.1)])
    def test_inconsistent_geometry_is_rejected(self, eps, chi):
        with pytest.raises(ValueError):
            OrbitParams(eps=eps, chi=chi, lam=-0.1)

    def test_frozen(self):
        orbit = kepler.make_orbit(0.5)
        with pytest.raises(Exception):
            orbit.eps = 0.7


class TestMeanAnomaly:
    @pytest.mark.parametrize(
        "M, expected",
        [(0.0, 0.0), (1.0, 1.0), (2 * math.pi, 0.0), (-1.0, 2 * math.pi - 1.0), (7.0, 7.0 - 2 * math.pi)],
    )
    def test_reduction(self, M, expected):
        assert_close(MeanAnomaly(M=M).M, expected, abs_=1e-15)

    def test_folded(self):
        assert MeanAnomaly(M=1.0).folded == (1.0, 1.0)
        folded, sign = MeanAnomaly(M=5.0).folded
        assert sign == -1.0
        assert_close(folded, 2 * math.pi - 5.0, abs_=1e-15)


class TestOracle:
    @pytest.mark.parametrize("eps", [0.0, 0.1, 0.5, 0.9, 1.0])
    @pytest.mark.parametrize("M", [0.0, 1e-4, 0.5, 1.0, 2.0, math.pi, 4.0, 6.0])
    def test_residual(self, eps, M):
        orbit = kepler.make_orbit(eps)
        anomaly = kepler.mean_anomaly(M)
        psi = kepler.solve_kepler_oracle(orbit, anomaly).psi
        assert 0.0 <= psi <= 2 * math.pi
        assert abs(kepler.kepler_residual(orbit, anomaly, psi)) <= 1e-13

    def test_against_bisection(self):
        psi = kepler.solve_kepler_oracle(kepler.make_orbit(0.9), 0.5).psi
        assert_close(psi, bisection_psi(0.9, 0.5), abs_=1e-13)

    def test_known_values(self):
        assert kepler.solve_kepler_oracle(kepler.make_orbit(0.5), math.pi).psi == math.pi
        assert kepler.solve_kepler_oracle(kepler.make_orbit(0.7), 0.0).psi == 0.0
        assert kepler.solve_kepler_oracle(kepler.make_orbit(0.0), 1.3).psi == 1.3

    def test_monotonic(self):
        orbit = kepler.make_orbit(1.0)
        grid = [0.01 * k for k in range(1, 628)]
        values = [kepler.solve_kepler_oracle(orbit, M).psi for M in grid]
        assert all(b > a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("M", [0.3, 1.2, 2.9])
    def test_symmetry(self, M):
        orbit = kepler.make_orbit(0.8)
        psi = kepler.solve_kepler_oracle(orbit, M).psi
        mirrored = kepler.solve_kepler_oracle(orbit, 2 * math.pi - M).psi
        assert_close(psi + mirrored, 2 * math.pi, abs_=1e-13)

    def test_parabolic_small_anomaly(self):
        # psi ~ (6 M)^(1/3) for eps = 1
        M = 1e-9
        psi = kepler.solve_kepler_oracle(kepler.make_orbit(1.0), M).psi
        assert_close(psi, (6 * M) ** (1 / 3), rel=1e-4)

    def test_s_from_psi(self):
        M = kepler.mean_anomaly(1.0)
        psi = kepler.solve_kepler_oracle(kepler.make_orbit(0.5), M)
        assert isinstance(psi, EccentricAnomaly)
        assert_close(kepler.s_from_psi(psi, M), 0.5 * math.sin(psi.psi), abs_=1e-13)

    def test_convergence_error(self):
        with pytest.raises(ConvergenceError) as exc_info:
            kepler.solve_kepler_oracle(kepler.make_orbit(0.9), 0.5, tol=1e-16, max_iter=1)
        assert exc_info.value.iterations == 1
        assert exc_info.value.to_exit_code() == 3

    @pytest.mark.parametrize("tol", [0.0, -1e-3])
    def test_bad_tolerance(self, tol):
        with pytest.raises(DomainError):
            kepler.solve_kepler_oracle(kepler.make_orbit(0.5), 1.0, tol=tol)

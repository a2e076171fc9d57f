"""Watson's phase F(theta; eps), the shifted phase G = F + lambda, and J_n(n eps) by quadrature.

    J_n(n eps)              = (1/pi) int_0^pi exp(-n F(theta; eps)) dtheta
    J_n(n eps) exp(-lambda n) = (1/pi) int_0^pi exp(-n G(theta)) dtheta

The scaled form never builds exp(-lambda n) explicitly, it is the canonical source of every
series coefficient.
"""

import math
from functools import lru_cache

import numpy as np
from mpmath.ctx_mp import MPContext

from kepler_stieltjes import config
from kepler_stieltjes.errors import AccuracyError, DomainError
from kepler_stieltjes.quadrature import integrate
from kepler_stieltjes.schemas import OrbitParams, PhasePoint

# Below this angle theta - sin(theta) is summed from its Taylor series
_SERIES_THRESHOLD = 1.0
# theta - sin(theta) = sum_k (-1)^(k+1) theta^(2k+1)/(2k+1)!, k = 1..9
_THETA_MINUS_SIN = [(-1) ** (k + 1) / math.factorial(2 * k + 1) for k in range(1, 10)]
_TINY = 1e-300


#
# Phase functions
#


def _theta_minus_sin(theta: np.ndarray) -> np.ndarray:
    t2 = theta * theta
    acc = np.zeros_like(theta)
    for c in reversed(_THETA_MINUS_SIN):
        acc = acc * t2 + c
    series = acc * t2 * theta
    return np.where(theta < _SERIES_THRESHOLD, series, theta - np.sin(theta))


def _sqrt_d(theta: np.ndarray, eps: float) -> np.ndarray:
    """sqrt(theta^2 - eps^2 sin^2 theta) free of cancellation near theta = 0."""
    sin = np.sin(theta)
    minus = (1.0 - eps) * theta + eps * _theta_minus_sin(theta)
    plus = theta + eps * sin
    return np.sqrt(minus * plus)


def _phase_f(theta: np.ndarray, orbit: OrbitParams) -> np.ndarray:
    eps = orbit.eps
    theta = np.asarray(theta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        sin = np.sin(theta)
        root = _sqrt_d(theta, eps)
        value = np.log((theta + root) / (eps * sin)) - root * np.cos(theta) / sin
    at_zero = math.log((1.0 + orbit.chi) / eps) - orbit.chi
    value = np.where(theta <= 0.0, at_zero, value)
    return np.where(theta >= math.pi, np.inf, value)


def _phase_g_circular(theta: np.ndarray) -> np.ndarray:
    """chi = 1 limit of G: log(theta/sin theta) + 1 - theta cot theta."""
    theta = np.asarray(theta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        sin = np.sin(theta)
        value = np.log(theta / sin) + 1.0 - theta * np.cos(theta) / sin
    value = np.where(theta <= 0.0, 0.0, value)
    return np.where(theta >= math.pi, np.inf, value)


def phase_g_array(theta: np.ndarray, orbit: OrbitParams) -> np.ndarray:
    """Vectorised G_chi(theta); theta is assumed to lie in [0, pi]."""
    if orbit.degenerate:
        return _phase_g_circular(theta)
    return np.maximum(_phase_f(theta, orbit) + orbit.lam, 0.0)


def phase_f_array(theta: np.ndarray, orbit: OrbitParams) -> np.ndarray:
    return _phase_f(theta, orbit)


def _check_theta(theta: float):
    if not 0.0 <= theta <= math.pi:
        raise DomainError("theta", theta, "0 <= theta <= pi")


def phase_F(theta: float, orbit: OrbitParams) -> float:
    _check_theta(theta)
    if orbit.degenerate:
        raise DomainError("eps", orbit.eps, "eps > 0 for Watson's phase")
    return float(_phase_f(np.array([theta]), orbit)[0])


def phase_G(theta: float, orbit: OrbitParams) -> float:
    _check_theta(theta)
    return float(phase_g_array(np.array([theta]), orbit)[0])


def phase_point(theta: float, orbit: OrbitParams) -> PhasePoint:
    return PhasePoint(theta=theta, value=phase_F(theta, orbit))


#
# Bessel functions J_n(n eps)
#


def clamped_exp(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    with np.errstate(under="ignore", over="ignore", invalid="ignore"):
        return np.where(x < config.EXP_UNDERFLOW, 0.0, np.exp(np.maximum(x, config.EXP_UNDERFLOW)))


def _bump_hints(n: int) -> list[float]:
    # exp(-n G) is concentrated on theta <~ n^(-1/2) (n^(-1/3) for eps = 1)
    return sorted({min(math.pi / 2, 4.0 / math.sqrt(n)), min(math.pi / 4, 1.0 / math.sqrt(n))})


def _check_order(n: int):
    if int(n) != n or n < 1:
        raise DomainError("n", n, "a positive integer")


def bessel_watson(n: int, orbit: OrbitParams) -> float:
    """J_n(n eps) from Watson's integral (validation route)."""
    _check_order(n)
    if orbit.degenerate:
        raise DomainError("eps", orbit.eps, "0 < eps <= 1")

    result = integrate(
        lambda theta: clamped_exp(-n * _phase_f(theta, orbit)),
        0.0,
        math.pi,
        tol_abs=_TINY,
        tol_rel=config.QUAD_TOL_REL,
        split_hints=_bump_hints(n),
    )
    if not result.converged:
        raise AccuracyError.from_quadrature(result, f"Watson integral J_{n}({n}*{orbit.eps})")
    return result.value / math.pi


def bessel_scaled(n: int, orbit: OrbitParams) -> float:
    """J_n(n eps) exp(-lambda n), bounded by 1 (Siegel)."""
    _check_order(n)
    return _bessel_scaled(int(n), orbit)


@lru_cache(maxsize=65536)
def _bessel_scaled(n: int, orbit: OrbitParams) -> float:
    result = integrate(
        lambda theta: clamped_exp(-n * phase_g_array(theta, orbit)),
        0.0,
        math.pi,
        split_hints=_bump_hints(n),
    )
    if not result.converged:
        raise AccuracyError.from_quadrature(result, f"scaled Watson integral n={n}, eps={orbit.eps}")
    return result.value / math.pi


def bessel_asymptotic_scaled(n: int, orbit: OrbitParams) -> float:
    """Large-n form 1/sqrt(2 pi chi n) of J_n(n eps) exp(-lambda n), eps < 1."""
    _check_order(n)
    if orbit.chi == 0.0:
        raise DomainError("eps", orbit.eps, "eps < 1 for the Bessel asymptotics")
    return 1.0 / math.sqrt(2.0 * math.pi * orbit.chi * n)


def bessel_reference(n: int, x: float) -> float:
    """J_n(x) from the ascending power series, summed in extended precision.

    The series terms reach about exp(x) in magnitude, so the working precision grows with x
    to absorb the cancellation; the result is good to 1e-12 relative on 0 <= x, n <= 200.
    """
    if int(n) != n or not 0 <= n <= 200:
        raise DomainError("n", n, "integer 0 <= n <= 200")
    if not 0.0 <= x <= 200.0:
        raise DomainError("x", x, "0 <= x <= 200")
    n = int(n)
    if x == 0.0:
        return 1.0 if n == 0 else 0.0

    ctx = MPContext()
    ctx.dps = 30 + math.ceil(0.45 * x)
    half = ctx.mpf(x) / 2
    q = half * half
    term = half**n / ctx.factorial(n)
    terms = [term]
    for k in range(1, 2000):
        term = -term * q / (k * (k + n))
        terms.append(term)
        if k > half and abs(term) < ctx.eps * abs(terms[0]):
            break
    return float(ctx.fsum(terms))

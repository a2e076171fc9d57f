"""Stieltjes machinery: theta(t) = G^-1(-log t), the density rho = 2 theta/pi, its moments and
the Stieltjes integral z int_0^1 rho(t)/(1 - z t) dt.

The polylogarithm, whose measure is known in closed form, is the reference case:

    L_nu(z) = sum_n z^n / n^nu = z int_0^1 [(-log t)^(nu-1) / Gamma(nu)] / (1 - z t) dt
"""

import math
from dataclasses import dataclass, field

import numpy as np

from kepler_stieltjes.errors import AccuracyError, CutError, DomainError, InternalError
from kepler_stieltjes.logger import logger
from kepler_stieltjes.quadrature import integrate
from kepler_stieltjes.schemas import OrbitParams
from kepler_stieltjes.watson import phase_g_array

_BISECTION_STEPS = 64
# Beyond G(pi - _CLIP_GAP) theta is returned as pi
_CLIP_GAP = 1e-8


#
# Types
#


@dataclass(frozen=True)
class StieltjesDensity:
    """rho(t) = 2 theta(t)/pi on [0, 1], with rho(0) = 2 and rho(1) = 0."""

    orbit: OrbitParams

    def __call__(self, t):
        return density_rho_array(np.asarray(t, dtype=float), self.orbit)

    def rho(self, t: float) -> float:
        return density_rho(t, self.orbit)


@dataclass(frozen=True)
class MomentSequence:
    orbit: OrbitParams
    moments: np.ndarray = field(repr=False)  # mu_0, mu_1, ...

    def __len__(self):
        return len(self.moments)

    def siegel_bounds(self) -> np.ndarray:
        """mu_(n-1) <= 2/n."""
        return 2.0 / np.arange(1, len(self.moments) + 1)

    def carleman_sums(self) -> np.ndarray:
        """Cumulative sums of mu_m^(-1/(2m)) for m >= 1, a divergence proxy for Carleman's condition."""
        m = np.arange(1, len(self.moments))
        return np.cumsum(self.moments[1:] ** (-1.0 / (2.0 * m)))


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    tail_bound: float
    terms: int


#
# Inversion theta(t)
#


def theta_of_t_array(t: np.ndarray, orbit: OrbitParams) -> np.ndarray:
    """Vectorised bisection of G(theta) = -log t on [0, pi]; G is increasing so the bracket holds."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore"):
        target = -np.log(t)

    g_clip = phase_g_array(np.array([math.pi - _CLIP_GAP]), orbit)[0]
    lo = np.zeros_like(t)
    hi = np.full_like(t, math.pi)
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        below = phase_g_array(mid, orbit) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)

    theta = 0.5 * (lo + hi)
    theta = np.where(target <= 0.0, 0.0, theta)
    return np.where(target >= g_clip, math.pi, theta)


def _check_t(t: float):
    if not 0.0 <= t <= 1.0:
        raise DomainError("t", t, "0 <= t <= 1")


def theta_of_t(t: float, orbit: OrbitParams) -> float:
    _check_t(t)
    theta = float(theta_of_t_array(np.array([t]), orbit)[0])
    if not 0.0 <= theta <= math.pi:
        raise InternalError(f"theta(t) left [0, pi] for t={t}, eps={orbit.eps}")
    return theta


def density_rho_array(t: np.ndarray, orbit: OrbitParams) -> np.ndarray:
    return 2.0 * theta_of_t_array(t, orbit) / math.pi


def density_rho(t: float, orbit: OrbitParams) -> float:
    return 2.0 * theta_of_t(t, orbit) / math.pi


#
# Moments
#


def moment(n: int, orbit: OrbitParams) -> float:
    """mu_(n-1) = int_0^1 t^(n-1) rho(t) dt, computed in t (not by the Watson identity it must satisfy)."""
    if int(n) != n or n < 1:
        raise DomainError("n", n, "a positive integer")
    n = int(n)

    result = integrate(lambda t: t ** (n - 1) * density_rho_array(t, orbit), 0.0, 1.0)
    if not result.converged:
        raise AccuracyError.from_quadrature(result, f"moment n={n}")
    return result.value


def moment_sequence(orbit: OrbitParams, count: int) -> MomentSequence:
    if count < 1:
        raise DomainError("count", count, "count >= 1")
    moments = np.array([moment(n, orbit) for n in range(1, count + 1)])
    logger.debug(f"Computed {count} moments for eps={orbit.eps}")
    return MomentSequence(orbit=orbit, moments=moments)


#
# Stieltjes integrals
#


def _check_cut(z: complex, cut_start: float = 1.0):
    if z.imag == 0.0 and z.real >= cut_start:
        raise CutError(z, cut_start)


def _peak_hint(z: complex) -> list[float]:
    # 1/(1 - z t) peaks at t = Re(1/z) when z approaches the cut
    peak = (1.0 / z).real
    return [peak] if 0.0 < peak < 1.0 else []


def stieltjes_value(z: complex, density: StieltjesDensity) -> complex:
    z = complex(z)
    _check_cut(z)
    if z == 0:
        return 0j

    result = integrate(lambda t: density(t) / (1.0 - z * t), 0.0, 1.0, split_hints=_peak_hint(z))
    if not result.converged:
        raise AccuracyError.from_quadrature(result, f"Stieltjes integral at z={z}")
    return z * complex(result.value)


def _series_length(nu: float, r: float, tol: float) -> int:
    n = 1
    while r ** (n + 1) / ((n + 1) ** nu * (1.0 - r)) > tol:
        n += 1
    return n


def polylog_series(nu: float, z: complex, nmax: int | None = None, tol: float = 1e-16) -> SeriesValue:
    """Partial sum of sum_{n=1}^{nmax} z^n/n^nu with its tail bound.

    Without nmax, the shortest sum whose tail bound is below tol is used.
    """
    z = complex(z)
    r = abs(z)
    if r >= 1.0:
        raise DomainError("z", z, "|z| < 1")
    if z == 0:
        return SeriesValue(value=0j, tail_bound=0.0, terms=0)
    if nmax is None:
        nmax = _series_length(nu, r, tol)
    if nmax < 1:
        raise DomainError("nmax", nmax, "nmax >= 1")

    n = np.arange(1, nmax + 1, dtype=float)
    with np.errstate(under="ignore"):
        terms = z**n / n**nu
    # smallest terms first
    terms = terms[::-1]
    value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    tail = r ** (nmax + 1) / ((nmax + 1) ** nu * (1.0 - r))
    return SeriesValue(value=value, tail_bound=tail, terms=nmax)


def polylog_stieltjes(nu: float, z: complex) -> complex:
    if nu <= 0.0:
        raise DomainError("nu", nu, "nu > 0")
    z = complex(z)
    _check_cut(z)
    if z == 0:
        return 0j

    norm = math.gamma(nu)

    def f(t):
        return (-np.log(t)) ** (nu - 1.0) / norm / (1.0 - z * t)

    result = integrate(f, 0.0, 1.0, split_hints=sorted({1e-6, 0.5, *_peak_hint(z)}))
    if not result.converged:
        raise AccuracyError.from_quadrature(result, f"polylog integral nu={nu}, z={z}")
    return z * complex(result.value)

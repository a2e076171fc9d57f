"""Orbit geometry and the root-finding oracle of the Kepler equation M = psi - eps sin(psi)."""

import math

from kepler_stieltjes import config
from kepler_stieltjes.errors import ConvergenceError, DomainError
from kepler_stieltjes.logger import logger
from kepler_stieltjes.schemas import EccentricAnomaly, MeanAnomaly, OrbitParams


def _decay_exponent(eps: float, chi: float) -> float:
    """lambda = chi + log((1 - chi)/(1 + chi))/2 = chi - atanh(chi)."""
    if chi == 1.0:
        return -math.inf
    if chi < 0.25:
        # chi - atanh(chi) = -sum_{k>=1} chi^(2k+1)/(2k+1), no cancellation
        total, power, k = 0.0, chi**3, 1
        while True:
            term = power / (2 * k + 1)
            total += term
            if term <= 1e-18 * total:
                break
            power *= chi * chi
            k += 1
        return -total
    one_minus_chi = eps * eps / (1.0 + chi)
    return chi + 0.5 * math.log(one_minus_chi / (1.0 + chi))


def make_orbit(eps: float) -> OrbitParams:
    eps = float(eps)
    if not 0.0 <= eps <= 1.0:
        raise DomainError("eps", eps, "0 <= eps <= 1")
    chi = math.sqrt((1.0 - eps) * (1.0 + eps))
    return OrbitParams(eps=eps, chi=chi, lam=_decay_exponent(eps, chi))


def mean_anomaly(M: float | MeanAnomaly) -> MeanAnomaly:
    return M if isinstance(M, MeanAnomaly) else MeanAnomaly(M=M)


def kepler_residual(orbit: OrbitParams, M: MeanAnomaly, psi: float) -> float:
    return psi - orbit.eps * math.sin(psi) - M.M


def _solve_folded(eps: float, M: float, tol: float, max_iter: int) -> float:
    """Safeguarded Newton on [0, pi] for M in [0, pi], started at psi = pi."""
    if eps == 0.0 or M == 0.0 or M == math.pi:
        return M

    lo, hi = 0.0, math.pi
    psi = math.pi
    residual = math.inf
    for it in range(1, max_iter + 1):
        residual = psi - eps * math.sin(psi) - M
        if abs(residual) <= tol:
            return psi

        # f is non-decreasing, so the sign of the residual keeps the bracket
        if residual < 0.0:
            lo = psi
        else:
            hi = psi
        if math.nextafter(lo, hi) >= hi:
            # Bracket collapsed to adjacent doubles: the residual is round-off
            logger.debug(f"Kepler bracket collapsed at psi={psi!r}, residual={residual:.3e}")
            return psi

        slope = 1.0 - eps * math.cos(psi)
        candidate = psi - residual / slope if slope > 0.0 else math.nan
        if not lo < candidate < hi or candidate == psi:
            logger.debug(f"Newton step left [{lo}, {hi}] at iteration {it}, bisecting")
            candidate = 0.5 * (lo + hi)
        psi = candidate

    raise ConvergenceError(f"Kepler oracle did not converge for eps={eps}, M={M}", residual, max_iter)


def solve_kepler_oracle(
    orbit: OrbitParams,
    M: float | MeanAnomaly,
    tol: float = config.KEPLER_TOL,
    max_iter: int = config.KEPLER_MAX_ITER,
) -> EccentricAnomaly:
    """Eccentric anomaly psi with |psi - eps sin(psi) - M| <= tol.

    M is folded onto [0, pi] with psi(2pi - M) = 2pi - psi(M).
    """
    if tol <= 0.0:
        raise DomainError("tol", tol, "tol > 0")
    M = mean_anomaly(M)
    folded, sign = M.folded
    psi = _solve_folded(orbit.eps, folded, tol, max_iter)
    if sign < 0.0:
        psi = 2.0 * math.pi - psi
    return EccentricAnomaly(psi=psi)


def s_from_psi(psi: EccentricAnomaly, M: float | MeanAnomaly) -> float:
    """Reference value S(eps; M) = psi - M."""
    return psi.psi - mean_anomaly(M).M

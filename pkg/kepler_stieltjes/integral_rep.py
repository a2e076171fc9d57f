"""Integral representation of the Kepler solution and the continuation of the Kapteyn series.

With w(theta) = exp(-F(theta; eps) + iM), the complex solution and its imaginary part read

    SS(eps; M) = 2 sum_n J_n(n eps) e^{inM} / n = -(2/pi) int_0^pi log(1 - w) dtheta
    S(eps; M)  = Im SS = -(2/pi) int_0^pi arg(1 - w) dtheta

Since |w| <= 1, Re(1 - w) >= 0 and arg(1 - w) never wraps.
"""

import math
import warnings

import numpy as np

from kepler_stieltjes import config
from kepler_stieltjes.errors import AccuracyError, CutError, DomainError, IllConditionedWarning
from kepler_stieltjes.kepler import mean_anomaly
from kepler_stieltjes.logger import logger
from kepler_stieltjes.quadrature import QuadratureResult, integrate
from kepler_stieltjes.schemas import ContinuationValue, IntegralRepResult, MeanAnomaly, OrbitParams
from kepler_stieltjes.watson import clamped_exp, phase_f_array

# Narrowest panel accepted before flagging the (1, 0) corner as ill-conditioned
ILL_CONDITIONED_PANEL = 1e-6
_CUT_MARGIN = 1e-12


def precision_level(precision: int) -> dict:
    try:
        return config.PRECISION_LEVELS[int(precision)]
    except KeyError:
        raise DomainError("precision", precision, f"one of {sorted(config.PRECISION_LEVELS)}")


def _split_hints(M: float, refine: bool) -> list[float]:
    # arg(1 - w) turns on the scale theta ~ M near theta = 0 when eps -> 1
    anchor = min(0.1, 10.0 * M)
    hints = [anchor]
    if refine:
        hints += [anchor * 10.0**-k for k in range(1, 5)] + [0.5, 1.0, 2.0]
    return hints


def _one_minus_w(theta: np.ndarray, orbit: OrbitParams, M: float):
    """Real and imaginary parts of 1 - exp(-F + iM).

    Re = (1 - e^-F) + 2 e^-F sin^2(M/2) keeps full accuracy where F and M are both small.
    """
    f = phase_f_array(theta, orbit)
    a = clamped_exp(-f)
    re = -np.expm1(-f) + 2.0 * a * math.sin(0.5 * M) ** 2
    im = -a * math.sin(M)
    return re, im


def _check_orbit(orbit: OrbitParams):
    if not 0.0 <= orbit.eps <= 1.0:
        raise DomainError("eps", orbit.eps, "0 <= eps <= 1")


def _checked(result: QuadratureResult, what: str) -> QuadratureResult:
    if not result.converged:
        raise AccuracyError.from_quadrature(result, what)
    return result


#
# Real form
#


def s_integral_detailed(
    orbit: OrbitParams, M: float | MeanAnomaly, precision: int = config.DEFAULT_PRECISION
) -> IntegralRepResult:
    """S(eps; M) from the arg form of the integral, with quadrature diagnostics."""
    _check_orbit(orbit)
    level = precision_level(precision)
    folded, sign = mean_anomaly(M).folded

    if orbit.degenerate or folded == 0.0 or folded == math.pi:
        return IntegralRepResult(value=0.0, abs_error=0.0, panels_used=0)

    def f(theta):
        re, im = _one_minus_w(theta, orbit, folded)
        return -(2.0 / math.pi) * np.arctan2(im, re)

    result = _checked(
        integrate(
            f,
            0.0,
            math.pi,
            tol_abs=level["tol_abs"],
            tol_rel=level["tol_rel"],
            split_hints=_split_hints(folded, level["refine"]),
        ),
        f"S integral at eps={orbit.eps}, M={folded}",
    )

    ill_conditioned = result.smallest_panel < ILL_CONDITIONED_PANEL
    if ill_conditioned:
        msg = (
            f"S integral at eps={orbit.eps}, M={folded} needed a panel of width "
            f"{result.smallest_panel:.2e} rad"
        )
        logger.warning(msg)
        warnings.warn(msg, IllConditionedWarning, stacklevel=2)

    return IntegralRepResult(
        value=sign * result.value,
        abs_error=result.abs_error_estimate,
        panels_used=result.panels_used,
        ill_conditioned=ill_conditioned,
    )


def s_integral(orbit: OrbitParams, M: float | MeanAnomaly, precision: int = config.DEFAULT_PRECISION) -> float:
    return s_integral_detailed(orbit, M, precision).value


#
# Complex form
#


def _unwrapped_arg(re: np.ndarray, im: np.ndarray) -> np.ndarray:
    """arg(w - 1) continued from its value pi at theta = pi.

    The principal value jumps by 2pi where Im(w) changes sign across the negative axis, so the
    node sequence is unwrapped starting from the anchor pi.
    """
    principal = np.arctan2(-im, -re)
    return np.unwrap(np.concatenate([[math.pi], principal]))[1:]


def s_complex_integral(
    orbit: OrbitParams, M: float | MeanAnomaly, precision: int = config.DEFAULT_PRECISION
) -> complex:
    """SS(eps; M) = 2i pi - (2/pi) int_0^pi log(w - 1) dtheta, with the phase of w - 1 unwrapped."""
    _check_orbit(orbit)
    level = precision_level(precision)
    folded, sign = mean_anomaly(M).folded
    if orbit.degenerate:
        return 0j

    def f(theta):
        re, im = _one_minus_w(theta, orbit, folded)
        with np.errstate(divide="ignore"):
            log_abs = 0.5 * np.log(re * re + im * im)
        return log_abs + 1j * _unwrapped_arg(re, im)

    hints = _split_hints(folded, level["refine"]) if folded > 0.0 else [1e-3, 0.1]
    result = _checked(
        integrate(f, 0.0, math.pi, tol_abs=level["tol_abs"], tol_rel=level["tol_rel"], split_hints=hints),
        f"complex S integral at eps={orbit.eps}, M={folded}",
    )
    value = 2j * math.pi - (2.0 / math.pi) * complex(result.value)
    return value.conjugate() if sign < 0.0 else value


#
# Continuation of the Kapteyn series
#


def kapteyn_continuation(z: complex, orbit: OrbitParams) -> ContinuationValue:
    """Continuation of sum_m z^m J_m(m eps)/m to the plane cut along real z >= exp(-lambda).

    Evaluated as -(1/pi) int_0^pi log(1 - z exp(-F)) dtheta on the principal branch.
    """
    z = complex(z)
    _check_orbit(orbit)
    if orbit.degenerate or z == 0:
        return ContinuationValue(z=z, value=0j, quadrature_error=0.0)

    cut_start = orbit.radius * (1.0 - _CUT_MARGIN)
    if z.imag == 0.0 and z.real >= cut_start:
        raise CutError(z, cut_start)

    def f(theta):
        return np.log1p(-z * clamped_exp(-phase_f_array(theta, orbit)))

    result = _checked(
        integrate(f, 0.0, math.pi, split_hints=[0.1, 1.0]),
        f"Kapteyn continuation at z={z}, eps={orbit.eps}",
    )
    return ContinuationValue(
        z=z,
        value=-complex(result.value) / math.pi,
        quadrature_error=result.abs_error_estimate / math.pi,
    )

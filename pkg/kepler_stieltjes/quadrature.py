"""Adaptive Gauss-Kronrod (7/15) integration on finite intervals.

Every integral of the package (over theta in [0, pi] or t in [0, 1]) goes through `integrate`.
Integrands are vectorised: they receive a 1-D numpy array of nodes and return an array of the
same length, real or complex. Complex integrands share one panel tree, so real and imaginary
parts are always sampled at identical nodes.
"""

import heapq
import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from kepler_stieltjes import config
from kepler_stieltjes.errors import DomainError
from kepler_stieltjes.logger import logger

# Kronrod nodes on [0, 1) (the negative half is mirrored) and weights; the Gauss-7 nodes
# are the odd entries of the Kronrod set.
_XK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.0,
        0.129484966168869693270611432679082,
        0.0,
        0.279705391489276667901467771423780,
        0.0,
        0.381830050505118944950369775488975,
        0.0,
        0.417959183673469387755102040816327,
    ]
)

# Full 15-point stencil on [-1, 1]
NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.concatenate([_WG[:-1], _WG[::-1]])

_EPS = np.finfo(float).eps

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureResult:
    value: complex | float
    abs_error_estimate: float
    panels_used: int
    converged: bool
    tolerance: float  # effective target; converged implies abs_error_estimate <= tolerance
    smallest_panel: float


def _gk15(f: Integrand, lo: np.ndarray, hi: np.ndarray):
    """Evaluate the 7/15 pair on a batch of panels in a single integrand call."""
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(f(x.ravel())).reshape(x.shape)
    kronrod = half * (fx @ KRONROD_WEIGHTS)
    gauss = half * (fx @ GAUSS_WEIGHTS)
    resabs = half * (np.abs(fx) @ KRONROD_WEIGHTS)
    return kronrod, np.abs(kronrod - gauss), resabs


def _sum(values) -> complex | float:
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(np.sum(np.sort(values.real)), np.sum(np.sort(values.imag)))
    return float(np.sum(np.sort(values)))


def integrate(
    f: Integrand,
    a: float,
    b: float,
    tol_abs: float = config.QUAD_TOL_ABS,
    tol_rel: float = config.QUAD_TOL_REL,
    split_hints: Sequence[float] = (),
    panel_budget: int | None = None,
) -> QuadratureResult:
    """Globally adaptive integration of `f` over [a, b].

    The panel with the largest error estimate |K15 - G7| is bisected until the summed estimate
    falls below max(tol_abs, tol_rel * |I|). Split hints become initial panel boundaries. A
    tolerance below the round-off floor 50 * eps * int |f| is clamped to that floor. When the
    panel budget is exhausted the best estimate is returned with converged=False.
    """
    if not a < b:
        raise DomainError("interval", (a, b), "a < b")
    if tol_abs <= 0 or tol_rel <= 0:
        raise DomainError("tolerance", (tol_abs, tol_rel), "positive tolerances")
    budget = panel_budget or config.PANEL_BUDGET

    edges = sorted({a, b, *(float(h) for h in split_hints if a < h < b)})
    lo, hi = np.array(edges[:-1]), np.array(edges[1:])
    values, errors, resabs = _gk15(f, lo, hi)

    counter = itertools.count()
    heap = []  # (-err, tie, lo, hi, value, err, resabs)
    frozen = []  # panels too narrow to split further
    for i in range(len(lo)):
        heapq.heappush(heap, (-errors[i], next(counter), lo[i], hi[i], values[i], errors[i], resabs[i]))

    total = _sum(values)
    total_err = float(np.sum(errors))
    total_resabs = float(np.sum(resabs))

    def target():
        return max(tol_abs, tol_rel * abs(total), 50.0 * _EPS * total_resabs)

    while total_err > target() and heap and len(heap) + len(frozen) < budget:
        _, _, p_lo, p_hi, p_val, p_err, p_abs = heapq.heappop(heap)
        mid = 0.5 * (p_lo + p_hi)
        if not p_lo < mid < p_hi or (p_hi - p_lo) < 4 * _EPS * max(abs(p_lo), abs(p_hi)):
            frozen.append((p_lo, p_hi, p_val, p_err, p_abs))
            continue

        child_vals, child_errs, child_abs = _gk15(f, np.array([p_lo, mid]), np.array([mid, p_hi]))
        for i, (c_lo, c_hi) in enumerate(((p_lo, mid), (mid, p_hi))):
            entry = (-child_errs[i], next(counter), c_lo, c_hi, child_vals[i], child_errs[i], child_abs[i])
            heapq.heappush(heap, entry)
        total = total - p_val + child_vals[0] + child_vals[1]
        total_err = total_err - p_err + child_errs[0] + child_errs[1]
        total_resabs = total_resabs - p_abs + child_abs[0] + child_abs[1]

    panels = [item[2:] for item in heap] + frozen
    total = _sum([p[2] for p in panels])
    total_err = float(np.sum([p[3] for p in panels]))
    total_resabs = float(np.sum([p[4] for p in panels]))
    tolerance = target()
    converged = total_err <= tolerance
    smallest = min(p[1] - p[0] for p in panels)

    if not converged:
        logger.warning(
            f"Quadrature on [{a}, {b}] stopped with {len(panels)} panels: "
            f"error estimate {total_err:.3e} > tolerance {tolerance:.3e}"
        )
    else:
        logger.debug(f"Quadrature on [{a}, {b}]: {len(panels)} panels, error {total_err:.3e}")

    return QuadratureResult(
        value=total,
        abs_error_estimate=total_err,
        panels_used=len(panels),
        converged=converged,
        tolerance=tolerance,
        smallest_panel=float(smallest),
    )

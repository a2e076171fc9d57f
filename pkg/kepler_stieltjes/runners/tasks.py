from dataclasses import dataclass
from functools import lru_cache

from kepler_stieltjes import accel, integral_rep, kepler
from kepler_stieltjes.config import KEPLER_TOL
from kepler_stieltjes.logger import logger
from kepler_stieltjes.schemas import Method, SweepRecord


@dataclass
class SweepTask:
    eps: float
    M: float
    method: Method
    order_or_tol: float  # precision level (integral), order (series-type), tol (oracle)
    # position in the output, rows are emitted sorted on this key
    m_index: int = 0
    method_index: int = 0
    level_index: int = 0

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return self.m_index, self.method_index, self.level_index


@lru_cache(maxsize=4096)
def reference_psi(eps: float, M: float) -> float:
    """Oracle eccentric anomaly, tightened below the default tolerance."""
    return kepler.solve_kepler_oracle(kepler.make_orbit(eps), M, tol=KEPLER_TOL / 10).psi


def estimate(task: SweepTask) -> tuple[float, float]:
    """(psi estimate, Re SS estimate) of one task; the second value is 0 for non-series methods."""
    orbit = kepler.make_orbit(task.eps)
    M = kepler.mean_anomaly(task.M)
    match task.method:
        case Method.oracle:
            return kepler.solve_kepler_oracle(orbit, M, tol=task.order_or_tol).psi, 0.0
        case Method.integral:
            return M.M + integral_rep.s_integral(orbit, M, precision=int(task.order_or_tol)), 0.0
        case Method.series:
            value = accel.kapteyn_s_series(orbit, M, N=int(task.order_or_tol))
        case Method.weniger | Method.wynn:
            value = accel.resum_s(orbit, M, int(task.order_or_tol), task.method)
        case _:
            raise ValueError(f"Unknown method: {task.method}")
    return M.M + value.imag, value.real


def process_task(task: SweepTask) -> SweepRecord:
    psi, companion = estimate(task)
    # the oracle row is its own reference
    ref = psi if task.method == Method.oracle else reference_psi(task.eps, kepler.mean_anomaly(task.M).M)
    logger.debug(f"Sweep task eps={task.eps} M={task.M} {task.method.value}:{task.order_or_tol} -> {psi!r}")
    return SweepRecord.build(task.eps, task.M, task.method, task.order_or_tol, psi, ref, companion)

import concurrent.futures

import numpy as np

from kepler_stieltjes.config import KEPLER_TOL, MAX_WORKERS
from kepler_stieltjes.logger import logger
from kepler_stieltjes.schemas import Method, SweepRecord
from kepler_stieltjes.utils import build_param_grid

from .tasks import SweepTask, process_task


def build_sweep_tasks(
    eps: float,
    M_min: float,
    M_max: float,
    n_points: int,
    methods: list[Method],
    precisions: list[int],
    orders: list[int],
) -> list[SweepTask]:
    """One task per (M, method, level), the level list depending on the method."""
    M_values = np.linspace(M_min, M_max, n_points)
    grid = build_param_grid(
        {"eps": eps},
        {"m_index": list(range(n_points)), "method_index": list(range(len(methods)))},
    )

    tasks = []
    for params in grid:
        method = Method(methods[params["method_index"]])
        match method:
            case Method.oracle:
                levels = [KEPLER_TOL]
            case Method.integral:
                levels = precisions
            case _:
                levels = orders
        for level_index, level in enumerate(levels):
            tasks.append(
                SweepTask(
                    eps=params["eps"],
                    M=float(M_values[params["m_index"]]),
                    method=method,
                    order_or_tol=float(level),
                    m_index=params["m_index"],
                    method_index=params["method_index"],
                    level_index=level_index,
                )
            )
    return tasks


def dispatch_sweep(tasks: list[SweepTask], max_workers: int = MAX_WORKERS) -> list[SweepRecord]:
    """Run the tasks on a thread pool; rows come back in (M, method, level) order.

    The first failing task cancels the rest and its exception is raised.
    """
    logger.info(f"Dispatching {len(tasks)} sweep tasks on {max_workers} workers")
    results = {}
    with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = {executor.submit(process_task, task): task for task in tasks}
        try:
            for future in concurrent.futures.as_completed(futures):
                task = futures[future]
                results[task.sort_key] = future.result()
        except Exception:
            logger.exception(f"Sweep task failed: {task}")
            for f in futures:
                f.cancel()
            raise

    return [results[key] for key in sorted(results)]

from .dispatcher import build_sweep_tasks, dispatch_sweep
from .tasks import SweepTask, process_task, reference_psi

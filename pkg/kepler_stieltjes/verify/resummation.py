import cmath
import math

import numpy as np

from kepler_stieltjes import accel, integral_rep, kepler
from kepler_stieltjes.errors import InsufficientDataError

from . import scaled, suite_registry

# Weniger delta of sum z^m J_m(m eps)/m at eps = 9/10, z = 10 exp(i pi/3), keyed by table row,
# printed to 6 decimals
TABLE_ONE_EPS = 0.9
TABLE_ONE_Z = 10.0 * cmath.exp(1j * math.pi / 3)
TABLE_ONE = {
    1: complex(0.112240, 1.211289),
    10: complex(-1.003096, 1.238166),
    20: complex(-1.001839, 1.238763),
    30: complex(-1.001838, 1.238765),
}
TABLE_ONE_LIMIT = complex(-1.001838, 1.238765)  # truncated, not rounded


def truncates_to(value: complex, printed: complex, digits: int = 6) -> bool:
    """Both parts of value cut (toward zero) to `digits` decimals give those of printed."""
    unit = 10.0**-digits
    for x, p in [(value.real, printed.real), (value.imag, printed.imag)]:
        gap = math.copysign(1.0, p) * (x - p)
        if not -1e-12 <= gap < unit + 1e-12:
            return False
    return True


@suite_registry.register(
    name="wynn_geometric",
    description="epsilon_2 is exact on geometric series",
)
def wynn_geometric_suite():
    worst = 0.0
    for z in [0.5, -0.7, 0.3 + 0.4j, 3.0]:
        sums = accel.PartialSums.from_terms([z**n for n in range(3)])
        estimate = accel.wynn_epsilon(sums).get(0, 1)
        worst = max(worst, abs(estimate - 1.0 / (1.0 - z)))
    return worst <= 1e-14, f"max_abs={worst:.3e}"


@suite_registry.register(
    name="pade_correspondence",
    description="epsilon_2k^(0) of sum z^n equals the [k/k] Pade value 1/(1 - z)",
)
def pade_correspondence_suite():
    z = 0.5
    table = accel.wynn_epsilon(accel.PartialSums.from_terms([z**n for n in range(6)]))
    column = [table.get(0, k) for k in range(1, 3)]
    valid = [v for v in column if v is not None]
    worst = max(abs(v - 2.0) for v in valid) if valid else math.inf
    return worst <= 1e-12, f"valid={len(valid)} max_abs={worst:.3e}"


@suite_registry.register(
    name="table_one",
    description="Weniger delta resummation of the divergent Kapteyn series at |z| = 10",
)
def table_one_suite():
    orbit = kepler.make_orbit(TABLE_ONE_EPS)
    rows = {k: accel.table_row_index(k) + 1 for k in TABLE_ONE}
    table = accel.weniger_delta(accel.kapteyn_partial_sums(TABLE_ONE_Z, orbit, max(rows.values()) + 2))
    worst = max(
        max(abs(table.order(rows[k]).real - p.real), abs(table.order(rows[k]).imag - p.imag))
        for k, p in TABLE_ONE.items()
    )
    continued = integral_rep.kapteyn_continuation(TABLE_ONE_Z, orbit).value
    gap = abs(table.order(rows[30]) - continued)
    passed = worst <= 2e-6 and gap <= 1e-5 and truncates_to(continued, TABLE_ONE_LIMIT)
    return passed, f"max_table_abs={worst:.2e} last_row_vs_integral={gap:.2e} integral={continued:.9f}"


@suite_registry.register(
    name="ke_acceleration",
    description="Weniger delta error on Im SS(1; M) non-increasing across orders 20..50 for small M",
    level="full",
)
def ke_acceleration_suite(orders=(20, 30, 40, 50), floor=1e-12):
    orbit = kepler.make_orbit(1.0)
    grid = np.geomspace(1e-3, 1e-1, scaled(12, minimum=3))
    good = 0
    for M in grid:
        psi = kepler.solve_kepler_oracle(orbit, M, tol=1e-15).psi
        errors = []
        for order in orders:
            try:
                estimate = accel.resum_s(orbit, M, order)
            except InsufficientDataError:
                errors = None
                break
            errors.append(abs(M + estimate.imag - psi) / psi)
        # a breakdown counts as flagged, not as a failure
        if errors is None or all(b <= max(a, floor) for a, b in zip(errors, errors[1:])):
            good += 1
    share = good / len(grid)
    return share >= 0.9, f"non_increasing={good}/{len(grid)}"

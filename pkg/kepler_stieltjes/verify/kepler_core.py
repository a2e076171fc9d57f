import math

import numpy as np

from kepler_stieltjes import config, kepler

from . import scaled, suite_registry


@suite_registry.register(
    name="kepler_residual",
    description="|psi - eps sin(psi) - M| <= tol on random (eps, M) pairs",
)
def kepler_residual_suite():
    rng = np.random.default_rng(0)
    worst = 0.0
    for eps, M in zip(rng.uniform(0.0, 0.999, scaled(1000)), rng.uniform(0.0, 2 * math.pi, scaled(1000))):
        orbit = kepler.make_orbit(eps)
        psi = kepler.solve_kepler_oracle(orbit, M).psi
        worst = max(worst, abs(psi - eps * math.sin(psi) - M))
    return worst <= config.KEPLER_TOL, f"max_residual={worst:.3e}"


@suite_registry.register(
    name="kepler_monotonicity",
    description="psi(M) strictly increasing on (0, pi)",
)
def kepler_monotonicity_suite():
    M = np.linspace(0.0, math.pi, 102)[1:-1]
    failures = []
    for eps in [0.0, 0.5, 0.9, 1.0]:
        orbit = kepler.make_orbit(eps)
        psi = np.array([kepler.solve_kepler_oracle(orbit, m).psi for m in M])
        if not np.all(np.diff(psi) > 0):
            failures.append(eps)
    return not failures, f"failing_eps={failures}"


@suite_registry.register(
    name="kepler_symmetry",
    description="psi(2pi - M) = 2pi - psi(M)",
)
def kepler_symmetry_suite():
    worst = 0.0
    for eps in [0.1, 0.6, 0.95]:
        orbit = kepler.make_orbit(eps)
        for M in np.linspace(0.05, math.pi - 0.05, scaled(40)):
            psi = kepler.solve_kepler_oracle(orbit, M).psi
            mirrored = kepler.solve_kepler_oracle(orbit, 2 * math.pi - M).psi
            worst = max(worst, abs(mirrored - (2 * math.pi - psi)))
    return worst <= 10 * config.KEPLER_TOL, f"max_deviation={worst:.3e}"

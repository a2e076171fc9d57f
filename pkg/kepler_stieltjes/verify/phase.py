import math

import numpy as np

from kepler_stieltjes import kepler, watson

from . import suite_registry


@suite_registry.register(
    name="lambda_identity",
    description="F(0; eps) + lambda = 0",
)
def lambda_identity_suite():
    worst = 0.0
    for eps in np.linspace(0.01, 1.0, 50):
        orbit = kepler.make_orbit(eps)
        worst = max(worst, abs(watson.phase_F(0.0, orbit) + orbit.lam))
    return worst <= 1e-12, f"max_abs={worst:.3e}"


@suite_registry.register(
    name="phase_monotonicity",
    description="F(theta; eps) strictly increasing on (0, pi)",
)
def phase_monotonicity_suite():
    theta = np.linspace(0.0, math.pi, 202)[1:-1]
    failures = []
    for eps in [0.05, 0.3, 0.9, 1.0]:
        values = watson.phase_f_array(theta, kepler.make_orbit(eps))
        if not np.all(np.diff(values) > 0):
            failures.append(eps)
    return not failures, f"failing_eps={failures}"

import cmath
import math

import numpy as np

from kepler_stieltjes import accel, integral_rep, kepler, stieltjes

from . import scaled, suite_registry


@suite_registry.register(
    name="s_integral_oracle",
    description="M + S(1; M) from the integral against the oracle on (0, pi)",
    level="full",
)
def s_integral_oracle_suite():
    orbit = kepler.make_orbit(1.0)
    worst, where = 0.0, None
    for M in np.linspace(0.0, math.pi, scaled(50, minimum=10) + 2)[1:-1]:
        psi = kepler.solve_kepler_oracle(orbit, M, tol=1e-14).psi
        err = abs(M + integral_rep.s_integral(orbit, M) - psi) / psi
        if err > worst:
            worst, where = err, M
    return worst <= 1e-8, f"max_rel={worst:.3e} at_M={where}"


@suite_registry.register(
    name="s_integral_symmetry",
    description="S(eps; 2pi - M) = -S(eps; M)",
)
def s_integral_symmetry_suite():
    worst = 0.0
    for eps in [0.5, 1.0]:
        orbit = kepler.make_orbit(eps)
        for M in [0.3, 1.2, 2.5]:
            s = integral_rep.s_integral(orbit, M)
            worst = max(worst, abs(integral_rep.s_integral(orbit, 2 * math.pi - M) + s))
    return worst <= 1e-10, f"max_abs={worst:.3e}"


@suite_registry.register(
    name="complex_form",
    description="Im of the unwrapped complex integral equals the arg-form integral",
)
def complex_form_suite():
    worst = 0.0
    for eps in [0.5, 0.9, 1.0]:
        orbit = kepler.make_orbit(eps)
        for M in [0.4, 2.0, 4.0, 5.5]:
            value = integral_rep.s_complex_integral(orbit, M)
            worst = max(worst, abs(value.imag - integral_rep.s_integral(orbit, M)))
    return worst <= 1e-10, f"max_abs={worst:.3e}"


@suite_registry.register(
    name="continuation_series",
    description="continued Kapteyn sum against direct summation inside the disk",
)
def continuation_series_suite():
    orbit = kepler.make_orbit(0.5)
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(scaled(20, minimum=5)):
        z = rng.uniform(0.0, 0.9) * orbit.radius * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        direct = accel.kapteyn_partial_sums(z, orbit, 250).sums[-1]
        worst = max(worst, abs(integral_rep.kapteyn_continuation(z, orbit).value - direct))
    return worst <= 1e-8, f"max_abs={worst:.3e}"


@suite_registry.register(
    name="branch_continuity",
    description="continued Kapteyn sum has no jumps on the arc |z| = 2, eps = 0.9",
    level="full",
)
def branch_continuity_suite():
    orbit = kepler.make_orbit(0.9)
    args = np.linspace(-(math.pi - 0.01), math.pi - 0.01, scaled(400, minimum=100))
    values = np.array([integral_rep.kapteyn_continuation(2.0 * cmath.exp(1j * a), orbit).value for a in args])
    jump = float(np.max(np.abs(np.diff(values))))
    return jump <= 0.1, f"max_jump={jump:.3e}"


@suite_registry.register(
    name="route_equivalence",
    description="oracle, Kapteyn series, integral and Stieltjes routes agree",
    level="full",
)
def route_equivalence_suite():
    worst, where = 0.0, None
    for eps in [0.1, 0.3, 0.5, 0.7, 0.95]:
        orbit = kepler.make_orbit(eps)
        density = stieltjes.StieltjesDensity(orbit)
        for M in [0.5, 1.0, 1.5, 2.5, 3.0]:
            routes = [
                kepler.s_from_psi(kepler.solve_kepler_oracle(orbit, M), M),
                accel.kapteyn_s_series(orbit, M, tol=1e-10).imag,
                integral_rep.s_integral(orbit, M),
                stieltjes.stieltjes_value(cmath.exp(complex(orbit.lam, M)), density).imag,
            ]
            spread = max(routes) - min(routes)
            if spread > worst:
                worst, where = spread, (eps, M)
    return worst <= 1e-7, f"max_spread={worst:.3e} at={where}"

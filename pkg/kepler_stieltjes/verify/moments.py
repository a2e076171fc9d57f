import cmath

import numpy as np

from kepler_stieltjes import kepler, stieltjes, watson

from . import scaled, suite_registry


def _moment_identity(n_max: int, eps_list: list[float]):
    worst, where = 0.0, None
    for eps in eps_list:
        orbit = kepler.make_orbit(eps)
        for n in range(1, n_max + 1):
            expected = 2.0 * watson.bessel_scaled(n, orbit) / n
            err = abs(stieltjes.moment(n, orbit) - expected) / max(1.0, expected)
            if err > worst:
                worst, where = err, (n, eps)
    return worst <= 1e-9, f"max_err={worst:.3e} at={where}"


@suite_registry.register(
    name="moment_identity_small",
    description="int t^(n-1) rho(t) dt = 2 J_n(n eps) exp(-lambda n)/n for n <= 4",
)
def moment_identity_small_suite():
    return _moment_identity(4, [0.5])


@suite_registry.register(
    name="moment_identity",
    description="int t^(n-1) rho(t) dt = 2 J_n(n eps) exp(-lambda n)/n for n <= 20",
    level="full",
)
def moment_identity_suite():
    return _moment_identity(scaled(20, minimum=5), [0.1, 0.5, 0.9])


@suite_registry.register(
    name="carleman_proxy",
    description="moments positive, below 2/n, and sum of mu_m^(-1/2m) exceeding 10",
    level="full",
)
def carleman_proxy_suite():
    count = scaled(100, minimum=20)
    sequence = stieltjes.moment_sequence(kepler.make_orbit(0.9), count)
    positive = bool(np.all(sequence.moments > 0))
    bounded = bool(np.all(sequence.moments <= sequence.siegel_bounds() * (1 + 1e-12)))
    total = float(sequence.carleman_sums()[-1])
    return positive and bounded and total > 10.0, f"positive={positive} bounded={bounded} sum={total:.3f}"


@suite_registry.register(
    name="rho_monotonicity",
    description="rho(t) non-increasing on [0, 1]",
)
def rho_monotonicity_suite():
    t = np.linspace(0.0, 1.0, 100)
    failures = []
    for eps in [0.0, 0.5, 0.9, 1.0]:
        rho = stieltjes.StieltjesDensity(kepler.make_orbit(eps))(t)
        if not (np.all(np.diff(rho) <= 0) and rho[0] == 2.0 and rho[-1] == 0.0):
            failures.append(eps)
    return not failures, f"failing_eps={failures}"


@suite_registry.register(
    name="polylog_dual",
    description="polylog series against its Stieltjes integral, |z| <= 0.8",
)
def polylog_dual_suite():
    worst = 0.0
    for r, phi in zip(np.linspace(0.1, 0.8, 10), np.linspace(-3.0, 3.0, 10)):
        z = r * cmath.exp(1j * phi)
        series = stieltjes.polylog_series(1.5, z).value
        worst = max(worst, abs(series - stieltjes.polylog_stieltjes(1.5, z)))
    return worst <= 1e-10, f"max_abs={worst:.3e}"

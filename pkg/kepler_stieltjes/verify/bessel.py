import math

from kepler_stieltjes import kepler, watson

from . import scaled, suite_registry


@suite_registry.register(
    name="siegel_bound",
    description="J_n(n eps) exp(-lambda n) <= 1",
)
def siegel_bound_suite():
    worst = 0.0
    n_max = scaled(200, minimum=20)
    for eps in [0.1, 0.5, 0.9, 0.99, 1.0]:
        orbit = kepler.make_orbit(eps)
        for n in range(1, n_max + 1):
            worst = max(worst, watson.bessel_scaled(n, orbit))
    return worst <= 1.0 + 1e-12, f"max_scaled={worst:.15f} n_max={n_max}"


@suite_registry.register(
    name="bessel_asymptotics",
    description="J_n(n eps) exp(-lambda n) sqrt(2 pi chi n) -> 1",
)
def bessel_asymptotics_suite():
    orbit = kepler.make_orbit(0.5)
    ratio = watson.bessel_scaled(100, orbit) / watson.bessel_asymptotic_scaled(100, orbit)
    return abs(ratio - 1.0) <= 0.05, f"ratio_n100={ratio:.6f}"


@suite_registry.register(
    name="bessel_oracle",
    description="Watson quadrature against the ascending series of J_n",
    level="full",
)
def bessel_oracle_suite():
    worst, where = 0.0, None
    for eps in [0.3, 0.7, 0.95]:
        orbit = kepler.make_orbit(eps)
        for n in range(1, scaled(50, minimum=10) + 1):
            ref = watson.bessel_reference(n, n * eps)
            err = abs(watson.bessel_watson(n, orbit) - ref) / abs(ref)
            if err > worst:
                worst, where = err, (n, eps)
    return worst <= 1e-10, f"max_rel={worst:.3e} at={where}"


@suite_registry.register(
    name="circular_limit",
    description="J_n(n eps) exp(-lambda n) at eps = 0 equals n^n e^-n / n!",
)
def circular_limit_suite():
    orbit = kepler.make_orbit(0.0)
    worst = 0.0
    for n in [1, 2, 5, 10, 40]:
        exact = math.exp(n * math.log(n) - n - math.lgamma(n + 1))
        worst = max(worst, abs(watson.bessel_scaled(n, orbit) / exact - 1.0))
    return worst <= 1e-10, f"max_rel={worst:.3e}"

from .accel import (
    PartialSums,
    TransformTable,
    best_estimate,
    kapteyn_partial_sums,
    kapteyn_s_series,
    resum_s,
    series_order,
    weniger_delta,
    wynn_epsilon,
)
from .integral_rep import kapteyn_continuation, s_complex_integral, s_integral, s_integral_detailed
from .kepler import make_orbit, s_from_psi, solve_kepler_oracle
from .quadrature import QuadratureResult, integrate
from .stieltjes import (
    MomentSequence,
    StieltjesDensity,
    density_rho,
    moment,
    polylog_series,
    polylog_stieltjes,
    stieltjes_value,
    theta_of_t,
)
from .watson import (
    bessel_asymptotic_scaled,
    bessel_reference,
    bessel_scaled,
    bessel_watson,
    phase_F,
    phase_G,
)

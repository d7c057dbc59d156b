"""Simulation and verification of heat contents for time-changed Brownian motions.

Brownian motion (generator Delta) in an interval or disk, run on a random
clock: either a subordinator from a small catalog (stable, tempered stable,
mixed stable) or its inverse. The package samples these clocks, estimates
spectral and regular heat contents by conditional Monte Carlo against exact
interval oracles, predicts the small-time asymptotic rates and constants in
closed form, and verifies the two against each other.
"""

from .levy_exponents import (
    LaplaceExponent,
    MixedStable,
    Regime,
    Stable,
    TemperedStable,
    leading_index,
    levy_density,
    levy_tail,
    parse_exponent,
    phi,
    phi_inverse,
    phi_prime,
    regime,
    small_lambda_integrability,
)
from .samplers import (
    Kind,
    RandomStream,
    RunawaySamplerError,
    TimeChangeSpec,
    UnsupportedConfigurationError,
    kanter_angle,
    sample_inverse,
    sample_mixed,
    sample_stable,
    sample_subordinator,
    sample_tempered,
)
from .heat_oracles import (
    Disk,
    Domain,
    Interval,
    exact_H_interval,
    exact_Q_interval,
    mc_Q_disk,
    parse_domain,
    subordinate_deficit_series,
)
from .estimators import (
    Estimate,
    estimate_regular,
    estimate_spectral_disk,
    estimate_spectral_inverse,
    estimate_spectral_subordinate,
)
from .asymptotics import (
    AsymptoticPrediction,
    FitReport,
    RateFunction,
    expansion,
    fit_rate,
    inverse_moment,
    lowindex_constant,
    predict_regular,
    predict_spectral,
    running_max_constant,
    stable_moment,
)
from .diagnostics import (
    HypothesisViolationError,
    LadderReport,
    LadderTooDeepError,
    check_heat_kernel_bound,
    check_inverse_moments,
    check_levy_convergence,
    check_small_ball,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticPrediction",
    "Disk",
    "Domain",
    "Estimate",
    "FitReport",
    "HypothesisViolationError",
    "Interval",
    "Kind",
    "LadderReport",
    "LadderTooDeepError",
    "LaplaceExponent",
    "MixedStable",
    "RandomStream",
    "RateFunction",
    "Regime",
    "RunawaySamplerError",
    "Stable",
    "TemperedStable",
    "TimeChangeSpec",
    "UnsupportedConfigurationError",
    "check_heat_kernel_bound",
    "check_inverse_moments",
    "check_levy_convergence",
    "check_small_ball",
    "estimate_regular",
    "estimate_spectral_disk",
    "estimate_spectral_inverse",
    "estimate_spectral_subordinate",
    "exact_H_interval",
    "exact_Q_interval",
    "expansion",
    "fit_rate",
    "inverse_moment",
    "kanter_angle",
    "leading_index",
    "levy_density",
    "levy_tail",
    "lowindex_constant",
    "mc_Q_disk",
    "parse_domain",
    "parse_exponent",
    "phi",
    "phi_inverse",
    "phi_prime",
    "predict_regular",
    "predict_spectral",
    "regime",
    "running_max_constant",
    "sample_inverse",
    "sample_mixed",
    "sample_stable",
    "sample_subordinator",
    "sample_tempered",
    "small_lambda_integrability",
    "stable_moment",
    "subordinate_deficit_series",
    "__version__",
]

"""Monte Carlo simulator for UAV-assisted over-the-air computation."""

from ._core import (
    CheckResult,
    ConfigError,
    ExperimentConfig,
    NumericError,
    Policy,
    SensorField,
    __version__,
    beta_benchmark,
    beta_heuristic,
    beta_heuristic_equal,
    cli_main,
    deploy_sensors,
    effective_gain_matrix,
    estimate_cell,
    gain_statistics,
    gaussian_power_variance,
    gaussian_raw_moment,
    max_distance_bound,
    mse_exact_conditional,
    parse_config,
    plan_diameter_trajectory,
    render_config,
    run_trial,
    sweep,
    validate,
)

__all__ = [
    "CheckResult",
    "ConfigError",
    "ExperimentConfig",
    "NumericError",
    "Policy",
    "SensorField",
    "__version__",
    "beta_benchmark",
    "beta_heuristic",
    "beta_heuristic_equal",
    "cli_main",
    "deploy_sensors",
    "effective_gain_matrix",
    "estimate_cell",
    "gain_statistics",
    "gaussian_power_variance",
    "gaussian_raw_moment",
    "max_distance_bound",
    "mse_exact_conditional",
    "parse_config",
    "plan_diameter_trajectory",
    "render_config",
    "run_trial",
    "sweep",
    "validate",
]

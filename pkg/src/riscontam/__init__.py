"""Inter-operator RIS pilot contamination: estimators, closed forms, experiments."""

from .channels import (
    ChannelRealization,
    NearSingularChannelError,
    draw_channels,
    validate_realization,
)
from .configs import (
    ConfigSequence,
    InsufficientPilotsError,
    SequenceReport,
    build_identical,
    build_orthogonal,
    build_pair,
    verify_sequences,
)
from .dataphase import (
    DataPhaseResult,
    InfiniteFloorError,
    PhaseConfig,
    data_mse_closed_form,
    data_mse_high_pilot_snr,
    effective_channels,
    empirical_data_mse,
    evaluate_data_phase,
    floor_high_snr,
    high_pilot_snr_channels,
    mmse_symbol_estimate,
    phase_match,
)
from .experiments import (
    CdfSpec,
    ConfigError,
    ResultTable,
    SweepSpec,
    run_cdf_floors,
    run_data_sweep,
    run_pilot_sweep,
    validate_oracles,
    write_csv,
)
from .params import SystemParams, db_to_linear, table_defaults
from .pilot import (
    EstimationResult,
    JointMLChannelEstimator,
    MMLChannelEstimator,
    PilotObservation,
    SingularModelError,
    bias_closed_form,
    cov_trace_closed_form,
    empirical_error_stats,
    empirical_mse,
    joint_ml_estimate,
    mml_estimate,
    simulate_pilot_rx,
)

__version__ = "0.1.0"

__all__ = [
    "CdfSpec",
    "ChannelRealization",
    "ConfigError",
    "ConfigSequence",
    "DataPhaseResult",
    "EstimationResult",
    "InfiniteFloorError",
    "InsufficientPilotsError",
    "JointMLChannelEstimator",
    "MMLChannelEstimator",
    "NearSingularChannelError",
    "PhaseConfig",
    "PilotObservation",
    "ResultTable",
    "SequenceReport",
    "SingularModelError",
    "SweepSpec",
    "SystemParams",
    "bias_closed_form",
    "build_identical",
    "build_orthogonal",
    "build_pair",
    "cov_trace_closed_form",
    "data_mse_closed_form",
    "data_mse_high_pilot_snr",
    "db_to_linear",
    "draw_channels",
    "effective_channels",
    "empirical_data_mse",
    "empirical_error_stats",
    "empirical_mse",
    "evaluate_data_phase",
    "floor_high_snr",
    "high_pilot_snr_channels",
    "joint_ml_estimate",
    "mml_estimate",
    "mmse_symbol_estimate",
    "phase_match",
    "run_cdf_floors",
    "run_data_sweep",
    "run_pilot_sweep",
    "simulate_pilot_rx",
    "table_defaults",
    "validate_oracles",
    "validate_realization",
    "verify_sequences",
    "write_csv",
]

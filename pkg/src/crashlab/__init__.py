"""Crash-failure robustness analysis for feed-forward neural networks.

Computes cheap parameter-only upper bounds on the output error caused by
crashed neurons (the erf estimators) and validates them against the measured
error from exhaustive or sampled crash-pattern enumeration (the omega
aggregates).
"""

from .estimator import (
    ErfReport,
    ErfTotalReport,
    LayerBounds,
    RobustnessQuery,
    binomial,
    erf_fixed,
    erf_total,
    layer_output_bounds,
    tolerable_crashes_single_layer,
)
from .generate import TopologySpec, random_inputs, random_network, scale_weights
from .measurement import (
    BudgetExceededError,
    OmegaReport,
    omega_exhaustive,
    omega_patterns,
    omega_point,
    omega_sampled,
    required_evaluations,
    single_layer_expected_exact,
)
from .network import (
    Activation,
    CrashPattern,
    Layer,
    LayerTrace,
    Network,
    PatternError,
    ShapeError,
    activate,
    forward,
    forward_failed,
    layer_weight_stats,
    validate,
)
from .training import (
    LabeledDataset,
    TrainConfig,
    TrainResult,
    accuracy,
    backward,
    initial_network,
    learning_cost_sweep,
    loss,
    train,
)

__version__ = "0.1.0"

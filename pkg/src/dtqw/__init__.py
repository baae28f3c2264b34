"""Density-matrix simulation of noisy discrete-time quantum walks and
quantumness measures (mutual information, MID, quantum discord)."""

from .channels import KrausChannel, NoiseConfig, amplitude_damping, apply_to_coin
from .harness import ExperimentSpec, ResultRow, dominant_period, figure_presets, run, run_preset, write_csv
from .measures import (
    MeasurementBasis,
    QuantumnessRecord,
    SearchPolicy,
    classicalize,
    conditional_entropy_after_measurement,
    discord,
    discord_oracle,
    entanglement_entropy,
    mid,
    quantumness_record,
)
from .qstate import (
    DensityOperator,
    Spectrum,
    mutual_information,
    partial_trace_coin,
    partial_trace_position,
    spectral_decomposition,
    tensor,
    von_neumann_entropy,
)
from .walk import (
    Cycle,
    Line,
    WalkConfig,
    WalkState,
    coin_operator,
    evolve,
    initial_state,
    position_distribution,
    shift_operator,
    step,
    walk_unitary,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

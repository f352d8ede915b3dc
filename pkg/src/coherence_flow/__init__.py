"""Coherence spreading of a qubit through system-environment dilations of
six noise channels: amplitude damping, phase damping, bit flip, phase flip,
bit-phase flip and depolarizing.
"""
from .backend import BACKEND
from .channels import (
    ChannelKind,
    JointState,
    KrausSet,
    apply_channel,
    evolve_joint,
    kraus_set,
    mix_kraus,
    p_grid,
    partial_trace,
    prob_from_time,
)
from .experiments import FIXTURES, SweepConfig, reproduce_figure, run_sweep, run_verify
from .measures import (
    CoherenceSplit,
    coherence_split,
    concurrence,
    negativity,
    partial_transpose,
    pdc_gap,
)
from .oracles import PredictionRecord, pdc_negativity_coeffs, predict
from .states import (
    BlochVector,
    bloch_from_density,
    density_from_bloch,
    l1_coherence,
    sample_random_bloch,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BlochVector",
    "ChannelKind",
    "CoherenceSplit",
    "FIXTURES",
    "JointState",
    "KrausSet",
    "PredictionRecord",
    "SweepConfig",
    "apply_channel",
    "bloch_from_density",
    "coherence_split",
    "concurrence",
    "density_from_bloch",
    "evolve_joint",
    "kraus_set",
    "l1_coherence",
    "mix_kraus",
    "negativity",
    "p_grid",
    "partial_trace",
    "partial_transpose",
    "pdc_gap",
    "pdc_negativity_coeffs",
    "predict",
    "prob_from_time",
    "reproduce_figure",
    "run_sweep",
    "run_verify",
    "sample_random_bloch",
]

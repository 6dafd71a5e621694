"""Signalling tests for hypothetical quantum machines.

Builds shared entangled states, applies non-physical machines (cloners,
deleters, universal NOT/Y/Z/Hadamard/C-NOT) by term rewriting, and measures
how far the other party's reduced state moves.
"""

from .closed_forms import closed_form_rho
from .config import SCENARIOS, MachineOverrides, NotParams, ScenarioConfig, config_from_dict, config_to_dict
from .errors import BadConfig, BadSpec, NoClosedForm, NoSigError, UnmatchedTerm
from .machines import HypotheticalMachine, RewriteRule, instantiate_machine, rewrite_entangled
from .scenarios import NO_SIGNALLING, SIGNALLING, SignallingReport, physical_baseline, run_all, run_scenario
from .states import (
    BlochAngles,
    DensityMatrix,
    Ket,
    QubitBasis,
    ensemble_density,
    measure_alice,
    partial_trace,
    trace_distance,
)
from .sweep import SweepSpec, run_sweep, zero_set

__version__ = "0.1.0"

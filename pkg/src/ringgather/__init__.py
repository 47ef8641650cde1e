"""Crash-tolerant gathering of oblivious robots on rings."""

from .ring import (
    Direction,
    GroundState,
    ObservedConfig,
    canonical_form,
    observe,
    parse_config,
)
from .sim import CrashSchedule, CycleDetected, GatheredAt, RoundLimit, Stuck, run
from .suig import AlgorithmVariant, MoveSet, Rule, compute_moves, compute_suir_moves
from .symmetry import ConfigClass, classify, ne_roles, node_edge_axis, quasi_axes
from .verify import ScenarioReport, Sweep, check_transition, enumerate_initial, verify_suig, verify_suir

__all__ = [
    "AlgorithmVariant",
    "ConfigClass",
    "CrashSchedule",
    "CycleDetected",
    "Direction",
    "GatheredAt",
    "GroundState",
    "MoveSet",
    "ObservedConfig",
    "RoundLimit",
    "Rule",
    "ScenarioReport",
    "Stuck",
    "Sweep",
    "canonical_form",
    "check_transition",
    "classify",
    "compute_moves",
    "compute_suir_moves",
    "enumerate_initial",
    "ne_roles",
    "node_edge_axis",
    "observe",
    "parse_config",
    "quasi_axes",
    "run",
    "verify_suig",
    "verify_suir",
]

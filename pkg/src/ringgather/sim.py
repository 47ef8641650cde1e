"""FSYNC execution engine with single-crash injection."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, TextIO

from .ring import GroundState, ObservedConfig, observe
from .suig import AlgorithmVariant, MoveSet, moves_for
from .symmetry import ConfigClass, classify, is_periodic, node_edge_axis, quasi_axes


@dataclass(frozen=True)
class CrashSchedule:
    round: int
    node: int


@dataclass(frozen=True)
class TraceEntry:
    round: int
    state: GroundState
    config: ObservedConfig
    cls: ConfigClass
    moves: MoveSet

    def record(self) -> dict:
        return {
            "round": self.round,
            "occupied": sorted(self.config.occupied),
            "class": str(self.cls),
            "orders": {str(i): d.name for i, d in self.moves.orders},
            "crashed_node": self.state.crashed_node,
        }


class Outcome:
    gathered = False


@dataclass(frozen=True)
class GatheredAt(Outcome):
    node: int
    round: int
    gathered = True

    def __str__(self) -> str:
        return f"GatheredAt(node={self.node}, round={self.round})"


@dataclass(frozen=True)
class CycleDetected(Outcome):
    first_repeat_round: int

    def __str__(self) -> str:
        return f"CycleDetected(round={self.first_repeat_round})"


@dataclass(frozen=True)
class RoundLimit(Outcome):
    bound: int

    def __str__(self) -> str:
        return f"RoundLimit(bound={self.bound})"


@dataclass(frozen=True)
class Stuck(Outcome):
    round: int

    def __str__(self) -> str:
        return f"Stuck(round={self.round})"


def default_max_rounds(n: int, k: int) -> int:
    return 4 * n * k + 20


def step(state: GroundState, moves: MoveSet) -> GroundState:
    """Move every correct robot on an ordered node one step; crashed robots stay."""
    n = state.n
    correct = list(state.correct)
    for i, d in moves.orders:
        if state.count(i) == 0:
            raise ValueError(f"order for unoccupied node {i}")
        correct[i] -= state.correct[i]
        correct[(i + int(d)) % n] += state.correct[i]
    return GroundState(n, tuple(correct), state.crashed)


def is_gathered(state: GroundState) -> int | None:
    nodes = [i for i in range(state.n) if state.count(i)]
    return nodes[0] if len(nodes) == 1 else None


def check_start(state: GroundState, variant: AlgorithmVariant) -> None:
    """Reject initial states the algorithm is not designed for."""
    config = observe(state)
    n = state.n
    if any(c > 1 for c in state.correct) or any(state.crashed):
        raise ValueError("initial positions must be distinct and crash-free")
    if variant is AlgorithmVariant.SUIG_RING:
        if n % 2 == 0 or n < 5:
            raise ValueError(f"ring gathering needs an odd n >= 5, got {n}")
        if config.k < 3:
            raise ValueError(f"unsupported robot count k={config.k} on n={n}")
        if is_periodic(config) or node_edge_axis(config) is None:
            raise ValueError(f"{config} is not node-edge symmetric and aperiodic")
    else:
        if n % 2 == 1 or config.k != 2:
            raise ValueError("rendezvous needs two robots on an even ring")
        a, b = sorted(config.occupied)
        if (b - a) % 2 == 1 or 2 * (b - a) == n:
            raise ValueError(f"{config} is not node-node symmetric and aperiodic")


def run(
    start: GroundState,
    crash: CrashSchedule | None = None,
    variant: AlgorithmVariant = AlgorithmVariant.SUIG_RING,
    max_rounds: int | None = None,
    strict: bool = True,
) -> tuple[list[TraceEntry], Outcome]:
    """Execute rounds until gathering, a repeated state, a stuck rule or the bound.

    With ``strict`` the start state must be a legal initial configuration;
    the verifier switches it off to restart from mid-execution states.
    """
    if strict:
        check_start(start, variant)
    if max_rounds is None:
        max_rounds = default_max_rounds(start.n, start.k)
    state = start
    seen: dict[GroundState, int] = {}
    trace: list[TraceEntry] = []
    t = 0
    while True:
        if crash is not None and crash.round == t:
            if state.correct[crash.node % state.n] == 0:
                raise ValueError(f"crash node {crash.node} holds no correct robot at round {t}")
            state = state.crash_one(crash.node)
        config = observe(state)
        moves = moves_for(config, variant)
        cls = classify(config) if variant is AlgorithmVariant.SUIG_RING else _suir_class(config)
        trace.append(TraceEntry(t, state, config, cls, moves))
        node = is_gathered(state)
        if node is not None and not moves:
            return trace, GatheredAt(node, t)
        if moves.stuck:
            return trace, Stuck(t)
        pending = crash is not None and crash.round > t
        if not pending:
            if state in seen:
                return trace, CycleDetected(t)
            seen[state] = t
        if t >= max_rounds:
            return trace, RoundLimit(max_rounds)
        state = step(state, moves)
        t += 1


def _suir_class(config: ObservedConfig) -> ConfigClass:
    if config.k == 1:
        return ConfigClass("Gathered", 1)
    return ConfigClass("Pair", config.k)


# -- rendering --------------------------------------------------------------


def write_trace(trace: Iterable[TraceEntry], fh: TextIO) -> None:
    for entry in trace:
        fh.write(json.dumps(entry.record()) + "\n")


def render_frame(entry: TraceEntry) -> str:
    """Two-line ASCII picture: ring occupancy, then target markers."""
    config = entry.config
    n = config.n
    crashed = entry.state.crashed_node
    ring = "".join(
        "X" if i == crashed else ("o" if i in config.occupied else ".") for i in range(n)
    )
    marks = set()
    if n % 2 == 1 and entry.cls.tag not in ("Gathered", "L2", "P", "Pair"):
        axis = node_edge_axis(config)
        if axis is not None:
            marks.add(axis.node)
        else:
            marks |= {q.target for q in quasi_axes(config)}
    marker = "".join("^" if i in marks else " " for i in range(n)).rstrip()
    return f"{entry.round:4d} {ring}  {entry.cls}\n" + f"     {marker}".rstrip()

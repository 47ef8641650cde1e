"""The COMPUTE phase of the crash-tolerant gathering algorithms.

``compute_moves`` is the ring gathering rule for an odd number of nodes and
more than three robots; ``compute_suir_moves`` is the two-robot rendezvous
rule for even rings.  Both are pure functions of the observed occupancy,
which is all an oblivious robot without multiplicity detection can see.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping

from .ring import Direction, ObservedConfig, dist, toward
from .symmetry import (
    NERoles,
    classify,
    is_periodic,
    ne_roles,
    node_edge_axis,
    orientation_counts,
    quasi_axes,
)


class AlgorithmVariant(enum.Enum):
    SUIG_RING = "suig"
    SUIR_SHORTEST_PATH = "suir"


class Rule(str, enum.Enum):
    GATHERED = "Gathered"
    MOVE_L_TWO = "MoveLTwo"
    MOVE_SECONDARY = "MoveSecondary"
    MOVE_MAIN = "MoveMain"
    MOVE_MAIN_SECONDARY = "MoveMain+MoveSecondary"
    MOVE_SAME = "MoveSame"
    MOVE_OPPOSITE = "MoveOpposite"
    SHORTEST_PATH = "ShortestPath"
    STUCK = "Stuck"


@dataclass(frozen=True)
class MoveSet:
    """Per-node orders from one COMPUTE phase; absent nodes stay."""

    orders: tuple[tuple[int, Direction], ...] = ()
    rule: Rule = Rule.GATHERED

    @classmethod
    def build(cls, orders: Mapping[int, Direction], rule: Rule) -> "MoveSet":
        return cls(tuple(sorted((i, d) for i, d in orders.items() if d is not Direction.STAY)), rule)

    @cached_property
    def _lookup(self) -> dict[int, Direction]:
        return dict(self.orders)

    def get(self, i: int) -> Direction:
        return self._lookup.get(i, Direction.STAY)

    def as_dict(self) -> dict[int, Direction]:
        return dict(self.orders)

    @property
    def stuck(self) -> bool:
        return self.rule is Rule.STUCK

    def __bool__(self) -> bool:
        return bool(self.orders)


def _check_ring(config: ObservedConfig) -> None:
    if config.n % 2 == 0:
        raise ValueError(f"the ring gathering rule needs an odd ring, got n={config.n}")
    if config.n < 5:
        raise ValueError(f"the ring gathering rule needs n >= 5, got n={config.n}")
    if config.k == 0:
        raise ValueError("empty configuration")


def main_moves(config: ObservedConfig, roles: NERoles) -> dict[int, Direction]:
    return {m: toward(config.n, m, roles.target) for m in roles.main}


def secondary_moves(config: ObservedConfig, roles: NERoles) -> dict[int, Direction]:
    """Step toward the target when that neighbour is free, otherwise away from it."""
    if roles.secondary is None:
        return {}
    n = config.n
    out = {}
    for s in roles.secondary:
        d = toward(n, s, roles.target)
        out[s] = d if (s + d) % n not in config.occupied else d.flipped()
    return out


def advance_mains(config: ObservedConfig, roles: NERoles) -> ObservedConfig:
    n = config.n
    occ = set(config.occupied) - set(roles.main)
    occ |= {(m + d) % n for m, d in main_moves(config, roles).items()}
    return ObservedConfig(n, frozenset(occ))


def would_create_periodic(config: ObservedConfig) -> bool:
    axis = node_edge_axis(config)
    if axis is None or classify(config).tag == "L2":
        raise ValueError(f"{config} is not node-edge symmetric")
    return is_periodic(advance_mains(config, ne_roles(config, axis)))


def _opposite_orders(n: int, qaxes) -> dict[int, Direction]:
    # when both quasi-axes name the same robot, the nearer target wins;
    # equal distances leave it in place
    picks: dict[int, list[int]] = {}
    for q in qaxes:
        picks.setdefault(q.potentially_crashed, []).append(q.target)
    orders = {}
    for x, targets in picks.items():
        if len(targets) == 2 and dist(n, x, targets[0]) != dist(n, x, targets[1]):
            targets = [min(targets, key=lambda t: dist(n, x, t))]
        if len(targets) == 1:
            orders[x] = toward(n, x, targets[0])
    return orders


@lru_cache(maxsize=None)
def compute_moves(config: ObservedConfig) -> MoveSet:
    _check_ring(config)
    n = config.n
    cls = classify(config)

    if cls.tag == "Gathered":
        return MoveSet.build({}, Rule.GATHERED)

    if cls.tag == "L2":
        a, b = sorted(config.occupied)
        return MoveSet.build({a: toward(n, a, b), b: toward(n, b, a)}, Rule.MOVE_L_TWO)

    if cls.is_ne:
        axis = node_edge_axis(config)
        roles = ne_roles(config, axis)
        mains_adjacent = dist(n, roles.main[0], roles.target) == 1
        if (
            config.k in (4, 5)
            and (n, config.k) != (7, 4)
            and cls.tag not in ("L4", "L5")
            and mains_adjacent
        ):
            return MoveSet.build(secondary_moves(config, roles), Rule.MOVE_SECONDARY)
        if not is_periodic(advance_mains(config, roles)):
            return MoveSet.build(main_moves(config, roles), Rule.MOVE_MAIN)
        # a robot that is both main and secondary follows the main order
        orders = secondary_moves(config, roles)
        orders.update(main_moves(config, roles))
        return MoveSet.build(orders, Rule.MOVE_MAIN_SECONDARY)

    if cls.is_qne:
        qaxes = quasi_axes(config)
        pos, neg = orientation_counts(qaxes)
        if pos == 0 or neg == 0:
            common = qaxes[0].orientation
            back = common.flipped()
            return MoveSet.build({i: back for i in config.occupied}, Rule.MOVE_SAME)
        if (pos, neg) == (1, 1):
            return MoveSet.build(_opposite_orders(n, qaxes), Rule.MOVE_OPPOSITE)

    return MoveSet.build({}, Rule.STUCK)


@lru_cache(maxsize=None)
def compute_suir_moves(config: ObservedConfig) -> MoveSet:
    n = config.n
    if n % 2 == 1:
        raise ValueError(f"the rendezvous rule needs an even ring, got n={n}")
    if config.k == 1:
        return MoveSet.build({}, Rule.GATHERED)
    if config.k != 2:
        raise ValueError(f"the rendezvous rule handles one or two occupied nodes, got {config.k}")
    a, b = sorted(config.occupied)
    if 2 * (b - a) == n:
        raise ValueError(f"{config} has two equal arcs; rendezvous is impossible from it")
    return MoveSet.build({a: toward(n, a, b), b: toward(n, b, a)}, Rule.SHORTEST_PATH)


def moves_for(config: ObservedConfig, variant: AlgorithmVariant) -> MoveSet:
    if variant is AlgorithmVariant.SUIG_RING:
        return compute_moves(config)
    return compute_suir_moves(config)


def decide_per_robot(config: ObservedConfig, i: int, variant: AlgorithmVariant = AlgorithmVariant.SUIG_RING) -> Direction:
    """The decision of a single robot standing on node ``i``."""
    if i not in config.occupied:
        raise ValueError(f"node {i} is not occupied")
    return moves_for(config, variant).get(i)

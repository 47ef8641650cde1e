"""Symmetry analysis of ring configurations.

Covers rotational periods, reflection axes, the target/main/secondary roles
of a node-edge symmetric configuration, quasi-axes (configurations one
crashed move away from node-edge symmetry) and the configuration classes
the gathering algorithm branches on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .ring import (
    Direction,
    ObservedConfig,
    arc,
    blocks_and_holes,
    dist,
    next_occupied,
    reflect,
    rotate,
)


class AxisKind(enum.Enum):
    NODE_EDGE = "NodeEdge"
    NODE_NODE = "NodeNode"
    EDGE_EDGE = "EdgeEdge"


@dataclass(frozen=True)
class Axis:
    """The reflection ``i -> (c - i) mod n`` together with its fixed nodes."""

    n: int
    c: int
    kind: AxisKind
    fixed_nodes: tuple[int, ...]

    @classmethod
    def of(cls, n: int, c: int) -> "Axis":
        c %= n
        fixed = tuple(sorted(i for i in range(n) if (2 * i - c) % n == 0))
        kind = {1: AxisKind.NODE_EDGE, 2: AxisKind.NODE_NODE, 0: AxisKind.EDGE_EDGE}[len(fixed)]
        return cls(n, c, kind, fixed)

    def mirror(self, i: int) -> int:
        return (self.c - i) % self.n

    @property
    def node(self) -> int:
        """The single fixed node of a node-edge axis."""
        if self.kind is not AxisKind.NODE_EDGE:
            raise ValueError(f"{self.kind.value} axis has no single fixed node")
        return self.fixed_nodes[0]

    def __str__(self) -> str:
        if self.fixed_nodes:
            return "axis@node" + "/".join(str(f) for f in self.fixed_nodes)
        return f"axis@c{self.c}"


@lru_cache(maxsize=None)
def periods(config: ObservedConfig) -> frozenset[int]:
    return frozenset(x for x in range(config.n) if rotate(config, x) == config)


def is_periodic(config: ObservedConfig) -> bool:
    return len(periods(config)) > 1


@lru_cache(maxsize=None)
def reflection_axes(config: ObservedConfig) -> tuple[Axis, ...]:
    return tuple(Axis.of(config.n, c) for c in range(config.n) if reflect(config, c) == config)


def node_edge_axis(config: ObservedConfig) -> Axis | None:
    """The node-edge axis of a non-periodic configuration, if it has one."""
    if config.n % 2 == 0 or is_periodic(config):
        return None
    axes = reflection_axes(config)
    # two axes on an odd ring compose into a non-trivial rotation
    assert len(axes) <= 1, config
    return axes[0] if axes else None


# -- node-edge roles --------------------------------------------------------


@dataclass(frozen=True)
class NERoles:
    target: int
    main: tuple[int, int]
    secondary: tuple[int, int] | None


def ne_roles(config: ObservedConfig, axis: Axis) -> NERoles:
    """Target node, main pair and secondary pair w.r.t. a node-edge axis.

    Robots on the target node are never main or secondary robots.  A pair
    is written as ``(t + d, t - d)``; when both coincide the pair repeats the
    node (only possible when n is even, which the callers exclude).
    """
    if reflect(config, axis.c) != config:
        raise ValueError(f"{config} is not symmetric about {axis}")
    n = config.n
    t = axis.node
    off = [i for i in config.occupied if i != t]
    if not off:
        raise ValueError(f"{config} is gathered on the target node")
    dmain = min(dist(n, i, t) for i in off)
    main = ((t + dmain) % n, (t - dmain) % n)
    edge = [i for i in off if (i + 1) % n not in config.occupied or (i - 1) % n not in config.occupied]
    secondary = None
    if edge:
        dsec = max(dist(n, i, t) for i in edge)
        secondary = ((t + dsec) % n, (t - dsec) % n)
    return NERoles(t, main, secondary)


def m_set(config: ObservedConfig, crashed_candidate: int) -> tuple[int, int]:
    """The two robots that may be the partner of a crashed main robot.

    For an even number of occupied nodes these are the nearest occupied
    nodes on each side of the candidate, for an odd number the second
    nearest.  Returned as (POS side, NEG side).
    """
    if node_edge_axis(config) is None:
        raise ValueError(f"{config} is not node-edge symmetric")
    if crashed_candidate not in config.occupied:
        raise ValueError(f"node {crashed_candidate} is not occupied")
    if config.k <= 2:
        raise ValueError("M(C) needs more than two occupied nodes")
    skip = 0 if config.k % 2 == 0 else 1
    a = next_occupied(config, crashed_candidate, Direction.POS, skip)
    b = next_occupied(config, crashed_candidate, Direction.NEG, skip)
    return (a, b)


# -- quasi-axes -------------------------------------------------------------


@dataclass(frozen=True)
class QuasiAxis:
    """A quasi-node-edge symmetry.

    ``r`` is always the leading robot and ``r_prime`` the other one, so the
    completion ``C - {r} + {mirror(r_prime)}`` is symmetric about ``axis``.
    ``path`` is the gap path from ``r_prime`` to ``r`` (inclusive), walked
    in ``orientation``.
    """

    r: int
    r_prime: int
    axis: Axis
    r_bar: int
    target: int
    gap_distance: int
    orientation: Direction
    path: tuple[int, ...]

    @property
    def leading(self) -> int:
        return self.r

    @property
    def potentially_crashed(self) -> int:
        """The robot that stayed put if this quasi-axis came from a crash.

        An odd gap means a main robot crashed and its partner (the leading
        robot) moved; an even gap means a secondary robot crashed, and the
        crashed one leads.
        """
        return self.r_prime if self.gap_distance % 2 else self.r


@lru_cache(maxsize=None)
def quasi_axes(config: ObservedConfig) -> tuple[QuasiAxis, ...]:
    """The quasi-axes of ``config``, in axis order.

    Strict quasi-axes have the mirror of r empty.  A second kind puts r on
    an occupied target next to a lonely r': a main robot stepped onto the
    target while its partner stayed behind.  The second kind is used when
    no strict quasi-axis exists, and takes precedence in the L4' shape,
    where the crashed robot is the middle of the block of three.
    """
    n = config.n
    if n % 2 == 0:
        raise ValueError("quasi-axes are defined on odd rings only")
    occ = config.occupied
    strict, onto_target = [], []
    for c in range(n):
        axis = Axis.of(n, c)
        lonely = [x for x in sorted(occ) if axis.mirror(x) not in occ]
        if len(lonely) == 2 and dist(n, axis.mirror(lonely[0]), lonely[1]) == 1:
            strict.append(_annotate(config, axis, *lonely))
        elif len(lonely) == 1 and axis.node in occ and dist(n, lonely[0], axis.node) == 1:
            onto_target.append(_annotate(config, axis, lonely[0], axis.node))
    if _is_l4_prime(config):
        found = onto_target or strict
    else:
        found = strict or onto_target
    for q in found:
        completion = (occ - {q.r}) | {q.axis.mirror(q.r_prime)}
        assert reflect(ObservedConfig(n, completion), q.axis.c).occupied == completion
    return tuple(found)


def _annotate(config: ObservedConfig, axis: Axis, a: int, b: int) -> QuasiAxis:
    n = config.n
    t = axis.node
    fwd = (b - a) % n
    odd_dir = Direction.POS if fwd % 2 == 1 else Direction.NEG
    odd_path = arc(n, a, b, odd_dir)
    inside = {i for i in odd_path[1:-1] if i in config.occupied}
    if not inside or inside == {t}:
        path, d_dir = odd_path, odd_dir
    else:
        path, d_dir = arc(n, a, b, odd_dir.flipped()), odd_dir.flipped()
    on_path = set(path)
    a_leads = axis.mirror(a) in on_path
    b_leads = axis.mirror(b) in on_path
    if a_leads == b_leads:
        raise AssertionError(f"ambiguous leading robot for {config} about {axis}")
    if b_leads:
        lead, other, orient = b, a, d_dir
    else:
        lead, other, orient = a, b, d_dir.flipped()
        path = list(reversed(path))
    return QuasiAxis(
        r=lead,
        r_prime=other,
        axis=axis,
        r_bar=axis.mirror(lead),
        target=t,
        gap_distance=len(path) - 1,
        orientation=orient,
        path=tuple(path),
    )


def orientation_counts(qaxes) -> tuple[int, int]:
    """(POS-oriented, NEG-oriented) quasi-axis counts."""
    pos = sum(1 for q in qaxes if q.orientation is Direction.POS)
    return pos, len(qaxes) - pos


def is_quasi_periodic(config: ObservedConfig, r: int) -> bool:
    """Whether moving the robot at ``r`` one step (either way) yields a periodic configuration."""
    n = config.n
    for step in (1, -1):
        moved = ObservedConfig(n, (config.occupied - {r}) | {(r + step) % n})
        if is_periodic(moved):
            return True
    return False


# -- classes ----------------------------------------------------------------


@dataclass(frozen=True)
class ConfigClass:
    """Tagged configuration class; ``str()`` gives the stable serialized tag."""

    tag: str
    k: int
    a: int = 0
    b: int = 0

    def __str__(self) -> str:
        if self.tag == "NE":
            return f"NE({self.k})"
        if self.tag == "QNE":
            return f"QNE({self.a},{self.b})({self.k})"
        return self.tag

    @property
    def is_ne(self) -> bool:
        """Node-edge symmetric family (generic NE plus its L-subclasses and L2)."""
        return self.tag in NE_TAGS

    @property
    def is_qne(self) -> bool:
        return self.tag in QNE_TAGS


NE_TAGS = frozenset({"NE", "L5", "L4", "L3", "L3''", "L2"})
QNE_TAGS = frozenset({"QNE", "L4'", "L3'"})


def _pattern(config: ObservedConfig) -> list[tuple[str, int]]:
    return [(r.kind, r.length) for r in blocks_and_holes(config)]


def _has_run_sequence(config: ObservedConfig, seq: list[tuple[str, int]]) -> bool:
    runs = _pattern(config)
    m = len(runs)
    if m < len(seq):
        return False
    for s in range(m):
        window = [runs[(s + j) % m] for j in range(len(seq))]
        if window == seq or window == list(reversed(seq)):
            return True
    return False


def _is_l4_prime(config: ObservedConfig) -> bool:
    return config.k == 4 and _has_run_sequence(config, [("block", 3), ("hole", 1), ("block", 1)])


def _is_l3_prime(config: ObservedConfig) -> bool:
    return config.k == 3 and _has_run_sequence(config, [("block", 2), ("hole", 1), ("block", 1)])


def _ne_subtag(config: ObservedConfig, t: int) -> str:
    n = config.n
    occ = config.occupied

    def around(*offsets):
        return occ == frozenset((t + o) % n for o in offsets)

    if config.k == 5 and around(-2, -1, 0, 1, 2):
        return "L5"
    if config.k == 4 and around(-2, -1, 1, 2):
        return "L4"
    if config.k == 3 and around(-2, 0, 2):
        return "L3"
    if config.k == 3 and around(-1, 0, 1):
        return "L3''"
    return "NE"


@lru_cache(maxsize=None)
def classify(config: ObservedConfig) -> ConfigClass:
    n, k = config.n, config.k
    if k == 1:
        return ConfigClass("Gathered", 1)
    if k == 2:
        a, b = sorted(config.occupied)
        if dist(n, a, b) == 1:
            return ConfigClass("L2", 2)
    if is_periodic(config):
        return ConfigClass("P", k)
    axis = node_edge_axis(config)
    if axis is not None:
        return ConfigClass(_ne_subtag(config, axis.node), k)
    if n % 2 == 1:
        qaxes = quasi_axes(config)
        if qaxes:
            if _is_l4_prime(config):
                return ConfigClass("L4'", k)
            if _is_l3_prime(config):
                return ConfigClass("L3'", k)
            pos, neg = orientation_counts(qaxes)
            return ConfigClass("QNE", k, max(pos, neg), min(pos, neg))
    return ConfigClass("Other", k)

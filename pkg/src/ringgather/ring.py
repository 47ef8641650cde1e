"""Ring geometry and configuration values.

Nodes are the integers ``0..n-1``; node ``i`` is adjacent to ``i-1`` and
``i+1`` (mod n).  A configuration is what robots observe: the set of
occupied nodes, without multiplicities.  The simulator keeps the real robot
counts in a :class:`GroundState`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class Direction(enum.IntEnum):
    """A one-step move along the global index orientation."""

    NEG = -1
    STAY = 0
    POS = 1

    def flipped(self) -> "Direction":
        return Direction(-self.value)


@dataclass(frozen=True, order=True)
class ObservedConfig:
    n: int
    occupied: frozenset[int]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ring size must be positive, got {self.n}")
        occ = frozenset(int(i) for i in self.occupied)
        for i in occ:
            if not 0 <= i < self.n:
                raise ValueError(f"node {i} outside [0, {self.n})")
        object.__setattr__(self, "occupied", occ)

    @classmethod
    def of(cls, n: int, occupied: Iterable[int]) -> "ObservedConfig":
        """Build a configuration, reducing indices mod n."""
        return cls(n, frozenset(i % n for i in occupied))

    @classmethod
    def from_bits(cls, bits: str) -> "ObservedConfig":
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a binary string: {bits!r}")
        return cls(len(bits), frozenset(i for i, b in enumerate(bits) if b == "1"))

    @property
    def k(self) -> int:
        """Number of occupied nodes."""
        return len(self.occupied)

    def __contains__(self, i: int) -> bool:
        return i % self.n in self.occupied

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.occupied))

    def bits(self) -> str:
        return "".join("1" if i in self.occupied else "0" for i in range(self.n))

    def literal(self) -> str:
        return f"n={self.n};occ=" + ",".join(str(i) for i in sorted(self.occupied))

    def __str__(self) -> str:
        return self.literal()


_LITERAL = re.compile(r"^n=(\d+);occ=(\d+(?:,\d+)*)?$")


def parse_config(text: str) -> ObservedConfig:
    """Parse ``n=<int>;occ=<i,j,...>`` or a plain ``0``/``1`` string."""
    text = text.strip()
    m = _LITERAL.match(text)
    if m:
        n = int(m.group(1))
        idx = [int(t) for t in m.group(2).split(",")] if m.group(2) else []
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be strictly increasing: {text!r}")
        return ObservedConfig(n, frozenset(idx))
    if re.fullmatch(r"[01]+", text):
        return ObservedConfig.from_bits(text)
    raise ValueError(f"cannot parse configuration literal {text!r}")


# -- distances and paths ----------------------------------------------------


def dist(n: int, i: int, j: int) -> int:
    d = (i - j) % n
    return min(d, n - d)


def arc(n: int, start: int, stop: int, direction: Direction) -> list[int]:
    """Nodes visited walking from ``start`` to ``stop`` in ``direction``, inclusive."""
    step = int(direction)
    if step == 0:
        raise ValueError("arc needs a moving direction")
    out = [start % n]
    while out[-1] != stop % n:
        out.append((out[-1] + step) % n)
    return out


def toward(n: int, src: int, dst: int) -> Direction:
    """The direction that strictly decreases the distance from src to dst.

    Ties (antipodal nodes on an even ring) are rejected.
    """
    fwd = (dst - src) % n
    if fwd == 0:
        return Direction.STAY
    if 2 * fwd == n:
        raise ValueError(f"nodes {src} and {dst} are antipodal on a ring of {n}")
    return Direction.POS if fwd < n - fwd else Direction.NEG


def next_occupied(config: ObservedConfig, i: int, direction: Direction, skip: int = 0) -> int | None:
    """The ``skip``-th (0-based) occupied node after ``i`` walking in ``direction``."""
    n = config.n
    seen = 0
    for step in range(1, n):
        j = (i + step * int(direction)) % n
        if j in config.occupied:
            if seen == skip:
                return j
            seen += 1
    return None


# -- dihedral actions -------------------------------------------------------


def rotate(config: ObservedConfig, x: int) -> ObservedConfig:
    n = config.n
    return ObservedConfig(n, frozenset((i + x) % n for i in config.occupied))


def reflect(config: ObservedConfig, c: int) -> ObservedConfig:
    """Image under the reflection ``i -> (c - i) mod n``."""
    n = config.n
    return ObservedConfig(n, frozenset((c - i) % n for i in config.occupied))


@dataclass(frozen=True)
class DihedralMap:
    """``i -> (shift + sign*i) mod n``; ``sign == -1`` is a reflection."""

    n: int
    shift: int
    sign: int = 1

    def __call__(self, i: int) -> int:
        return (self.shift + self.sign * i) % self.n

    def direction(self, d: Direction) -> Direction:
        return d if self.sign == 1 else d.flipped()

    def apply(self, config: ObservedConfig) -> ObservedConfig:
        return ObservedConfig(self.n, frozenset(self(i) for i in config.occupied))

    def apply_orders(self, orders: Mapping[int, Direction]) -> dict[int, Direction]:
        return {self(i): self.direction(d) for i, d in orders.items()}


def dihedral_group(n: int) -> list[DihedralMap]:
    """All 2n symmetries of the n-ring: n rotations then n reflections."""
    return [DihedralMap(n, x, 1) for x in range(n)] + [DihedralMap(n, c, -1) for c in range(n)]


# -- runs, views, canonical form --------------------------------------------


@dataclass(frozen=True)
class Run:
    kind: str  # "block" or "hole"
    start: int
    length: int

    def nodes(self, n: int) -> list[int]:
        return [(self.start + j) % n for j in range(self.length)]


def blocks_and_holes(config: ObservedConfig) -> list[Run]:
    """Maximal circular runs of occupied (block) and empty (hole) nodes.

    Runs are listed in index order starting from the run that begins at
    the smallest index.  A uniform ring is a single run starting at 0.
    """
    n = config.n
    occ = config.occupied
    if len(occ) in (0, n):
        return [Run("block" if occ else "hole", 0, n)]
    starts = [i for i in range(n) if ((i in occ) != (((i - 1) % n) in occ))]
    runs = []
    for a, b in zip(starts, starts[1:] + [starts[0] + n]):
        runs.append(Run("block" if a in occ else "hole", a, b - a))
    return runs


def robot_view(config: ObservedConfig, i: int) -> tuple[str, str]:
    """The lexicographically ordered pair of the two directional readings from node ``i``."""
    if i not in config.occupied:
        raise ValueError(f"node {i} is not occupied")
    n = config.n
    occ = config.occupied
    plus = "".join("1" if (i + j) % n in occ else "0" for j in range(n))
    minus = "".join("1" if (i - j) % n in occ else "0" for j in range(n))
    return (plus, minus) if plus <= minus else (minus, plus)


def canonical_form(config: ObservedConfig) -> ObservedConfig:
    """Representative of the dihedral orbit: smallest bit string over all 2n images."""
    best = min(g.apply(config).bits() for g in dihedral_group(config.n))
    return ObservedConfig.from_bits(best)


# -- ground truth -----------------------------------------------------------


@dataclass(frozen=True)
class GroundState:
    """Per-node robot counts known only to the simulator.

    ``correct`` and ``crashed`` are tuples of length ``n``.  At most one node
    holds crashed robots.
    """

    n: int
    correct: tuple[int, ...]
    crashed: tuple[int, ...]

    def __post_init__(self):
        if len(self.correct) != self.n or len(self.crashed) != self.n:
            raise ValueError("count vectors must have length n")
        if min(self.correct + self.crashed) < 0:
            raise ValueError("negative robot count")
        if sum(self.correct) + sum(self.crashed) < 1:
            raise ValueError("a ground state needs at least one robot")
        if sum(1 for c in self.crashed if c) > 1:
            raise ValueError("crashed robots must share a single node")

    @classmethod
    def distinct(cls, config: ObservedConfig) -> "GroundState":
        """One correct robot on every occupied node."""
        n = config.n
        return cls(n, tuple(int(i in config.occupied) for i in range(n)), (0,) * n)

    @classmethod
    def from_counts(cls, n: int, correct: Mapping[int, int], crashed: Mapping[int, int] | None = None) -> "GroundState":
        c = [0] * n
        for i, v in correct.items():
            c[i % n] += v
        x = [0] * n
        for i, v in (crashed or {}).items():
            x[i % n] += v
        return cls(n, tuple(c), tuple(x))

    @property
    def k(self) -> int:
        return sum(self.correct) + sum(self.crashed)

    @property
    def crashed_node(self) -> int | None:
        for i, c in enumerate(self.crashed):
            if c:
                return i
        return None

    def count(self, i: int) -> int:
        return self.correct[i] + self.crashed[i]

    def crash_one(self, node: int) -> "GroundState":
        """Mark one correct robot at ``node`` as crashed."""
        node %= self.n
        if self.correct[node] == 0:
            raise ValueError(f"no correct robot at node {node} to crash")
        cn = self.crashed_node
        if cn is not None and cn != node:
            raise ValueError("crashes must happen on a single node")
        correct = list(self.correct)
        crashed = list(self.crashed)
        correct[node] -= 1
        crashed[node] += 1
        return GroundState(self.n, tuple(correct), tuple(crashed))


def observe(state: GroundState) -> ObservedConfig:
    return ObservedConfig(state.n, frozenset(i for i in range(state.n) if state.count(i)))

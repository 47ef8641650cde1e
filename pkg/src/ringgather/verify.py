"""Exhaustive small-ring verification of the gathering and rendezvous rules.

Robots are oblivious, so a crash at round t of an execution is the same as
a crash at round 0 of a fresh execution started from the ground state of
round t.  Every scenario is therefore a crash-free run plus, for each of its
rounds and each occupied node, one restarted run with that node crashed.
"""

from __future__ import annotations

import itertools
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

from .ring import (
    Direction,
    GroundState,
    ObservedConfig,
    canonical_form,
    dihedral_group,
    dist,
    observe,
)
from .sim import CrashSchedule, CycleDetected, GatheredAt, Outcome, Stuck, TraceEntry, run
from .suig import AlgorithmVariant, MoveSet, Rule, compute_moves
from .symmetry import (
    ConfigClass,
    classify,
    is_periodic,
    ne_roles,
    node_edge_axis,
    orientation_counts,
    periods,
    quasi_axes,
    reflection_axes,
)


@dataclass
class ScenarioReport:
    n: int
    k: int
    initial: ObservedConfig
    crash: tuple[int, int] | None
    outcome: Outcome
    rounds: int
    violations: list[str] = field(default_factory=list)
    exploratory: bool = False

    @property
    def gathered_node(self) -> int | None:
        return self.outcome.node if isinstance(self.outcome, GatheredAt) else None

    @property
    def success(self) -> bool:
        if not isinstance(self.outcome, GatheredAt) or self.violations:
            return False
        return self.crash is None or self.outcome.node == self.crash[1]

    def sort_key(self):
        crash = self.crash if self.crash is not None else (-1, -1)
        return (self.n, self.k, self.initial.bits(), crash)

    def record(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "initial": self.initial.literal(),
            "crash": None if self.crash is None else {"round": self.crash[0], "node": self.crash[1]},
            "outcome": str(self.outcome),
            "gathered_node": self.gathered_node,
            "rounds": self.rounds,
            "success": self.success,
            "exploratory": self.exploratory,
            "violations": list(self.violations),
        }


# -- enumeration ------------------------------------------------------------


def enumerate_initial(n: int, k: int) -> list[ObservedConfig]:
    """One canonical representative per dihedral orbit of NE(k) minus periodic."""
    if n % 2 == 0:
        raise ValueError(f"node-edge symmetric starts need an odd ring, got n={n}")
    if n < 5 or not 2 <= k <= n:
        raise ValueError(f"need n >= 5 and 2 <= k <= n, got n={n}, k={k}")
    half = range(1, (n - 1) // 2 + 1)
    seen = set()
    for pairs in itertools.combinations(half, k // 2):
        occ = {0} if k % 2 else set()
        for d in pairs:
            occ |= {d, n - d}
        config = ObservedConfig(n, frozenset(occ))
        if is_periodic(config):
            continue
        seen.add(canonical_form(config))
    return sorted(seen, key=ObservedConfig.bits)


def suir_starts(n: int) -> list[ObservedConfig]:
    """Two-robot node-node symmetric aperiodic starts on an even ring, up to symmetry."""
    if n % 2 == 1 or n < 4:
        raise ValueError(f"rendezvous starts need an even n >= 4, got {n}")
    return [ObservedConfig(n, frozenset({0, d})) for d in range(2, n // 2, 2)]


# -- transition diagram -----------------------------------------------------

_NE_BOX = ("NE", "L5", "L4", "L3")
_QNE_BOX = ("QNE", "L4'", "L3'")

# (from-tag, to-tag) -> dashed?
_TERMINAL_EDGES = {
    ("L4", "L3"): False,
    ("L4", "L4'"): True,
    ("L4'", "L3"): True,
    ("L3", "L3''"): False,
    ("L3", "L3'"): True,
    ("L3'", "L3''"): True,
    ("L3''", "Gathered"): False,
    ("L3''", "L2"): True,
    ("L2", "Gathered"): False,
}


def check_transition(prev: ConfigClass, nxt: ConfigClass, crash_active: bool, n: int | None = None) -> str | None:
    """None when ``prev -> nxt`` is an edge of the transition diagram, else a message.

    Dashed edges (those that need a crashed robot to have been ordered to
    move) are only accepted when ``crash_active``.  On the 5-ring the
    primed shapes coincide with L4 and L3, so a crashed main robot there
    yields the unprimed class again.
    """
    dashed = None
    if n == 5 and (prev.tag, nxt.tag) in (("L4", "L4"), ("L3", "L3")):
        dashed = True
    elif (prev.tag, nxt.tag) in _TERMINAL_EDGES:
        dashed = _TERMINAL_EDGES[(prev.tag, nxt.tag)]
    elif prev.tag in ("NE", "L5"):
        if nxt.tag in _NE_BOX and prev.k - nxt.k in (0, 1, 2):
            dashed = False
        elif nxt.tag in _QNE_BOX:
            dashed = True
    elif prev.tag in _QNE_BOX and prev.tag != "L4'":
        if nxt.tag in _NE_BOX and prev.k - nxt.k in (0, 1, 2):
            dashed = True
    if dashed is None:
        return f"no transition {prev} -> {nxt}"
    if dashed and not crash_active:
        return f"crash-only transition {prev} -> {nxt} without a moving crashed robot"
    return None


# -- per-trace invariants ---------------------------------------------------


def advance(config: ObservedConfig, moves: MoveSet) -> ObservedConfig:
    """Occupancy after every ordered robot reaches its destination."""
    n = config.n
    return ObservedConfig(n, frozenset((i + int(moves.get(i))) % n for i in config.occupied))


def _crash_active(entry: TraceEntry) -> bool:
    x = entry.state.crashed_node
    return x is not None and entry.moves.get(x) is not Direction.STAY


def _roles(config: ObservedConfig):
    axis = node_edge_axis(config)
    return axis, ne_roles(config, axis)


def check_trace(trace: Sequence[TraceEntry], outcome: Outcome, crash_node: int | None) -> list[str]:
    """All invariant violations along one execution (collected, not fail-fast)."""
    out: list[str] = []
    last = len(trace) - 1

    def bad(t: int, msg: str) -> None:
        out.append(f"round {t}: {msg}")

    if not isinstance(outcome, GatheredAt):
        bad(trace[-1].round, f"did not gather: {outcome}")
    elif crash_node is not None and outcome.node != crash_node:
        bad(outcome.round, f"gathered at {outcome.node}, not at crash node {crash_node}")

    k0 = trace[0].state.k
    for idx, e in enumerate(trace):
        t = e.round
        if e.state.k != k0:
            bad(t, "robot count changed")
        if e.config != observe(e.state) or e.moves != compute_moves(e.config):
            bad(t, "trace entry inconsistent with observe/compute_moves")
        if idx == last:
            break
        nxt = trace[idx + 1]
        x = e.state.crashed_node
        if x is not None and (nxt.state.crashed_node != x or nxt.state.crashed[x] < e.state.crashed[x]):
            bad(t, "crashed robot moved")
        active = _crash_active(e)
        msg = check_transition(e.cls, nxt.cls, active, e.config.n)
        if msg:
            bad(t, msg)
        _check_step_claims(trace, idx, bad)

    _check_terminal_bounds(trace, outcome, bad)
    return out


def _check_step_claims(trace: Sequence[TraceEntry], idx: int, bad) -> None:
    e, nxt = trace[idx], trace[idx + 1]
    C, cls, k = e.config, e.cls, e.config.k
    if e.moves.rule is Rule.MOVE_OPPOSITE and e.state.crashed_node is not None:
        x = e.state.crashed_node
        axis = node_edge_axis(nxt.config)
        if axis is None or nxt.cls.tag in ("Gathered", "L2"):
            bad(e.round, f"MoveOpposite reached {nxt.cls}, not node-edge symmetric")
        elif x in ne_roles(nxt.config, axis).main:
            bad(e.round, "MoveOpposite left the crashed robot a main robot")
    if not cls.is_ne or cls.tag == "L2":
        return
    t = e.round
    x = e.state.crashed_node
    active = _crash_active(e)

    # successor of an aperiodic NE configuration is never periodic
    if k > 3 and nxt.cls.tag == "P":
        bad(t, f"{cls} reached a periodic configuration")

    # no moving crashed robot: NE(k) -> NE(k'), k' in {k, k-1, k-2}
    if k > 4 and not active:
        ok = nxt.cls.is_ne and nxt.cls.tag != "L2" and k - nxt.config.k in (0, 1, 2)
        if not ok:
            bad(t, f"crash-free step from {cls} reached {nxt.cls}")
        elif nxt.config.k <= 4 and not (cls.tag == "L5" and nxt.cls.tag == "L3"):
            bad(t, f"crash-free step from {cls} dropped to {nxt.cls}")

    if not active:
        return
    axis, roles = _roles(C)
    is_main = x in roles.main
    is_secondary = roles.secondary is not None and x in roles.secondary and not is_main
    rule = e.moves.rule

    # the parity of the gap distance on the old axis tells who crashed
    if nxt.cls.is_qne and (is_main or is_secondary):
        same = [q for q in quasi_axes(nxt.config) if q.axis == axis]
        want = 1 if is_main else 0
        if not same:
            bad(t, "crash produced a quasi-symmetric configuration without the old axis")
        elif any(q.gap_distance % 2 != want for q in same):
            who = "main" if is_main else "secondary"
            bad(t, f"{who} crash produced gap distance {same[0].gap_distance}")

    if is_secondary and rule in (Rule.MOVE_SECONDARY, Rule.MOVE_MAIN_SECONDARY):
        sec_adjacent = dist(C.n, *roles.secondary) == 1
        if k > 4 or (k == 4 and not sec_adjacent):
            if idx + 2 >= len(trace):
                bad(t, "secondary crash: execution ended before recovery")
            else:
                expect = canonical_form(advance(C, e.moves))
                got = canonical_form(trace[idx + 2].config)
                if expect != got:
                    bad(t, f"secondary crash not recovered: {got} vs {expect}")
        elif k == 4:
            nc = nxt.config
            ok = nxt.cls.tag in ("NE", "L4")
            if ok:
                _, nroles = _roles(nc)
                ok = x not in nroles.main and (nroles.secondary is None or dist(nc.n, *nroles.secondary) > 1)
            if not ok:
                bad(t, f"adjacent secondary crash reached {nxt.cls} with a crashed main robot")

    if is_main and k > 4 and nxt.cls.is_ne and nxt.config.k == k and nxt.cls.tag != "L2":
        _, nroles = _roles(nxt.config)
        if x in nroles.main:
            a, b = _m_set_positions(C, x)
            a2 = (a + int(e.moves.get(a))) % C.n
            b2 = (b + int(e.moves.get(b))) % C.n
            if not dist(C.n, a2, b2) < dist(C.n, a, b):
                bad(t, f"M(C) distance did not decrease ({dist(C.n, a, b)} -> {dist(C.n, a2, b2)})")


def _m_set_positions(config: ObservedConfig, x: int) -> tuple[int, int]:
    from .symmetry import m_set

    return m_set(config, x)


def _check_terminal_bounds(trace: Sequence[TraceEntry], outcome: Outcome, bad) -> None:
    end = outcome.round if isinstance(outcome, GatheredAt) else None
    tags = [e.cls.tag for e in trace]
    for idx, e in enumerate(trace):
        t = e.round
        if e.cls.tag == "L2":
            crashed_only = [i for i in e.config.occupied if e.state.crashed[i] and not e.state.correct[i]]
            if not crashed_only:
                bad(t, "L2 without a crashed-only node")
            if end is None or end - t != 1:
                bad(t, "L2 did not gather in exactly one round")
        elif e.cls.tag == "L4":
            if "L3" not in tags[idx + 1: idx + 3]:
                bad(t, "L4 did not reach L3 within two rounds")
        elif e.cls.tag == "L3":
            if end is None or end - t > 4:
                bad(t, "L3 did not gather within four rounds")


# -- per-configuration properties -------------------------------------------


def equivariance_violations(config: ObservedConfig) -> list[str]:
    base = compute_moves(config)
    out = []
    for g in dihedral_group(config.n):
        image = compute_moves(g.apply(config))
        if image.as_dict() != g.apply_orders(base.as_dict()) or image.rule != base.rule:
            out.append(f"{config}: decision not equivariant under {g}")
            break
    return out


def bisector_violations(config: ObservedConfig) -> list[str]:
    """Every bisector (through a node) of two axes must be an axis too (odd n)."""
    n = config.n
    cs = {a.c for a in reflection_axes(config)}
    out = []
    for c1, c2 in itertools.combinations(sorted(cs), 2):
        # an axis is 2*fixed node mod n; the bisector of nodes f1, f2 is the
        # node halfway between them along either arc
        f1, f2 = (c1 * (n + 1) // 2) % n, (c2 * (n + 1) // 2) % n
        mids = []
        for d in ((f2 - f1) % n, (f2 - f1) % n - n):
            if d % 2 == 0:
                mids.append((f1 + d // 2) % n)
        for m in mids:
            if (2 * m) % n not in cs:
                out.append(f"{config}: bisector node {m} of axes at {f1},{f2} is not an axis")
    return out


def quasi_axis_violations(config: ObservedConfig) -> list[str]:
    """Even-gap quasi-axis uniqueness and the odd-gap orientation count."""
    n, k = config.n, config.k
    if n % 2 == 0 or k <= 3 or is_periodic(config):
        return []
    qaxes = quasi_axes(config)
    if not qaxes:
        return []
    out = []
    for q in qaxes:
        if q.gap_distance % 2 == 0:
            completions = [
                (config.occupied - {q.r}) | {q.axis.mirror(q.r_prime)},
                (config.occupied - {q.r_prime}) | {q.axis.mirror(q.r)},
            ]
            if any(is_periodic(ObservedConfig(n, c)) for c in completions) and len(qaxes) != 1:
                out.append(f"{config}: quasi-periodic even-gap quasi-axis is not unique")
    if node_edge_axis(config) is None and all(q.gap_distance % 2 for q in qaxes):
        a, b = orientation_counts(qaxes)
        if min(a, b) != 0 and (a, b) != (1, 1):
            out.append(f"{config}: odd-gap quasi-axes with orientation counts {(a, b)}")
    return out


def move_opposite_hypotheses(config: ObservedConfig) -> list[str]:
    """MoveOpposite soundness checked against every potentially crashed robot.

    Only one hypothesis is the real history of a reached configuration, so
    the sweep checks the realised crash along traces instead; this stronger
    per-configuration form is kept for analysis.
    """
    qaxes = quasi_axes(config)
    if classify(config).tag != "QNE" or orientation_counts(qaxes) != (1, 1):
        return []
    n = config.n
    moves = compute_moves(config)
    out = []
    for frozen in sorted({q.potentially_crashed for q in qaxes}):
        after = ObservedConfig(n, frozenset(
            (i + int(Direction.STAY if i == frozen else moves.get(i))) % n for i in config.occupied
        ))
        axis = node_edge_axis(after)
        if axis is None or classify(after).tag in ("Gathered", "L2"):
            out.append(f"{config}: MoveOpposite with {frozen} frozen gives {after}, not node-edge symmetric")
        elif frozen in ne_roles(after, axis).main:
            out.append(f"{config}: MoveOpposite with {frozen} frozen keeps it a main robot")
    return out


def config_violations(config: ObservedConfig) -> list[str]:
    """Every per-configuration property checked over a verification population."""
    out = equivariance_violations(config)
    if not is_periodic(config) and len(reflection_axes(config)) > 1:
        out.append(f"{config}: aperiodic with several axes")
    out += bisector_violations(config)
    out += quasi_axis_violations(config)
    if compute_moves(config).stuck:
        out.append(f"{config}: no rule applies ({classify(config)})")
    return out


# -- sweeps -----------------------------------------------------------------


def _scenario_runs(
    initial: ObservedConfig,
    variant: AlgorithmVariant,
    crash_mode: str,
    max_rounds: int | None,
) -> tuple[list[ScenarioReport], set[ObservedConfig]]:
    n, k = initial.n, initial.k
    start = GroundState.distinct(initial)
    base, outcome = run(start, None, variant, max_rounds)
    visited = {e.config for e in base}
    exploratory = variant is AlgorithmVariant.SUIG_RING and k == 3
    checker = check_trace if variant is AlgorithmVariant.SUIG_RING else _suir_check
    reports = [
        ScenarioReport(n, k, initial, None, outcome, base[-1].round, checker(base, outcome, None), exploratory)
    ]
    if crash_mode == "none":
        return reports, visited
    for entry in base:
        for v in sorted(entry.config.occupied):
            if entry.state.correct[v] == 0:
                continue
            tail, out2 = run(entry.state, CrashSchedule(0, v), variant, max_rounds, strict=False)
            shifted = _shift(tail, entry.round)
            out2 = _shift_outcome(out2, entry.round)
            full = list(base[: entry.round]) + shifted
            visited.update(e.config for e in tail)
            reports.append(
                ScenarioReport(
                    n, k, initial, (entry.round, v), out2, full[-1].round, checker(full, out2, v), exploratory
                )
            )
    return reports, visited


def _shift(trace: list[TraceEntry], dt: int) -> list[TraceEntry]:
    return [TraceEntry(e.round + dt, e.state, e.config, e.cls, e.moves) for e in trace]


def _shift_outcome(outcome: Outcome, dt: int) -> Outcome:
    if isinstance(outcome, GatheredAt):
        return GatheredAt(outcome.node, outcome.round + dt)
    if isinstance(outcome, CycleDetected):
        return CycleDetected(outcome.first_repeat_round + dt)
    if isinstance(outcome, Stuck):
        return Stuck(outcome.round + dt)
    return outcome


def _suig_job(args):
    initial, crash_mode, max_rounds = args
    return _scenario_runs(initial, AlgorithmVariant.SUIG_RING, crash_mode, max_rounds)


@dataclass
class Sweep:
    reports: list[ScenarioReport]
    visited: set[ObservedConfig]
    population_violations: list[str]

    @property
    def ok(self) -> bool:
        asserted = [r for r in self.reports if not r.exploratory]
        return all(r.success for r in asserted) and not self.population_violations

    def summary(self) -> dict:
        asserted = [r for r in self.reports if not r.exploratory]
        return {
            "scenarios": len(self.reports),
            "asserted": len(asserted),
            "gathered": sum(1 for r in self.reports if isinstance(r.outcome, GatheredAt)),
            "successful": sum(1 for r in self.reports if r.success),
            "max_rounds": max((r.rounds for r in self.reports), default=0),
            "scenario_violations": sum(len(r.violations) for r in asserted),
            "population_violations": len(self.population_violations),
            "configurations_visited": len(self.visited),
        }


def verify_suig(
    n: int,
    k_range: Iterable[int] | None = None,
    crash_mode: str = "all",
    jobs: int = 1,
    max_rounds: int | None = None,
    check_population: bool = True,
) -> Sweep:
    """Run every start in NE(k) minus periodic for k in ``k_range``, with crash branching.

    k = 3 is accepted only when n is not a multiple of 3; those scenarios are
    flagged exploratory and do not count toward ``Sweep.ok``.
    """
    if n % 2 == 0 or n < 5:
        raise ValueError(f"ring gathering is verified on odd n >= 5, got {n}")
    if crash_mode not in ("none", "all"):
        raise ValueError(f"crash mode must be 'none' or 'all', got {crash_mode!r}")
    ks = sorted(set(k_range if k_range is not None else range(4, n + 1)))
    for k in ks:
        if k < 3 or k > n:
            raise ValueError(f"k={k} outside [3, {n}]")
        if k == 3 and n % 3 == 0:
            raise ValueError(f"three robots cannot gather on a ring of {n} nodes (multiple of 3)")
    jobs_args = [(c, crash_mode, max_rounds) for k in ks for c in enumerate_initial(n, k)]
    results = _map(_suig_job, jobs_args, jobs)
    reports: list[ScenarioReport] = []
    visited: set[ObservedConfig] = set()
    for reps, vis in results:
        reports += reps
        visited |= vis
    reports.sort(key=ScenarioReport.sort_key)
    population = []
    if check_population:
        for config in sorted(visited, key=ObservedConfig.bits):
            if config.k > 3 or classify(config).tag not in ("Gathered",):
                population += config_violations(config)
    return Sweep(reports, visited, population)


def _map(fn, args: list, jobs: int) -> list:
    if jobs <= 1 or len(args) <= 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, args, chunksize=1))


def _suir_check(trace: Sequence[TraceEntry], outcome: Outcome, crash_node: int | None) -> list[str]:
    out = []
    n = trace[0].config.n
    if not isinstance(outcome, GatheredAt):
        out.append(f"did not gather: {outcome}")
    else:
        if outcome.round > n:
            out.append(f"gathered after {outcome.round} rounds (> n = {n})")
        if crash_node is not None and outcome.node != crash_node:
            out.append(f"gathered at {outcome.node}, not at crash node {crash_node}")
    return out


def verify_suir(n: int) -> Sweep:
    if n % 2 == 1 or n < 4:
        raise ValueError(f"rendezvous is verified on even n >= 4, got {n}")
    reports: list[ScenarioReport] = []
    visited: set[ObservedConfig] = set()
    for start in suir_starts(n):
        reps, vis = _scenario_runs(start, AlgorithmVariant.SUIR_SHORTEST_PATH, "all", n)
        reports += reps
        visited |= vis
    reports.sort(key=ScenarioReport.sort_key)
    return Sweep(reports, visited, [])


def crash_reduction_mismatches(n: int, samples: int = 1000, seed: int = 0, ks: Sequence[int] | None = None) -> list[str]:
    """Compare random mid-run crashes with their restarted round-0 reduction."""
    rng = random.Random(seed)
    starts = [c for k in (ks or range(4, n + 1)) for c in enumerate_initial(n, k)]
    out = []
    for _ in range(samples):
        initial = rng.choice(starts)
        start = GroundState.distinct(initial)
        base, _ = run(start)
        entry = rng.choice(base)
        v = rng.choice([i for i in sorted(entry.config.occupied) if entry.state.correct[i]])
        direct, o1 = run(start, CrashSchedule(entry.round, v))
        reduced, o2 = run(entry.state, CrashSchedule(0, v), strict=False)
        a = [e.config for e in direct[entry.round:]]
        b = [e.config for e in reduced]
        if a != b or str(_shift_outcome(o2, entry.round)) != str(o1):
            out.append(f"{initial} crash ({entry.round}, {v}): direct and reduced runs differ")
    return out


def write_report(sweep: Sweep, fh: TextIO) -> None:
    for r in sweep.reports:
        fh.write(json.dumps(r.record()) + "\n")
    fh.write(json.dumps({"summary": sweep.summary(), "population_violations": sweep.population_violations}) + "\n")


def default_jobs() -> int:
    return os.cpu_count() or 1

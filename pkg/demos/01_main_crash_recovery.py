"""A main robot crashes on the 21-ring and the others recover around it.

Eight robots start symmetric about node 0.  The two robots nearest the
target (nodes 2 and 19) are ordered to step inward; the one on 19 crashes
and stays.  The next configuration is one step away from symmetry, every
robot sees which way the step went, and all of them shift back the other
way.  The crashed robot is now the only one that did not move, which
leaves a symmetric configuration again with the target next to it.
"""

from ringgather import CrashSchedule, GroundState, classify, parse_config, quasi_axes, run
from ringgather.sim import render_frame


def show(entry):
    ring, _, marks = render_frame(entry).partition("\n")
    print(f"{ring:40} {entry.moves.rule.value}")
    if marks:
        print(marks)
from ringgather.symmetry import ne_roles, node_edge_axis

start = parse_config("n=21;occ=2,6,9,10,11,12,15,19")
roles = ne_roles(start, node_edge_axis(start))
print(f"start {start}: {classify(start)}, target {roles.target}, main {roles.main}, secondary {roles.secondary}")

trace, outcome = run(GroundState.distinct(start), CrashSchedule(0, 19))
for entry in trace[:3]:
    show(entry)

(q,) = quasi_axes(trace[1].config)
print(f"after the crash: r={q.r} r'={q.r_prime} gap={q.gap_distance} orientation={q.orientation.name}")
print(f"two rounds in: {trace[2].config} is {classify(trace[2].config)} about node {node_edge_axis(trace[2].config).node}")
print(f"outcome: {outcome} after {len(trace) - 1} rounds")

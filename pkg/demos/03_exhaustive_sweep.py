"""Exhaustive verification on small rings, and what it finds.

Every symmetric aperiodic start is run without a crash and with a crash at
every (round, occupied node) of its crash-free execution.  The 5-ring
passes completely.  From the 7-ring on, a few crash scenarios do not
gather; the first one found is replayed here so the cycle is visible.
"""

import collections

from ringgather import CrashSchedule, GroundState, run, verify_suig
from ringgather.sim import render_frame


def show(entry):
    ring, _, marks = render_frame(entry).partition("\n")
    print(f"{ring:40} {entry.moves.rule.value}")
    if marks:
        print(marks)

for n in (5, 7, 9):
    sweep = verify_suig(n)
    s = sweep.summary()
    print(f"n={n}: {s['scenarios']} scenarios, {s['successful']} clean, ok={sweep.ok}")
    kinds = collections.Counter(v.split(": ", 1)[1].split(":")[0][:48] for r in sweep.reports for v in r.violations)
    for kind, count in kinds.most_common(4):
        print(f"    {count:4d}  {kind}")

failing = next(r for r in verify_suig(9).reports if not r.outcome.gathered)
print(f"\nreplaying {failing.initial} with a crash at round {failing.crash[0]} on node {failing.crash[1]}")
trace, outcome = run(GroundState.distinct(failing.initial), CrashSchedule(*failing.crash))
for entry in trace:
    show(entry)
print(outcome)

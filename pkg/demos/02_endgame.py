"""The last few robots: three in a spread-out line, with and without a crash.

Without a crash the two outer robots walk onto the middle one in two
rounds.  When one of them crashes the shape breaks, the classifier tracks
the primed and doubled-prime classes, and the robots finish on the
crashed node in four rounds.
"""

from ringgather import CrashSchedule, GroundState, parse_config, run
from ringgather.sim import render_frame


def show(entry):
    ring, _, marks = render_frame(entry).partition("\n")
    print(f"{ring:40} {entry.moves.rule.value}")
    if marks:
        print(marks)

start = GroundState.distinct(parse_config("n=9;occ=0,2,7"))

for crash in (None, CrashSchedule(0, 2)):
    print("crash:", crash)
    trace, outcome = run(start, crash)
    for entry in trace:
        show(entry)
    print(outcome, "\n")

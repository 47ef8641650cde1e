"""Two robots on an even ring meet along the shorter arc.

If one of them crashes the other simply keeps walking until it reaches
it, which is never more than n rounds.
"""

from ringgather import AlgorithmVariant, CrashSchedule, GroundState, parse_config, run, verify_suir

start = GroundState.distinct(parse_config("n=10;occ=0,4"))
for crash in (None, CrashSchedule(0, 0), CrashSchedule(1, 3)):
    _, outcome = run(start, crash, AlgorithmVariant.SUIR_SHORTEST_PATH)
    print(f"crash {crash}: {outcome}")

for n in range(6, 13, 2):
    sweep = verify_suir(n)
    print(f"n={n}: {sweep.summary()['scenarios']} scenarios, ok={sweep.ok}")

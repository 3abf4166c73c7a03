"""Per-cluster solving against batched solving.

On a random scramble almost no two center clusters share a configuration,
so both pipelines emit the same moves.  The replicated scramble puts every
off-diagonal center cluster in one configuration; the batched solver then
handles whole blocks of clusters with one widened sequence.

Per-configuration solutions are memoised, so the second solver on the same
state runs faster; compare move counts, not seconds.
"""

import time

from nxncube.bench import replicated_scramble
from nxncube.cube import apply_sequence, scramble
from nxncube.solver import solve_naive, solve_optimized


def show(label, state):
    for solver in (solve_naive, solve_optimized):
        t = time.perf_counter()
        report = solver(state)
        secs = time.perf_counter() - t
        ok = apply_sequence(state, report.moves).is_solved()
        stages = ", ".join(f"{name} {report.stage_moves(name)}" for name in ("frame", "parity", "wings", "centers"))
        print(f"{label:<18} {report.algorithm:<9} {report.total_moves:>6} moves  [{stages}]  {secs:.2f}s  solved={ok}")


for n in (8, 12):
    show(f"random n={n}", scramble(n, 1, 20 * n)[0])
for n in (16, 24):
    show(f"replicated n={n}", replicated_scramble(n, 1)[0])

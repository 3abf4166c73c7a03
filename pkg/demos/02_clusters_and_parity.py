"""Clusters: which cubies can ever trade places, and the parity of each group.

A single inner slice turn on a 7-cube makes exactly one wing cluster odd;
face turns never change wing parity.  ``fix_parity`` undoes it with one
slice turn per odd cluster.
"""

from nxncube.clusters import cluster_parity, count_clusters, extract_configuration, wing, wing_indices
from nxncube.cube import CubeState, Move, apply_move, apply_sequence
from nxncube.solver import fix_parity

print(" n  wings  edges  centers  center orbits")
for n in range(2, 11):
    c = count_clusters(n)
    print(f"{n:>2}  {c['wings']:>5}  {c['edges']:>5}  {c['centers']:>7}  {c['center_orbits']:>13}")


def parities(state):
    return {i: cluster_parity(extract_configuration(state, wing(i))) for i in wing_indices(state.n)}


cube = CubeState.solved(7)
turned = apply_move(cube, Move("H", 2, True))
print("\nafter h2:", parities(turned))
print("after h2 U:", parities(apply_move(turned, Move("H", 0, True))))
fix = fix_parity(turned)
print("fix_parity ->", [str(m) for m in fix], parities(apply_sequence(turned, fix)))

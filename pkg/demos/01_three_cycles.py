"""The three 8-move 3-cycles, seen sticker by sticker.

Each sequence below is applied to a solved cube and we list which sticker
slots changed.  Corners move 9 stickers, edge cubies 6 and single centers 3;
everything else on the cube is left exactly where it was.
"""

from nxncube.commutators import center_cycle, corner_cycle, edge_cycle, permutation_support
from nxncube.cube import FACES, format_sequence

n = 6

for spec in (corner_cycle(n), edge_cycle(n, 2), center_cycle(n, 1)):
    support = sorted(permutation_support(n, spec.sequence))
    cubies = " -> ".join(f"({p.x},{p.y},{p.z})" for p in spec.permuted)
    print(f"{spec.kind:<7} {format_sequence(spec.sequence)}")
    print(f"        cycles {cubies}")
    print("        touches " + ", ".join(f"{FACES[f]}[{r},{c}]" for f, r, c in support))
    print()

# The same edge commutator on the outermost column is just the corner cycle.
print("edge_cycle(n, n-1) is the corner cycle:",
      edge_cycle(n, n - 1).sequence == corner_cycle(n).sequence)

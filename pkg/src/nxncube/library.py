"""Per-shape catalogue of 3-cycles reachable by conjugating the base commutators.

Each cluster shape gets one reference cluster on a small cube.  The base
commutators are written with slice roles instead of indices, their effect on
the reference cluster is recorded as a permutation of the cluster's sticker
positions, and a breadth-first search over setup moves (up to
``MAX_SETUP_DEPTH``) collects every distinct 3-cycle reachable as
``setup + base + setup^-1``.  Because slot numbering is role-based, an entry
found on the reference cluster applies unchanged to every cluster of the same
shape once the roles are mapped to real slice indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .clusters import (
    ClusterId,
    center,
    cluster_geometry,
    instantiate,
    role_generators,
    wing,
)
from .cube import CubeError, sequence_permutation

MAX_SETUP_DEPTH = 5

# shape -> (reference n, reference cluster)
REFERENCE = {
    "corner": (2, ClusterId("corner")),
    "cross": (3, ClusterId("cross")),
    "wing": (4, wing(1)),
    "center_diag": (4, center(1, 1)),
    "center_oblique": (6, center(1, 2)),
    "center_plus": (5, center(1, 2)),
}


def _edge_roles(x: str) -> tuple:
    return (("H", "0", True), ("V", x, True), ("H", "N", False), ("V", x, False),
            ("H", "0", False), ("V", x, True), ("H", "N", True), ("V", x, False))


def _center_roles(first: str, second: str) -> tuple:
    return (("H", first, True), ("V", "N", True), ("H", second, False), ("V", "N", False),
            ("H", first, False), ("V", "N", True), ("H", second, True), ("V", "N", False))


def invert_roles(seq) -> tuple:
    return tuple((axis, role, not cw) for axis, role, cw in reversed(seq))


def base_candidates(shape: str, role_names) -> list[tuple]:
    if shape == "corner":
        out = [_edge_roles("N")]
    elif shape == "cross":
        out = [_edge_roles("m")]
    elif shape == "wing":
        out = [_edge_roles("a"), _edge_roles("A")]
    else:
        inner = [r for r in role_names if r not in ("0", "N")]
        out = [_center_roles(p, q) for p in inner for q in inner if p != q]
    return out + [invert_roles(s) for s in out]


@dataclass
class Entry:
    setup: tuple
    base: int
    length: int
    # (source slot, destination slot, perm): dst sticker k takes src sticker perm[k]
    parts: tuple

    @property
    def slots(self) -> tuple[int, ...]:
        return tuple(p[1] for p in self.parts)


@dataclass
class Library:
    shape: str
    bases: list
    entries: list[Entry]
    by_pair: dict = field(default_factory=dict)
    generators: list = field(default_factory=list)
    slot_count: int = 0

    def role_sequence(self, entry: Entry) -> tuple:
        return entry.setup + self.bases[entry.base] + invert_roles(entry.setup)

    def moves(self, entry: Entry, role_map: dict):
        return instantiate(self.role_sequence(entry), role_map)

    @property
    def max_entry_length(self) -> int:
        return max(e.length for e in self.entries)


def cluster_gather(n: int, cid: ClusterId, role_seq, strict: bool = True) -> np.ndarray | None:
    """Gather array of ``role_seq`` on the cluster's positions.

    With ``strict``, returns ``None`` when the sequence moves any sticker
    outside the cluster.
    """
    geo = cluster_geometry(n, cid)
    pos = geo.positions
    src = sequence_permutation(n, instantiate(role_seq, geo.roles))
    moved = np.nonzero(src != np.arange(len(src)))[0]
    inside = np.zeros(len(src), dtype=bool)
    inside[pos] = True
    if strict and not inside[moved].all():
        return None
    index = np.full(len(src), -1, dtype=np.int64)
    index[pos] = np.arange(len(pos))
    return index[src[pos]]


def _parts(gather: np.ndarray, width: int) -> tuple:
    out = []
    for dst in range(len(gather) // width):
        chunk = gather[dst * width : (dst + 1) * width]
        src = int(chunk[0]) // width
        if src == dst and all(int(c) == dst * width + k for k, c in enumerate(chunk)):
            continue
        out.append((src, dst, tuple(int(c) - src * width for c in chunk)))
    return tuple(out)


@lru_cache(maxsize=None)
def library(shape: str) -> Library:
    if shape not in REFERENCE:
        raise CubeError(f"no 3-cycle library for shape {shape!r}")
    n, cid = REFERENCE[shape]
    geo = cluster_geometry(n, cid)
    width = len(geo.slots[0])
    gens = role_generators(cid, n)
    gen_gather = [cluster_gather(n, cid, (g,), strict=False) for g in gens]
    inv_gather = [cluster_gather(n, cid, ((g[0], g[1], not g[2]),), strict=False) for g in gens]

    bases = []
    frontier = []
    found: dict[bytes, Entry] = {}
    for seq in base_candidates(shape, geo.roles):
        g = cluster_gather(n, cid, seq)
        if g is None:
            continue
        parts = _parts(g, width)
        if len(parts) != 3 or g.tobytes() in found:
            continue
        bases.append(seq)
        entry = Entry((), len(bases) - 1, len(seq), parts)
        found[g.tobytes()] = entry
        frontier.append((g, entry))
    if not bases:
        raise CubeError(f"no base 3-cycle acts inside shape {shape!r}")

    for _ in range(MAX_SETUP_DEPTH):
        nxt = []
        for g, entry in frontier:
            for gm, gi, move in zip(gen_gather, inv_gather, gens):
                h = gm[g][gi]
                key = h.tobytes()
                if key in found:
                    continue
                e = Entry((move,) + entry.setup, entry.base, entry.length + 2, _parts(h, width))
                found[key] = e
                nxt.append((h, e))
        frontier = nxt
        if not frontier:
            break

    entries = sorted(found.values(), key=lambda e: (e.length, e.parts))
    lib = Library(shape, bases, entries, generators=gens, slot_count=len(geo.slots))
    for idx, e in enumerate(entries):
        for src, dst, _ in e.parts:
            lib.by_pair.setdefault((src, dst), []).append(idx)
    return lib

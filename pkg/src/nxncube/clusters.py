"""Cubie clusters: the orbits of cubie positions under all legal moves.

Identifiers
-----------
``corner``        the 8 corners
``cross``         the 12 middle edges (odd n)
``face_center``   the 6 middle centers (odd n)
``wing(i)``       edge cubies ``i`` or ``n-1-i`` from a corner, ``1 <= i < n/2``
``center(i, j)``  the 24 centers whose F-face member sits at row ``i``,
                  column ``j`` with ``i, j`` in the upper-left quadrant

Mirror-image center orbits ``center(i, j)`` and ``center(j, i)`` are distinct
clusters: no legal move sequence carries one into the other.  The classical
closed-form center counts group such mirror pairs together, see
:func:`count_clusters`.

Within a cluster, slots are numbered by a breadth-first walk from a fixed
representative under a fixed generator order written in terms of slice
*roles* (``0``, ``N`` = n-1, ``a``/``A`` = i and n-1-i, ``b``/``B`` = j and
n-1-j, ``m`` = middle).  Two clusters of the same shape therefore have
slot numberings that correspond move-for-move, whatever ``n`` is.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import ceil

import numpy as np

from .cube import (
    AXES,
    F,
    CubeError,
    CubiePosition,
    CubeState,
    Move,
    _geometry,
    cubie_stickers,
    move_permutation,
    sticker_index,
)

CORNER = "corner"
CROSS = "cross"
FACE_CENTER = "face_center"
WING = "wing"
CENTER = "center"

# Kinds whose cubies can sit in a slot in more than one orientation.
ORIENTED = (CORNER, CROSS)


@dataclass(frozen=True, order=True)
class ClusterId:
    kind: str
    i: int = 0
    j: int = 0

    def __str__(self) -> str:
        if self.kind == WING:
            return f"wing({self.i})"
        if self.kind == CENTER:
            return f"center({self.i},{self.j})"
        return self.kind


def wing(i: int) -> ClusterId:
    return ClusterId(WING, i)


def center(i: int, j: int) -> ClusterId:
    return ClusterId(CENTER, i, j)


def _middle(n: int) -> int | None:
    return (n - 1) // 2 if n % 2 else None


def wing_indices(n: int) -> list[int]:
    m = _middle(n)
    return [i for i in range(1, ceil(n / 2)) if i != m]


def center_indices(n: int) -> list[tuple[int, int]]:
    if n % 2 == 0:
        h = n // 2 - 1
        return [(r, c) for r in range(1, h + 1) for c in range(1, h + 1)]
    m = (n - 1) // 2
    return [(r, c) for r in range(1, m) for c in range(1, m + 1)]


def enumerate_clusters(n: int) -> list[ClusterId]:
    if n < 2:
        raise CubeError("n must be at least 2")
    out = [ClusterId(CORNER)]
    if n % 2:
        out += [ClusterId(CROSS), ClusterId(FACE_CENTER)]
    out += [wing(i) for i in wing_indices(n)]
    out += [center(r, c) for r, c in center_indices(n)]
    return out


def count_clusters(n: int) -> dict[str, int]:
    """Cluster counts, both as enumerated and in the classical grouping.

    ``edges`` counts every edge cluster (wings plus the odd-n cross), which is
    ``ceil(n/2) - 1``.  ``centers`` counts center clusters including the odd-n
    face center with mirror pairs ``(i, j)``/``(j, i)`` counted once, which is
    ``(n^2 - 1)/8`` for odd and ``(n^2 - 2n)/8`` for even n.
    ``center_orbits`` is the true number of center orbits.
    """
    ids = enumerate_clusters(n)
    wings = sum(c.kind == WING for c in ids)
    cross = sum(c.kind == CROSS for c in ids)
    face = sum(c.kind == FACE_CENTER for c in ids)
    pairs = {tuple(sorted((c.i, c.j))) for c in ids if c.kind == CENTER}
    return {
        "corners": 1,
        "wings": wings,
        "cross": cross,
        "edges": wings + cross,
        "face_centers": face,
        "centers": len(pairs) + face,
        "center_orbits": sum(c.kind == CENTER for c in ids) + face,
    }


def closed_form_counts(n: int) -> dict[str, int]:
    centers = (n * n - 1) // 8 if n % 2 else (n * n - 2 * n) // 8
    return {"edges": ceil(n / 2) - 1, "centers": centers}


def center_count_recurrence(n: int) -> int:
    """Center clusters built up two sizes at a time: ``c(n+2) = c(n) + ceil(n/2)``."""
    if n in (2, 3):
        return n - 2
    return center_count_recurrence(n - 2) + ceil((n - 2) / 2)


# --------------------------------------------------------------------------
# shapes and roles


def shape_of(cid: ClusterId, n: int) -> str:
    if cid.kind != CENTER:
        return cid.kind
    if cid.i == cid.j:
        return "center_diag"
    if cid.j == _middle(n):
        return "center_plus"
    return "center_oblique"


def roles(cid: ClusterId, n: int) -> dict[str, int]:
    """Slice index of every role letter used by the cluster's generators."""
    last = n - 1
    r = {"0": 0, "N": last}
    if cid.kind in (CROSS, FACE_CENTER):
        r["m"] = _middle(n)
    elif cid.kind == WING:
        r.update(a=cid.i, A=last - cid.i)
    elif cid.kind == CENTER:
        r.update(a=cid.i, A=last - cid.i)
        if cid.j == _middle(n):
            r["m"] = cid.j
        elif cid.j != cid.i:
            r.update(b=cid.j, B=last - cid.j)
    if cid.kind == FACE_CENTER:
        del r["0"], r["N"]
    return r


RoleMove = tuple  # (axis, role, clockwise)


def role_generators(cid: ClusterId, n: int) -> list[RoleMove]:
    return [(axis, role, cw) for role in roles(cid, n) for axis in AXES for cw in (True, False)]


def instantiate(role_moves, role_map: dict[str, int]) -> tuple[Move, ...]:
    return tuple(Move(axis, role_map[role], cw) for axis, role, cw in role_moves)


def _representative(cid: ClusterId, n: int) -> tuple[int, ...]:
    last = n - 1
    if cid.kind == CORNER:
        return cubie_stickers(n, (last, 0, 0))
    if cid.kind == CROSS:
        return cubie_stickers(n, (_middle(n), 0, 0))
    if cid.kind == WING:
        return cubie_stickers(n, (cid.i, 0, 0))
    if cid.kind == FACE_CENTER:
        m = _middle(n)
        return (sticker_index(n, F, m, m),)
    return (sticker_index(n, F, cid.i, cid.j),)


@lru_cache(maxsize=None)
def _destination(n: int, move: Move) -> np.ndarray:
    src = move_permutation(n, move)
    dest = np.empty_like(src)
    dest[src] = np.arange(len(src))
    return dest


@dataclass(frozen=True)
class ClusterGeometry:
    """Slots of one cluster on one cube size."""

    id: ClusterId
    n: int
    shape: str
    roles: dict
    slots: tuple[tuple[int, ...], ...]
    need: tuple[tuple[int, ...], ...]

    @property
    def positions(self) -> np.ndarray:
        return np.array([s for slot in self.slots for s in slot], dtype=np.int64)

    def contents(self, state: CubeState) -> tuple[tuple[int, ...], ...]:
        flat = state.flat
        return tuple(tuple(int(flat[s]) for s in slot) for slot in self.slots)

    def cubies(self) -> tuple[CubiePosition, ...]:
        coords = _geometry(self.n)[1]
        return tuple(CubiePosition(*coords[slot[0]].tolist()) for slot in self.slots)


@lru_cache(maxsize=None)
def cluster_geometry(n: int, cid: ClusterId) -> ClusterGeometry:
    if cid not in set(enumerate_clusters(n)):
        raise CubeError(f"{cid} is not a cluster of the {n}-cube")
    role_map = roles(cid, n)
    gens = instantiate(role_generators(cid, n), role_map)
    start = _representative(cid, n)
    slots = [start]
    seen = {frozenset(start)}
    head = 0
    while head < len(slots):
        slot = slots[head]
        head += 1
        for move in gens:
            dest = _destination(n, move)
            image = tuple(int(dest[s]) for s in slot)
            key = frozenset(image)
            if key not in seen:
                seen.add(key)
                slots.append(image)
    face_of = lambda s: s // (n * n)  # noqa: E731
    need = tuple(tuple(face_of(s) for s in slot) for slot in slots)
    return ClusterGeometry(cid, n, shape_of(cid, n), role_map, tuple(slots), need)


@lru_cache(maxsize=None)
def _sticker_owner(n: int) -> dict[int, ClusterId]:
    owner = {}
    for cid in enumerate_clusters(n):
        for slot in cluster_geometry(n, cid).slots:
            for s in slot:
                owner[s] = cid
    return owner


def cluster_of(position: CubiePosition, n: int) -> ClusterId:
    stickers = position.stickers(n)
    if not stickers:
        raise CubeError(f"{position} is an internal cubie")
    return _sticker_owner(n)[stickers[0]]


# --------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class ClusterConfiguration:
    id: ClusterId
    n: int
    contents: tuple[tuple[int, ...], ...]

    @property
    def slots(self) -> tuple[CubiePosition, ...]:
        return cluster_geometry(self.n, self.id).cubies()

    @property
    def need(self) -> tuple[tuple[int, ...], ...]:
        return cluster_geometry(self.n, self.id).need

    def is_solved(self) -> bool:
        return self.contents == self.need

    def differing_slots(self, other: "ClusterConfiguration") -> list[int]:
        return [i for i, (a, b) in enumerate(zip(self.contents, other.contents)) if a != b]


def extract_configuration(state: CubeState, cid: ClusterId) -> ClusterConfiguration:
    geo = cluster_geometry(state.n, cid)
    return ClusterConfiguration(cid, state.n, geo.contents(state))


def is_cluster_solved(state: CubeState, cid: ClusterId) -> bool:
    geo = cluster_geometry(state.n, cid)
    return geo.contents(state) == geo.need


def _identity_key(kind: str, colors: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(colors)) if kind in ORIENTED else colors


def canonical_labeling(config: ClusterConfiguration) -> list[int]:
    """Home slot of the cubie in every slot.

    Cubies showing the same colours are matched to their possible homes in
    increasing slot order.
    """
    kind = config.id.kind
    homes: dict[tuple, list[int]] = {}
    for slot, colors in enumerate(config.need):
        homes.setdefault(_identity_key(kind, colors), []).append(slot)
    current = Counter(_identity_key(kind, c) for c in config.contents)
    if current != Counter({k: len(v) for k, v in homes.items()}):
        raise CubeError(f"{config.id}: colours are not a reachable arrangement")
    taken = {k: 0 for k in homes}
    label = []
    for colors in config.contents:
        key = _identity_key(kind, colors)
        label.append(homes[key][taken[key]])
        taken[key] += 1
    return label


def permutation_sign(perm: list[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def cluster_parity(config: ClusterConfiguration) -> str:
    return "even" if permutation_sign(canonical_labeling(config)) == 1 else "odd"

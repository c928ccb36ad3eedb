"""Ideal triangulations of punctured surfaces as half-edge gluings.

Half-edge ``h`` lives in triangle ``h // 3``; the three half-edges of a
triangle are listed counterclockwise, so ``next(h) = 3*(h//3) + (h+1) % 3``.
``pairing[h]`` is the half-edge on the other side of the same geodesic edge.

A *corner* is named by the half-edge leaving it: the corner of ``h`` sits at
the tail of ``h``, between ``prev(h)`` and ``h``.  Rotating around a vertex
maps the corner of ``h`` to the corner of ``next(pairing[h])``; the orbits of
this rotation are the cusps.

Edge ids and cusp ids are stored per half-edge and carried along by flips,
so they stay stable across a whole flip sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    BadCuspIndex,
    FixedHalfEdge,
    NoCusp,
    NonNegativeEulerCharacteristic,
    PairingNotInvolution,
    SelfFoldedEdge,
    SurfaceError,
)


def next_he(h: int) -> int:
    return 3 * (h // 3) + (h + 1) % 3


def prev_he(h: int) -> int:
    return 3 * (h // 3) + (h + 2) % 3


class Corner(NamedTuple):
    """Corner ``(triangle, a, b)``: sides ``a`` then ``b`` counterclockwise.

    ``half_edge`` is the half-edge leaving the corner (its side is ``b``).
    """

    triangle: int
    a: int
    b: int
    half_edge: int


@dataclass(frozen=True)
class CombinatorialSurface:
    pairing: tuple[int, ...]
    edge_of: tuple[int, ...]
    cusp_of: tuple[int, ...]
    n_edges: int
    n_cusps: int

    @property
    def n_triangles(self) -> int:
        return len(self.pairing) // 3

    @property
    def n_half_edges(self) -> int:
        return len(self.pairing)

    @property
    def euler_characteristic(self) -> int:
        """Euler characteristic of the closed surface, F - E + n."""
        return self.n_triangles - self.n_edges + self.n_cusps

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def half_edges(self, e: int) -> tuple[int, int]:
        """The two half-edges of edge ``e``, smaller id first."""
        h = self._edge_rep[e]
        return h, self.pairing[h]

    def head_cusp(self, h: int) -> int:
        return self.cusp_of[next_he(h)]

    def edge_cusps(self, e: int) -> tuple[int, int]:
        h, _ = self.half_edges(e)
        return self.cusp_of[h], self.head_cusp(h)

    def is_self_folded(self, e: int) -> bool:
        h, k = self.half_edges(e)
        return h // 3 == k // 3

    def triangle_edges(self, t: int) -> tuple[int, int, int]:
        return tuple(self.edge_of[3 * t + k] for k in range(3))

    def corner(self, h: int) -> Corner:
        return Corner(h // 3, self.edge_of[prev_he(h)], self.edge_of[h], h)

    def corner_list(self, cusp: int) -> list[Corner]:
        """Corners around ``cusp`` in rotation order."""
        if not 0 <= cusp < self.n_cusps:
            raise BadCuspIndex(f"cusp {cusp} out of range 0..{self.n_cusps - 1}")
        start = min(h for h, c in enumerate(self.cusp_of) if c == cusp)
        out = [self.corner(start)]
        h = next_he(self.pairing[start])
        while h != start:
            out.append(self.corner(h))
            h = next_he(self.pairing[h])
        return out

    @property
    def _edge_rep(self) -> tuple[int, ...]:
        # cached lazily; frozen dataclass so go through object.__setattr__
        try:
            return self.__dict__["_rep"]
        except KeyError:
            rep = [-1] * self.n_edges
            for h, e in enumerate(self.edge_of):
                if rep[e] < 0:
                    rep[e] = h
            object.__setattr__(self, "_rep", tuple(rep))
            return self.__dict__["_rep"]

    def relabeled(self, perm: Sequence[int]) -> CombinatorialSurface:
        """Move half-edge ``h`` to position ``perm[h]``.

        ``perm`` must map triangles to triangles preserving cyclic order;
        this is checked by revalidating the result.
        """
        H = self.n_half_edges
        pairing = [0] * H
        edge_of = [0] * H
        cusp_of = [0] * H
        for h in range(H):
            pairing[perm[h]] = perm[self.pairing[h]]
            edge_of[perm[h]] = self.edge_of[h]
            cusp_of[perm[h]] = self.cusp_of[h]
        out = CombinatorialSurface(tuple(pairing), tuple(edge_of), tuple(cusp_of),
                                   self.n_edges, self.n_cusps)
        _check_cusps(out)
        return out

    def to_pairs(self) -> list[tuple[int, int]]:
        """Pairing list ordered by edge id (the file-format representation)."""
        return [self.half_edges(e) for e in range(self.n_edges)]


def _vertex_orbits(pairing: Sequence[int]) -> list[int]:
    H = len(pairing)
    label = [-1] * H
    n = 0
    for h0 in range(H):
        if label[h0] >= 0:
            continue
        h = h0
        while label[h] < 0:
            label[h] = n
            h = next_he(pairing[h])
        n += 1
    return label


def _check_cusps(s: CombinatorialSurface) -> None:
    orbits = _vertex_orbits(s.pairing)
    seen: dict[int, int] = {}
    for h, o in enumerate(orbits):
        if seen.setdefault(o, s.cusp_of[h]) != s.cusp_of[h]:
            raise SurfaceError("cusp labels inconsistent with vertex rotation")
    if len(set(seen.values())) != len(seen):
        raise SurfaceError("two vertex orbits share a cusp label")


def _connected(pairing: Sequence[int]) -> bool:
    F = len(pairing) // 3
    seen = {0}
    stack = [0]
    while stack:
        t = stack.pop()
        for k in range(3):
            u = pairing[3 * t + k] // 3
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == F


def build_surface(n_triangles: int, pairs: Iterable[Sequence[int]]) -> CombinatorialSurface:
    """Glue ``n_triangles`` ideal triangles along ``pairs``.

    Parameters
    ----------
    n_triangles : int
        Number of triangles F; half-edges are ``0 .. 3F-1``.
    pairs : iterable of (int, int)
        One pair of half-edges per edge.  The position in this list becomes
        the edge id.

    Returns
    -------
    CombinatorialSurface
        Cusps are numbered by the smallest half-edge leaving them.
    """
    H = 3 * n_triangles
    pairs = [tuple(int(x) for x in p) for p in pairs]
    pairing = [-1] * H
    for p in pairs:
        if len(p) != 2:
            raise PairingNotInvolution(f"pair {p} does not have two entries")
        a, b = p
        if not (0 <= a < H and 0 <= b < H):
            raise PairingNotInvolution(f"pair {p} out of range 0..{H - 1}")
        if a == b:
            raise FixedHalfEdge(f"half-edge {a} is paired with itself")
        if pairing[a] >= 0 or pairing[b] >= 0:
            raise PairingNotInvolution(f"pair {p} reuses a half-edge")
        pairing[a], pairing[b] = b, a
    missing = [h for h in range(H) if pairing[h] < 0]
    if missing:
        raise PairingNotInvolution(f"half-edges {missing} are unpaired")
    if n_triangles == 0:
        raise NonNegativeEulerCharacteristic("no triangles")
    if not _connected(pairing):
        raise SurfaceError("gluing is disconnected")

    edge_of = [0] * H
    for e, (a, b) in enumerate(pairs):
        edge_of[a] = edge_of[b] = e

    orbits = _vertex_orbits(pairing)
    n_cusps = max(orbits) + 1
    if n_cusps < 1:
        raise NoCusp("surface has no cusp")
    E = len(pairs)
    if n_triangles - E >= 0:
        # F - E = 2 - 2g - n, always -F/2 for a closed gluing
        raise NonNegativeEulerCharacteristic("2 - 2g - n must be negative")
    return CombinatorialSurface(tuple(pairing), tuple(edge_of), tuple(orbits), E, n_cusps)


class FlipMap(NamedTuple):
    """Where the half-edges went in a flip (``old -> new``)."""

    moved: dict[int, int]

    def __call__(self, h: int) -> int:
        return self.moved.get(h, h)


def flip_map(s: CombinatorialSurface, e: int) -> tuple[FlipMap, tuple[int, int, int, int]]:
    """Half-edge relocation of a flip of ``e`` and the quad ``(n, p, n', p')``."""
    if s.is_self_folded(e):
        raise SelfFoldedEdge(f"edge {e} is self-folded and cannot be flipped")
    h, k = s.half_edges(e)
    t, i = divmod(h, 3)
    u, j = divmod(k, 3)
    n, p = 3 * t + (i + 1) % 3, 3 * t + (i + 2) % 3
    n2, p2 = 3 * u + (j + 1) % 3, 3 * u + (j + 2) % 3
    moved = {
        h: h,
        k: k,
        p2: 3 * t + (i + 1) % 3,
        n: 3 * t + (i + 2) % 3,
        p: 3 * u + (j + 1) % 3,
        n2: 3 * u + (j + 2) % 3,
    }
    return FlipMap(moved), (n, p, n2, p2)


def combinatorial_flip(s: CombinatorialSurface, e: int) -> CombinatorialSurface:
    """Replace edge ``e`` by the other diagonal of its quadrilateral.

    The edge keeps its id and its two half-edge slots.  With ``h`` in
    triangle ``t`` running A->B and the quad A, D, B, C counterclockwise,
    triangle ``t`` becomes (C->D, D->B, B->C) and the partner triangle
    becomes (D->C, C->A, A->D).  Flipping the same edge twice gives back the
    input with the two triangles exchanged.
    """
    m, (n, p, n2, p2) = flip_map(s, e)
    h, k = s.half_edges(e)
    H = s.n_half_edges
    pairing = list(s.pairing)
    edge_of = list(s.edge_of)
    cusp_of = list(s.cusp_of)
    for x in (n, p, n2, p2):
        pairing[m(x)] = m(s.pairing[x])
        pairing[m(s.pairing[x])] = m(x)
        edge_of[m(x)] = s.edge_of[x]
        cusp_of[m(x)] = s.cusp_of[x]
    pairing[h], pairing[k] = k, h
    cusp_of[h] = s.cusp_of[p]
    cusp_of[k] = s.cusp_of[p2]
    assert len(pairing) == H
    return CombinatorialSurface(tuple(pairing), tuple(edge_of), tuple(cusp_of),
                                s.n_edges, s.n_cusps)


def corner_list(s: CombinatorialSurface, cusp: int) -> list[Corner]:
    return s.corner_list(cusp)

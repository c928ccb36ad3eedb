"""Classical secondary fans and polytopes of point configurations.

This is an exact oracle for the shared cone code: everything is rational,
subdivisions come from a brute-force upper hull, and triangulations of
planar configurations are enumerated exhaustively.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .cones import SecondaryCone, dd_facets, double_description, dot, primitive, rank
from .errors import NotATriangulation, TooManyPoints

MAX_POINTS = 10

Simplex = tuple[int, ...]
Triangulation = tuple[Simplex, ...]


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("empty configuration")
        d = len(self.points[0])
        if any(len(p) != d for p in self.points):
            raise ValueError("points have different dimensions")
        if rank([(1,) + p for p in self.points]) != d + 1:
            raise ValueError("points lie in a proper affine subspace")

    @property
    def d(self) -> int:
        return len(self.points[0])

    @property
    def n(self) -> int:
        return len(self.points)


def configuration(points: Sequence[Sequence]) -> PointConfiguration:
    return PointConfiguration(tuple(tuple(Fraction(x) for x in p) for p in points))


@dataclass(frozen=True)
class EuclidSubdivision:
    """Cells as sets of marked point indices."""

    cells: tuple[frozenset[int], ...]
    is_triangulation: bool


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    k = len(m)
    det = Fraction(1)
    for c in range(k):
        piv = next((r for r in range(c, k) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, k):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def _solve(m: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    k = len(m)
    a = [row[:] + [b] for row, b in zip(m, rhs)]
    for c in range(k):
        piv = next(r for r in range(c, k) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        for r in range(k):
            if r != c and a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][k] / a[r][r] for r in range(k)]


def signed_volume(A: PointConfiguration, s: Sequence[int]) -> Fraction:
    """Oriented volume det([a_1 .. a_{d+1}; 1 .. 1]) / d!."""
    d = A.d
    m = [[A.points[i][r] for i in s] for r in range(d)] + [[Fraction(1)] * (d + 1)]
    return _det(m) / math.factorial(d)


def volume(A: PointConfiguration, s: Sequence[int]) -> Fraction:
    return abs(signed_volume(A, s))


def barycentric(A: PointConfiguration, s: Sequence[int], x: Sequence[Fraction]) -> list[Fraction]:
    """Affine coordinates of ``x`` with respect to the simplex ``s``."""
    d = A.d
    m = [[A.points[i][r] for i in s] for r in range(d)] + [[Fraction(1)] * (d + 1)]
    return _solve(m, [Fraction(v) for v in x] + [Fraction(1)])


def regular_subdivision(A: PointConfiguration, w: Sequence) -> EuclidSubdivision:
    """Cells of the upper hull of the lifted points ``(a, w_a)``.

    Each cell is the set of points lying on its upper facet, so points below
    the hull are left out.
    """
    w = [Fraction(x) for x in w]
    if len(w) != A.n:
        raise ValueError(f"expected {A.n} heights, got {len(w)}")
    d = A.d
    cells = set()
    for s in combinations(range(A.n), d + 1):
        if signed_volume(A, s) == 0:
            continue
        # affine h with h(a_i) = w_i on s
        m = [[Fraction(1)] + list(A.points[i]) for i in s]
        h = _solve(m, [w[i] for i in s])
        vals = [h[0] + dot(h[1:], p) for p in A.points]
        if all(v >= x for v, x in zip(vals, w)):
            cells.add(frozenset(i for i in range(A.n) if vals[i] == w[i]))
    cells = tuple(sorted(cells, key=sorted))
    return EuclidSubdivision(cells, all(len(c) == d + 1 for c in cells))


def refines(T: Triangulation, S: EuclidSubdivision) -> bool:
    return all(any(set(s) <= c for c in S.cells) for s in T)


def _check_triangulation(A: PointConfiguration, T: Triangulation) -> None:
    d = A.d
    if not T:
        raise NotATriangulation("no simplices")
    for s in T:
        if len(s) != d + 1 or len(set(s)) != d + 1 or not all(0 <= i < A.n for i in s):
            raise NotATriangulation(f"{s} is not a {d}-simplex on the configuration")
        if signed_volume(A, s) == 0:
            raise NotATriangulation(f"simplex {s} is degenerate")
    total = sum((volume(A, s) for s in T), Fraction(0))
    if total != hull_volume(A):
        raise NotATriangulation("simplices do not cover the convex hull exactly once")
    if d == 2:
        for s, t in combinations(T, 2):
            if not _interior_disjoint(A, s, t):
                raise NotATriangulation(f"simplices {s} and {t} overlap")


def hull_volume(A: PointConfiguration) -> Fraction:
    """Volume of conv(A), summed over a regular triangulation."""
    rng = random.Random(0)
    while True:
        S = regular_subdivision(A, [rng.randint(0, 10**6) for _ in range(A.n)])
        if S.is_triangulation:
            return sum((volume(A, tuple(sorted(c))) for c in S.cells), Fraction(0))


def _interior_rows(A: PointConfiguration, T: Triangulation) -> list[tuple[int, ...]]:
    d = A.d
    rows = []
    by_face: dict[frozenset[int], list[Simplex]] = {}
    for s in T:
        for f in combinations(s, d):
            by_face.setdefault(frozenset(f), []).append(s)
    for f, ss in sorted(by_face.items(), key=lambda kv: sorted(kv[0])):
        if len(ss) != 2:
            continue
        s1, s2 = ss
        (a_new,) = set(s2) - f
        beta = barycentric(A, s1, A.points[a_new])
        row = [Fraction(0)] * A.n
        for b, i in zip(beta, s1):
            row[i] += b
        row[a_new] -= 1
        rows.append(primitive(row))
    used = set().union(*map(set, T))
    for a in range(A.n):
        if a in used:
            continue
        for s in T:
            beta = barycentric(A, s, A.points[a])
            if all(b >= 0 for b in beta):
                row = [Fraction(0)] * A.n
                for b, i in zip(beta, s):
                    row[i] += b
                row[a] -= 1
                rows.append(primitive(row))
                break
    return rows


def determinant_row(A: PointConfiguration, s1: Simplex, a_new: int) -> tuple[int, ...]:
    """Coefficients of w -> det([a_1 .. a_{d+2}; 1 .. 1; w ...]) with s1 positive."""
    s1 = tuple(s1)
    if signed_volume(A, s1) < 0:
        s1 = (s1[1], s1[0]) + s1[2:]
    cols = list(s1) + [a_new]
    d = A.d
    base = [[A.points[i][r] for i in cols] for r in range(d)] + [[Fraction(1)] * len(cols)]
    row = []
    for k in range(A.n):
        m = base + [[Fraction(int(i == k)) for i in cols]]
        row.append(_det(m))
    return tuple(int(x) if x.denominator == 1 else x for x in row)


def euclid_secondary_cone(A: PointConfiguration, T: Triangulation) -> SecondaryCone:
    """Cone of heights whose interpolation over ``T`` is concave.

    One row per interior facet plus one per point not used by ``T``; the
    lineality space is the space of affine functions.
    """
    T = tuple(tuple(sorted(s)) for s in T)
    _check_triangulation(A, T)
    rows = _interior_rows(A, T)
    lin, rays = double_description(rows, (), A.n)
    return SecondaryCone(tuple(rows), (), tuple(rays), rank(list(rays) + list(lin)), None, tuple(lin))


def euclid_gkz_vector(A: PointConfiguration, T: Triangulation) -> tuple[Fraction, ...]:
    T = tuple(tuple(sorted(s)) for s in T)
    _check_triangulation(A, T)
    ell = [Fraction(0)] * A.n
    for s in T:
        v = volume(A, s)
        for i in s:
            ell[i] += v
    return tuple(ell)


def _orient(p, q, r) -> Fraction:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _interior_disjoint(A: PointConfiguration, s: Simplex, t: Simplex) -> bool:
    P = A.points
    for tri, other in ((s, t), (t, s)):
        a, b, c = tri
        if _orient(P[a], P[b], P[c]) < 0:
            b, c = c, b
        for u, v in ((a, b), (b, c), (c, a)):
            if all(_orient(P[u], P[v], P[x]) <= 0 for x in other):
                return True
    return False


def _hull_cycle(A: PointConfiguration) -> list[int]:
    """Hull vertices counterclockwise (monotone chain)."""
    P = A.points
    idx = sorted(range(A.n), key=lambda i: P[i])

    def half(seq):
        out = []
        for i in seq:
            while len(out) >= 2 and _orient(P[out[-2]], P[out[-1]], P[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower, upper = half(idx), half(idx[::-1])
    return lower[:-1] + upper[:-1]


def triangulations(A: PointConfiguration) -> list[Triangulation]:
    """All triangulations of a planar configuration in general position.

    Points may be left unused.  Each triangulation is built once by always
    filling the smallest open edge of the current front.
    """
    if A.n > MAX_POINTS:
        raise TooManyPoints(f"{A.n} points; brute force is limited to {MAX_POINTS}")
    if A.d != 2:
        raise NotImplementedError("triangulation enumeration is planar only")
    P = A.points
    for a, b, c in combinations(range(A.n), 3):
        if _orient(P[a], P[b], P[c]) == 0:
            raise ValueError(f"points {a}, {b}, {c} are collinear")
    hull = _hull_cycle(A)
    hull_edges = {(hull[k], hull[(k + 1) % len(hull)]) for k in range(len(hull))}
    out: list[Triangulation] = []

    def rec(chosen: list[Simplex], open_: frozenset):
        if not open_:
            out.append(tuple(sorted(tuple(sorted(s)) for s in chosen)))
            return
        u, v = min(open_)
        for x in range(A.n):
            if x in (u, v) or _orient(P[u], P[v], P[x]) <= 0:
                continue
            tri = (u, v, x)
            if not all(_interior_disjoint(A, tri, s) for s in chosen):
                continue
            nxt = set(open_)
            nxt.discard((u, v))
            for e in ((v, x), (x, u)):
                if e in nxt:
                    nxt.discard(e)
                elif e not in hull_edges:
                    nxt.add((e[1], e[0]))
            rec(chosen + [tri], frozenset(nxt))

    rec([], frozenset(hull_edges))
    return sorted(set(out))


@dataclass
class EuclidPolytope:
    vertices: list[tuple[Fraction, ...]]
    f_vector: tuple[int, ...]
    dim: int
    triangulations: list[Triangulation]
    gkz: list[tuple[Fraction, ...]]

    def to_json(self) -> dict:
        return {
            "schema": "hypfan/1",
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "f_vector": list(self.f_vector),
            "dim": self.dim,
            "triangulations": [[list(s) for s in T] for T in self.triangulations],
        }


def polytope_faces(points: Sequence[Sequence[Fraction]]) -> tuple[int, list[frozenset[int]]]:
    """Dimension and proper faces (as point-index sets) of conv(points)."""
    den = math.lcm(*[x.denominator for p in points for x in map(Fraction, p)])
    homog = [tuple([den] + [int(Fraction(x) * den) for x in p]) for p in points]
    dim = rank(homog) - 1
    facets, _ = dd_facets(homog)
    faces: set[frozenset[int]] = set()
    level = {frozenset(i for i, h in enumerate(homog) if dot(f, h) == 0) for f in facets}
    while level:
        faces |= level
        nxt = set()
        for a, b in combinations(level, 2):
            c = a & b
            if c and c not in faces:
                nxt.add(c)
        level = nxt
    return dim, sorted(faces, key=sorted)


def euclid_secondary_polytope(A: PointConfiguration) -> EuclidPolytope:
    if A.n > MAX_POINTS:
        raise TooManyPoints(f"{A.n} points; brute force is limited to {MAX_POINTS}")
    Ts = triangulations(A)
    gkz = [euclid_gkz_vector(A, T) for T in Ts]
    distinct = sorted(set(gkz))
    if len(distinct) == 1:
        return EuclidPolytope(distinct, (), 0, Ts, gkz)
    dim, faces = polytope_faces(distinct)
    homog = [(1,) + v for v in distinct]
    counts = [0] * max(dim, 0)
    vertices = []
    for f in faces:
        k = rank([homog[i] for i in f]) - 1
        if k < dim:
            counts[k] += 1
        if k == 0:
            vertices.extend(distinct[i] for i in f)
    return EuclidPolytope(sorted(set(vertices)), tuple(counts), dim, Ts, gkz)

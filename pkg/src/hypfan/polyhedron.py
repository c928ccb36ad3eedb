"""Secondary polyhedron: GKZ vectors of the maximal cones plus the negative orthant.

Vertices come from the fan, one per maximal cone.  The bounded edges are
read off the fan walls and cross-checked with a small linear program on the
vertex set alone, so a wrong GKZ vector shows up as a disagreement between
the two.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .cones import DecompositionLabel
from .develop import GkzVector, gkz_vector
from .errors import NormalFanMismatch
from .fan import SecondaryFan, is_boundary_facet
from .penner import DecoratedSurface, is_delaunay, ptolemy_flip


@dataclass
class SecondaryPolyhedron:
    n: int
    vertices: list[GkzVector]
    labels: list[DecompositionLabel]
    cone_vertex: list[int]
    bounded_edges: list[tuple[int, int]]
    tail_tol: float
    refinement_spread: float = 0.0
    hull_edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def points(self) -> np.ndarray:
        return np.array([v.phi for v in self.vertices])

    def support(self, w: Sequence[float]) -> float:
        """max over the polyhedron of <w, x> (finite for w >= 0)."""
        return float((self.points @ np.asarray(w, dtype=float)).max())

    def to_json(self) -> dict:
        return {
            "schema": "hypfan/1",
            "n": self.n,
            "vertices": [[float(x) for x in v.phi] for v in self.vertices],
            "labels": [
                {"weak_edges": sorted(l.weak_edges), "is_triangulation": l.is_triangulation}
                for l in self.labels
            ],
            "bounded_edges": [list(e) for e in self.bounded_edges],
            "tail_tol": float(self.tail_tol),
            "triangles_developed": [v.triangles_developed for v in self.vertices],
        }


def _second_refinement(label: DecompositionLabel) -> DecoratedSurface | None:
    """Another triangulation refining the label: flip one weak edge."""
    ref = label.reference
    for e in sorted(label.weak_edges):
        if not ref.surface.is_self_folded(e):
            return ptolemy_flip(ref, e)
    return None


def hull_edges(points: np.ndarray, tol: float) -> list[tuple[int, int]]:
    """Bounded edges of conv(points) - R^n_{>=0}, found by linear programming.

    The segment [a, b] is an edge when some w >= 0 with sum 1 is orthogonal
    to a - b and puts every other point below a by more than ``tol``.
    """
    m, n = points.shape
    out = []
    for a in range(m):
        for b in range(a + 1, m):
            others = [c for c in range(m) if c not in (a, b)]
            # variables (w_1..w_n, s); maximise s
            cost = np.zeros(n + 1)
            cost[-1] = -1.0
            A_ub = np.array([np.append(points[c] - points[a], 1.0) for c in others]).reshape(-1, n + 1)
            b_ub = np.zeros(len(others))
            A_eq = np.array([np.append(np.ones(n), 0.0), np.append(points[a] - points[b], 0.0)])
            b_eq = np.array([1.0, 0.0])
            bounds = [(0, None)] * n + [(None, 1.0)]
            res = linprog(cost, A_ub=A_ub if others else None, b_ub=b_ub if others else None,
                          A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
            if res.status == 0 and -res.fun > tol:
                out.append((a, b))
    return out


def secondary_polyhedron(d: DecoratedSurface, fan: SecondaryFan, tail_tol: float = 1e-5,
                         threads: int | None = None) -> SecondaryPolyhedron:
    """GKZ vectors of all maximal cones of ``fan``, deduplicated.

    For a cone whose label is not a triangulation a second refining
    triangulation is developed as well; the largest disagreement is kept in
    ``refinement_spread`` and must stay below ``10 * tail_tol``.
    """
    if not tail_tol > 0:
        raise ValueError("tail_tol must be positive")
    jobs: list[DecoratedSurface] = []
    for c in fan.maximal_cones:
        jobs.append(c.label.reference)
    extra = {}
    for i, c in enumerate(fan.maximal_cones):
        if not c.label.is_triangulation:
            alt = _second_refinement(c.label)
            if alt is not None:
                extra[i] = len(jobs)
                jobs.append(alt)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            gkz = list(ex.map(lambda s: gkz_vector(s, tail_tol), jobs))
    else:
        gkz = [gkz_vector(s, tail_tol) for s in jobs]

    spread = 0.0
    for i, k in extra.items():
        spread = max(spread, float(np.abs(gkz[i].phi - gkz[k].phi).max()))
    if spread > 10 * tail_tol:
        raise NormalFanMismatch(
            f"two refinements of one decomposition differ by {spread:.3g} > {10 * tail_tol:.3g}")

    merge = 10 * tail_tol
    vertices: list[GkzVector] = []
    labels: list[DecompositionLabel] = []
    cone_vertex: list[int] = []
    for i, c in enumerate(fan.maximal_cones):
        g = gkz[i]
        j = next((j for j, v in enumerate(vertices) if np.abs(v.phi - g.phi).max() <= merge), None)
        if j is None:
            j = len(vertices)
            vertices.append(g)
            labels.append(c.label)
        cone_vertex.append(j)

    edges = set()
    for (i, f), j in fan.adjacency.items():
        if is_boundary_facet(fan.maximal_cones[i], f):
            continue
        a, b = cone_vertex[i], cone_vertex[j]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    poly = SecondaryPolyhedron(fan.n, vertices, labels, cone_vertex, sorted(edges), tail_tol, spread)
    poly.hull_edges = hull_edges(poly.points, merge) if len(vertices) > 1 else []
    return poly


@dataclass
class NormalFanReport:
    worst_margin: float
    worst_wall_gap: float
    samples: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "worst_margin": self.worst_margin,
            "worst_wall_gap": self.worst_wall_gap,
            "samples": self.samples,
            "status": "PASS" if self.passed else "FAIL",
        }


def _sample_points(rays, k: int, rng: random.Random) -> list[list[Fraction]]:
    """Rays, their sum and ``k`` random positive combinations."""
    pts = [list(map(Fraction, r)) for r in rays]
    pts.append([Fraction(sum(c)) for c in zip(*rays)])
    for _ in range(k):
        coef = [Fraction(rng.randint(1, 1000)) for _ in rays]
        pts.append([sum(a * r[i] for a, r in zip(coef, rays)) for i in range(len(rays[0]))])
    return pts


def check_normal_fan(p: SecondaryPolyhedron, fan: SecondaryFan, tol: float = 1e-3,
                     samples: int = 20, rng_seed: int = 0, raise_on_fail: bool = True
                     ) -> NormalFanReport:
    """Every maximal cone must be the normal cone of its vertex.

    For sampled unit weights ``w`` in the closed cone ``C`` with vertex
    ``phi``, ``<w, phi>`` must be within ``tol`` of the maximum over all
    vertices.  At the centre of each wall both incident vertices must be.
    """
    if p.n != fan.n:
        raise ValueError("polyhedron and fan live in different dimensions")
    rng = random.Random(rng_seed)
    P = p.points
    worst = math.inf
    count = 0
    for i, c in enumerate(fan.maximal_cones):
        phi = P[p.cone_vertex[i]]
        for w in _sample_points(c.rays, samples, rng):
            w = np.array([float(x) for x in w])
            w /= np.linalg.norm(w)
            worst = min(worst, float(w @ phi - (P @ w).max()))
            count += 1
    wall_gap = 0.0
    for (i, f), j in fan.adjacency.items():
        wall = fan.maximal_cones[i].facet_rays(f)
        w = np.array([float(sum(col)) for col in zip(*wall)])
        w /= np.linalg.norm(w)
        top = (P @ w).max()
        for k in (i, j):
            wall_gap = max(wall_gap, float(top - P[p.cone_vertex[k]] @ w))
    passed = worst >= -tol and wall_gap <= tol
    report = NormalFanReport(worst, wall_gap, count, passed)
    if raise_on_fail and not passed:
        raise NormalFanMismatch(f"worst margin {worst:.3g}, wall gap {wall_gap:.3g} (tol {tol})")
    return report


@dataclass
class LiftingReport:
    weights: list[tuple[Fraction, ...]]
    argmax: list[int]
    argmax_is_delaunay: list[bool]
    delaunay_gap: float
    values: np.ndarray

    @property
    def passed(self) -> bool:
        return all(self.argmax_is_delaunay)


def lifting_check(d: DecoratedSurface, fan: SecondaryFan, T_list: Sequence[DecoratedSurface],
                  tail_tol: float = 1e-5, samples: int = 20, rng_seed: int = 0,
                  weights: Sequence[Sequence] | None = None, tol: float | None = None) -> LiftingReport:
    """Compare dome volumes of the triangulations in ``T_list``.

    For each sampled weight the largest ``<w, phi_T>`` should belong to a
    triangulation that is Delaunay for ``w`` (up to ``tol``, default
    ``10 * tail_tol``); ``delaunay_gap`` is the largest shortfall of any
    Delaunay triangulation from the maximum.
    """
    tol = 10 * tail_tol if tol is None else tol
    rng = random.Random(rng_seed)
    if weights is None:
        weights = [tuple(Fraction(rng.randint(1, 1000), rng.randint(1, 1000)) for _ in range(fan.n))
                   for _ in range(samples)]
    weights = [tuple(Fraction(x) for x in w) for w in weights]
    phis = np.array([gkz_vector(T, tail_tol).phi for T in T_list])
    W = np.array([[float(x) for x in w] for w in weights])
    vals = W @ phis.T
    argmax, ok = [], []
    gap = 0.0
    for r, w in enumerate(weights):
        top = vals[r].max()
        dl = [k for k, T in enumerate(T_list) if is_delaunay(T, w)]
        k = int(vals[r].argmax())
        argmax.append(k)
        ok.append(k in dl or any(vals[r, j] >= top - tol * np.abs(W[r]).sum() for j in dl))
        for j in dl:
            gap = max(gap, float(top - vals[r, j]))
    return LiftingReport(weights, argmax, ok, gap, vals)

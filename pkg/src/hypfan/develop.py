"""Developing map into the Minkowski light cone and GKZ vectors.

Triangles of the universal cover are produced by crossing edges starting
from a base triangle.  The dual graph of the lifted triangulation is a
tree, so a triangle is reached exactly once if we never cross back through
the edge we came from; a child inherits the two shared lifts from its
parent, which keeps shared vertices bit-for-bit identical.

All lifts are taken at unit weights: the horocycle at every cusp has total
length one.  The height of a lifted vertex ``v`` after the projective map
to the hemisphere model is ``1 / v[2]``, and scales linearly with the
weight of its cusp.

Development runs largest-Klein-area-first in vectorised batches so that
thin triangles deep inside the cusps are only visited when they matter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateEdge, NonPositiveHeightComponent, NonPositiveLambda, TailBoundNotReached
from .penner import DecoratedSurface

BASE_CONVENTION = "tri0:inf,0,1/unit-weight"
DEFAULT_MAX_TRIANGLES = 10**7
J = np.diag([1.0, 1.0, -1.0])


def mink(u, v):
    """Minkowski product x1*y1 + x2*y2 - x3*y3 (broadcasts over leading axes)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2]


def lightcone_point(p, c: float = 1.0) -> np.ndarray:
    """Light-cone vector over the half-plane ideal point ``p`` (``None`` is infinity)."""
    if p is None or p == math.inf:
        return c * np.array([0.0, 1.0, 1.0])
    return c * np.array([2.0 * p, p * p - 1.0, p * p + 1.0])


def lift_base_triangle(lam_a: float, lam_b: float, lam_c: float) -> np.ndarray:
    """Lifts of an ideal triangle placed at infinity, 0 and 1.

    ``lam_a`` joins vertices 0 and 1, ``lam_b`` joins 1 and 2, ``lam_c``
    joins 2 and 0.  Returns a (3, 3) array with ``<v_i, v_j> = -2 lam^2``.
    """
    if min(lam_a, lam_b, lam_c) <= 0:
        raise NonPositiveLambda("lambda-lengths must be positive")
    c0 = lam_a * lam_c / lam_b
    c1 = lam_a * lam_b / lam_c
    c2 = lam_b * lam_c / lam_a
    return np.array([lightcone_point(None, c0), lightcone_point(0.0, c1), lightcone_point(1.0, c2)])


def extend_across_edge(vi, vk, vj, lam_i, lam_k) -> np.ndarray:
    """Fourth light-cone vector across the edge ``(vi, vk)`` away from ``vj``.

    Solves ``<w, vi> = -2 lam_i^2``, ``<w, vk> = -2 lam_k^2``, ``<w, w> = 0``
    and picks the root on the far side of the plane through ``vi, vk``.
    Works row-wise on stacked inputs.
    """
    vi = np.asarray(vi, dtype=float)
    vk = np.asarray(vk, dtype=float)
    vj = np.asarray(vj, dtype=float)
    lam_i = np.asarray(lam_i, dtype=float)
    lam_k = np.asarray(lam_k, dtype=float)
    m = mink(vi, vk)
    nrm = np.cross(vi, vk) @ J  # Minkowski normal of span(vi, vk)
    nn = mink(nrm, nrm)
    if np.any(m >= 0) or np.any(nn <= 0):
        raise DegenerateEdge("edge endpoints do not span a timelike plane")
    a = -2.0 * lam_k**2 / m
    b = -2.0 * lam_i**2 / m
    g = np.sqrt(-2.0 * a * b * m / nn)
    g = np.where(mink(vj, nrm) > 0, -g, g)
    return a[..., None] * vi + b[..., None] * vk + g[..., None] * nrm


def to_hemisphere(v) -> np.ndarray:
    """Projective map ``(x1, x2, x3) -> (x1, x2, 1) / x3``."""
    v = np.asarray(v, dtype=float)
    if np.any(v[..., 2] <= 0):
        raise NonPositiveHeightComponent("third coordinate must be positive")
    return np.stack([v[..., 0], v[..., 1], np.ones_like(v[..., 0])], axis=-1) / v[..., 2:3]


def height(v, weight: float = 1.0) -> float:
    """Height over the Klein disk of the horocycle point of weight ``weight``."""
    return weight / float(np.asarray(v)[2])


def unit_lambdas(d: DecoratedSurface) -> np.ndarray:
    """Lambda-lengths of the unit-weight decoration, per edge."""
    s = d.surface
    w = [float(x) for x in d.weights]
    out = np.empty(s.n_edges)
    for e in range(s.n_edges):
        i, j = s.edge_cusps(e)
        out[e] = float(d.lam[e]) * math.sqrt(w[i] * w[j])
    return out


def canonical_frame(d: DecoratedSurface) -> tuple[int, np.ndarray]:
    lb = unit_lambdas(d)
    eo = d.surface.edge_of
    return 0, lift_base_triangle(lb[eo[0]], lb[eo[1]], lb[eo[2]])


def frame_of(d: DecoratedSurface) -> tuple[int, np.ndarray]:
    return d.frame if d.frame is not None else canonical_frame(d)


def flip_frame(d: DecoratedSurface, e: int, out: DecoratedSurface) -> tuple[int, np.ndarray]:
    """Frame of ``out`` (``d`` flipped at ``e``) with the same placement."""
    b, L = frame_of(d)
    s = d.surface
    h, k = s.half_edges(e)
    t, i = divmod(h, 3)
    u, j = divmod(k, 3)
    if b not in (t, u):
        return b, L
    lb = unit_lambdas(d)
    eo = s.edge_of
    L2 = L.copy()
    if b == t:
        A, B, C = L[i], L[(i + 1) % 3], L[(i + 2) % 3]
        D = extend_across_edge(A, B, C, lb[eo[3 * u + (j + 1) % 3]], lb[eo[3 * u + (j + 2) % 3]])
        L2[i], L2[(i + 1) % 3], L2[(i + 2) % 3] = C, D, B
    else:
        B, A, D = L[j], L[(j + 1) % 3], L[(j + 2) % 3]
        C = extend_across_edge(A, B, D, lb[eo[3 * t + (i + 2) % 3]], lb[eo[3 * t + (i + 1) % 3]])
        L2[j], L2[(j + 1) % 3], L2[(j + 2) % 3] = D, C, A
    return b, L2


def klein_area(lifts: np.ndarray) -> np.ndarray:
    """Signed Euclidean area of the Klein-disk triangles of stacked (N, 3, 3) lifts."""
    k = lifts[..., :2] / lifts[..., 2:3]
    a = k[:, 1] - k[:, 0]
    b = k[:, 2] - k[:, 0]
    return 0.5 * (a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0])


class DevelopedTriangle(NamedTuple):
    lifts: np.ndarray
    klein_vertices: np.ndarray
    cusp_ids: tuple[int, int, int]
    euclid_area: float
    triangle: int


@dataclass
class Batch:
    """A group of developed triangles emitted together."""

    tri: np.ndarray
    lifts: np.ndarray
    area: np.ndarray
    cusps: np.ndarray

    @property
    def heights(self) -> np.ndarray:
        return 1.0 / self.lifts[..., 2]

    def triangles(self) -> Iterator[DevelopedTriangle]:
        for r in range(len(self.tri)):
            L = self.lifts[r]
            yield DevelopedTriangle(L, L[:, :2] / L[:, 2:3], tuple(int(c) for c in self.cusps[r]),
                                    float(self.area[r]), int(self.tri[r]))


@dataclass
class Development:
    """Stream of developed triangles; the summary fields fill in on exhaustion.

    ``tail_bound`` is ``h_max * (pi - covered_area) * tail_factor`` where
    ``h_max`` is twice the largest unit height seen.  With the default
    factor 3 it bounds the truncation error of each GKZ coordinate whenever
    the doubled height really dominates the undeveloped part.
    """

    d: DecoratedSurface
    tail_tol: float
    transform: np.ndarray | None = None
    max_triangles: int = DEFAULT_MAX_TRIANGLES
    tail_factor: float = 3.0
    covered_area: float = 0.0
    h_max: float = 0.0
    count: int = 0
    tail_bound: float = math.inf
    max_lift_error: float = 0.0
    finished: bool = field(default=False)

    def __iter__(self) -> Iterator[Batch]:
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")
        s = self.d.surface
        pairing = np.asarray(s.pairing)
        edge_of = np.asarray(s.edge_of)
        cusp_of = np.asarray(s.cusp_of).reshape(-1, 3)
        lb = unit_lambdas(self.d)
        lb2 = lb**2
        b, L0 = frame_of(self.d)
        if self.transform is not None:
            L0 = L0 @ np.asarray(self.transform, dtype=float).T
        tri = np.array([b])
        entry = np.array([-1])
        lifts = L0[None, :, :].copy()
        area = klein_area(lifts)
        thr = area[0]
        covered = 0.0
        h_max = 0.0
        count = 0
        kk = np.arange(3)
        while True:
            ready = area >= thr
            if not ready.any():
                bound = 2.0 * h_max * max(math.pi - covered, 0.0) * self.tail_factor
                self.tail_bound = bound
                if bound < self.tail_tol:
                    break
                thr /= 4.0
                continue
            t_r, e_r, L_r, a_r = tri[ready], entry[ready], lifts[ready], area[ready]
            keep = ~ready
            tri, entry, lifts, area = tri[keep], entry[keep], lifts[keep], area[keep]

            count += len(t_r)
            if count > self.max_triangles:
                self.count = count
                raise TailBoundNotReached(
                    f"developed {count} triangles without reaching tail bound {self.tail_tol}")
            covered += float(a_r.sum())
            h_max = max(h_max, float((1.0 / L_r[..., 2]).max()))
            yield Batch(t_r, L_r, a_r, cusp_of[t_r])

            # children across every side but the entry side
            par = np.repeat(np.arange(len(t_r)), 3)
            k = np.tile(kk, len(t_r))
            ok = k != e_r[par]
            par, k = par[ok], k[ok]
            P = L_r[par]
            vi = P[np.arange(len(k)), k]
            vk = P[np.arange(len(k)), (k + 1) % 3]
            vj = P[np.arange(len(k)), (k + 2) % 3]
            h2 = pairing[3 * t_r[par] + k]
            u, j = h2 // 3, h2 % 3
            li = lb[edge_of[3 * u + (j + 1) % 3]]
            lk = lb[edge_of[3 * u + (j + 2) % 3]]
            w = extend_across_edge(vi, vk, vj, li, lk)
            C = np.empty((len(k), 3, 3))
            rows = np.arange(len(k))
            C[rows, j] = vk
            C[rows, (j + 1) % 3] = vi
            C[rows, (j + 2) % 3] = w
            # drift monitor on the freshly computed vertex
            err_i = np.abs(mink(w, vi) + 2 * lb2[edge_of[3 * u + (j + 1) % 3]]) / (2 * lb2[edge_of[3 * u + (j + 1) % 3]])
            err_k = np.abs(mink(w, vk) + 2 * lb2[edge_of[3 * u + (j + 2) % 3]]) / (2 * lb2[edge_of[3 * u + (j + 2) % 3]])
            if len(k):
                self.max_lift_error = max(self.max_lift_error, float(err_i.max()), float(err_k.max()))
            tri = np.concatenate([tri, u])
            entry = np.concatenate([entry, j])
            lifts = np.concatenate([lifts, C])
            area = np.concatenate([area, klein_area(C)])
        self.covered_area = covered
        self.h_max = 2.0 * h_max
        self.count = count
        self.finished = True


def enumerate_developed(d: DecoratedSurface, tail_tol: float, transform=None,
                        max_triangles: int = DEFAULT_MAX_TRIANGLES) -> Development:
    return Development(d, tail_tol, transform, max_triangles)


@dataclass
class GkzVector:
    phi: np.ndarray
    tol: float
    triangles_developed: int
    covered_area: float
    base_convention: str = BASE_CONVENTION

    def to_json(self) -> dict:
        return {
            "phi": [float(x) for x in self.phi],
            "tail_tol": float(self.tol),
            "triangles_developed": int(self.triangles_developed),
            "base_convention": self.base_convention,
        }


def gkz_vector(d: DecoratedSurface, tail_tol: float = 1e-5, transform=None,
               max_triangles: int = DEFAULT_MAX_TRIANGLES, weights: Sequence | None = None):
    """GKZ vector of the triangulation of ``d``.

    Each developed triangle adds ``area * height(p)`` to the coordinate of the
    cusp of each of its vertices ``p``, so that the dome volume for weights
    ``w`` is ``<w, phi> / 3``.

    If ``weights`` is given (an (m, n) array) the dome volumes for those
    weight vectors are also summed triangle by triangle, independently of
    ``phi``, and returned as a second value.
    """
    n = d.n_cusps
    dev = Development(d, tail_tol, transform, max_triangles)
    phi = np.zeros(n)
    W = None if weights is None else np.atleast_2d(np.asarray(weights, dtype=float))
    vols = None if W is None else np.zeros(len(W))
    for batch in dev:
        contrib = batch.area[:, None] * batch.heights
        phi += np.bincount(batch.cusps.ravel(), weights=contrib.ravel(), minlength=n)
        if W is not None:
            # z_Delta(w) = area/3 * sum_p w[cusp(p)] * z_p(1)
            zw = (W[:, batch.cusps] * batch.heights[None]).sum(axis=2)
            vols += (zw * batch.area[None]).sum(axis=1) / 3.0
    g = GkzVector(phi, dev.tail_bound, dev.count, dev.covered_area)
    if W is None:
        return g
    return g, vols

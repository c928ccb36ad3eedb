"""Secondary fan by breadth-first search over maximal cones.

Starting from the cone of a generic weight, every facet that is not on the
boundary of the orthant is crossed by stepping a little past it and
recomputing the Delaunay triangulation there.  Cones are identified by their
sorted primitive rays.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .cones import (
    DecompositionLabel,
    SecondaryCone,
    Vec,
    cone_equal,
    cone_from_rows,
    dot,
    rank,
    secondary_cone,
)
from .errors import BoundaryFacet, EmptyCone, NonPositiveWeight, StepUnderflow, UnknownLabel
from .penner import DEFAULT_FLIP_BUDGET, DecoratedSurface, as_weights, make_delaunay

MIN_STEP = Fraction(1, 2**64)
MAX_RESAMPLES = 1000


class NonPositiveSeed(NonPositiveWeight):
    pass


@dataclass(frozen=True)
class FanFace:
    rays: tuple[Vec, ...]
    dim: int
    label: DecompositionLabel


@dataclass
class SecondaryFan:
    n: int
    maximal_cones: list[SecondaryCone]
    adjacency: dict[tuple[int, Vec], int]
    faces: list[FanFace] = field(default_factory=list)
    seed_weight: tuple[Fraction, ...] = ()

    @property
    def rays(self) -> list[Vec]:
        return [f.rays[0] for f in self.faces if f.dim == 1]

    @property
    def f_vector(self) -> tuple[int, ...]:
        return f_vector(self)

    def face_of(self, label: DecompositionLabel) -> FanFace:
        for f in self.faces:
            if f.label == label:
                return f
        raise UnknownLabel("label does not belong to a face of this fan")

    def cone_index(self, rays: Sequence[Vec]) -> int | None:
        key = tuple(rays)
        for i, c in enumerate(self.maximal_cones):
            if c.rays == key:
                return i
        return None

    def to_json(self) -> dict:
        rays = self.rays
        index = {r: i for i, r in enumerate(rays)}
        return {
            "schema": "hypfan/1",
            "n": self.n,
            "rays": [list(r) for r in rays],
            "maximal_cones": [
                {
                    "ray_indices": [index[r] for r in c.rays],
                    "weak_edges": sorted(c.label.weak_edges),
                    "is_triangulation": c.label.is_triangulation,
                }
                for c in self.maximal_cones
            ],
            "f_vector": list(self.f_vector),
        }


def is_boundary_facet(cone: SecondaryCone, facet: Vec) -> bool:
    """True if the facet lies in a coordinate hyperplane of the orthant."""
    fr = cone.facet_rays(facet)
    return any(all(r[i] == 0 for r in fr) for i in range(cone.n))


def _has_facet(cone: SecondaryCone, ray_set: tuple[Vec, ...]) -> bool:
    return any(cone.facet_rays(f) == ray_set for f in cone.facets)


def wall_cross(d: DecoratedSurface, cone: SecondaryCone, facet: Vec,
               budget: int = DEFAULT_FLIP_BUDGET) -> SecondaryCone:
    """The maximal cone on the other side of ``facet``.

    ``d`` is a triangulation that is Delaunay on ``cone``; ``facet`` is one
    of ``cone.facets`` (an inner normal).  We step from the centre of the
    facet against the normal, halving the step until we land in a
    full-dimensional cone that has the same facet.
    """
    facet = tuple(facet)
    if facet not in cone.facets:
        raise ValueError(f"{facet} is not a facet normal of the cone")
    if is_boundary_facet(cone, facet):
        raise BoundaryFacet(f"facet {facet} lies on the boundary of the orthant")
    wall = cone.facet_rays(facet)
    p = [sum(c) for c in zip(*wall)]
    t = Fraction(1)
    while t >= MIN_STEP:
        q = [x - t * f for x, f in zip(p, facet)]
        if all(x > 0 for x in q):
            D, _ = make_delaunay(d, q, budget)
            c = secondary_cone(D, q)
            if c.is_full_dimensional and c.rays != cone.rays and _has_facet(c, wall):
                return c
        t /= 2
    raise StepUnderflow(f"no neighbouring cone found across {facet}")


def _random_weight(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(1, 1000), rng.randint(1, 1000)) for _ in range(n))


def seed_cone(d: DecoratedSurface, seed: Sequence | None, rng: random.Random,
              budget: int = DEFAULT_FLIP_BUDGET) -> tuple[SecondaryCone, tuple[Fraction, ...]]:
    n = d.n_cusps
    if seed is None:
        w = tuple(Fraction(1) for _ in range(n))
    else:
        try:
            w = as_weights(seed, n, strict=True)
        except NonPositiveWeight as exc:
            raise NonPositiveSeed(str(exc)) from exc
    for _ in range(MAX_RESAMPLES):
        D, _ = make_delaunay(d, w, budget)
        c = secondary_cone(D, w)
        if c.is_full_dimensional:
            return c, w
        w = _random_weight(rng, n)
    raise RuntimeError(f"no generic weight found in {MAX_RESAMPLES} samples")


def enumerate_fan(d: DecoratedSurface, seed: Sequence | None = None, rng_seed: int = 0,
                  budget: int = DEFAULT_FLIP_BUDGET) -> SecondaryFan:
    """All maximal secondary cones of ``d``, found by crossing walls.

    The maximal cones of the result are sorted by their rays, so the output
    does not depend on the seed.
    """
    rng = random.Random(rng_seed)
    start, w0 = seed_cone(d, seed, rng, budget)
    cones = [start]
    index = {start.rays: 0}
    adjacency: dict[tuple[int, Vec], int] = {}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        c = cones[i]
        for f in c.facets:
            if (i, f) in adjacency or is_boundary_facet(c, f):
                continue
            nb = wall_cross(c.label.reference, c, f, budget)
            j = index.get(nb.rays)
            if j is None:
                j = index[nb.rays] = len(cones)
                cones.append(nb)
                queue.append(j)
            adjacency[(i, f)] = j
            wall = c.facet_rays(f)
            for g in cones[j].facets:
                if cones[j].facet_rays(g) == wall:
                    adjacency.setdefault((j, g), i)
    order = sorted(range(len(cones)), key=lambda k: cones[k].rays)
    new_pos = {old: new for new, old in enumerate(order)}
    fan = SecondaryFan(
        n=d.n_cusps,
        maximal_cones=[cones[k] for k in order],
        adjacency={(new_pos[i], f): new_pos[j] for (i, f), j in adjacency.items()},
        seed_weight=w0,
    )
    fan.faces = _faces(fan)
    return fan


def _face_label(cone: SecondaryCone, rays: tuple[Vec, ...]) -> DecompositionLabel:
    ref = cone.label.reference
    weak = frozenset(e for e, row in enumerate(cone.inequalities)
                     if all(dot(row, r) == 0 for r in rays))
    return DecompositionLabel(ref, weak)


def _faces(fan: SecondaryFan) -> list[FanFace]:
    """All nonzero faces, from closing facet ray sets under intersection."""
    found: dict[tuple[Vec, ...], FanFace] = {}
    for c in fan.maximal_cones:
        found.setdefault(c.rays, FanFace(c.rays, c.dim, c.label))
        level = {c.facet_rays(f) for f in c.facets}
        while level:
            nxt = set()
            for rs in level:
                if not rs or rs in found:
                    continue
                found[rs] = FanFace(rs, rank(rs), _face_label(c, rs))
            for a, b in combinations(sorted(level), 2):
                rs = tuple(r for r in a if r in b)
                if rs and rs not in found:
                    nxt.add(rs)
            level = nxt
    return sorted(found.values(), key=lambda f: (f.dim, f.rays))


def f_vector(fan: SecondaryFan) -> tuple[int, ...]:
    """Number of faces of each dimension 1..n."""
    counts = [0] * fan.n
    for f in fan.faces:
        counts[f.dim - 1] += 1
    return tuple(counts)


def intersect(c1: SecondaryCone, c2: SecondaryCone) -> tuple[Vec, ...]:
    """Rays of the intersection, from the concatenated inequality systems."""
    m = len(c1.inequalities)
    rows = list(c1.inequalities) + list(c2.inequalities)
    weak = list(c1.equalities) + [m + k for k in c2.equalities]
    try:
        return cone_from_rows(rows, weak, c1.n).rays
    except EmptyCone:
        return ()


def common_coarsening(fan: SecondaryFan, label1: DecompositionLabel,
                      label2: DecompositionLabel) -> DecompositionLabel | None:
    """Label of the face where the two cones meet, or ``None`` if they only share 0."""
    f1, f2 = fan.face_of(label1), fan.face_of(label2)
    common = tuple(r for r in f1.rays if r in f2.rays)
    if not common:
        return None
    for f in fan.faces:
        if f.rays == common:
            return f.label
    raise AssertionError("intersection of two faces is not a face of the fan")


def validate_fan(fan: SecondaryFan, samples: int = 0, rng_seed: int = 0) -> None:
    """Check the fan axioms exactly; raise ``AssertionError`` on failure.

    With ``samples > 0`` also checks that random positive weights are
    covered by some maximal cone.
    """
    cones = fan.maximal_cones
    for a, b in combinations(cones, 2):
        assert not cone_equal(a, b), "two maximal cones coincide"
    for c in cones:
        assert c.dim == fan.n, "maximal cone is not full-dimensional"
        assert all(x >= 0 for r in c.rays for x in r), "ray outside the orthant"
        for f in c.facets:
            wall = c.facet_rays(f)
            sharing = sum(_has_facet(o, wall) for o in cones)
            expected = 1 if is_boundary_facet(c, f) else 2
            assert sharing == expected, f"facet {wall} lies on {sharing} maximal cones"
    face_rays = {f.rays for f in fan.faces}
    for a, b in combinations(cones, 2):
        got = intersect(a, b)
        assert got == tuple(r for r in a.rays if r in b.rays), "intersection is not spanned by common rays"
        assert not got or got in face_rays, f"intersection {got} is not a listed face"
    rng = random.Random(rng_seed)
    for _ in range(samples):
        w = _random_weight(rng, fan.n)
        assert any(c.contains(w) for c in cones), f"weight {w} not covered"

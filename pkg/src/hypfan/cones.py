"""Exact secondary cones and the double description method.

A cone is stored in two ways: the integer margin rows of a reference
Delaunay triangulation (plus the orthant), and its primitive integer rays.
Rays are sorted lexicographically so two cones are equal exactly when their
ray tuples are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptyCone, NotDelaunayForWeight
from .penner import DecoratedSurface, as_weights, margin_coefficients

Vec = tuple[int, ...]


def primitive(v: Iterable) -> Vec:
    """Smallest integer vector on the ray of a rational vector (zero stays zero)."""
    v = [Fraction(x) for x in v]
    den = reduce(math.lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(math.gcd, ints, 0)
    return tuple(ints) if g == 0 else tuple(x // g for x in ints)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def rank(vectors: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free Gaussian elimination."""
    rows = [list(map(Fraction, v)) for v in vectors]
    if not rows:
        return 0
    r = 0
    ncol = len(rows[0])
    for c in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _combine(a: Vec, r: Vec, s: Vec) -> Vec:
    """Point on the segment between r and s where the row a vanishes."""
    ar, as_ = dot(a, r), dot(a, s)
    return primitive(ar * y - as_ * x for x, y in zip(r, s))


def double_description(ineqs: Sequence[Sequence[int]], eqs: Sequence[Sequence[int]], n: int
                       ) -> tuple[list[Vec], list[Vec]]:
    """Generators of ``{x : A x >= 0, B x = 0}`` in ``Q^n``.

    Returns ``(lineality, rays)``: the cone is the span of ``lineality``
    plus the conic hull of ``rays``.  Rows are inserted in the given order
    (equalities first, each as a pair of opposite inequalities).  Rays are
    kept primitive; adjacency uses the combinatorial test on tight sets.
    """
    rows = [tuple(map(int, b)) for b in eqs] + [tuple(-int(x) for x in b) for b in eqs]
    rows += [tuple(map(int, a)) for a in ineqs]
    for a in rows:
        if len(a) != n:
            raise DimensionMismatch(f"row {a} has length {len(a)}, expected {n}")
    lin: list[Vec] = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays: list[Vec] = []
    tight: list[frozenset[int]] = []
    for idx, a in enumerate(rows):
        if not any(a):
            continue
        p = next((i for i, l in enumerate(lin) if dot(a, l) != 0), None)
        if p is not None:
            piv = lin[p] if dot(a, lin[p]) > 0 else tuple(-x for x in lin[p])
            ap = dot(a, piv)
            lin = [_combine(a, piv, l) if dot(a, l) else l for i, l in enumerate(lin) if i != p]
            rays = [primitive(ap * x - ar * y for x, y in zip(r, piv))
                    for r, ar in ((r, dot(a, r)) for r in rays)]
            # earlier rows vanish on piv; the shifted rays become tight at this row
            tight = [t | {idx} for t in tight]
            rays.append(primitive(piv))
            tight.append(frozenset(range(idx)))
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos + zer]
        new_tight = [tight[i] for i in pos] + [tight[i] | {idx} for i in zer]
        for i in pos:
            for j in neg:
                common = tight[i] & tight[j]
                if any(k != i and k != j and common <= tight[k] for k in range(len(rays))):
                    continue
                new_rays.append(_combine(a, rays[i], rays[j]))
                new_tight.append(common | {idx})
        rays, tight = new_rays, new_tight
    seen: dict[Vec, None] = {}
    for r in rays:
        seen.setdefault(r, None)
    return lin, sorted(seen)


def dd_rays(inequalities: Sequence[Sequence[int]], equalities: Sequence[Sequence[int]] = (),
            n: int | None = None) -> list[Vec]:
    """Extreme rays of ``{x : A x >= 0, B x = 0}``, sorted and primitive.

    A nontrivial lineality space is reported as opposite pairs of rays.
    Raises :class:`EmptyCone` when the system only admits ``x = 0``.
    """
    if n is None:
        n = len(inequalities[0]) if inequalities else len(equalities[0])
    lin, rays = double_description(inequalities, equalities, n)
    out = set(rays)
    for l in lin:
        out.add(primitive(l))
        out.add(primitive(-x for x in l))
    if not out:
        raise EmptyCone("the system only admits the zero vector")
    return sorted(out)


def _project_out(v: Vec, basis: Sequence[Vec]) -> Vec:
    """Orthogonal projection of v onto the complement of span(basis)."""
    if not basis:
        return v
    # Gram-Schmidt over the rationals
    ortho: list[list[Fraction]] = []
    for b in basis:
        w = [Fraction(x) for x in b]
        for o in ortho:
            c = dot(w, o) / dot(o, o)
            w = [x - c * y for x, y in zip(w, o)]
        if any(w):
            ortho.append(w)
    w = [Fraction(x) for x in v]
    for o in ortho:
        c = dot(w, o) / dot(o, o)
        w = [x - c * y for x, y in zip(w, o)]
    return primitive(w)


def dd_facets(rays: Sequence[Sequence[int]], n: int | None = None) -> tuple[list[Vec], list[Vec]]:
    """Facet inequalities and equations of the conic hull of ``rays``.

    Returns ``(facets, equations)``.  ``equations`` spans the linear forms
    vanishing on the cone; ``facets`` are the primitive inner normals of the
    facets, normalised to lie in the span of the cone so that they are
    unique.  For a full-dimensional cone ``equations`` is empty.
    """
    rays = [tuple(map(int, r)) for r in rays]
    if n is None:
        n = len(rays[0])
    lin, gens = double_description(rays, (), n)
    facets = sorted({_project_out(g, lin) for g in gens} - {tuple([0] * n)})
    return facets, sorted(lin)


@dataclass(frozen=True)
class DecompositionLabel:
    """A Delaunay decomposition given by a refining triangulation.

    The decomposition is the reference triangulation with the weak edges
    removed.
    """

    reference: DecoratedSurface
    weak_edges: frozenset[int]

    @property
    def is_triangulation(self) -> bool:
        return not self.weak_edges

    @property
    def kept_edges(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.reference.n_edges) if e not in self.weak_edges)


@dataclass(frozen=True)
class SecondaryCone:
    inequalities: tuple[Vec, ...]
    equalities: tuple[int, ...]
    rays: tuple[Vec, ...]
    dim: int
    label: DecompositionLabel | None = field(default=None, compare=False)
    lineality: tuple[Vec, ...] = ()

    @property
    def n(self) -> int:
        return len(self.rays[0]) if self.rays else len(self.lineality[0])

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.n

    @property
    def facets(self) -> tuple[Vec, ...]:
        try:
            return self.__dict__["_facets"]
        except KeyError:
            f, _ = dd_facets(list(self.rays) + list(self.lineality)
                             + [tuple(-x for x in l) for l in self.lineality], self.n)
            object.__setattr__(self, "_facets", tuple(f))
            return self.__dict__["_facets"]

    def facet_rays(self, f: Vec) -> tuple[Vec, ...]:
        return tuple(r for r in self.rays if dot(f, r) == 0)

    def interior_point(self) -> tuple[int, ...]:
        """Sum of the rays, a point of the relative interior."""
        return tuple(sum(c) for c in zip(*self.rays))

    def contains(self, w: Sequence) -> bool:
        w = [Fraction(x) for x in w]
        eq = set(self.equalities)
        for k, a in enumerate(self.inequalities):
            v = dot(a, w)
            if v < 0 or (k in eq and v != 0):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "facets": [list(f) for f in self.facets],
            "weak_edges": sorted(self.label.weak_edges) if self.label else [],
            "dim": self.dim,
        }


def cone_equal(c1: SecondaryCone, c2: SecondaryCone) -> bool:
    if c1.n != c2.n:
        raise DimensionMismatch(f"cones live in dimensions {c1.n} and {c2.n}")
    return c1.rays == c2.rays and sorted(c1.lineality) == sorted(c2.lineality)


def margin_rows(d: DecoratedSurface) -> tuple[Vec, ...]:
    """Primitive integer margin functional of every edge, in edge order."""
    return tuple(primitive(margin_coefficients(d, e)) for e in range(d.n_edges))


def orthant_rows(n: int) -> list[Vec]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def delaunay_decomposition(d: DecoratedSurface, w: Sequence) -> DecompositionLabel:
    w = as_weights(w, d.n_cusps)
    weak = set()
    for e, row in enumerate(margin_rows(d)):
        v = dot(row, w)
        if v < 0:
            raise NotDelaunayForWeight(f"edge {e} has negative margin at w")
        if v == 0:
            weak.add(e)
    return DecompositionLabel(d, frozenset(weak))


def cone_from_rows(rows: Sequence[Vec], weak: Iterable[int], n: int,
                   label: DecompositionLabel | None = None,
                   extra_eq: Sequence[Vec] = ()) -> SecondaryCone:
    """Cone cut out of the orthant by ``rows``, with rows in ``weak`` forced to zero."""
    weak = sorted(set(weak))
    ineq = [r for k, r in enumerate(rows) if k not in weak] + orthant_rows(n)
    eq = [rows[k] for k in weak] + list(extra_eq)
    lin, rays = double_description(ineq, eq, n)
    assert not lin  # the orthant makes the cone pointed
    if not rays:
        raise EmptyCone("cone is {0}")
    return SecondaryCone(tuple(rows), tuple(weak), tuple(rays), rank(rays), label)


def secondary_cone(d: DecoratedSurface, w: Sequence) -> SecondaryCone:
    """Secondary cone of the Delaunay decomposition ``D(w)``.

    ``d`` must be Delaunay for ``w``.  Edges with zero margin at ``w``
    become equalities, so ``w`` lies in the relative interior of the result.
    """
    w = as_weights(w, d.n_cusps)
    label = delaunay_decomposition(d, w)
    n = d.n_cusps
    # orthant directions vanishing at w are equalities too
    extra = [r for i, r in enumerate(orthant_rows(n)) if w[i] == 0]
    return cone_from_rows(margin_rows(d), label.weak_edges, n, label, extra)

"""Decorated hyperbolic structure in Penner coordinates.

Everything here is exact: lambda-lengths are :class:`fractions.Fraction`
values and so are h-lengths, cusp weights and Delaunay margins.

Two kinds of h-lengths appear.  :func:`h_length` is the horocyclic arc
length of the decoration encoded by the lambda-lengths themselves.
:func:`unit_h_length` rescales it to the decoration in which every cusp has
total horocycle length one; the arc lengths for an arbitrary weight vector
``w`` are then ``unit_h_length * w[cusp]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BadCorner,
    BadCuspIndex,
    FlipBudgetExceeded,
    NonPositiveLambda,
    NonPositiveWeight,
)
from .surface import CombinatorialSurface, combinatorial_flip, next_he, prev_he

DEFAULT_FLIP_BUDGET = 10**6


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(str(x)) if isinstance(x, str) else Fraction(x)


def as_weights(w: Iterable, n: int | None = None, *, strict: bool = False) -> tuple[Fraction, ...]:
    """Validate a weight vector in the closed orthant minus the origin.

    With ``strict=True`` every entry must be positive (what the flip
    algorithm needs).
    """
    w = tuple(as_fraction(x) for x in w)
    if n is not None and len(w) != n:
        raise ValueError(f"expected {n} weights, got {len(w)}")
    if any(x < 0 for x in w):
        raise NonPositiveWeight(f"negative weight in {tuple(map(str, w))}")
    if all(x == 0 for x in w):
        raise NonPositiveWeight("the zero vector is not an admissible weight")
    if strict and any(x <= 0 for x in w):
        raise NonPositiveWeight(f"weights must be positive, got {tuple(map(str, w))}")
    return w


@dataclass(frozen=True)
class DecoratedSurface:
    """Ideal triangulation plus one positive rational lambda-length per edge.

    ``frame`` pins the developing map: the index of a base triangle and the
    light-cone lifts of its three corners at unit weights.  It is ``None``
    for a freshly built surface, meaning the canonical placement of
    triangle 0, and :func:`ptolemy_flip` always fills it in, so every
    triangulation reached by flips is developed against the same group.
    """

    surface: CombinatorialSurface
    lam: tuple[Fraction, ...]
    frame: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.lam) != self.surface.n_edges:
            raise ValueError(f"need {self.surface.n_edges} lambda-lengths, got {len(self.lam)}")
        bad = [e for e, x in enumerate(self.lam) if x <= 0]
        if bad:
            raise NonPositiveLambda(f"lambda-lengths of edges {bad} are not positive")

    @property
    def n_cusps(self) -> int:
        return self.surface.n_cusps

    @property
    def n_edges(self) -> int:
        return self.surface.n_edges

    @property
    def weights(self) -> tuple[Fraction, ...]:
        """Cusp weights of the decoration (flip invariant, cached)."""
        try:
            return self.__dict__["_weights"]
        except KeyError:
            w = tuple(cusp_weight(self, i) for i in range(self.n_cusps))
            object.__setattr__(self, "_weights", w)
            return w


def decorate(surface: CombinatorialSurface, lam: Sequence) -> DecoratedSurface:
    return DecoratedSurface(surface, tuple(as_fraction(x) for x in lam))


def h_length(d: DecoratedSurface, h: int) -> Fraction:
    """h-length of the corner at the tail of half-edge ``h``.

    The corner lies between the sides ``prev(h)`` and ``h``; the value is
    ``lam(opposite) / (lam(prev) * lam(h))``.
    """
    if not 0 <= h < d.surface.n_half_edges:
        raise BadCorner(f"no corner {h}")
    e = d.surface.edge_of
    return d.lam[e[next_he(h)]] / (d.lam[e[prev_he(h)]] * d.lam[e[h]])


def cusp_weight(d: DecoratedSurface, i: int) -> Fraction:
    if not 0 <= i < d.n_cusps:
        raise BadCuspIndex(f"cusp {i} out of range")
    return sum((h_length(d, c.half_edge) for c in d.surface.corner_list(i)), Fraction(0))


def unit_h_length(d: DecoratedSurface, h: int) -> Fraction:
    return h_length(d, h) / d.weights[d.surface.cusp_of[h]]


def margin_coefficients(d: DecoratedSurface, e: int) -> tuple[Fraction, ...]:
    """Linear form ``w -> margin`` of the local Delaunay condition at ``e``.

    Adjacent corners (both ends of ``e``, on both sides) count positively,
    the two opposite corners negatively.  Cusps may repeat; each corner is
    charged to its own cusp.
    """
    s = d.surface
    coef = [Fraction(0)] * s.n_cusps
    for h in s.half_edges(e):
        for c in (h, next_he(h)):
            coef[s.cusp_of[c]] += unit_h_length(d, c)
        o = prev_he(h)
        coef[s.cusp_of[o]] -= unit_h_length(d, o)
    return tuple(coef)


def delaunay_margin(d: DecoratedSurface, e: int, w: Sequence) -> Fraction:
    w = tuple(as_fraction(x) for x in w)
    return sum((c * x for c, x in zip(margin_coefficients(d, e), w)), Fraction(0))


def ptolemy_flip(d: DecoratedSurface, e: int) -> DecoratedSurface:
    """Flip ``e`` and update its lambda-length by the Ptolemy relation."""
    s = d.surface
    h, k = s.half_edges(e)
    if s.is_self_folded(e):
        combinatorial_flip(s, e)  # raises SelfFoldedEdge
    le = s.edge_of
    lam = d.lam
    n, p = next_he(h), prev_he(h)
    n2, p2 = next_he(k), prev_he(k)
    new = (lam[le[n]] * lam[le[n2]] + lam[le[p]] * lam[le[p2]]) / lam[e]
    lam2 = lam[:e] + (new,) + lam[e + 1:]
    out = DecoratedSurface(combinatorial_flip(s, e), lam2)
    object.__setattr__(out, "_weights", d.weights)
    from .develop import flip_frame

    object.__setattr__(out, "frame", flip_frame(d, e, out))
    return out


def is_delaunay(d: DecoratedSurface, w: Sequence) -> bool:
    return all(delaunay_margin(d, e, w) >= 0 for e in range(d.n_edges))


def make_delaunay(d: DecoratedSurface, w: Sequence, budget: int = DEFAULT_FLIP_BUDGET
                  ) -> tuple[DecoratedSurface, list[int]]:
    """Flip strictly non-Delaunay edges until every margin is nonnegative.

    Edges are scanned in id order and the first violator is flipped, then
    the scan restarts.  Returns the Delaunay triangulation and the list of
    flipped edge ids.
    """
    w = as_weights(w, d.n_cusps, strict=True)
    log: list[int] = []
    while True:
        for e in range(d.n_edges):
            if d.surface.is_self_folded(e):
                continue
            if delaunay_margin(d, e, w) < 0:
                break
        else:
            return d, log
        if len(log) >= budget:
            raise FlipBudgetExceeded(f"no Delaunay triangulation after {budget} flips")
        d = ptolemy_flip(d, e)
        log.append(e)


def replay(d: DecoratedSurface, log: Iterable[int]) -> DecoratedSurface:
    for e in log:
        d = ptolemy_flip(d, e)
    return d

import pytest
from hypothesis import given, settings, strategies as st

from hypfan.errors import (
    BadCuspIndex,
    FixedHalfEdge,
    NonNegativeEulerCharacteristic,
    PairingNotInvolution,
    SelfFoldedEdge,
    SurfaceError,
)
from hypfan.surface import build_surface, combinatorial_flip, flip_map, next_he, prev_he

from conftest import surfaces


def test_next_prev_cycle():
    for h in range(12):
        assert next_he(next_he(next_he(h))) == h
        assert prev_he(next_he(h)) == h
        assert next_he(h) // 3 == h // 3


def test_once_punctured_torus(examples):
    s = examples["T1"].surface
    assert (s.n_triangles, s.n_edges, s.n_cusps, s.genus) == (2, 3, 1, 1)
    assert len(s.corner_list(0)) == 6
    assert s.euler_characteristic == 0


def test_twice_punctured_torus(examples):
    s = examples["T2"].surface
    assert (s.n_triangles, s.n_edges, s.n_cusps, s.genus) == (4, 6, 2, 1)
    assert sorted(len(s.corner_list(i)) for i in range(2)) == [3, 9]
    # the three diagonals join the black cusp to itself
    assert [s.edge_cusps(e) for e in range(3)] == [(0, 0)] * 3


def test_sphere_three_punctures(examples):
    s = examples["S3"].surface
    assert (s.n_cusps, s.genus) == (3, 0)
    assert [len(s.corner_list(i)) for i in range(3)] == [2, 2, 2]


def test_errors():
    with pytest.raises(FixedHalfEdge):
        build_surface(2, [[0, 0], [1, 4], [2, 5]])
    with pytest.raises(PairingNotInvolution):
        build_surface(2, [[0, 3], [0, 4], [2, 5]])
    with pytest.raises(PairingNotInvolution):
        build_surface(2, [[0, 3], [1, 4]])
    with pytest.raises(PairingNotInvolution):
        build_surface(2, [[0, 9], [1, 4], [2, 5]])
    with pytest.raises(NonNegativeEulerCharacteristic):
        build_surface(0, [])
    with pytest.raises(SurfaceError):
        build_surface(4, [[0, 3], [1, 4], [2, 5], [6, 9], [7, 10], [8, 11]])


def test_bad_cusp(examples):
    with pytest.raises(BadCuspIndex):
        examples["T1"].surface.corner_list(1)


def test_self_folded_edge_cannot_flip():
    # a triangle with two sides glued to each other folds around a puncture
    s = build_surface(2, [[0, 1], [2, 5], [3, 4]])
    assert s.is_self_folded(0) and s.is_self_folded(2)
    with pytest.raises(SelfFoldedEdge):
        combinatorial_flip(s, 0)


def test_flip_t2_diagonal(examples):
    s = examples["T2"].surface
    t = combinatorial_flip(s, 0)
    # the new diagonal joins the two different cusps
    assert sorted(t.edge_cusps(0)) == [0, 1]
    assert sorted(len(t.corner_list(i)) for i in range(2)) == [4, 8]


def _double_flip_perm(s, e):
    """Relabelling that takes the twice flipped surface back to ``s``."""
    h, k = s.half_edges(e)
    t, i = divmod(h, 3)
    u, j = divmod(k, 3)
    perm = list(range(s.n_half_edges))
    for r in range(3):
        perm[3 * u + (j + r) % 3] = 3 * t + (i + r) % 3
        perm[3 * t + (i + r) % 3] = 3 * u + (j + r) % 3
    return perm


@settings(max_examples=60, deadline=None)
@given(surfaces(), st.data())
def test_flip_twice_is_identity_up_to_relabelling(s, data):
    flippable = [e for e in range(s.n_edges) if not s.is_self_folded(e)]
    if not flippable:
        return
    e = data.draw(st.sampled_from(flippable))
    twice = combinatorial_flip(combinatorial_flip(s, e), e)
    assert twice.relabeled(_double_flip_perm(s, e)) == s


@settings(max_examples=60, deadline=None)
@given(surfaces(), st.lists(st.integers(0, 100), max_size=6))
def test_flips_preserve_topology(s, choices):
    for c in choices:
        flippable = [e for e in range(s.n_edges) if not s.is_self_folded(e)]
        if not flippable:
            break
        s2 = combinatorial_flip(s, flippable[c % len(flippable)])
        assert s2.n_cusps == s.n_cusps and s2.genus == s.genus
        s = s2
    # every corner lies on exactly one cusp
    assert sum(len(s.corner_list(i)) for i in range(s.n_cusps)) == 3 * s.n_triangles
    # pairing stays a fixed point free involution
    assert all(s.pairing[s.pairing[h]] == h != s.pairing[h] for h in range(s.n_half_edges))


@settings(max_examples=40, deadline=None)
@given(surfaces())
def test_flip_map_moves_quad_only(s):
    for e in range(s.n_edges):
        if s.is_self_folded(e):
            continue
        m, quad = flip_map(s, e)
        assert sorted(m(x) for x in quad) == sorted(quad)


@settings(max_examples=60, deadline=None)
@given(surfaces())
def test_euler_characteristic(s):
    assert s.n_triangles - s.n_edges + s.n_cusps == 2 - 2 * s.genus
    assert 2 * s.n_edges == 3 * s.n_triangles
    assert s.to_pairs() == [s.half_edges(e) for e in range(s.n_edges)]

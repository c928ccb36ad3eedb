import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypfan.develop import (
    Development,
    extend_across_edge,
    gkz_vector,
    lift_base_triangle,
    lightcone_point,
    mink,
    to_hemisphere,
    unit_lambdas,
)
from hypfan.errors import DegenerateEdge, NonPositiveHeightComponent, TailBoundNotReached
from hypfan.penner import ptolemy_flip


def test_lightcone_points_are_null():
    for p in (None, 0.0, 1.0, -2.5):
        v = lightcone_point(p, 1.7)
        assert abs(mink(v, v)) < 1e-12
        assert v[2] > 0


@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10))
def test_base_triangle_lambda_lengths(a, b, c):
    L = lift_base_triangle(a, b, c)
    for (i, j), lam in (((0, 1), a), ((1, 2), b), ((2, 0), c)):
        assert math.isclose(mink(L[i], L[j]), -2 * lam * lam, rel_tol=1e-9)


@given(st.floats(0.2, 5), st.floats(0.2, 5), st.floats(0.2, 5), st.floats(0.2, 5), st.floats(0.2, 5))
def test_extension_solves_constraints(a, b, c, li, lk):
    L = lift_base_triangle(a, b, c)
    w = extend_across_edge(L[0], L[1], L[2], li, lk)
    assert abs(mink(w, w)) < 1e-8 * np.abs(w).max() ** 2
    assert math.isclose(mink(w, L[0]), -2 * li * li, rel_tol=1e-8)
    assert math.isclose(mink(w, L[1]), -2 * lk * lk, rel_tol=1e-8)
    # w and the opposite vertex lie on different sides of the edge plane
    n = np.cross(L[0], L[1]) @ np.diag([1.0, 1.0, -1.0])
    assert mink(w, n) * mink(L[2], n) < 0


def test_degenerate_edge():
    v = lightcone_point(0.0)
    with pytest.raises(DegenerateEdge):
        extend_across_edge(v, v, lightcone_point(1.0), 1.0, 1.0)


def test_hemisphere_map():
    k = to_hemisphere(lightcone_point(0.5, 2.0))
    assert math.isclose(k[0] ** 2 + k[1] ** 2, 1.0)
    with pytest.raises(NonPositiveHeightComponent):
        to_hemisphere([1.0, 0.0, 0.0])


def test_unit_lambdas_t2(examples):
    # weights (9, 3): black/black edges scale by 9, black/white by sqrt(27)
    lb = unit_lambdas(examples["T2"])
    assert np.allclose(lb, [9, 9, 9, math.sqrt(27), math.sqrt(27), math.sqrt(27)])


def test_development_covers_disk(examples):
    dev = Development(examples["T2"], 1e-5)
    total = sum(len(b.tri) for b in dev)
    assert dev.finished and dev.count == total
    assert dev.covered_area >= math.pi - 1e-4
    assert dev.covered_area <= math.pi + 1e-9
    assert dev.tail_bound < 1e-5
    assert dev.max_lift_error < 1e-6


def test_triangle_budget(examples):
    with pytest.raises(TailBoundNotReached):
        list(Development(examples["T2"], 1e-8, max_triangles=200))


def test_dome_volume_is_linear(examples):
    rng = np.random.default_rng(5)
    W = rng.uniform(0.1, 10.0, size=(10, 2))
    g, vols = gkz_vector(examples["T2"], 1e-5, weights=W)
    assert np.abs(vols - W @ g.phi / 3).max() < 1e-10


def test_gkz_converges(examples):
    coarse = gkz_vector(examples["T2b"], 1e-4).phi
    fine = gkz_vector(examples["T2b"], 1e-6).phi
    assert np.abs(coarse - fine).max() < 1e-4


def test_frame_is_kept_by_flips(examples):
    # flipping away and back must give the same GKZ vector: same base point
    d = examples["T2"]
    back = ptolemy_flip(ptolemy_flip(d, 4), 4)
    assert np.abs(gkz_vector(back, 1e-6).phi - gkz_vector(d, 1e-6).phi).max() < 1e-5


def test_transform_rotation_keeps_sum(examples):
    # a rotation of the Klein disk moves the base point but keeps the disk
    t = 0.3
    R = np.array([[math.cos(t), -math.sin(t), 0], [math.sin(t), math.cos(t), 0], [0, 0, 1]])
    a = gkz_vector(examples["T2"], 1e-6).phi
    b = gkz_vector(examples["T2"], 1e-6, transform=R).phi
    assert np.abs(a - b).max() < 1e-5


def test_json(examples):
    doc = gkz_vector(examples["T1"], 1e-3).to_json()
    assert set(doc) == {"phi", "tail_tol", "triangles_developed", "base_convention"}
    assert doc["tail_tol"] < 1e-3

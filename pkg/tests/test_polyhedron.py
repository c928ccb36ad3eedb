import copy

import numpy as np
import pytest

from hypfan.develop import gkz_vector
from hypfan.errors import NormalFanMismatch
from hypfan.penner import make_delaunay, ptolemy_flip
from hypfan.polyhedron import check_normal_fan, hull_edges, lifting_check, secondary_polyhedron

from conftest import TAIL_TOL


def _seg_dist(p, a, b):
    t = np.clip((p - a) @ (b - a) / ((b - a) @ (b - a)), 0.0, 1.0)
    return float(np.linalg.norm(p - (a + t * (b - a))))


@pytest.mark.parametrize("name", ["T1", "T2", "T2b", "S3"])
def test_normal_fan(polyhedra, fans, name):
    report = check_normal_fan(polyhedra[name], fans[name], tol=1e-3)
    assert report.passed and report.worst_margin > -1e-3 and report.worst_wall_gap < 1e-3


@pytest.mark.parametrize("name", ["T2", "T2b", "S3"])
def test_perturbation_is_detected(polyhedra, fans, name):
    p = copy.deepcopy(polyhedra[name])
    p.vertices[0].phi = p.vertices[0].phi + np.eye(p.n)[0] * 0.1
    with pytest.raises(NormalFanMismatch):
        check_normal_fan(p, fans[name], tol=1e-3)
    assert not check_normal_fan(p, fans[name], tol=1e-3, raise_on_fail=False).passed


def test_one_vertex_per_cone(polyhedra, fans):
    assert len(polyhedra["T1"].vertices) == 1
    for name in ("T2", "T2b", "S3"):
        assert len(polyhedra[name].vertices) == len(fans[name].maximal_cones)


@pytest.mark.parametrize("name", ["T2", "T2b", "S3"])
def test_lp_edges_match_fan_walls(polyhedra, name):
    p = polyhedra[name]
    assert p.hull_edges == p.bounded_edges


@pytest.mark.parametrize("name", ["T2", "T2b", "S3"])
def test_edges_are_normal_to_walls(polyhedra, fans, name):
    p, fan = polyhedra[name], fans[name]
    P = p.points
    for (i, f), j in fan.adjacency.items():
        wall = fan.maximal_cones[i].facet_rays(f)
        diff = P[p.cone_vertex[i]] - P[p.cone_vertex[j]]
        for r in wall:
            assert abs(diff @ np.array(r, dtype=float)) < 1e-3 * np.linalg.norm(r)


def test_full_dimensional(polyhedra):
    # vertex differences span R^n
    for name in ("T2b", "S3"):
        P = polyhedra[name].points
        assert np.linalg.matrix_rank(P[1:] - P[0], tol=1e-6) == polyhedra[name].n


def test_t2_relations(examples):
    d = examples["T2"]
    D, _ = make_delaunay(d, (9, 3))
    D2, log = make_delaunay(d, (3, 9))
    assert log == [0, 1, 2, 0]
    T = ptolemy_flip(D, 0)
    T2 = ptolemy_flip(T, 3)
    phi = {k: gkz_vector(s, TAIL_TOL).phi for k, s in (("D", D), ("D2", D2), ("T", T), ("T2", T2))}
    one = np.ones(2)
    assert abs(one @ phi["D"] - one @ phi["D2"]) < 1e-3
    assert _seg_dist(phi["T"], phi["D"], phi["D2"]) < 1e-3
    assert one @ phi["T2"] < max(one @ phi["D"], one @ phi["D2"]) - 1e-3


def test_lifting(examples, fans):
    d = examples["T2"]
    D, _ = make_delaunay(d, (9, 3))
    T = ptolemy_flip(D, 0)
    Ts = [D, make_delaunay(d, (3, 9))[0], T, ptolemy_flip(T, 3)]
    report = lifting_check(d, fans["T2"], Ts, samples=20, rng_seed=3)
    assert report.passed
    assert report.delaunay_gap < 1e-3


def test_hull_edges_square():
    pts = np.array([[0.0, 1.0], [1.0, 0.0], [0.6, 0.6], [0.2, 0.2]])
    assert hull_edges(pts, 1e-9) == [(0, 2), (1, 2)]


def test_tail_tol_validated(examples, fans):
    with pytest.raises(ValueError):
        secondary_polyhedron(examples["T2"], fans["T2"], tail_tol=0)


def test_threads_agree(examples, fans, polyhedra):
    p = secondary_polyhedron(examples["S3"], fans["S3"], TAIL_TOL, threads=4)
    assert np.array_equal(p.points, polyhedra["S3"].points)


def test_json(polyhedra):
    doc = polyhedra["T2"].to_json()
    assert doc["n"] == 2 and len(doc["vertices"]) == 2 and doc["bounded_edges"] == [[0, 1]]

"""Twice-punctured torus: flips, cones, fan and polyhedron end to end.

Run with ``python3 demos/t2_walkthrough.py``.
"""

import numpy as np

from hypfan import (
    check_normal_fan,
    enumerate_fan,
    gkz_vector,
    load_example,
    make_delaunay,
    ptolemy_flip,
    secondary_cone,
    secondary_polyhedron,
)

d = load_example("T2")
print("lambda lengths:", [str(x) for x in d.lam])

for w in [(9, 3), (1, 1), (3, 9)]:
    D, log = make_delaunay(d, w)
    c = secondary_cone(D, w)
    print(f"w={w}: flips {log}, cone rays {list(c.rays)}, weak edges {sorted(c.label.weak_edges)}")

fan = enumerate_fan(d)
print("f-vector", fan.f_vector)

poly = secondary_polyhedron(d, fan)
for i, v in enumerate(poly.vertices):
    print(f"vertex {i}: phi = {np.round(v.phi, 6)} from {v.triangles_developed} triangles")
print(check_normal_fan(poly, fan))

# a triangulation that is Delaunay nowhere sits strictly inside the polyhedron
T = ptolemy_flip(ptolemy_flip(d, 0), 3)
phi = gkz_vector(T).phi
print("non-Delaunay triangulation:", np.round(phi, 6), "support at (1,1):", round(poly.support((1, 1)), 6))

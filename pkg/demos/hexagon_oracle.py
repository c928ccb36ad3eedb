"""Planar oracle: the hexagon's 14 triangulations give the 3-dimensional associahedron."""

from hypfan import configuration, euclid_secondary_cone, euclid_secondary_polytope, regular_subdivision

A = configuration([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
P = euclid_secondary_polytope(A)
print(f"{len(P.triangulations)} triangulations, dim {P.dim}, f-vector {P.f_vector}")
for T, g in zip(P.triangulations, P.gkz):
    print(T, [str(x) for x in g])

T = P.triangulations[0]
c = euclid_secondary_cone(A, T)
print("cone rows of", T, list(c.inequalities))
w = [sum(col) for col in zip(*c.rays)]
print("an interior height vector", w, "->", [sorted(s) for s in regular_subdivision(A, w).cells])

"""Small hand-written SVG pictures of fans and polyhedra."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .errors import UnsupportedDimension

SIZE = 400
PALETTE = ["#c6dbef", "#fdd0a2", "#c7e9c0", "#dadaeb", "#fcbba1", "#d9d9d9",
           "#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc", "#fc9272", "#bdbdbd"]


def _svg(body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">')
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"


def _poly(pts, fill: str, stroke: str = "black") -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
    return f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" stroke-width="1"/>'


def _text(x: float, y: float, s: str) -> str:
    return f'<text x="{x:.2f}" y="{y:.2f}" font-size="11" font-family="sans-serif">{escape(s)}</text>'


def _ray_label(r) -> str:
    return "(" + ",".join(str(x) for x in r) + ")"


def fan_svg(doc: dict) -> str:
    n = doc["n"]
    rays = [tuple(r) for r in doc["rays"]]
    body = []
    if n == 1:
        raise UnsupportedDimension("a fan in dimension 1 is a single ray; nothing to draw")
    if n == 2:
        o = (40.0, SIZE - 40.0)
        R = SIZE - 100.0

        def at(r, scale=R):
            nr = math.hypot(*r)
            return o[0] + scale * r[0] / nr, o[1] - scale * r[1] / nr

        for k, cone in enumerate(doc["maximal_cones"]):
            rs = sorted((rays[i] for i in cone["ray_indices"]), key=lambda r: math.atan2(r[1], r[0]))
            a0, a1 = (math.atan2(r[1], r[0]) for r in (rs[0], rs[-1]))
            arc = [at((math.cos(a0 + (a1 - a0) * t / 16), math.sin(a0 + (a1 - a0) * t / 16)))
                   for t in range(17)]
            body.append(_poly([o, *arc], PALETTE[k % len(PALETTE)]))
        for r in rays:
            x, y = at(r)
            body.append(f'<line x1="{o[0]}" y1="{o[1]}" x2="{x:.2f}" y2="{y:.2f}" stroke="black"/>')
            lx, ly = at(r, R + 12)
            body.append(_text(lx, ly, _ray_label(r)))
        return _svg(body)
    if n == 3:
        # slice by w1 + w2 + w3 = 1, drawn in an equilateral triangle
        corners = [(40.0, SIZE - 50.0), (SIZE - 40.0, SIZE - 50.0), (SIZE / 2, 50.0)]

        def at(r):
            s = sum(r)
            return (sum(c[0] * x for c, x in zip(corners, r)) / s,
                    sum(c[1] * x for c, x in zip(corners, r)) / s)

        for k, cone in enumerate(doc["maximal_cones"]):
            pts = [at(rays[i]) for i in cone["ray_indices"]]
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
            body.append(_poly(pts, PALETTE[k % len(PALETTE)]))
        for r in rays:
            x, y = at(r)
            body.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2" fill="black"/>')
            body.append(_text(x + 3, y - 3, _ray_label(r)))
        return _svg(body)
    raise UnsupportedDimension(f"cannot draw a fan in dimension {n}")


def polyhedron_svg(doc: dict) -> str:
    verts = [tuple(v) for v in doc["vertices"]]
    n = doc.get("n", len(verts[0]))
    if n != 2:
        raise UnsupportedDimension(f"cannot draw a polyhedron in dimension {n}")
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    lo_x, lo_y = min(xs) - 0.5 * span, min(ys) - 0.5 * span
    scale = (SIZE - 80) / (1.7 * span)

    def at(p):
        return 40 + (p[0] - lo_x) * scale, SIZE - 40 - (p[1] - lo_y) * scale

    chain = sorted(verts)
    top = max(verts, key=lambda v: (v[1], -v[0]))
    right = max(verts, key=lambda v: (v[0], -v[1]))
    outline = [(lo_x, top[1])] + chain + [(right[0], lo_y), (lo_x, lo_y)]
    body = [_poly([at(p) for p in outline], PALETTE[0], stroke="none")]
    for a, b in doc.get("bounded_edges", []):
        (x1, y1), (x2, y2) = at(verts[a]), at(verts[b])
        body.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="black" stroke-width="2"/>')
    for p, q in ((top, (lo_x, top[1])), (right, (right[0], lo_y))):
        (x1, y1), (x2, y2) = at(p), at(q)
        body.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="black" stroke-width="2"/>')
    for v in verts:
        x, y = at(v)
        body.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
        body.append(_text(x + 4, y - 4, f"({v[0]:.4f}, {v[1]:.4f})"))
    return _svg(body)


def render(doc: dict) -> str:
    if "maximal_cones" in doc:
        return fan_svg(doc)
    if "vertices" in doc and "bounded_edges" in doc:
        return polyhedron_svg(doc)
    raise ValueError("document is neither a fan nor a polyhedron")

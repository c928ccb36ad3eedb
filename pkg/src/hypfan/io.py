"""JSON file formats.

Surface files look like::

    {"schema": "hypfan/1", "name": "...", "triangles": 2,
     "pairing": [[0, 3], [1, 4], [2, 5]],
     "lambda": {"0": "3", "1": "4", "2": "5"}}

Edge ``e`` is the ``e``-th pair of ``pairing``.  Lambda values are strings
``"p/q"`` or integers so they stay exact.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import HypfanError
from .penner import DecoratedSurface, decorate
from .surface import build_surface

SCHEMA = "hypfan/1"
EXAMPLES = ("T1", "T2", "T2b", "S3", "T3")


class ParseError(HypfanError, ValueError):
    """Malformed input document; the message names the offending field."""


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: cannot read {x!r} as a rational") from exc


def parse_surface(doc: dict) -> DecoratedSurface:
    if not isinstance(doc, dict):
        raise ParseError("surface document must be a JSON object")
    if "schema" in doc and doc["schema"] != SCHEMA:
        raise ParseError(f"schema: unsupported version {doc['schema']!r}")
    F = doc.get("triangles")
    if not isinstance(F, int) or isinstance(F, bool) or F <= 0:
        raise ParseError(f"triangles: expected a positive integer, got {F!r}")
    pairs = doc.get("pairing")
    if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) for x in p) for p in pairs):
        raise ParseError("pairing: expected a list of [int, int] pairs")
    lam = doc.get("lambda")
    if isinstance(lam, dict):
        try:
            keys = sorted(int(k) for k in lam)
        except ValueError as exc:
            raise ParseError("lambda: keys must be edge ids") from exc
        if keys != list(range(len(pairs))):
            raise ParseError(f"lambda: need exactly the edge ids 0..{len(pairs) - 1}")
        values = [_rational(lam[str(e)] if str(e) in lam else lam[e], f"lambda[{e}]")
                  for e in range(len(pairs))]
    elif isinstance(lam, list):
        values = [_rational(x, f"lambda[{e}]") for e, x in enumerate(lam)]
    else:
        raise ParseError("lambda: expected an object keyed by edge id")
    try:
        surface = build_surface(F, pairs)
        return decorate(surface, values)
    except HypfanError as exc:
        raise ParseError(f"pairing/lambda: {exc}") from exc


def surface_to_json(d: DecoratedSurface, name: str | None = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "triangles": d.surface.n_triangles,
        "pairing": [list(p) for p in d.surface.to_pairs()],
        "lambda": {str(e): str(x) for e, x in enumerate(d.lam)},
    }
    if name is not None:
        doc["name"] = name
    return doc


def load_surface(path) -> DecoratedSurface:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    return parse_surface(doc)


def load_example(name: str) -> DecoratedSurface:
    """One of the bundled surfaces ``T1``, ``T2``, ``T2b``, ``S3``, ``T3``."""
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {EXAMPLES}")
    text = resources.files("hypfan.data").joinpath(f"{name}.json").read_text()
    return parse_surface(json.loads(text))


def example_path(name: str) -> Path:
    return Path(str(resources.files("hypfan.data").joinpath(f"{name}.json")))


def dumps(doc) -> str:
    """Deterministic serialisation: sorted keys, shortest round-trip floats."""
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParseError(msg)


def _int_list(x, where: str) -> list[int]:
    _require(isinstance(x, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in x),
             f"{where}: expected a list of integers")
    return x


def validate_fan_doc(doc: dict) -> dict:
    """Check the shape of a fan document written by ``SecondaryFan.to_json``."""
    _require(isinstance(doc, dict) and doc.get("schema") == SCHEMA, "schema: missing or unsupported")
    n = doc.get("n")
    _require(isinstance(n, int) and n >= 1, "n: expected a positive integer")
    rays = doc.get("rays")
    _require(isinstance(rays, list), "rays: expected a list")
    for k, r in enumerate(rays):
        _int_list(r, f"rays[{k}]")
        _require(len(r) == n and all(v >= 0 for v in r) and any(r), f"rays[{k}]: not a nonzero ray in R^{n}_+")
    cones = doc.get("maximal_cones")
    _require(isinstance(cones, list) and cones, "maximal_cones: expected a nonempty list")
    for k, c in enumerate(cones):
        idx = _int_list(c.get("ray_indices"), f"maximal_cones[{k}].ray_indices")
        _require(all(0 <= i < len(rays) for i in idx) and len(idx) >= n,
                 f"maximal_cones[{k}].ray_indices: out of range or too few")
        _int_list(c.get("weak_edges"), f"maximal_cones[{k}].weak_edges")
        _require(isinstance(c.get("is_triangulation"), bool), f"maximal_cones[{k}].is_triangulation")
        _require(c["is_triangulation"] == (not c["weak_edges"]),
                 f"maximal_cones[{k}]: is_triangulation disagrees with weak_edges")
    fv = _int_list(doc.get("f_vector"), "f_vector")
    _require(len(fv) == n and fv[0] == len(rays) and fv[-1] == len(cones), "f_vector: inconsistent counts")
    return doc


def validate_polyhedron_doc(doc: dict) -> dict:
    """Check the shape of a polyhedron document written by ``SecondaryPolyhedron.to_json``."""
    _require(isinstance(doc, dict) and doc.get("schema") == SCHEMA, "schema: missing or unsupported")
    n = doc.get("n")
    _require(isinstance(n, int) and n >= 1, "n: expected a positive integer")
    verts = doc.get("vertices")
    _require(isinstance(verts, list) and verts, "vertices: expected a nonempty list")
    for k, v in enumerate(verts):
        _require(isinstance(v, list) and len(v) == n and all(isinstance(x, float) for x in v),
                 f"vertices[{k}]: expected {n} floats")
    _require(isinstance(doc.get("labels"), list) and len(doc["labels"]) == len(verts),
             "labels: expected one label per vertex")
    for k, e in enumerate(doc.get("bounded_edges", [])):
        _int_list(e, f"bounded_edges[{k}]")
        _require(len(e) == 2 and 0 <= e[0] < e[1] < len(verts), f"bounded_edges[{k}]: bad vertex pair")
    _require(isinstance(doc.get("tail_tol"), float) and doc["tail_tol"] > 0, "tail_tol: expected a positive float")
    return doc

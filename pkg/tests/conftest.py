import random
from fractions import Fraction

import pytest
from hypothesis import assume, strategies as st

from hypfan.fan import enumerate_fan
from hypfan.io import load_example
from hypfan.polyhedron import secondary_polyhedron
from hypfan.errors import SurfaceError
from hypfan.surface import build_surface

TAIL_TOL = 1e-5


@pytest.fixture(scope="session")
def examples():
    return {name: load_example(name) for name in ("T1", "T2", "T2b", "S3", "T3")}


@pytest.fixture(scope="session")
def fans(examples):
    return {name: enumerate_fan(d) for name, d in examples.items()}


@pytest.fixture(scope="session")
def polyhedra(examples, fans):
    return {name: secondary_polyhedron(examples[name], fans[name], TAIL_TOL)
            for name in ("T1", "T2", "T2b", "S3")}


def random_gluing(n_triangles: int, seed: int):
    """Random connected gluing of ``n_triangles`` triangles, or None."""
    rng = random.Random(seed)
    hs = list(range(3 * n_triangles))
    rng.shuffle(hs)
    pairs = [hs[i:i + 2] for i in range(0, len(hs), 2)]
    try:
        return build_surface(n_triangles, pairs)
    except SurfaceError:
        return None


@st.composite
def surfaces(draw, max_triangles=6):
    F = draw(st.sampled_from([t for t in (2, 4, 6, 8) if t <= max_triangles]))
    seed = draw(st.integers(0, 10**6))
    s = random_gluing(F, seed)
    assume(s is not None)
    return s


positive_rationals = st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=20).filter(lambda x: x > 0)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])

"""
Shared fixtures: small Coxeter systems, diagrams and problem instances.
"""

import os

os.environ.setdefault("APP_ENV", "test")

from pathlib import Path

import pytest

from src.coxcore.matrix import INF, CoxeterMatrix
from src.coxcore.system import build_system
from src.diagrams.diagram import Diagram
from src.pipeline.problem import ProblemInstance

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "instances"


def dihedral(m):
    return build_system(CoxeterMatrix.from_labels(("a", "b"), {("a", "b"): m}))


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def i2():
    """Factory for I2(m) on generators a, b."""
    return dihedral


@pytest.fixture
def h3_system():
    """H3 with o(rs) = 5, o(st) = 3, t ∈ T_s."""
    return build_system(CoxeterMatrix.from_labels(("r", "s", "t"), {("r", "s"): 5, ("s", "t"): 3}))


@pytest.fixture
def h3_r_system():
    """H3 with o(rs) = 5, o(rt) = 3, t ∈ T_r."""
    return build_system(CoxeterMatrix.from_labels(("r", "s", "t"), {("r", "s"): 5, ("r", "t"): 3}))


@pytest.fixture
def h4_system():
    return build_system(
        CoxeterMatrix.from_labels(("r", "s", "t", "u"), {("r", "s"): 5, ("s", "t"): 3, ("t", "u"): 3})
    )


@pytest.fixture
def h3_diagram():
    return Diagram.from_labels(("r", "s", "t"), {("r", "s"): 5, ("s", "t"): 3})


@pytest.fixture
def h3_free_diagram():
    """H3 plus a vertex x with infinite labels to r, s and t."""
    return Diagram.from_labels(
        ("r", "s", "t", "x"),
        {("r", "s"): 5, ("s", "t"): 3, ("r", "x"): INF, ("s", "x"): INF, ("t", "x"): INF},
    )


@pytest.fixture
def make_instance():
    """Build a ProblemInstance from generators, a sparse label map and S."""

    def build(generators, labels, S, order_cap=1000, group_cap=20000):
        matrix = CoxeterMatrix.from_labels(tuple(generators), labels)
        return ProblemInstance.from_dict(
            {
                "generators": list(generators),
                "matrix": matrix.to_rows(),
                "S": list(S),
                "options": {"order_cap": order_cap, "group_cap": group_cap},
            }
        )

    return build


@pytest.fixture
def load_instance():
    from src.pipeline.problem import load

    def build(name):
        return load(str(DATA_DIR / name))

    return build

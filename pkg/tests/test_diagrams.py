"""
Tests for diagrams, flexibility and edge classification
"""

import random
from itertools import combinations

import networkx as nx
import pytest

from src.coxcore.matrix import INF
from src.diagrams.classification import find_de1, is_delta_edge, is_theta_edge
from src.diagrams.context import EdgeContext, degree, is_tame
from src.diagrams.diagram import Diagram
from src.diagrams.flexibility import (
    find_chordfree_circuit,
    free_vertices,
    is_flexible,
    j_components,
    perp_fin_inf,
)
from src.diagrams.templates import find_pattern, load_templates
from src.utils.errors import NotDeltaEdge


def h4_with(extra_labels=None, extra=()):
    labels = {("r", "s"): 5, ("s", "t"): 3, ("t", "u"): 3}
    labels.update(extra_labels or {})
    return Diagram.from_labels(("r", "s", "t", "u") + tuple(extra), labels)


def de3_diagram():
    return Diagram.from_labels(
        ("r", "s", "t", "p1", "p2"),
        {
            ("r", "s"): 5,
            ("s", "t"): 3,
            ("t", "p1"): 3,
            ("p1", "p2"): 3,
            ("r", "p1"): INF,
            ("s", "p1"): INF,
            ("t", "p2"): INF,
        },
    )


def test_edges_include_commuting_pairs(h3_diagram):
    assert h3_diagram.edges() == [("r", "s"), ("r", "t"), ("s", "t")]
    assert h3_diagram.label("r", "t") == 2
    assert h3_diagram.finite_graph.has_edge("r", "t")
    assert not h3_diagram.coxeter_graph.has_edge("r", "t")


def test_perp_fin_inf(h3_free_diagram):
    perp, fin, inf = perp_fin_inf(h3_free_diagram, ("r", "s"))
    assert perp == frozenset()
    assert fin == frozenset({"t"})
    assert inf == frozenset({"x"})
    assert h3_free_diagram.perp(("t",)) == frozenset({"r"})


def test_spherical_types(h3_diagram):
    assert h3_diagram.is_spherical(("r", "s", "t"))
    assert h3_diagram.type_of(("r", "s", "t")) == "H3"
    assert h4_with().type_of(("r", "s", "t", "u")) == "H4"
    assert h4_with().is_spherical(("r", "s", "t", "u"))
    triangle = Diagram.from_labels(("r", "s", "t"), {("r", "s"): 5, ("s", "t"): 3, ("r", "t"): 3})
    assert not triangle.is_spherical(("r", "s", "t"))
    assert triangle.type_of(("r", "s", "t")) is None
    h5 = Diagram.from_labels(
        ("r", "s", "t", "u", "v"), {("r", "s"): 5, ("s", "t"): 3, ("t", "u"): 3, ("u", "v"): 3}
    )
    assert not h5.is_spherical(h5.vertices)


def test_has_h3_subset(h3_diagram, h3_free_diagram):
    assert h3_diagram.has_h3_subset()
    assert h3_diagram.has_h3_subset(("r", "s"))
    assert not h3_diagram.has_h3_subset(("r", "t"))
    assert h3_free_diagram.has_h3_subset(("s", "r"))
    plain = Diagram.from_labels(("a", "b", "c"), {("a", "b"): 5, ("a", "c"): INF, ("b", "c"): INF})
    assert not plain.has_h3_subset()


def test_restrict_and_ordered(h3_free_diagram):
    sub = h3_free_diagram.restrict(("x", "r"))
    assert sub.vertices == ("r", "x")
    assert sub.label("r", "x") == INF
    assert h3_free_diagram.ordered({"x", "s", "r"}) == ("r", "s", "x")


def test_components_and_free_vertices():
    diagram = Diagram.from_labels(
        ("r", "s", "a", "b", "c"),
        {
            ("r", "s"): 5,
            ("a", "s"): INF,
            ("b", "r"): INF,
            ("a", "b"): 3,
            ("c", "r"): INF,
            ("c", "s"): INF,
            ("a", "c"): INF,
        },
    )
    components = j_components(diagram, ("r", "s"))
    assert components == [frozenset({"a", "b", "c"})]
    assert free_vertices(diagram, ("r", "s"), components[0]) == ()
    flexibility = is_flexible(diagram, ("r", "s"))
    assert not flexibility
    assert flexibility.component == components[0]
    assert flexibility.circuit == ("r", "a", "b", "s")


def test_flexible_when_component_has_free_vertex():
    diagram = Diagram.from_labels(
        ("r", "s", "x", "y"),
        {("r", "s"): 5, ("r", "x"): INF, ("s", "x"): INF, ("r", "y"): INF, ("s", "y"): 3},
    )
    assert is_flexible(diagram, ("r", "s"))
    assert free_vertices(diagram, ("r", "s"), frozenset({"x", "y"})) == ("r",)
    assert find_chordfree_circuit(diagram, ("r", "s")) is None


def test_find_chordfree_circuit_square():
    diagram = Diagram.from_labels(
        ("r", "s", "x", "y"),
        {("r", "s"): 5, ("s", "x"): INF, ("r", "y"): INF},
    )
    assert find_chordfree_circuit(diagram, ("r", "s")) == ("r", "x", "y", "s")
    assert is_flexible(diagram, ("r", "s")).circuit == ("r", "x", "y", "s")


def test_theta_edges(h3_diagram, h3_free_diagram):
    i2 = Diagram.from_labels(("a", "b"), {("a", "b"): 5})
    assert is_theta_edge(i2, ("b", "a"))
    free = Diagram.from_labels(("a", "b", "c"), {("a", "b"): 7, ("a", "c"): INF, ("b", "c"): INF})
    assert is_theta_edge(free, ("b", "a"))
    assert not is_theta_edge(h3_diagram, ("r", "s"))
    assert not is_theta_edge(h3_free_diagram, ("r", "s"))
    assert not is_theta_edge(h3_diagram, ("r", "t"))


def test_theta_edge_needs_flexibility():
    diagram = Diagram.from_labels(
        ("r", "s", "x", "y"),
        {("r", "s"): 5, ("s", "x"): INF, ("r", "y"): INF},
    )
    assert not is_theta_edge(diagram, ("r", "s"))


def test_de1_triangle():
    triangle = Diagram.from_labels(("r", "s", "t"), {("r", "s"): 5, ("s", "t"): 3, ("r", "t"): 3})
    assert find_de1(triangle, ("r", "s")) == ("r", "s", "t")
    report = is_delta_edge(triangle, ("r", "s"))
    assert not report
    assert report.violations[0].pattern == "DE1"


def test_h3_edges_are_delta(h3_diagram, h3_free_diagram):
    assert find_de1(h3_diagram, ("r", "s")) is None
    assert is_delta_edge(h3_diagram, ("r", "s")).is_delta
    assert is_delta_edge(h3_free_diagram, ("r", "s"), exhaustive=True).to_dict()["violations"] == []


def test_de2_circuit_reported():
    diagram = Diagram.from_labels(
        ("r", "s", "t", "x", "y"),
        {("r", "s"): 5, ("s", "t"): 3, ("s", "x"): INF, ("t", "x"): INF, ("r", "y"): INF, ("t", "y"): INF},
    )
    report = is_delta_edge(diagram, ("r", "s"), exhaustive=True)
    assert [v.pattern for v in report.violations] == ["DE2"]
    assert report.violations[0].vertices == ("r", "x", "y", "s")


def test_templates_load():
    assert {"DE3", "DE4", "TAME"} <= set(load_templates())


def test_de3_pattern():
    diagram = de3_diagram()
    match = find_pattern(diagram, "DE3", ("r", "s"))
    assert match is not None
    assert match.roles["t"] == "t"
    assert match.path == ("p1", "p2")
    report = is_delta_edge(diagram, ("r", "s"), exhaustive=True)
    assert "DE3" in [v.pattern for v in report.violations]
    assert "DE2" not in [v.pattern for v in report.violations]


def de4_diagram(tail_length):
    """H4 core on r, s, t, u with anchor x and a path hanging off u."""
    path = [f"p{i}" for i in range(1, tail_length + 1)]
    labels = {("r", "s"): 5, ("s", "t"): 3, ("t", "u"): 3, ("x", "u"): INF, ("u", path[0]): 3, ("r", path[-1]): INF}
    for prev, v in zip(path, path[1:]):
        labels[(prev, v)] = 3
        labels[("u", v)] = INF
        labels[("r", prev)] = INF
        labels[("x", prev)] = INF
    return Diagram.from_labels(("r", "s", "t", "u", "x", *path), labels)


def test_de4_pattern_needs_two_path_vertices():
    diagram = de4_diagram(2)
    match = find_pattern(diagram, "DE4", ("r", "s"))
    assert match is not None
    assert match.roles["x"] == "x"
    assert match.path == ("p1", "p2")
    report = is_delta_edge(diagram, ("r", "s"), exhaustive=True)
    assert "DE4" in [v.pattern for v in report.violations]


def test_de4_rejects_single_vertex_path():
    diagram = de4_diagram(1)
    assert find_pattern(diagram, "DE4", ("r", "s")) is None
    report = is_delta_edge(diagram, ("r", "s"), exhaustive=True)
    assert "DE4" not in [v.pattern for v in report.violations]


def test_edge_context_h4_tame():
    context = EdgeContext(h4_with(), ("r", "s"))
    assert context.T == ("t",)
    assert context.T_s == ("t",)
    assert context.T_r == ()
    assert context.U_t == {"t": ("u",)}
    assert context.T4 == ("t",)
    assert context.tame == {"t": True}
    assert context.degree == 0
    assert context.K_t("t") == frozenset("rstu")
    assert context.K_t(None) == frozenset("rs")
    assert context.far("t") == "r"
    assert context.neighbour3("t") == "s"
    assert context.guarantee_violations() == []


def test_wild_vertex():
    """A vertex commuting with r, s, t and infinite to u makes t wild."""
    diagram = h4_with({("y", "u"): INF}, extra=("y",))
    assert not is_tame(diagram, ("r", "s"), "t")
    assert degree(diagram, ("r", "s")) == 1
    context = EdgeContext(diagram, ("r", "s"))
    assert context.wild == ("t",)
    assert is_tame(diagram, ("r", "s"), "t", K=("r", "s", "t", "u"))


def test_edge_context_rejects_other_labels(h3_diagram):
    with pytest.raises(NotDeltaEdge):
        EdgeContext(h3_diagram, ("s", "t"))


def test_edge_context_on_twisted_instance(load_instance):
    instance = load_instance("h3_twisted.json")
    diagram = instance.reflections.diagram(instance.order_cap)
    context = EdgeContext(diagram, ("bab", "a"))
    assert context.T == ("bcabacbcabacb",)
    assert context.T_r == ("bcabacbcabacb",)
    assert context.T_s == ()
    assert context.degree == 0
    assert context.components == []
    assert context.summary()["T_r"] == ["bcabacbcabacb"]


def _oracle_has_circuit(diagram, J):
    """Induced path r ... s with at least two inner vertices, via networkx."""
    r, s = J
    graph = diagram.finite_graph
    without = graph.copy()
    without.remove_edge(r, s)
    for path in nx.all_simple_paths(without, r, s):
        if len(path) >= 4 and graph.subgraph(path).number_of_edges() == len(path):
            return True
    return False


def _is_chordfree(diagram, circuit):
    graph = diagram.finite_graph.subgraph(circuit)
    return graph.number_of_edges() == len(circuit) and all(d == 2 for _, d in graph.degree())


def _random_diagram(rng, n):
    vertices = tuple(f"v{i}" for i in range(n))
    labels = {pair: rng.choice([2, 3, 5, INF, INF]) for pair in combinations(vertices, 2)}
    labels[(vertices[0], vertices[1])] = 5
    return Diagram.from_labels(vertices, labels)


def _sweep(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        diagram = _random_diagram(rng, rng.randint(3, 7))
        J = diagram.vertices[:2]
        circuit = find_chordfree_circuit(diagram, J)
        flexibility = is_flexible(diagram, J)
        assert (circuit is None) == (not _oracle_has_circuit(diagram, J))
        assert bool(flexibility) == (circuit is None)
        if circuit is not None:
            assert _is_chordfree(diagram, circuit)
            assert _is_chordfree(diagram, flexibility.circuit)
            assert circuit[0] == J[0] and circuit[-1] == J[1]


def test_flexibility_matches_circuit_oracle():
    _sweep(seed=7, count=150)


@pytest.mark.slow
def test_flexibility_matches_circuit_oracle_sweep():
    _sweep(seed=2024, count=1000)

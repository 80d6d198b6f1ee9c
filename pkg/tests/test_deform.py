"""
Tests for the construction words, deformations, gluing and the verifier
"""

import pytest

from src.coxcore.matrix import INF
from src.coxcore.reflections import ReflectionSet
from src.coxcore.words import EMPTY, Word
from src.diagrams.context import EdgeContext
from src.diagrams.diagram import Diagram
from src.deform.constructions import (
    k_mirror,
    k_special_deformation,
    rank2_special_deformation,
    sharpening_omega,
    standard_deformation,
    theta_deformation,
)
from src.deform.deformation import Deformation, abstract_reflections, inner_compose
from src.deform.merge import merge
from src.deform.tame import tame_deformation
from src.deform.verifier import CheckStatus, verify_deformation
from src.deform.wild import delta_edge_deformation
from src.deform.words import (
    C,
    H3_OMEGA_R,
    H3_OMEGA_S,
    H3_PI_R,
    H3_PI_S,
    OMEGA,
    PI,
    TAU,
    StandardWords,
    bar,
    case_words,
)
from src.roots.angles import is_sharp_angled_pair
from src.utils.errors import EdgeNotCovered, IncompatibleOverlap, NotASpecial, NotThetaEdge


def conj(system, w, x):
    """Element w·x·w⁻¹, with x a word."""
    w = Word.parse(w)
    return system.eval(w + Word.parse(x) + w.inverse())


def free_edge_diagram(m=5):
    """a - b with label m and c infinite to both."""
    return Diagram.from_labels(("a", "b", "c"), {("a", "b"): m, ("a", "c"): INF, ("b", "c"): INF})


# --- words ---------------------------------------------------------------------


def test_h3_words_t_s(h3_system):
    omega, pi = H3_OMEGA_S, H3_PI_S
    assert conj(h3_system, omega, "s") == h3_system.eval("s")
    assert conj(h3_system, omega, "t") == conj(h3_system, pi, "r")
    assert conj(h3_system, pi, "t") == h3_system.eval("rsr")


def test_h3_words_shifted_by_rsrs(h3_system):
    omega1, pi1 = C + H3_OMEGA_S, C + H3_PI_S
    assert h3_system.eval(omega1) == h3_system.eval("rsrtsrst")
    assert h3_system.eval(pi1) == h3_system.eval("rsrsrts")
    assert conj(h3_system, omega1, "s") == h3_system.eval("srs")
    assert conj(h3_system, omega1, "t") == conj(h3_system, pi1, "r")
    assert conj(h3_system, pi1, "t") == h3_system.eval("r")


def test_h3_words_t_r(h3_r_system):
    omega, pi = H3_OMEGA_R, H3_PI_R
    assert conj(h3_r_system, omega, "r") == h3_r_system.eval("rsr")
    assert conj(h3_r_system, omega, "t") == conj(h3_r_system, pi, "s")
    assert conj(h3_r_system, pi, "t") == h3_r_system.eval("s")


def test_h4_words(h4_system):
    assert conj(h4_system, PI, "r") == h4_system.eval("rsr")
    assert conj(h4_system, OMEGA, "s") == h4_system.eval("s")
    assert conj(h4_system, OMEGA, "t") == conj(h4_system, PI, "t")
    assert conj(h4_system, OMEGA, "u") == h4_system.eval("u")
    assert conj(h4_system, PI, "u") == h4_system.eval("u")


def test_h4_twist(h4_system):
    """τ fixes rsr and s and carries the H4 image of t to the H3 one."""
    assert conj(h4_system, TAU, "rsr") == h4_system.eval("rsr")
    assert conj(h4_system, TAU, "s") == h4_system.eval("s")
    h4_image = OMEGA + Word.parse("t") + OMEGA.inverse()
    assert conj(h4_system, TAU, h4_image) == conj(h4_system, H3_OMEGA_S, "t")


def test_h4_twist_t_r():
    from src.coxcore.matrix import CoxeterMatrix
    from src.coxcore.system import build_system

    system = build_system(
        CoxeterMatrix.from_labels(("r", "s", "t", "u"), {("r", "s"): 5, ("r", "t"): 3, ("t", "u"): 3})
    )
    words = case_words("r", 4)
    assert conj(system, words["tau"], "rsr") == system.eval("rsr")
    assert conj(system, words["tau"], "s") == system.eval("s")
    assert conj(system, words["omega"], "r") == system.eval("rsr")
    assert conj(system, words["omega"], "u") == system.eval("u")
    pair = {conj(system, words["pi"], "s"), conj(system, words["pi"], "t")}
    assert pair == {system.eval("s"), conj(system, words["omega"], "t")}


def test_bar_and_relabel():
    assert bar(Word.parse("rst")) == Word.parse("srt")
    words = StandardWords.build("a", "b", "c", side="s")
    assert words.omega_t == Word.parse("cbacbc")
    assert words.pi_t == Word.parse("cab")
    assert words.srs == Word.parse("bab")
    assert StandardWords.build("a", "b").omega_t == EMPTY


# --- rank 2 and theta-edges ------------------------------------------------------


def test_sharpening_omega_label_five(i2):
    system = i2(5)
    S = ReflectionSet.from_words(system, {"a": "a", "bab": "bab"})
    assert sharpening_omega(S, "bab", "a", 100) == Word(("a", "bab", "a"))


def test_sharpening_omega_rejects_sharp_pair(i2):
    system = i2(5)
    S = ReflectionSet.from_words(system, {"a": "a", "b": "b"})
    with pytest.raises(ValueError):
        sharpening_omega(S, "b", "a", 100)


@pytest.mark.parametrize("m", [7, 8, 9])
def test_sharpening_omega_search(i2, m):
    system = i2(m)
    S = ReflectionSet.from_words(system, {"a": "a", "bab": "bab"})
    if is_sharp_angled_pair(S["a"], S["bab"], system, 100).sharp:
        pytest.skip("pair is already sharp")
    w = sharpening_omega(S, "bab", "a", 100)
    assert w.alphabet() <= {"a", "bab"}
    updated = S.replace({"bab": w})
    angle = is_sharp_angled_pair(updated["bab"], updated["a"], system, 100)
    assert angle.sharp
    assert angle.order_q == system.order_with_cap(S["bab"].element * S["a"].element, 100)


@pytest.mark.parametrize("a", ["b", "a"])
def test_rank2_special_deformation_verifies(a):
    diagram = free_edge_diagram()
    d = rank2_special_deformation(diagram, ("b", "a"), a, Word.parse("aba"))
    assert d.conjugator("b") == Word.parse("aba")
    assert d.conjugator("a") == EMPTY
    assert d.conjugator("c") == (EMPTY if a == "b" else Word.parse("aba"))
    report = verify_deformation(d, abstract_reflections(diagram), 100)
    assert report.ok, report.to_dict()
    assert report.status("ad2") == CheckStatus.PASSED


def test_rank2_special_rejects_foreign_vertex():
    with pytest.raises(ValueError):
        rank2_special_deformation(free_edge_diagram(), ("b", "a"), "c", Word.parse("aba"))


def test_theta_deformation_verifies():
    diagram = free_edge_diagram()
    d = theta_deformation(diagram, ("b", "a"), Word.parse("aba"))
    assert set(d.domain) == {"a", "b", "c"}
    assert verify_deformation(d, abstract_reflections(diagram), 100).ok


def test_theta_deformation_rejects_h3(h3_diagram):
    with pytest.raises(NotThetaEdge):
        theta_deformation(h3_diagram, ("r", "s"), Word.parse("srs"))


def test_corrupted_deformation_is_flagged():
    diagram = free_edge_diagram()
    d = rank2_special_deformation(diagram, ("b", "a"), "b", Word.parse("aba"))
    d.conjugators["a"] = Word.parse("b")
    report = verify_deformation(d, abstract_reflections(diagram), 100)
    assert not report.ok
    assert "ad2" in report.failures


def test_missing_vertex_is_flagged():
    diagram = free_edge_diagram()
    d = rank2_special_deformation(diagram, ("b", "a"), "b", Word.parse("aba")).restrict(("a", "b"))
    report = verify_deformation(d, abstract_reflections(diagram), 100)
    assert report.status("domain") == CheckStatus.FAILED


# --- gluing ----------------------------------------------------------------------


def test_merge_rejects_different_edges():
    diagram = free_edge_diagram()
    d1 = rank2_special_deformation(diagram, ("b", "a"), "b", Word.parse("aba"))
    d2 = rank2_special_deformation(diagram, ("a", "b"), "a", Word.parse("bab"))
    with pytest.raises(IncompatibleOverlap):
        merge(d1, d2, diagram)


def test_merge_rejects_disagreement():
    diagram = free_edge_diagram()
    d1 = rank2_special_deformation(diagram, ("b", "a"), "b", Word.parse("aba"))
    d2 = rank2_special_deformation(diagram, ("b", "a"), "a", Word.parse("aba"))
    with pytest.raises(IncompatibleOverlap) as excinfo:
        merge(d1, d2, diagram)
    assert excinfo.value.details["vertex"] == "c"


def test_merge_needs_every_edge_covered():
    diagram = Diagram.from_labels(
        ("a", "b", "c", "d"),
        {("a", "b"): 5, ("a", "c"): INF, ("b", "c"): INF, ("a", "d"): INF, ("b", "d"): INF, ("c", "d"): 3},
    )
    d = rank2_special_deformation(diagram, ("b", "a"), "b", Word.parse("aba"))
    with pytest.raises(EdgeNotCovered):
        merge(d.restrict(("a", "b", "c")), d.restrict(("a", "b", "d")), diagram)


def test_merge_glues_pieces():
    diagram = Diagram.from_labels(
        ("a", "b", "c", "d"),
        {("a", "b"): 5, ("a", "c"): INF, ("b", "c"): INF, ("a", "d"): INF, ("b", "d"): INF, ("c", "d"): INF},
    )
    d = rank2_special_deformation(diagram, ("b", "a"), "b", Word.parse("aba"))
    glued = merge(d.restrict(("a", "b", "c")), d.restrict(("a", "b", "d")), diagram)
    assert set(glued.domain) == {"a", "b", "c", "d"}
    assert verify_deformation(glued, abstract_reflections(diagram), 100).ok


def test_merge_agrees_by_element_with_evaluator(h3_diagram):
    context = EdgeContext(h3_diagram, ("r", "s"))
    d = standard_deformation(context, "t")
    # (sr)⁶s equals srs because o(rs) = 5
    other = Deformation(
        J=d.J,
        omega=d.omega,
        domain=d.domain,
        conjugators={**d.conjugators, "r": Word.parse("srsrsrsrsrsrs")},
        edge_map=d.edge_map,
    )
    with pytest.raises(IncompatibleOverlap):
        merge(d, other, h3_diagram)
    glued = merge(d, other, h3_diagram, evaluator=abstract_reflections(h3_diagram))
    assert glued.conjugator("r") == d.conjugator("r")


# --- H3 / H4 constructions -------------------------------------------------------


def test_standard_deformation_t_s(h3_diagram):
    context = EdgeContext(h3_diagram, ("r", "s"))
    d = standard_deformation(context, "t")
    assert d.delta("t") == Word.parse("tsrtst").conjugate("t")
    assert d.delta("r") == Word.parse("srs").conjugate("r")
    assert d.conjugator("s") == EMPTY
    assert d.tame_witnesses == {"t": EMPTY}
    report = verify_deformation(d, abstract_reflections(h3_diagram), 100)
    assert report.ok, report.to_dict()
    assert report.status("automorphism") == CheckStatus.PASSED


def test_standard_deformation_t_r():
    diagram = Diagram.from_labels(("r", "s", "t"), {("r", "s"): 5, ("r", "t"): 3})
    context = EdgeContext(diagram, ("r", "s"))
    assert context.T_r == ("t",)
    d = standard_deformation(context, "t")
    assert d.conjugator("t") == Word.parse("srstrsrt")
    assert verify_deformation(d, abstract_reflections(diagram), 100).ok


@pytest.mark.slow
def test_standard_deformation_h4():
    diagram = Diagram.from_labels(("r", "s", "t", "u"), {("r", "s"): 5, ("s", "t"): 3, ("t", "u"): 3})
    context = EdgeContext(diagram, ("r", "s"))
    d = standard_deformation(context, "t")
    assert d.conjugator("u") == EMPTY
    assert verify_deformation(d, abstract_reflections(diagram), 100, 20000).ok


def test_tame_deformation_with_free_vertex(h3_free_diagram):
    context = EdgeContext(h3_free_diagram, ("r", "s"))
    d = tame_deformation(h3_free_diagram, context)
    assert set(d.domain) == {"r", "s", "t", "x"}
    assert d.conjugator("x") == EMPTY
    assert d.conjugator("t") == Word.parse("tsrtst")
    assert verify_deformation(d, abstract_reflections(h3_free_diagram), 100).ok
    assert delta_edge_deformation(h3_free_diagram, ("r", "s")).delta_words() == d.delta_words()


def test_tame_deformation_restricts_to_standard(h3_free_diagram):
    context = EdgeContext(h3_free_diagram, ("r", "s"))
    d = tame_deformation(h3_free_diagram, context)
    standard = standard_deformation(context, "t")
    assert d.restrict(context.K_def("t")).delta_words() == standard.delta_words()


def test_k_special_deformation(h3_free_diagram):
    d = k_special_deformation(h3_free_diagram, ("r", "s"), ("r", "s", "t"), "r")
    assert d.conjugator("x") == Word.parse("tsrtst")
    report = verify_deformation(d, abstract_reflections(h3_free_diagram), 100)
    assert report.ok, report.to_dict()


def test_k_special_requires_twa():
    diagram = Diagram.from_labels(
        ("r", "s", "t", "x"),
        {("r", "s"): 5, ("s", "t"): 3, ("r", "x"): 3, ("s", "x"): INF, ("t", "x"): INF},
    )
    with pytest.raises(NotASpecial) as excinfo:
        k_special_deformation(diagram, ("r", "s"), ("r", "s", "t"), "r")
    assert excinfo.value.condition == "TWa"


def test_k_mirror_is_an_involution():
    diagram = Diagram.from_labels(
        ("r", "s", "t", "x"),
        {("r", "s"): 5, ("s", "t"): 3, ("r", "x"): INF, ("s", "x"): INF, ("t", "x"): 3},
    )
    K = ("r", "s", "t")
    mirror, theta = k_mirror(diagram, K)
    assert mirror.label("r", "x") == 3
    assert mirror.label("t", "x") == INF
    assert theta[frozenset({"t", "x"})] == frozenset({"r", "x"})
    back, theta_back = k_mirror(mirror, K)
    assert back.matrix == diagram.matrix
    for E, image in theta.items():
        assert theta_back[image] == E


def test_inner_compose_prefixes_conjugators(h3_diagram):
    context = EdgeContext(h3_diagram, ("r", "s"))
    d = inner_compose(Word.parse("s"), standard_deformation(context, "t"))
    assert d.conjugator("s") == Word.parse("s")
    assert d.conjugator("r") == Word.parse("rs")
    assert d.spherical_family == ()


def test_deformation_json_keeps_images(h3_free_diagram):
    context = EdgeContext(h3_free_diagram, ("r", "s"))
    d = tame_deformation(h3_free_diagram, context)
    restored = Deformation.from_json(d.to_json())
    assert restored.delta_words() == d.delta_words()
    assert restored.J == d.J
    assert set(restored.spherical_family) == set(d.spherical_family)


@pytest.mark.slow
def test_wild_deformation_verifies():
    """H4 around J plus y commuting with r, s, t and infinite to u."""
    diagram = Diagram.from_labels(
        ("r", "s", "t", "u", "y"), {("r", "s"): 5, ("s", "t"): 3, ("t", "u"): 3, ("u", "y"): INF}
    )
    context = EdgeContext(diagram, ("r", "s"))
    assert context.degree == 1
    d = delta_edge_deformation(diagram, ("r", "s"), context=context)
    assert set(d.domain) == set(diagram.vertices)
    report = verify_deformation(d, abstract_reflections(diagram), 200, 20000)
    assert report.ok, report.to_dict()

"""
Tests for words, Coxeter matrices and exact group elements
"""

import pytest

from src.coxcore.enumeration import enumerate_group, enumerate_reflections, simple_pair_orbit
from src.coxcore.matrix import INF, CoxeterMatrix, label_to_json, parse_label
from src.coxcore.reflections import ReflectionSet, pair_label, reflection_from_word
from src.coxcore.system import GroupElement, Unbounded
from src.coxcore.words import EMPTY, Word, power_word
from src.utils.errors import GroupTooLarge


def test_word_parse_and_str():
    assert Word.parse("rsr").letters == ("r", "s", "r")
    assert Word.parse("s1.s2.s1").letters == ("s1", "s2", "s1")
    assert Word.parse("s1 s2").letters == ("s1", "s2")
    assert Word.parse("1") == EMPTY
    assert str(EMPTY) == "1"
    assert str(Word(("s1", "s2"))) == "s1.s2"
    assert Word.parse(["a", "b"]).to_json() == ["a", "b"]


def test_word_operations():
    w = Word.parse("rst")
    assert w.inverse() == Word.parse("tsr")
    assert w.conjugate("u") == Word.parse("rstutsr")
    assert Word.parse("rsstr").free_reduce() == Word.parse("rtr")
    assert Word.parse("rs").relabel({"r": "a"}) == Word.parse("as")
    assert Word.parse("xy").substitute({"x": Word.parse("ab"), "y": Word.parse("c")}) == Word.parse("abc")
    assert w.alphabet() == frozenset("rst")
    assert power_word("s", "r", 4) == Word.parse("srsr")
    assert power_word("s", "r", 0) == EMPTY


def test_split_conjugate():
    w, r = Word.parse("tsrst").split_conjugate()
    assert (w, r) == (Word.parse("ts"), "r")
    assert not Word.parse("rs").is_conjugate_shape()
    with pytest.raises(ValueError):
        Word.parse("rs").split_conjugate()


def test_parse_label():
    assert parse_label("inf") == INF
    assert parse_label("∞") == INF
    assert parse_label(5) == 5
    assert parse_label(3.0) == 3
    assert label_to_json(INF) == "inf"
    with pytest.raises(ValueError):
        parse_label(2.5)
    with pytest.raises(ValueError):
        parse_label(True)


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 3], [4, 1]],
        [[1, 1], [1, 1]],
        [[2, 3], [3, 1]],
        [[1, 3, 2], [3, 1]],
    ],
)
def test_matrix_rejects_invalid(rows):
    with pytest.raises(ValueError):
        CoxeterMatrix.from_rows(("a", "b"), rows)


@pytest.mark.parametrize("name", ["1", "e", ""])
def test_matrix_rejects_identity_names(name):
    with pytest.raises(ValueError, match="reserved"):
        CoxeterMatrix.from_rows((name, "b"), [[1, 3], [3, 1]])


def test_matrix_from_labels_defaults_to_two():
    matrix = CoxeterMatrix.from_labels(("a", "b", "c"), {("a", "b"): 5, ("b", "c"): "inf"})
    assert matrix.label("a", "c") == 2
    assert matrix.label("c", "b") == INF
    assert matrix.to_rows() == [[1, 5, 2], [5, 1, "inf"], [2, "inf", 1]]


@pytest.mark.parametrize("m", [3, 5, 6, 7])
def test_dihedral_order(i2, m):
    system = i2(m)
    assert system.order_with_cap(system.eval("ab"), 100) == m
    assert len(enumerate_group(system, 1000)) == 2 * m
    assert len(enumerate_reflections(system, 1000)) == m


def test_products_follow_matrices_not_witnesses(i2):
    system = i2(5)
    a, ab = system.eval("a"), system.eval("ab")
    assert a * ab == system.eval("b")
    assert ab * ab == system.eval("abab")
    assert ab * ab != system.eval("baba")
    assert ab * system.gen_matrices[1] == system.eval("a")

    mislabelled = GroupElement(system, system.eval("b").matrix, Word(("a",)))
    assert ab * mislabelled == system.eval("a")
    assert system.generator_element(mislabelled) is None
    assert system.generator_element(system.eval("b")) == 1


def test_infinite_dihedral_hits_cap(i2):
    system = i2(INF)
    assert isinstance(system.order_with_cap(system.eval("ab"), 50), Unbounded)
    with pytest.raises(GroupTooLarge):
        enumerate_group(system, 100)


def test_h3_counts(h3_system):
    assert len(enumerate_group(h3_system, 1000)) == 120
    assert len(enumerate_reflections(h3_system, 1000)) == 15


@pytest.mark.slow
def test_h4_counts(h4_system):
    assert len(enumerate_group(h4_system, 20000)) == 14400
    assert len(enumerate_reflections(h4_system, 20000)) == 60


def test_group_element_basics(h3_system):
    identity = h3_system.identity()
    r = h3_system.eval("r")
    assert identity.is_identity()
    assert r.is_involution()
    assert (r * r) == identity
    assert h3_system.eval("rsrsrsrsrs") == identity
    assert h3_system.eval("st").inverse() == h3_system.eval("ts")
    assert h3_system.eval("t").conjugate_by(h3_system.eval("s")) == h3_system.eval("sts")
    assert h3_system.eval("rt") == h3_system.eval("tr")


def test_reflection_roots_are_positive(h3_system):
    for rec in enumerate_reflections(h3_system, 1000):
        assert rec.root.positive
        assert all(c.sign() >= 0 for c in rec.root.coords)
        assert rec.element == h3_system.eval(rec.word)


def test_same_reflection_same_root(i2):
    system = i2(5)
    # (ab)²a = ababa and bab are the same reflection of I2(5)
    first = reflection_from_word("ababa", system)
    second = reflection_from_word("bab", system)
    assert first.element == second.element
    assert first.root == second.root


def test_pair_label(i2, h3_system):
    system = i2(5)
    a = reflection_from_word("a", system)
    bab = reflection_from_word("bab", system)
    assert pair_label(a, bab, system, 100) == 5
    s = reflection_from_word("s", h3_system)
    t = reflection_from_word("t", h3_system)
    r = reflection_from_word("r", h3_system)
    assert pair_label(s, t, h3_system, 100) == 3
    assert pair_label(r, t, h3_system, 100) == 2
    free = i2(INF)
    assert pair_label(reflection_from_word("a", free), reflection_from_word("b", free), free, 10) == INF


def test_reflection_set_replace(i2):
    """Replacing bab by its conjugate under a·bab·a gives aba in I2(5)."""
    system = i2(5)
    S = ReflectionSet.from_words(system, {"a": "a", "bab": "bab"})
    updated = S.replace({"bab": Word(("a", "bab", "a"))})
    assert updated.names == ("a", "bab")
    assert updated["bab"].element == system.eval("aba")
    assert updated["a"] is S["a"]
    assert not updated.same_elements(S)
    assert S.evaluate(Word(("a", "bab"))) == system.eval("abab")


def test_reflection_set_diagram(i2):
    system = i2(5)
    S = ReflectionSet.from_words(system, {"a": "a", "bab": "bab"})
    matrix = S.coxeter_matrix(100)
    assert matrix.label("a", "bab") == 5
    assert S.diagram(100).vertices == ("a", "bab")


def test_simple_pair_orbit_dihedral(i2):
    """In I2(5) the simple pair orbit holds exactly the 5 pairs at angle π/5."""
    system = i2(5)
    orbit = simple_pair_orbit(system, 1000)
    assert len(orbit) == 5
    a, b = system.eval("a"), system.eval("b")
    assert frozenset((a.key, b.key)) in orbit
    assert frozenset((a.key, system.eval("bab").key)) not in orbit

import numpy as np

from pytest import mark
from pytest import raises

from core.errors import ConfigError
from core.errors import GroupOverflow
from core.rootweyl import act_point
from core.rootweyl import all_reduced_words
from core.rootweyl import bruhat_leq
from core.rootweyl import find_root
from core.rootweyl import gl_datum
from core.rootweyl import inversion_set
from core.rootweyl import preset
from core.rootweyl import reduced_word
from core.rootweyl import root_label
from core.rootweyl import weyl_enumerate


@mark.parametrize("name order npos longest".split(),
                  (("sl2",  2, 1, 1),
                   ("a2" ,  6, 3, 3),
                   ("b2" ,  8, 4, 4),
                   ("g2" , 12, 6, 6),
                   ("gl3",  6, 3, 3)))
def test_preset_sizes(name, order, npos, longest):
    d = preset(name)
    assert len(d.elements) == order
    assert len(d.positive_roots) == npos
    assert len(d.roots) == 2 * npos
    assert d.longest_element.length == longest


@mark.parametrize("name", ("sl2", "a2", "b2", "gl3"))
def test_group_axioms(name):
    d = preset(name)
    for w in d.elements:
        assert d.multiply(w, d.inverse(w)) == d.identity
        assert len(inversion_set(w, d)) == w.length
        assert reduced_word(w.matrix, d) == w.word
    for root in d.positive_roots:
        s = d.reflection(root)
        assert d.multiply(s, s) == d.identity
        assert d.act_root(s, root) == -root


def test_simple_reflections_and_cartan(b2):
    assert b2.cartan.tolist() == [[2, -1], [-2, 2]]
    assert b2.braid_order(0, 1) == 4
    for i in range(b2.nsimple):
        assert b2.simple(i).length == 1
        assert b2.right_descents(b2.simple(i)) == [i]


def test_reduced_words_of_the_longest_element(a2, b2):
    assert all_reduced_words(a2.longest_element, a2) == [(0, 1, 0), (1, 0, 1)]
    assert all_reduced_words(b2.longest_element, b2) == [(0, 1, 0, 1), (1, 0, 1, 0)]
    assert all_reduced_words(a2.identity, a2) == [()]


def test_bruhat_order(a2):
    top, bottom = a2.longest_element, a2.identity
    for w in a2.elements:
        assert bruhat_leq(bottom, w, a2)
        assert bruhat_leq(w, top, a2)
        assert bruhat_leq(w, w, a2)
    s1, s2 = a2.simple(0), a2.simple(1)
    assert not bruhat_leq(s1, s2, a2)
    assert not bruhat_leq(top, s1, a2)


def test_act_point_keeps_gamma(a2):
    p = np.array([0.1 + 0.2j, 0.3 - 0.1j, 0.7j])
    s = a2.simple(0)
    moved = act_point(s, p, a2)
    assert moved[-1] == p[-1]
    assert np.allclose(act_point(s, moved, a2), p)


def test_characters_transform_contravariantly(a2, rng):
    p = rng.normal(size=3) + 1j * rng.normal(size=3)
    for w in a2.elements:
        for root in a2.positive_roots:
            image = a2.act_root(w, root)
            lhs = image.array @ act_point(w, p, a2)[:2]
            assert np.isclose(lhs, root.array @ p[:2])


def test_root_lookup_and_labels(b2):
    highest = b2.positive_roots[-1]
    assert find_root(b2, highest.vector) == highest
    assert find_root(b2, (7, 7)) is None
    assert root_label(b2.simple_root(0), b2) == "(1,0)"


def test_gl_datum_and_errors():
    assert gl_datum(4).rank == 4
    with raises(ConfigError):
        gl_datum(7)
    with raises(ConfigError):
        preset("e8")
    with raises(GroupOverflow):
        weyl_enumerate(preset("g2"), cap=5)

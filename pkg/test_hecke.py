import numpy as np

from pytest import approx
from pytest import mark
from pytest import raises

from core.elliptic import f_eval
from core.elliptic import lattice_distance
from core.elliptic import sn_params
from core.hecke import HeckeElement
from core.hecke import act
from core.hecke import action_composition_check
from core.hecke import associativity_check
from core.hecke import check_conditions
from core.hecke import commutator_with_section
from core.hecke import compare_reduced_words
from core.hecke import conjugate
from core.hecke import coroot_direction
from core.hecke import demazure_Dem
from core.hecke import demazure_lusztig
from core.hecke import demazure_X
from core.hecke import divisor_loci
from core.hecke import f_iw
from core.hecke import generator_pool
from core.hecke import mult
from core.hecke import products_of_generators
from core.hecke import qwk_pushforward
from core.hecke import qwk_residue_check
from core.hecke import random_generator_words
from core.hecke import rank1_pushpull
from core.hecke import root_form
from core.hecke import t_basis
from core.hecke import triangularity_check
from core.rootweyl import act_point
from core.rootweyl import preset
from core.sections import ONE
from core.sections import ZERO
from core.sections import Const
from core.sections import F
from core.sections import LinearForm
from core.sections import add
from core.sections import as_evaluator
from core.sections import divisor_sample
from core.sections import generic_point
from core.sections import mul
from core.sections import pullback
from core.sections import random_test_section
from core.sections import singular_loci


def worst_relative(h, p, c):
    """Largest |coefficient|/scale of h at p."""
    return max((abs(v) / s for v, s in (f.evaluate(p, c) for f in h.terms.values())), default=0.0)


def orbit_loci(d, sigma):
    loci = divisor_loci(d)
    for w in d.elements:
        loci.extend(singular_loci(pullback(sigma, w)))
    return loci


def test_element_arithmetic(a2):
    s1, s2 = a2.simple(0), a2.simple(1)
    product = mult(HeckeElement.delta(a2, s1), HeckeElement.delta(a2, s2))
    assert list(product.terms) == [a2.multiply(s1, s2)]
    assert HeckeElement(a2, {s1: ZERO}).terms == {}
    total = HeckeElement.delta(a2, s2) + HeckeElement.identity(a2) - HeckeElement.delta(a2, s2)
    assert a2.identity in total.support
    assert total.coefficient(a2.identity) == ONE


def test_reflection_conjugates_a_section_to_its_pullback(sl2, curve, fp, rng):
    s = sl2.simple(0)
    f = F(LinearForm.of([1]), fp)
    delta = HeckeElement.delta(sl2, s)
    product = mult(mult(delta, HeckeElement.scalar(sl2, f)), delta)
    assert product.support == [sl2.identity]
    p = generic_point(rng, sl2.rank, curve, singular_loci(f) + singular_loci(pullback(f, s)))
    value, scale = product.coefficient(sl2.identity).evaluate(p, curve)
    assert value == approx(f_eval(-p[0], fp, curve), abs=curve.bound(scale))


def test_random_generator_words(a2, fp, rng):
    words = random_generator_words(a2, [fp], rng, 5, 3)
    pool = dict(generator_pool(a2, [fp]))
    assert len(words) == 5
    for label, elements in words:
        names = label.split("*")
        assert len(names) == len(elements) == 3
        assert set(names) <= set(pool)


@mark.parametrize("name", ("sl2", "a2"))
def test_products_associate_through_the_action(name, curve, fp, rng):
    d = preset(name)
    sigma = random_test_section(d, rng, 2, curve)
    chk = associativity_check(d, [fp], sigma, curve, rng, triples=20, points=3)
    assert chk.passed, chk.to_dict()
    assert chk.samples == 60


@mark.parametrize("name", ("sl2", "a2"))
def test_action_composes(name, curve, fp, rng):
    d = preset(name)
    sigma = random_test_section(d, rng, 2, curve)
    chk = action_composition_check(d, [fp], sigma, curve, rng, pairs=10, points=3)
    assert chk.passed, chk.to_dict()
    assert chk.samples == 30


def test_action_composition_respects_the_order(a2, curve, rng):
    d1, d2 = (HeckeElement.delta(a2, a2.simple(i)) for i in range(2))
    sigma = random_test_section(a2, rng, 2, curve)
    p = generic_point(rng, a2.rank, curve, orbit_loci(a2, sigma))
    ordered = act(mult(d1, d2), sigma, curve)(p).value
    assert ordered == approx(act(d1, act(d2, sigma, curve), curve)(p).value)
    assert ordered != approx(act(d2, act(d1, sigma, curve), curve)(p).value)


@mark.parametrize("name", ("sl2", "a2", "b2"))
def test_x_squares_to_zero_and_absorbs_delta(name, curve, rng):
    d = preset(name)
    loci = divisor_loci(d)
    for alpha in d.positive_roots:
        x = demazure_X(d, alpha)
        left = mult(HeckeElement.delta(d, d.reflection(alpha)), x)
        for _ in range(5):
            p = generic_point(rng, d.rank, curve, loci)
            assert worst_relative(mult(x, x), p, curve) <= 1e-9
            assert worst_relative(left - x, p, curve) <= 1e-9


def test_conjugation_moves_the_root(a2, curve, rng):
    loci = divisor_loci(a2)
    p = generic_point(rng, a2.rank, curve, loci)
    for w in a2.elements:
        for alpha in a2.positive_roots:
            moved = conjugate(a2, w, demazure_X(a2, alpha)) - demazure_X(a2, a2.act_root(w, alpha))
            assert worst_relative(moved, p, curve) <= 1e-9


@mark.parametrize("name", ("sl2", "a2"))
def test_x_acts_by_dem_with_invariant_image(name, curve, rng):
    d = preset(name)
    sigma = random_test_section(d, rng, 2, curve)
    loci = orbit_loci(d, sigma)
    for alpha in d.positive_roots:
        image = act(demazure_X(d, alpha), sigma, curve)
        dem = demazure_Dem(d, alpha, sigma, curve)
        refl = d.reflection(alpha)
        for _ in range(5):
            p = generic_point(rng, d.rank, curve, loci)
            value, scale = image(p)
            assert value == approx(dem(p).value, abs=curve.bound(scale))
            assert image(act_point(refl, p, d)).value == approx(value, abs=curve.bound(scale))


def test_dem_extends_across_the_divisor(sl2, curve, rng):
    alpha = sl2.positive_roots[0]
    sigma = random_test_section(sl2, rng, 1, curve)
    image = act(demazure_X(sl2, alpha), sigma, curve)
    dem = demazure_Dem(sl2, alpha, sigma, curve)
    direction = coroot_direction(alpha, sl2.rank)
    loci = singular_loci(sigma) + singular_loci(pullback(sigma, sl2.reflection(alpha)))
    for _ in range(3):
        p = divisor_sample(root_form(alpha), rng, curve, loci)
        assert lattice_distance(root_form(alpha)(p), curve) <= 1e-9
        h = 1e-5
        plus, minus = image(p + h * direction), image(p - h * direction)
        average = (plus.value + minus.value) / 2
        value, scale = dem(p)
        assert abs(value - average) <= 1e-6 * max(scale, plus.scale, minus.scale)


def test_twisted_leibniz(a2, curve, rng):
    sigma = random_test_section(a2, rng, 2, curve)
    loci = orbit_loci(a2, sigma)
    for alpha in a2.positive_roots:
        comm = commutator_with_section(a2, alpha, sigma)
        lead = as_evaluator(comm.coefficient(a2.identity), curve)
        dem = demazure_Dem(a2, alpha, sigma, curve)
        p = generic_point(rng, a2.rank, curve, loci)
        value, scale = lead(p)
        assert value == approx(dem(p).value, abs=curve.bound(scale))
        rest = HeckeElement(a2, {w: f for w, f in comm.terms.items() if w != a2.identity})
        assert worst_relative(rest, p, curve) <= 1e-9


@mark.parametrize("name", ("sl2", "a2"))
def test_rank_one_pushpull_is_dem(name, curve, rng):
    d = preset(name)
    sigma = random_test_section(d, rng, 2, curve)
    loci = orbit_loci(d, sigma)
    for alpha in d.positive_roots:
        push = rank1_pushpull(d, alpha, sigma, curve)
        dem = demazure_Dem(d, alpha, sigma, curve)
        for _ in range(3):
            p = generic_point(rng, d.rank, curve, loci)
            value, scale = push(p)
            assert value == approx(dem(p).value, abs=curve.bound(scale))


@mark.parametrize("name", ("sl2", "a2"))
def test_demazure_lusztig_satisfies_membership(name, curve, fp, rng):
    d = preset(name)
    for i in range(d.nsimple):
        checks = check_conditions(demazure_lusztig(d, i, fp), curve, rng, 4, label=f"T_{i + 1}")
        assert len(checks) == 3 * len(d.positive_roots)
        failing = [(ch.name, ch.condition, ch.detail) for ch in checks if not ch.passed]
        assert failing == []


def test_membership_rejects_outsiders(sl2, curve, fp, rng):
    pool = dict(generator_pool(sl2, [fp]))
    assert sorted(pool) == ["T_1", "X_(1)", "delta_s1"]
    for name in ("delta_s1", "X_(1)"):
        checks = check_conditions(pool[name], curve, rng, 3, label=name)
        r3 = [ch for ch in checks if ch.condition == "R3"]
        assert not all(ch.passed for ch in r3)


def test_products_of_generators_enumerates_words(a2, fp):
    names = [name for name, _ in products_of_generators(a2, [fp], max_length=2)]
    assert names == ["T1", "T2", "T11", "T12", "T21", "T22"]


@mark.parametrize("name points".split(), (("sl2", 2), ("a2", 2), ("b2", 1)))
def test_triangularity(name, points, curve, fp, rng):
    d = preset(name)
    checks, meta = triangularity_check(d, [fp], curve, rng, points=points)
    assert [ch.condition for ch in checks] == ["bruhat-triangular", "leading coefficient", "rank"]
    assert all(ch.passed for ch in checks), [ch.to_dict() for ch in checks]
    assert len(meta["condition_numbers"]) == points
    assert len(meta["untwisted_product_matches"]) == len(d.elements)
    assert set(meta["untwisted_product_matches"]) == {w.label for w in d.elements}


def test_leading_coefficient_variants_agree_in_length_one(a2, fp, curve, rng):
    s1 = a2.simple(0)
    twisted, untwisted = f_iw(s1, [fp], a2), f_iw(s1, [fp], a2, twisted=False)
    assert twisted == untwisted
    with raises(ValueError):
        t_basis(a2.longest_element, [fp], a2)


def test_compare_reduced_words_reports(a2, fp, curve, rng):
    result = compare_reduced_words(a2.longest_element, a2, [fp], curve, rng, points=1)
    assert result["words"] == ["121", "212"]
    assert np.isfinite(result["max_difference"])


def qwk_section(fp, curve):
    return add(F(LinearForm.of([1], 1), fp), mul(Const(0.5 - 0.25j), F(LinearForm.of([1]), sn_params(curve))))


def test_qwk_two_points_is_rank_one_pushpull(curve, fp, rng):
    gl2 = preset("gl2")
    f = qwk_section(fp, curve)
    sigma = f.map_forms(lambda form: LinearForm.of((0, -form.coeffs[0]), form.gamma, form.shift))
    lhs, rhs = qwk_pushforward(f, 2, curve), rank1_pushpull(gl2, gl2.positive_roots[0], sigma, curve)
    loci = orbit_loci(gl2, sigma)
    for _ in range(5):
        p = generic_point(rng, gl2.rank, curve, loci)
        value, scale = lhs(p)
        assert value == approx(rhs(p).value, abs=curve.bound(scale))


def test_qwk_residues_cancel(curve, fp, rng):
    f = qwk_section(fp, curve)
    for i in range(2):
        chk = qwk_residue_check(f, 3, i, curve, rng, 3)
        assert chk.passed and chk.samples == 3


def test_qwk_identity_term_is_optional(curve, fp, rng):
    f = qwk_section(fp, curve)
    p = generic_point(rng, 2, curve)
    full, partial = qwk_pushforward(f, 2, curve)(p), qwk_pushforward(f, 2, curve, include_identity=False)(p)
    assert full.value != partial.value
    with raises(ValueError):
        qwk_pushforward(f, 5, curve)

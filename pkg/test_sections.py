import json

import numpy as np

from pytest import approx
from pytest import mark
from pytest import raises

from core.elliptic import lattice_distance
from core.errors import PoleAt
from core.sections import ONE
from core.sections import ZERO
from core.sections import Const
from core.sections import F
from core.sections import Inv
from core.sections import LinearForm
from core.sections import Theta
from core.sections import add
from core.sections import divisor_sample
from core.sections import evaluate
from core.sections import from_json
from core.sections import generic_point
from core.sections import is_elliptic
from core.sections import mul
from core.sections import pullback
from core.sections import random_test_section
from core.sections import singular_loci
from core.sections import to_json
from core.sections import vanishes_on_divisor
from core.sections import worst_on_divisor
from core.rootweyl import act_point
from core.rootweyl import preset


def test_simplification_rules(fp):
    f = F(LinearForm.of([1, 0]), fp)
    assert mul(ONE, f) == f
    assert mul(f, ZERO) == ZERO
    assert add(ZERO, f) == f
    assert add() == ZERO
    assert mul() == ONE


def test_operator_sugar(curve, fp):
    f = F(LinearForm.of([1, -1]), fp)
    p = np.array([0.21 + 0.3j, 0.47 + 0.1j, 0.05 + 0.6j])
    value = evaluate(f, p, curve)
    assert evaluate(2 * f + 1, p, curve) == approx(2 * value + 1)
    assert evaluate(f / f - 1, p, curve) == approx(0, abs=1e-12)
    assert evaluate(-f, p, curve) == approx(-value)


@mark.parametrize("name", ("sl2", "a2", "b2"))
def test_pullback_is_contravariant(name, curve, rng):
    d = preset(name)
    e = random_test_section(d, rng, 3, curve)
    loci = singular_loci(e)
    for w in d.elements:
        moved = pullback(e, w)
        p = generic_point(rng, d.rank, curve, loci + singular_loci(moved))
        assert evaluate(moved, p, curve) == approx(evaluate(e, act_point(d.inverse(w), p, d), curve), rel=1e-9, abs=1e-9)


def test_pullback_composes(a2, curve, rng):
    e = random_test_section(a2, rng, 2, curve)
    s1, s2 = a2.simple(0), a2.simple(1)
    assert pullback(pullback(e, s2), s1) == pullback(e, a2.multiply(s1, s2))


def test_is_elliptic(fp):
    l1, l2 = LinearForm.of([1, 0]), LinearForm.of([1, -1], 1)
    assert is_elliptic(Const(2.0))
    assert is_elliptic(F(l1, fp))
    assert not is_elliptic(Theta(l1))
    assert not is_elliptic(Inv(Theta(l1)))
    assert is_elliptic(mul(Theta(l1), Inv(Theta(-l1))))
    assert is_elliptic(mul(Theta(l1), Theta(l2), Inv(mul(Theta(l2), Theta(l1)))))
    assert not is_elliptic(mul(Theta(l1), Inv(Theta(l2))))
    assert not is_elliptic(add(F(l1, fp), Theta(l2)))


def test_random_sections_are_elliptic_and_periodic(a2, curve, rng):
    for complexity in range(4):
        e = random_test_section(a2, rng, complexity, curve)
        assert is_elliptic(e)
    e = random_test_section(a2, 7, 3, curve)
    p = generic_point(rng, a2.rank, curve, singular_loci(e))
    shifted = p + np.array([1.0, curve.tau, -curve.tau])
    assert evaluate(e, shifted, curve) == approx(evaluate(e, p, curve), rel=1e-8, abs=1e-9)
    with raises(ValueError):
        random_test_section(a2, rng, 7, curve)


def test_random_sections_are_seeded(b2, curve):
    assert random_test_section(b2, 11, 4, curve) == random_test_section(b2, 11, 4, curve)


def test_json_round_trip(b2, curve, rng):
    e = add(random_test_section(b2, rng, 3, curve), Inv(Theta(LinearForm.of([1, 1], -1, 0.25j))))
    assert from_json(json.loads(json.dumps(to_json(e)))) == e
    with raises(ValueError):
        from_json({"node": "Bogus"})


def test_divisor_samples_lie_on_the_divisor(a2, curve, rng, fp):
    form = LinearForm.of([2, -1], -1)
    other = F(LinearForm.of([1, 1]), fp)
    loci = singular_loci(other)
    for _ in range(20):
        p = divisor_sample(form, rng, curve, loci)
        assert lattice_distance(form(p), curve) <= 1e-9
        assert all(locus.distance(p, curve) >= 1e-2 for locus in loci)
    with raises(ValueError):
        divisor_sample(LinearForm.of([0, 0]), rng, curve)


def test_vanishing_on_divisors(curve, rng, fp):
    form = LinearForm.of([1, -1], 1)
    assert vanishes_on_divisor(Theta(form), form, 10, rng, curve)
    assert vanishes_on_divisor(mul(F(form, fp), F(LinearForm.of([1, 1]), fp)), form, 10, rng, curve)
    ok, worst_abs, _ = worst_on_divisor(Const(1.0), form, 5, rng, curve)
    assert not ok and worst_abs == approx(1.0)
    with raises(ValueError):
        vanishes_on_divisor(Theta(form), LinearForm.of([0, 0]), 3, rng, curve)


def test_poles_raise(curve, fp):
    form = LinearForm.of([1, 0])
    with raises(PoleAt):
        evaluate(Inv(Theta(form)), np.array([0j, 0.3j, 0.1]), curve)
    with raises(PoleAt):
        evaluate(F(form, fp), np.array([fp.a.z, 0.3j, 0.1]), curve)

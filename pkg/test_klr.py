from pytest import approx
from pytest import mark
from pytest import raises
from sympy import QQ
from sympy import Poly
from sympy import symbols

from core.errors import ConfigError
from core.errors import TooLarge
from core.klrjet import JetTransport
from core.klrjet import KLRVector
from core.klrjet import apply_word
from core.klrjet import build_gamma
from core.klrjet import klr_gens
from core.klrjet import klr_relation_suite
from core.klrjet import p_poly
from core.klrjet import phi_transport_check
from core.klrjet import single_vertex_quiver
from core.klrjet import tau
from core.klrjet import x

u, v = symbols("u v")


@mark.parametrize("n1 n2 d l vertices".split(),
                  ((2, 2, 2, 2, 4),
                   (2, 3, 6, 1, 6),
                   (2, 4, 4, 2, 8)))
def test_gamma_shape(n1, n2, d, l, vertices):
    q = build_gamma(n1, n2)
    assert (q.meta["d"], q.meta["l"]) == (d, l)
    assert len(q.vertices) == vertices
    assert len(q.meta["components"]) == l
    assert all(len(cycle) == d for cycle in q.meta["components"])
    assert all(sum(row) == 1 for row in q.arrows)


@mark.parametrize("n1 n2 error".split(), ((1, 3, ConfigError), (3, 0, ConfigError), (3, 3, TooLarge)))
def test_gamma_rejects(n1, n2, error):
    with raises(error):
        build_gamma(n1, n2)


def test_p_poly():
    q = build_gamma(2, 2)
    assert p_poly((0, 0), (0, 0), q).is_zero
    assert p_poly((0, 0), (1, 1), q) == Poly(v - u, u, v, domain=QQ)
    assert p_poly((1, 1), (0, 0), q) == Poly(v - u, u, v, domain=QQ)
    assert p_poly((0, 0), (0, 1), q) == Poly(1, u, v, domain=QQ)
    q = build_gamma(2, 3)
    assert p_poly((0, 0), (1, 1), q) == Poly(v - u, u, v, domain=QQ)
    assert q.arrow_count((1, 1), (0, 0)) == 0
    assert p_poly((1, 1), (0, 0), q) == Poly(1, u, v, domain=QQ)


def test_tau_on_a_repeated_vertex():
    q = single_vertex_quiver()
    x1, x2 = klr_gens(2)
    nu = ((0, 0), (0, 0))
    vec = KLRVector.single(nu, Poly(x1, x1, x2, domain=QQ))
    assert apply_word([tau(1)], vec, q) == KLRVector.single(nu, Poly(-1, x1, x2, domain=QQ))
    assert apply_word([tau(1), tau(1)], vec, q) == KLRVector(2)
    with raises(ValueError):
        apply_word([x(3)], vec, q)


def test_tau_between_distinct_vertices_swaps_the_word():
    q = build_gamma(2, 2)
    x1, x2 = klr_gens(2)
    nu = ((0, 0), (1, 1))
    vec = KLRVector.single(nu, Poly(x1, x1, x2, domain=QQ))
    out = apply_word([tau(1)], vec, q)
    assert out == KLRVector.single(((1, 1), (0, 0)), Poly((x1 - x2) * x2, x1, x2, domain=QQ))


@mark.parametrize("n2 expected".split(), ((2, lambda a, b: -(a - b) ** 2), (3, lambda a, b: b - a)))
def test_tau_squared_on_distinct_vertices_follows_arrow_direction(n2, expected):
    q = build_gamma(2, n2)
    x1, x2 = klr_gens(2)
    nu = ((0, 0), (1, 1))
    vec = KLRVector.single(nu, Poly(1, x1, x2, domain=QQ))
    closed = Poly(expected(x1, x2), x1, x2, domain=QQ)
    assert apply_word([tau(1), tau(1)], vec, q) == KLRVector.single(nu, closed)


@mark.parametrize("n1 n2".split(), ((2, 2), (2, 3)))
def test_transport_shifts_exactly_along_arrows(n1, n2, curve, fp):
    q = build_gamma(n1, n2)
    tr = JetTransport(q, 2, fp, curve, 2)
    for a in q.vertices:
        for b in q.vertices:
            if a != b:
                assert (tr.case((a, b), 0) == "shifted") == (q.arrow_count(a, b) > 0), (a, b)


@mark.parametrize("quiver n".split(),
                  ((single_vertex_quiver(), 3),
                   (build_gamma(2, 2), 3),
                   (build_gamma(2, 3), 2)))
def test_relation_suite_passes(quiver, n, rng):
    checks = klr_relation_suite(quiver, n, 8, rng)
    assert checks
    assert all(ch.passed for ch in checks), [ch.to_dict() for ch in checks if not ch.passed]


def test_relation_suite_bounds(rng):
    with raises(TooLarge):
        klr_relation_suite(single_vertex_quiver(), 5, 1, rng)


def test_phi_transport(curve, fp, rng):
    checks, meta = phi_transport_check(2, 2, 2, fp, curve, 4, 3, rng)
    assert all(ch.passed for ch in checks), [ch.to_dict() for ch in checks if not ch.passed]
    assert meta["cap"] == 4
    assert sum(meta["cases"].values()) == 3
    with raises(TooLarge):
        phi_transport_check(2, 2, 4, fp, curve, 4, 1, rng)


def test_phi_transport_on_gamma_2_3(curve, fp, rng):
    checks, meta = phi_transport_check(2, 3, 2, fp, curve, 4, 5, rng)
    assert all(ch.passed for ch in checks), [ch.to_dict() for ch in checks if not ch.passed]
    assert meta["t"] == approx([0.5 + curve.tau.real / 3, curve.tau.imag / 3])
    assert sum(meta["cases"].values()) == 5


@mark.slow
def test_phi_transport_at_full_precision(curve, fp, rng):
    checks, meta = phi_transport_check(2, 2, 2, fp, curve, 6, 50, rng)
    assert all(ch.passed for ch in checks), [ch.to_dict() for ch in checks if not ch.passed]
    assert meta["cap"] == 6
    assert meta["cases"]["same"] > 0

"""
Suite Runners
Each runner takes a Config, draws from its own seeded stream and returns a
Report. Expected numeric trouble becomes failed checks; configuration and
cap violations propagate as exceptions for the CLI to map to exit codes.
"""
import logging
from typing import Any, Dict, List, Sequence

import numpy as np

from config.settings import Config

from .elliptic import (
    CurveParams,
    f_eval,
    is_torsion,
    point_from_coords,
    pole_order_estimate,
    quasi_period_constants,
    quasi_period_ratios,
    random_point,
    reduce,
    richardson_extrapolate,
    sn_params,
    theta,
    theta_prime_zero,
    theta_prime_zero_series,
)
from .errors import ConfigError, Mismatch, PoleAt, Singular, TooLarge, Unstable
from .hecke import (
    HeckeElement,
    act,
    action_composition_check,
    associativity_check,
    check_conditions,
    commutator_with_section,
    compare_reduced_words,
    conjugate,
    demazure_Dem,
    demazure_X,
    divisor_loci,
    generator_pool,
    mult,
    products_of_generators,
    qwk_pushforward,
    qwk_residue_check,
    rank1_pushpull,
    triangularity_check,
)
from .klrjet import MAX_KLR_N, MAX_PHI_N, build_gamma, klr_relation_suite, phi_transport_check, single_vertex_quiver
from .params import EigenData, classify
from .report import Check, Report
from .rootweyl import RootDatum, act_point, preset, root_label
from .sections import (
    Const,
    Evaluator,
    F,
    LinearForm,
    Locus,
    Scaled,
    SectionExpr,
    add,
    as_evaluator,
    generic_point,
    mul,
    pullback,
    random_test_section,
    singular_loci,
)

logger = logging.getLogger(__name__)

HECKE_DATA = ("sl2", "a2", "b2", "gl3")
F_PRIME_TOL = 1e-6
KLR_TRIALS = 100
SECTIONS_PER_SUITE = 10
ASSOCIATIVITY_TRIPLES = 20
ASSOCIATIVITY_POINTS = 20
COMPOSITION_PAIRS = 10


def _new_report(suite: str, cfg: Config) -> Report:
    report = Report(suite, cfg.seed, cfg.tau)
    report.metadata["config"] = cfg.to_dict()
    return report


def _record_pointwise(chk: Check, lhs: Evaluator, rhs: Evaluator, p: np.ndarray, c: CurveParams) -> None:
    try:
        a = lhs(p)
        b = rhs(p)
    except PoleAt as exc:
        chk.samples += 1
        chk.fail(str(exc))
        return
    scale = max(a.scale, b.scale)
    chk.record(abs(a.value - b.value), scale, c.bound(scale))


def _vanishing(p: np.ndarray) -> Scaled:
    return Scaled(0j, 1.0)


def _record_elements(chk: Check, lhs: HeckeElement, rhs: HeckeElement, p: np.ndarray, c: CurveParams) -> None:
    """Coefficientwise comparison of two elements at one point."""
    for w in sorted(set(lhs.terms) | set(rhs.terms), key=lambda v: (v.length, v.word)):
        _record_pointwise(chk, as_evaluator(lhs.coefficient(w), c), as_evaluator(rhs.coefficient(w), c), p, c)


def _orbit_loci(d: RootDatum, sections: Sequence[SectionExpr]) -> List[Locus]:
    loci = divisor_loci(d)
    for sigma in sections:
        for w in d.elements:
            loci.extend(singular_loci(pullback(sigma, w)))
    return list(dict.fromkeys(loci))


# -- theta ----------------------------------------------------------------------

def run_theta_suite(cfg: Config, tamper: bool = False) -> Report:
    """Invariants of theta and f on the configured curve.

    tamper negates the oddness identity; the suite must then fail.
    """
    c = cfg.curve()
    fp = cfg.fparams_obj()
    rng = cfg.rng("theta")
    report = _new_report("theta-check", cfg)
    logger.info(f"theta-check: tau={c.tau}, {cfg.samples} samples{' (tampered)' if tamper else ''}")

    odd = report.check("theta", "odd")
    periodic_one = report.check("theta", "theta(z+1)/theta(z) constant")
    periodic_tau = report.check("theta", "theta(z+tau) e^(2 pi i z)/theta(z) constant")
    f_periodic = report.check("f", "lattice periodic")
    const_one, const_tau = quasi_period_constants(c)
    sign = -1 if tamper else 1

    for _ in range(cfg.samples):
        z = random_point(rng, c)
        value = theta(z, c)
        odd.record(abs(theta(-z, c) + sign * value), abs(value), c.bound(abs(value)))
        one, tau_ratio = quasi_period_ratios(z, c)
        periodic_one.record(abs(one - const_one), abs(const_one), c.bound(abs(const_one)))
        periodic_tau.record(abs(tau_ratio - const_tau), abs(const_tau), c.bound(abs(const_tau)))
        try:
            base = f_eval(z, fp, c)
            for shift in (1.0, c.tau):
                moved = f_eval(z + shift, fp, c)
                scale = max(abs(base), abs(moved))
                f_periodic.record(abs(moved - base), scale, c.bound(scale))
        except PoleAt as exc:
            f_periodic.fail(str(exc))

    zeros = report.check("theta", "zero on the lattice")
    for m in (-1, 0, 1, 2):
        for n in (-1, 0, 1):
            zeros.record(abs(theta(m + n * c.tau, c)), 1.0, c.bound(1.0))

    derivative = report.check("theta", "theta'(0) = 1")
    derivative.record(abs(theta_prime_zero(c) - 1), 1.0, c.bound(1.0))
    derivative.record(abs(theta_prime_zero_series(c) - 1), 1.0, c.bound(1.0))

    f_zero = report.check("f", "f(0) = 0")
    f_zero.record(abs(f_eval(0j, fp, c)), 1.0, c.tol)
    f_zero.record(abs(f_eval(fp.a + fp.b, fp, c)), 1.0, c.bound(1.0))

    f_prime = report.check("f", "f'(0) = 1")
    central = [(f_eval(h, fp, c) - f_eval(-h, fp, c)) / (2 * h) for h in (1e-4, 5e-5)]
    f_prime.record(abs(richardson_extrapolate(central, p=2) - 1), 1.0, F_PRIME_TOL)

    f_poles = report.check("f", "simple poles at a and b")
    for pole in (fp.a, fp.b):
        order = pole_order_estimate(lambda z: f_eval(z, fp, c), pole, 1.0, maxord=2, tol=c.tol)
        f_poles.expect(order == 1, f"pole order {order} at {pole.z}")

    sn = sn_params(c)
    sn_zero = report.check("sn", "zeros at 0 and 1/2")
    for z in (0j, 0.5 + 0j):
        sn_zero.record(abs(f_eval(z, sn, c)), 1.0, c.bound(1.0))
    sn_pole = report.check("sn", "simple poles at tau/2 and (1+tau)/2")
    for pole in (c.tau / 2, (1 + c.tau) / 2):
        order = pole_order_estimate(lambda z: f_eval(z, sn, c), pole, 1.0, maxord=2, tol=c.tol)
        sn_pole.expect(order == 1, f"sn pole order {order} at {pole}")

    torsion = report.check("points", "torsion order and reduction")
    t = point_from_coords(1 / 3, 2 / 5, c)
    torsion.expect(is_torsion(t, 64, c) == 15, "DD(t) = (1/3, 2/5) should have order 15")
    torsion.expect(is_torsion(point_from_coords(0.2113, 0.4771, c), 64, c) is None, "generic point flagged torsion")
    shifted = reduce(t.z + 2 - 3 * c.tau, c)
    torsion.record(abs(shifted.z - reduce(t, c).z), 1.0, c.bound(1.0))

    report.metadata["quasi_period_constants"] = [const_one, const_tau]
    logger.info(report.summary())
    return report


# -- hecke ------------------------------------------------------------------------

def _test_sections(d: RootDatum, cfg: Config, c: CurveParams, rng: np.random.Generator) -> List[SectionExpr]:
    return [random_test_section(d, rng, 1 + j % 3, c) for j in range(SECTIONS_PER_SUITE)]


def _x_relations(report: Report, d: RootDatum, cfg: Config, c: CurveParams, rng: np.random.Generator) -> None:
    loci = divisor_loci(d)
    points = [generic_point(rng, d.rank, c, loci) for _ in range(cfg.samples)]
    zero = HeckeElement(d)
    for alpha in d.positive_roots:
        name = f"X alpha={root_label(alpha, d)}"
        x = demazure_X(d, alpha)
        square = report.check(name, "X^2 = 0")
        absorb = report.check(name, "delta_alpha X = X")
        conj = report.check(name, "delta_w X delta_w^-1 = X_w(alpha)")
        left = mult(HeckeElement.delta(d, d.reflection(alpha)), x)
        squared = mult(x, x)
        for p in points:
            _record_elements(square, squared, zero, p, c)
            _record_elements(absorb, left, x, p, c)
        for w in d.elements:
            lhs = conjugate(d, w, x)
            rhs = demazure_X(d, d.act_root(w, alpha))
            for p in points[: max(1, len(points) // 3)]:
                _record_elements(conj, lhs, rhs, p, c)


def _section_relations(
    report: Report, d: RootDatum, sections: Sequence[SectionExpr], cfg: Config, c: CurveParams, rng: np.random.Generator
) -> None:
    for alpha in d.positive_roots:
        name = f"X alpha={root_label(alpha, d)}"
        refl = d.reflection(alpha)
        x = demazure_X(d, alpha)
        invariant = report.check(name, "image is s_alpha-invariant")
        by_dem = report.check(name, "X acts by Dem")
        leibniz = report.check(name, "twisted Leibniz")
        pushpull = report.check(name, "rank-one push-pull = Dem")
        for sigma in sections:
            loci = _orbit_loci(d, [sigma])
            image = act(x, sigma, c)
            dem = demazure_Dem(d, alpha, sigma, c)
            comm = commutator_with_section(d, alpha, sigma)
            lead = as_evaluator(comm.coefficient(d.identity), c)
            push = rank1_pushpull(d, alpha, sigma, c)
            for _ in range(cfg.samples):
                p = generic_point(rng, d.rank, c, loci)
                _record_pointwise(invariant, image, lambda q: image(act_point(refl, q, d)), p, c)
                _record_pointwise(by_dem, image, dem, p, c)
                _record_pointwise(leibniz, lead, dem, p, c)
                _record_pointwise(pushpull, push, dem, p, c)
                for w, coeff in comm.terms.items():
                    if w != d.identity:
                        _record_pointwise(leibniz, as_evaluator(coeff, c), _vanishing, p, c)


def _algebra_laws(
    report: Report, d: RootDatum, sections: Sequence[SectionExpr], cfg: Config, c: CurveParams, rng: np.random.Generator
) -> None:
    """Associativity and action composition, measured through the action on test sections."""
    fparams = [cfg.fparams_obj()]
    points = min(ASSOCIATIVITY_POINTS, cfg.samples)
    try:
        report.extend([associativity_check(d, fparams, sections[0], c, rng, ASSOCIATIVITY_TRIPLES, points)])
    except Singular as exc:
        report.check(d.name, "associativity").fail(str(exc))
    try:
        report.extend([action_composition_check(d, fparams, sections[1], c, rng, COMPOSITION_PAIRS, cfg.samples)])
    except Singular as exc:
        report.check(d.name, "action composition").fail(str(exc))


def _membership(report: Report, d: RootDatum, cfg: Config, c: CurveParams, rng: np.random.Generator) -> None:
    fparams = [cfg.fparams_obj()]
    samples = max(1, (2 * cfg.samples) // 3)
    count = 0
    for name, h in products_of_generators(d, fparams, max_length=3):
        report.extend(check_conditions(h, c, rng, samples, label=name))
        count += 1
    logger.info(f"{d.name}: membership checked on {count} products of generators")

    # delta_s and X_alpha lie outside the algebra; the verifier has to notice.
    for name, h in generator_pool(d, fparams):
        if name.startswith("T_"):
            continue
        control = report.check(f"control {name}", "rejected by R1/R2/R3")
        checks = check_conditions(h, c, rng, max(1, samples // 4), label=name)
        control.expect(any(not ch.passed for ch in checks), f"{name} passed every membership condition")


def _qwk_section(fp, fp2) -> SectionExpr:
    """A section of (y, gamma) mixing a gamma-dependent block with a y-only block."""
    return add(F(LinearForm.of([1], 1), fp), mul(Const(0.5 - 0.25j), F(LinearForm.of([1]), fp2)))


def _pushforward(report: Report, cfg: Config, c: CurveParams, rng: np.random.Generator) -> None:
    fp = cfg.fparams_obj()
    f = _qwk_section(fp, sn_params(c))
    gl2 = preset("gl2")
    alpha = gl2.positive_roots[0]
    # sigma(y_1, y_2, gamma) = f(-y_2, gamma)
    sigma = f.map_forms(lambda form: LinearForm.of((0, -form.coeffs[0]), form.gamma, form.shift))
    loci = _orbit_loci(gl2, [sigma])

    agree = report.check("qwk n=2", "symmetrization = rank-one push-pull")
    lhs = qwk_pushforward(f, 2, c)
    rhs = rank1_pushpull(gl2, alpha, sigma, c)
    for _ in range(cfg.samples):
        _record_pointwise(agree, lhs, rhs, generic_point(rng, gl2.rank, c, loci), c)

    samples = max(1, cfg.samples // 3)
    for i in range(2):
        try:
            report.extend([qwk_residue_check(f, 3, i, c, rng, samples)])
        except Singular as exc:
            report.check("qwk n=3", f"residue y_{i + 1}=y_3").fail(str(exc))


def run_hecke_suite(cfg: Config, datum: str) -> Report:
    """Operator relations, membership, triangularity and pushforward identities for one datum."""
    if datum not in HECKE_DATA:
        raise ConfigError(f"unknown datum '{datum}', expected one of {', '.join(HECKE_DATA)}")
    d = preset(datum)
    c = cfg.curve()
    rng = cfg.rng(f"hecke/{d.name}")
    report = _new_report(f"hecke-verify {d.name}", cfg)
    logger.info(f"hecke-verify: {d.name}, |W| = {len(d.elements)}")

    _x_relations(report, d, cfg, c, rng)
    sections = _test_sections(d, cfg, c, rng)
    _section_relations(report, d, sections, cfg, c, rng)
    _algebra_laws(report, d, sections, cfg, c, rng)
    _membership(report, d, cfg, c, rng)

    fparams = [cfg.fparams_obj()]
    try:
        checks, meta = triangularity_check(d, fparams, c, rng, points=3)
        report.extend(checks)
        report.metadata["triangularity"] = meta
    except Singular as exc:
        report.check(d.name, "rank").fail(str(exc))
    report.metadata["reduced_words"] = compare_reduced_words(d.longest_element, d, fparams, c, rng)

    _pushforward(report, cfg, c, rng)
    logger.info(report.summary())
    return report


# -- klr ------------------------------------------------------------------------------

def run_klr_suite(cfg: Config, n1: int, n2: int, n: int) -> Report:
    """Exact KLR relations on the one-vertex quiver and Gamma_{d,l}, then phi transport."""
    if not 1 <= n <= MAX_KLR_N:
        raise TooLarge(f"klr-verify supports 1 <= n <= {MAX_KLR_N}, got {n}")
    c = cfg.curve()
    gamma = build_gamma(n1, n2)
    rng = cfg.rng(f"klr/{n1}/{n2}/{n}")
    report = _new_report(f"klr-verify {n1} {n2} {n}", cfg)
    trials = min(KLR_TRIALS, 10 * cfg.samples)

    for q in (single_vertex_quiver(), gamma):
        try:
            report.extend(klr_relation_suite(q, n, trials, rng))
        except ArithmeticError as exc:
            report.check(f"{q.label} n={n}", "exact division").fail(str(exc))
    report.metadata["quiver"] = gamma.to_json()

    if n <= MAX_PHI_N:
        try:
            checks, meta = phi_transport_check(n1, n2, n, cfg.fparams_obj(), c, cfg.degree_cap, cfg.samples, rng)
            report.extend(checks)
            report.metadata["phi"] = meta
        except (PoleAt, Unstable, ZeroDivisionError) as exc:
            report.check(f"phi {gamma.label} n={n}", "transport").fail(str(exc))
    else:
        report.metadata["phi"] = f"skipped: transport supports n <= {MAX_PHI_N}"

    logger.info(report.summary())
    return report


# -- params ---------------------------------------------------------------------------

def run_params(cfg: Config, payload: Dict[str, Any]) -> Report:
    """Classify one eigenvalue input; the oracle comparison is the only check."""
    c = cfg.curve()
    e = EigenData.from_json(payload, c)
    report = _new_report("params", cfg)
    chk = report.check("params", "multisegments = orbit count")
    try:
        result = classify(e, c)
    except Mismatch as exc:
        chk.fail(str(exc))
        report.metadata["counts"] = exc.counts
        return report
    if result["oracle_counts"]:
        for field_name, value in sorted(result["oracle_counts"].items()):
            chk.expect(value == result["count"], f"{field_name}: {value} != {result['count']}")
    else:
        chk.detail = "total dimension above the oracle cap; enumeration only"
    report.metadata.update(result)
    logger.info(f"params: {result['count']} parameters")
    return report

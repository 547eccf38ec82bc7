"""
Elliptic Hecke Operators
Twisted group algebra S x| W with the operators X_alpha, Dem_alpha and
T_alpha^f, the R1/R2/R3 membership verifier, the Bruhat-triangular bases
T_{I_w} and the rank-one / symmetrization pushforward identities.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .elliptic import (
    CurveParams,
    FParams,
    lattice_distance,
    numeric_residue,
    pole_order_estimate,
    richardson_extrapolate,
    theta,
)
from .errors import PoleAt, Singular, Unstable
from .report import Check
from .rootweyl import (
    Root,
    RootDatum,
    WeylElement,
    act_point,
    all_reduced_words,
    bruhat_leq,
    inversion_set,
    root_label,
)
from .sections import (
    ONE,
    ZERO,
    Evaluator,
    F,
    Inv,
    LinearForm,
    Locus,
    Neg,
    Scaled,
    SectionExpr,
    Theta,
    add,
    as_evaluator,
    divisor_sample,
    generic_point,
    is_zero,
    mul,
    pullback,
    singular_loci,
)

logger = logging.getLogger(__name__)

# Within this lattice distance of D^alpha, Dem is evaluated by symmetric extrapolation.
DEM_NEAR = 1e-4
DEM_STEP = 1e-3
COND_LIMIT = 1e12
MAX_QWK_N = 4

SectionLike = Union[SectionExpr, Evaluator]


def root_form(root: Root, gamma: int = 0) -> LinearForm:
    """chi_alpha (+ gamma * chi_gamma) as a linear form."""
    return LinearForm.of(root.vector, gamma)


def coroot_direction(root: Root, rank: int) -> np.ndarray:
    """alpha^vee / 2 padded with a zero gamma slot: moves chi_alpha at unit speed."""
    out = np.zeros(rank + 1, dtype=complex)
    out[:rank] = root.coroot_array / 2.0
    return out


def _evaluator(sigma: SectionLike, c: CurveParams) -> Evaluator:
    return as_evaluator(sigma, c) if isinstance(sigma, SectionExpr) else sigma


@dataclass(frozen=True)
class DivisorSpec:
    """D^alpha (chi_alpha = 0) or D^{alpha,gamma} (chi_alpha - chi_gamma = 0)."""

    kind: str
    root: Root

    @property
    def form(self) -> LinearForm:
        if self.kind == "D_alpha":
            return root_form(self.root)
        if self.kind == "D_alpha_gamma":
            return root_form(self.root, gamma=-1)
        raise ValueError(f"unknown divisor kind '{self.kind}'")


def divisor_loci(d: RootDatum) -> List[Locus]:
    """All D^beta and D^{beta,gamma} for positive beta."""
    loci = []
    for beta in d.positive_roots:
        loci.append(Locus(DivisorSpec("D_alpha", beta).form))
        loci.append(Locus(DivisorSpec("D_alpha_gamma", beta).form))
    return loci


class HeckeElement:
    """Finite formal sum of f_w delta_w with SectionExpr coefficients."""

    def __init__(self, datum: RootDatum, terms: Optional[Dict[WeylElement, SectionExpr]] = None):
        self.datum = datum
        self.terms: Dict[WeylElement, SectionExpr] = {
            w: f for w, f in (terms or {}).items() if not is_zero(f)
        }

    @classmethod
    def delta(cls, datum: RootDatum, w: WeylElement, coeff: SectionExpr = ONE) -> "HeckeElement":
        return cls(datum, {w: coeff})

    @classmethod
    def identity(cls, datum: RootDatum) -> "HeckeElement":
        return cls.delta(datum, datum.identity)

    @classmethod
    def scalar(cls, datum: RootDatum, f: SectionExpr) -> "HeckeElement":
        return cls.delta(datum, datum.identity, f)

    @property
    def support(self) -> List[WeylElement]:
        return sorted(self.terms, key=lambda w: (w.length, w.word))

    def coefficient(self, w: WeylElement) -> SectionExpr:
        return self.terms.get(w, ZERO)

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        merged = dict(self.terms)
        for w, f in other.terms.items():
            merged[w] = add(merged[w], f) if w in merged else f
        return HeckeElement(self.datum, merged)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.datum, {w: Neg(f) for w, f in self.terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return mult(self, other)

    def __repr__(self) -> str:
        return f"HeckeElement({self.datum.name}, support={[w.label for w in self.support]})"


def mult(h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
    """(f delta_w)(g delta_v) = f * w(g) delta_{wv}, extended bilinearly."""
    d = h1.datum
    out: Dict[WeylElement, SectionExpr] = {}
    for w, f in h1.terms.items():
        for v, g in h2.terms.items():
            key = d.multiply(w, v)
            term = mul(f, pullback(g, w))
            out[key] = add(out[key], term) if key in out else term
    return HeckeElement(d, out)


def act(h: HeckeElement, sigma: SectionLike, c: CurveParams) -> Evaluator:
    """p -> sum_w f_w(p) sigma(w^{-1} p)."""
    d = h.datum
    sig = _evaluator(sigma, c)
    terms = [(d.inverse(w), f) for w, f in h.terms.items()]

    def run(p: np.ndarray) -> Scaled:
        p = np.asarray(p, dtype=complex)
        total, scale = 0j, 1.0
        for winv, f in terms:
            fv, fs = f.evaluate(p, c)
            sv, ss = sig(act_point(winv, p, d))
            term = fv * sv
            total += term
            scale = max(scale, fs, ss, abs(term), abs(total))
        return Scaled(total, scale)

    return run


# -- generators ---------------------------------------------------------------

def demazure_lusztig(d: RootDatum, i: int, fp: FParams) -> HeckeElement:
    """T_{alpha_i}^f = f(chi_gamma)/f(chi_alpha) + (1 - f(chi_gamma)/f(chi_alpha)) delta_{s_i}."""
    alpha = d.simple_root(i)
    ratio = mul(F(LinearForm.gamma_form(d.rank), fp), Inv(F(root_form(alpha), fp)))
    return HeckeElement(d, {d.identity: ratio, d.simple(i): add(ONE, Neg(ratio))})


def demazure_X(d: RootDatum, root: Root) -> HeckeElement:
    """X_alpha = 1/theta(chi_alpha) - (1/theta(chi_alpha)) delta_{s_alpha}."""
    inv = Inv(Theta(root_form(root)))
    return HeckeElement(d, {d.identity: inv, d.reflection(root): Neg(inv)})


def demazure_Dem(d: RootDatum, root: Root, sigma: SectionLike, c: CurveParams) -> Evaluator:
    """(sigma - s_alpha sigma)/theta(chi_alpha), extrapolated across D^alpha."""
    sig = _evaluator(sigma, c)
    refl = d.reflection(root)
    form = root_form(root)
    direction = coroot_direction(root, d.rank)

    def raw(p: np.ndarray) -> Scaled:
        a, sa = sig(p)
        b, sb = sig(act_point(refl, p, d))
        den = theta(form(p), c)
        if abs(den) < c.tol:
            raise PoleAt(f"theta(chi_alpha) = {abs(den):.3e} at Dem evaluation", point=p)
        value = (a - b) / den
        return Scaled(value, max(sa, sb, abs(value)))

    def run(p: np.ndarray) -> Scaled:
        p = np.asarray(p, dtype=complex)
        if lattice_distance(form(p), c) >= DEM_NEAR:
            return raw(p)
        scale = 1.0
        approx = []
        for h in (DEM_STEP, DEM_STEP / 2):
            plus = raw(p + h * direction)
            minus = raw(p - h * direction)
            scale = max(scale, plus.scale, minus.scale)
            approx.append((plus.value + minus.value) / 2)
        return Scaled(richardson_extrapolate(approx, p=2), scale)

    return run


def conjugate(d: RootDatum, w: WeylElement, h: HeckeElement) -> HeckeElement:
    """delta_w h delta_{w^{-1}}."""
    return mult(mult(HeckeElement.delta(d, w), h), HeckeElement.delta(d, d.inverse(w)))


# -- R1 / R2 / R3 ---------------------------------------------------------------

def _path(f: SectionExpr, p: np.ndarray, direction: np.ndarray, c: CurveParams) -> Callable[[complex], complex]:
    return lambda t: f.evaluate(p + t * direction, c).value


def check_conditions(
    h: HeckeElement,
    c: CurveParams,
    rng: np.random.Generator,
    samples: int,
    label: str = "",
) -> List[Check]:
    """R1 (simple poles), R2 (opposite residues) and R3 (vanishing on D^{alpha,gamma}).

    Args:
        h: Element whose coefficients are tested.
        c: Curve parameters and tolerances.
        rng: Source of divisor samples.
        samples: Divisor samples per root and condition.
        label: Prefix for the check names.

    Returns:
        Three checks per positive root.
    """
    d = h.datum
    prefix = f"{label} " if label else ""
    loci: List[Locus] = divisor_loci(d)
    for f in h.terms.values():
        loci.extend(singular_loci(f))
    support = h.support
    checks: List[Check] = []

    for alpha in d.positive_roots:
        name = f"{prefix}alpha={root_label(alpha, d)}"
        refl = d.reflection(alpha)
        form = root_form(alpha)
        direction = coroot_direction(alpha, d.rank)
        r1 = Check(name, "R1")
        r2 = Check(name, "R2")
        r3 = Check(name, "R3")
        checks.extend([r1, r2, r3])

        for _ in range(samples):
            p = divisor_sample(form, rng, c, loci)
            residues: Dict[WeylElement, complex] = {}
            for w in support:
                g = _path(h.terms[w], p, direction, c)
                order = pole_order_estimate(g, 0.0, 1.0, maxord=2, tol=c.tol)
                r1.expect(order <= 1, f"pole of order {order} for {w.label}")
                try:
                    residues[w] = numeric_residue(g, 0.0, 1.0, tol=c.tol)
                except Unstable as exc:
                    r2.fail(f"{w.label}: {exc}")
            for w in support:
                if w not in residues:
                    continue
                partner = d.multiply(refl, w)
                if partner in h.terms and partner not in residues:
                    continue
                rw = residues[w]
                rp = residues.get(partner, 0j)
                r2.record(abs(rw + rp), max(abs(rw), abs(rp)), c.bound(max(abs(rw), abs(rp))))

        gamma_form = DivisorSpec("D_alpha_gamma", alpha).form
        for w in support:
            if alpha not in inversion_set(w, d):
                continue
            f = h.terms[w]
            for _ in range(samples):
                p = divisor_sample(gamma_form, rng, c, loci)
                try:
                    v, s = f.evaluate(p, c)
                except PoleAt as exc:
                    r3.fail(f"{w.label}: {exc}")
                    continue
                if not r3.record(abs(v), s, c.bound(s)):
                    r3.fail(f"{w.label} does not vanish on D^(alpha,gamma)")
        if r3.samples == 0:
            r3.detail = "no support element inverts alpha"

    logger.debug(f"check_conditions {prefix}: {sum(not ch.passed for ch in checks)} failing checks")
    return checks


# -- Bruhat filtration bases --------------------------------------------------

def _letters(w: WeylElement, fps: Sequence[FParams]) -> List[Tuple[int, FParams]]:
    if len(fps) != w.length:
        raise ValueError(f"need {w.length} FParams for {w.label}, got {len(fps)}")
    return list(zip(w.word, fps))


def t_basis(w: WeylElement, fps: Sequence[FParams], d: RootDatum) -> HeckeElement:
    """T_{I_w} along the canonical reduced word of w."""
    h = HeckeElement.identity(d)
    for i, fp in _letters(w, fps):
        h = mult(h, demazure_lusztig(d, i, fp))
    return h


def t_basis_word(word: Sequence[int], fps: Sequence[FParams], d: RootDatum) -> HeckeElement:
    h = HeckeElement.identity(d)
    for i, fp in zip(word, fps):
        h = mult(h, demazure_lusztig(d, i, fp))
    return h


def f_iw(w: WeylElement, fps: Sequence[FParams], d: RootDatum, twisted: bool = True) -> SectionExpr:
    """Leading coefficient of T_{I_w}: prod_j (1 - f_j(chi_gamma)/f_j(chi_beta_j)).

    twisted=True uses beta_j = s_{i_1}...s_{i_{j-1}} alpha_{i_j}, the pointwise
    delta_w coefficient; twisted=False uses the simple roots alpha_{i_j}.
    """
    gamma = LinearForm.gamma_form(d.rank)
    prefix = d.identity
    factors = []
    for i, fp in _letters(w, fps):
        alpha = d.simple_root(i)
        beta = d.act_root(prefix, alpha) if twisted else alpha
        factors.append(add(ONE, Neg(mul(F(gamma, fp), Inv(F(root_form(beta), fp))))))
        prefix = d.multiply(prefix, d.simple(i))
    return mul(*factors)


def _fps_for(w: WeylElement, fparams: Sequence[FParams]) -> List[FParams]:
    return [fparams[j % len(fparams)] for j in range(w.length)]


def triangularity_check(
    d: RootDatum,
    fparams: Sequence[FParams],
    c: CurveParams,
    rng: np.random.Generator,
    points: int = 3,
) -> Tuple[List[Check], dict]:
    """Bruhat-triangularity, leading coefficients and rank of the T_{I_w} matrix.

    Each T_{I_w} uses fparams cycled over the letters of its word.
    """
    elements = list(d.elements)
    bases = {w: t_basis(w, _fps_for(w, fparams), d) for w in elements}
    loci = divisor_loci(d)
    for h in bases.values():
        for f in h.terms.values():
            loci.extend(singular_loci(f))
    loci = list(dict.fromkeys(loci))

    tri = Check(d.name, "bruhat-triangular")
    lead = Check(d.name, "leading coefficient")
    rank = Check(d.name, "rank")
    untwisted_ok: Dict[str, bool] = {}
    conds: List[float] = []

    for _ in range(points):
        p = generic_point(rng, d.rank, c, loci)
        mat = np.zeros((len(elements), len(elements)), dtype=complex)
        for a, w in enumerate(elements):
            for b, v in enumerate(elements):
                value, scale = bases[w].coefficient(v).evaluate(p, c)
                mat[a, b] = value
                if not bruhat_leq(v, w, d):
                    tri.record(abs(value), scale, c.bound(scale))
            expected, es = f_iw(w, _fps_for(w, fparams), d, twisted=True).evaluate(p, c)
            lead.record(abs(mat[a, a] - expected), max(es, abs(expected)), c.bound(max(es, abs(expected))))
            untwisted = f_iw(w, _fps_for(w, fparams), d, twisted=False).evaluate(p, c).value
            agrees = abs(untwisted - mat[a, a]) <= c.bound(max(1.0, abs(untwisted)))
            untwisted_ok[w.label] = untwisted_ok.get(w.label, True) and bool(agrees)
        cond = float(np.linalg.cond(mat))
        conds.append(cond)
        rank.expect(np.isfinite(cond) and cond < COND_LIMIT, f"condition number {cond:.3e}")

    if conds and all(not np.isfinite(x) or x >= COND_LIMIT for x in conds):
        raise Singular(f"{d.name}: T_(I_w) matrix singular at {points} generic points")
    metadata = {
        "condition_numbers": conds,
        "untwisted_product_matches": untwisted_ok,
    }
    logger.info(f"{d.name}: triangularity over {len(elements)} elements, max cond {max(conds):.3e}")
    return [tri, lead, rank], metadata


def compare_reduced_words(
    w: WeylElement,
    d: RootDatum,
    fparams: Sequence[FParams],
    c: CurveParams,
    rng: np.random.Generator,
    points: int = 3,
) -> dict:
    """Max coefficient difference between T_I over all reduced words I of w; reported only."""
    words = all_reduced_words(w, d)
    fps = _fps_for(w, fparams)
    elements = [t_basis_word(word, fps, d) for word in words]
    loci = divisor_loci(d)
    for h in elements:
        for f in h.terms.values():
            loci.extend(singular_loci(f))
    worst = 0.0
    for _ in range(points):
        p = generic_point(rng, d.rank, c, list(dict.fromkeys(loci)))
        ref = elements[0]
        for other in elements[1:]:
            for v in set(ref.terms) | set(other.terms):
                a = ref.coefficient(v).evaluate(p, c).value
                b = other.coefficient(v).evaluate(p, c).value
                worst = max(worst, abs(a - b))
    return {
        "element": w.label,
        "words": ["".join(str(i + 1) for i in word) for word in words],
        "max_difference": worst,
    }


# -- pushforward identities ---------------------------------------------------

def rank1_pushpull(d: RootDatum, root: Root, sigma: SectionLike, c: CurveParams) -> Evaluator:
    """s_alpha(sigma)/theta(-chi_alpha) + sigma/theta(chi_alpha)."""
    sig = _evaluator(sigma, c)
    refl = d.reflection(root)
    form = root_form(root)

    def run(p: np.ndarray) -> Scaled:
        p = np.asarray(p, dtype=complex)
        x = form(p)
        plus, minus = theta(x, c), theta(-x, c)
        if min(abs(plus), abs(minus)) < c.tol:
            raise PoleAt(f"rank-one pushforward evaluated on D^alpha (chi = {x})", point=p)
        a, sa = sig(act_point(refl, p, d))
        b, sb = sig(p)
        value = a / minus + b / plus
        return Scaled(value, max(sa, sb, abs(a / minus), abs(b / plus)))

    return run


def qwk_term(f: SectionExpr, n: int, k: int, c: CurveParams) -> Evaluator:
    """f(-y_k, gamma) / prod_{j != k} theta(y_j - y_k) on points (y_1..y_n, gamma)."""

    def run(p: np.ndarray) -> Scaled:
        p = np.asarray(p, dtype=complex)
        y, g = p[:n], p[n]
        fv, fs = f.evaluate(np.array([-y[k], g]), c)
        den, scale = 1 + 0j, fs
        for j in range(n):
            if j == k:
                continue
            den *= theta(y[j] - y[k], c)
            if abs(den) < c.tol:
                raise PoleAt(f"uncancelled pole on y_{j + 1} = y_{k + 1}", point=(j + 1, k + 1))
        value = fv / den
        return Scaled(value, max(scale, abs(value)))

    return run


def qwk_pushforward(f: SectionExpr, n: int, c: CurveParams, include_identity: bool = True) -> Evaluator:
    """Symmetrization sum over the transpositions (k, n) of f(-y_n)/prod theta(y_j - y_n).

    f is a section of one coordinate plus gamma. The k = n term (identity) is
    kept unless include_identity is False.
    """
    if not 2 <= n <= MAX_QWK_N:
        raise ValueError(f"n must be between 2 and {MAX_QWK_N}, got {n}")
    last = n if include_identity else n - 1
    terms = [qwk_term(f, n, k, c) for k in range(last)]

    def run(p: np.ndarray) -> Scaled:
        total, scale = 0j, 1.0
        for term in terms:
            v, s = term(p)
            total += v
            scale = max(scale, s, abs(total))
        return Scaled(total, scale)

    return run


def qwk_residue_check(
    f: SectionExpr,
    n: int,
    i: int,
    c: CurveParams,
    rng: np.random.Generator,
    samples: int,
) -> Check:
    """Residues of the i-th and identity terms cancel along y_i = y_n."""
    chk = Check(f"qwk n={n}", f"residue y_{i + 1}=y_{n}")
    loci = singular_loci(f)
    direction = np.zeros(n + 1, dtype=complex)
    direction[i] = 1.0
    term_i = qwk_term(f, n, i, c)
    term_n = qwk_term(f, n, n - 1, c)
    taken = 0
    attempts = 0
    while taken < samples:
        attempts += 1
        if attempts > 50 * samples:
            raise Singular(f"no clean divisor samples for y_{i + 1} = y_{n}")
        p = generic_point(rng, n, c)
        p[i] = p[n - 1]
        others = [j for j in range(n - 1) if j != i]
        if any(lattice_distance(p[j] - p[n - 1], c) < 1e-2 for j in others):
            continue
        if any(locus.distance(np.array([-p[n - 1], p[n]]), c) < 1e-2 for locus in loci):
            continue
        try:
            ri = numeric_residue(lambda t: term_i(p + t * direction).value, 0.0, 1.0, tol=c.tol)
            rn = numeric_residue(lambda t: term_n(p + t * direction).value, 0.0, 1.0, tol=c.tol)
        except Unstable as exc:
            chk.fail(str(exc))
            taken += 1
            continue
        scale = max(abs(ri), abs(rn))
        chk.record(abs(ri + rn), scale, c.bound(scale))
        taken += 1
    return chk


def commutator_with_section(
    d: RootDatum, root: Root, sigma: SectionExpr
) -> HeckeElement:
    """X_alpha sigma - s_alpha(sigma) X_alpha, expected to equal Dem_alpha(sigma) delta_e."""
    x = demazure_X(d, root)
    refl = d.reflection(root)
    left = mult(x, HeckeElement.scalar(d, sigma))
    right = mult(HeckeElement.scalar(d, pullback(sigma, refl)), x)
    return left - right


def generator_pool(d: RootDatum, fparams: Sequence[FParams]) -> List[Tuple[str, HeckeElement]]:
    """delta_w for simple reflections, X_alpha for positive roots and T_{alpha_i}^f."""
    pool: List[Tuple[str, HeckeElement]] = []
    for i in range(d.nsimple):
        pool.append((f"delta_s{i + 1}", HeckeElement.delta(d, d.simple(i))))
        pool.append((f"T_{i + 1}", demazure_lusztig(d, i, fparams[i % len(fparams)])))
    for root in d.positive_roots:
        pool.append((f"X_{root_label(root, d)}", demazure_X(d, root)))
    return pool


def products_of_generators(
    d: RootDatum, fparams: Sequence[FParams], max_length: int = 3
) -> Iterable[Tuple[str, HeckeElement]]:
    """All products T_{i_1}...T_{i_k} for k <= max_length."""
    gens = [demazure_lusztig(d, i, fparams[i % len(fparams)]) for i in range(d.nsimple)]
    frontier: List[Tuple[Tuple[int, ...], HeckeElement]] = [((), HeckeElement.identity(d))]
    for _ in range(max_length):
        nxt = []
        for word, h in frontier:
            for i, g in enumerate(gens):
                nxt.append((word + (i,), mult(h, g)))
        for word, h in nxt:
            yield "T" + "".join(str(i + 1) for i in word), h
        frontier = nxt


def random_generator_words(
    d: RootDatum, fparams: Sequence[FParams], rng: np.random.Generator, count: int, length: int
) -> List[Tuple[str, List[HeckeElement]]]:
    """count words of the given length drawn uniformly from generator_pool."""
    pool = generator_pool(d, fparams)
    words = []
    for _ in range(count):
        picks = [pool[int(k)] for k in rng.integers(0, len(pool), size=length)]
        words.append(("*".join(name for name, _ in picks), [h for _, h in picks]))
    return words


def _action_loci(d: RootDatum, elements: Sequence[HeckeElement], sigma: SectionExpr) -> List[Locus]:
    loci = divisor_loci(d)
    for h in elements:
        for f in h.terms.values():
            loci.extend(singular_loci(f))
    for w in d.elements:
        loci.extend(singular_loci(pullback(sigma, w)))
    return list(dict.fromkeys(loci))


def _record_action(chk: Check, lhs: Evaluator, rhs: Evaluator, p: np.ndarray, c: CurveParams, detail: str) -> None:
    try:
        a, b = lhs(p), rhs(p)
    except PoleAt as exc:
        chk.samples += 1
        chk.fail(f"{detail}: {exc}")
        return
    scale = max(a.scale, b.scale)
    if not chk.record(abs(a.value - b.value), scale, c.bound(scale)):
        chk.fail(detail)


def associativity_check(
    d: RootDatum,
    fparams: Sequence[FParams],
    sigma: SectionExpr,
    c: CurveParams,
    rng: np.random.Generator,
    triples: int = 20,
    points: int = 20,
) -> Check:
    """(ab)e and a(be) act identically on sigma for random generator triples."""
    chk = Check(d.name, "associativity")
    for label, (a, b, e) in random_generator_words(d, fparams, rng, triples, 3):
        left = mult(mult(a, b), e)
        right = mult(a, mult(b, e))
        lhs, rhs = act(left, sigma, c), act(right, sigma, c)
        loci = _action_loci(d, [left, right], sigma)
        for _ in range(points):
            _record_action(chk, lhs, rhs, generic_point(rng, d.rank, c, loci), c, label)
    logger.debug(f"{d.name}: associativity over {triples} triples, worst {chk.worst_rel:.2e}")
    return chk


def action_composition_check(
    d: RootDatum,
    fparams: Sequence[FParams],
    sigma: SectionExpr,
    c: CurveParams,
    rng: np.random.Generator,
    pairs: int = 10,
    points: int = 30,
) -> Check:
    """act(h1 h2) = act(h1) o act(h2) on sigma for random generator pairs."""
    chk = Check(d.name, "action composition")
    for label, (h1, h2) in random_generator_words(d, fparams, rng, pairs, 2):
        product = mult(h1, h2)
        lhs = act(product, sigma, c)
        rhs = act(h1, act(h2, sigma, c), c)
        loci = _action_loci(d, [h1, h2, product], sigma)
        for _ in range(points):
            _record_action(chk, lhs, rhs, generic_point(rng, d.rank, c, loci), c, label)
    return chk

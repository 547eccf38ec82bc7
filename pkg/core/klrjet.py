"""
Quiver Hecke Algebras
Quivers Gamma_{d,l}, the KLR algebra through its faithful polynomial
representation (exact sympy arithmetic over QQ), the completed Hecke
operators at a torsion parameter and the transport of KLR relations to jets.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ, Poly, Rational, symbols

from .elliptic import CurveParams, CurvePoint, FParams, as_complex, f_eval, f_taylor, lattice_distance
from .errors import ConfigError, NonDivisible, TooLarge
from .jets import Jet, jet_difference, random_jet
from .report import Check

logger = logging.getLogger(__name__)

MAX_KLR_N = 4
MAX_VERTICES = 8
MAX_PHI_N = 3
RELATION_DEGREE = 4

Vertex = Tuple[int, int]
Word = Tuple[Vertex, ...]

_U, _V = symbols("u v")


# -- quivers -------------------------------------------------------------------

@dataclass(frozen=True)
class Quiver:
    """Finite quiver; arrows[i][j] counts arrows from vertex i to vertex j."""

    vertices: Tuple[Vertex, ...]
    arrows: Tuple[Tuple[int, ...], ...]
    meta: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def index(self, v: Vertex) -> int:
        return self.vertices.index(v)

    def arrow_count(self, a: Vertex, b: Vertex) -> int:
        return self.arrows[self.index(a)][self.index(b)]

    @property
    def label(self) -> str:
        return self.meta.get("label", f"quiver[{len(self.vertices)}]")

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "arrows": [list(row) for row in self.arrows],
            "meta": self.meta,
        }


def build_gamma(n1: int, n2: int) -> Quiver:
    """Gamma_{d,l}: vertices (u mod n1, v mod n2), arrows (u,v) -> (u+1,v+1)."""
    if n1 < 2 or n2 < 2:
        raise ConfigError(f"torsion orders must be at least 2, got ({n1}, {n2})")
    d = n1 * n2 // gcd(n1, n2)
    ell = n1 * n2 // d
    vertices = tuple((u, v) for u in range(n1) for v in range(n2))
    if len(vertices) > MAX_VERTICES:
        raise TooLarge(f"Gamma_({d},{ell}) has {len(vertices)} vertices, cap is {MAX_VERTICES}")
    pos = {v: k for k, v in enumerate(vertices)}
    arrows = [[0] * len(vertices) for _ in vertices]
    for (u, v), k in pos.items():
        arrows[k][pos[((u + 1) % n1, (v + 1) % n2)]] += 1

    components = []
    seen = set()
    for start in vertices:
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        nxt = ((start[0] + 1) % n1, (start[1] + 1) % n2)
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = ((nxt[0] + 1) % n1, (nxt[1] + 1) % n2)
        components.append([list(v) for v in cycle])

    meta = {"label": f"Gamma({n1},{n2})", "n1": n1, "n2": n2, "d": d, "l": ell, "components": components}
    logger.debug(f"build_gamma({n1},{n2}): {ell} cycles of length {d}")
    return Quiver(vertices, tuple(tuple(row) for row in arrows), meta)


def single_vertex_quiver() -> Quiver:
    return Quiver(((0, 0),), ((0,),), {"label": "single vertex"})


def p_poly(i: Vertex, j: Vertex, q: Quiver) -> Poly:
    """P_{i,j}(u, v) = (v - u)^{d_ij}, d_ij arrows from i to j; P_{i,i} = 0."""
    if i == j:
        return Poly(0, _U, _V, domain=QQ)
    return Poly((_V - _U) ** q.arrow_count(i, j), _U, _V, domain=QQ)


# -- polynomial representation -------------------------------------------------

@lru_cache(maxsize=8)
def klr_gens(n: int) -> Tuple[Any, ...]:
    return tuple(symbols(f"x1:{n + 1}"))


def _zero(n: int) -> Poly:
    return Poly(0, *klr_gens(n), domain=QQ)


def _swap_poly(g: Poly, k: int, n: int) -> Poly:
    """Exchange x_{k+1} and x_{k+2} (0-based k)."""
    terms = {}
    for monom, coeff in g.terms():
        m = list(monom)
        m[k], m[k + 1] = m[k + 1], m[k]
        terms[tuple(m)] = coeff
    if not terms:
        return _zero(n)
    return Poly.from_dict(terms, *klr_gens(n), domain=QQ)


def _p_at(a: Vertex, b: Vertex, first: int, second: int, q: Quiver, n: int) -> Poly:
    """P_{a,b}(x_first, x_second) with 0-based variable positions."""
    gens = klr_gens(n)
    expr = p_poly(a, b, q).as_expr().subs({_U: gens[first], _V: gens[second]}, simultaneous=True)
    return Poly(expr, *gens, domain=QQ)


class KLRVector:
    """Element of sum over nu in I^n of QQ[x_1..x_n] 1_nu."""

    def __init__(self, n: int, components: Optional[Dict[Word, Poly]] = None):
        self.n = n
        self.components: Dict[Word, Poly] = {
            nu: p for nu, p in (components or {}).items() if not p.is_zero
        }

    @classmethod
    def single(cls, nu: Word, poly: Poly) -> "KLRVector":
        return cls(len(nu), {tuple(nu): poly})

    def __add__(self, other: "KLRVector") -> "KLRVector":
        out = dict(self.components)
        for nu, p in other.components.items():
            out[nu] = out[nu] + p if nu in out else p
        return KLRVector(self.n, out)

    def __neg__(self) -> "KLRVector":
        return KLRVector(self.n, {nu: -p for nu, p in self.components.items()})

    def __sub__(self, other: "KLRVector") -> "KLRVector":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KLRVector):
            return NotImplemented
        diff = self - other
        return not diff.components

    def __repr__(self) -> str:
        return f"KLRVector({ {nu: p.as_expr() for nu, p in self.components.items()} })"


class KLRGen(NamedTuple):
    """idem(nu), x(i) or tau(i); i is 1-based."""

    kind: str
    arg: Any


def idem(nu: Sequence[Vertex]) -> KLRGen:
    return KLRGen("idem", tuple(nu))


def x(i: int) -> KLRGen:
    return KLRGen("x", i)


def tau(i: int) -> KLRGen:
    return KLRGen("tau", i)


def klr_apply(gen: KLRGen, v: KLRVector, q: Quiver) -> KLRVector:
    """Action of one KLR generator on the polynomial representation."""
    n = v.n
    gens = klr_gens(n)
    if gen.kind == "idem":
        nu = tuple(gen.arg)
        return KLRVector(n, {nu: v.components[nu]} if nu in v.components else {})
    if gen.kind == "x":
        i = gen.arg
        if not 1 <= i <= n:
            raise ValueError(f"x({i}) out of range for n = {n}")
        xi = Poly(gens[i - 1], *gens, domain=QQ)
        return KLRVector(n, {nu: p * xi for nu, p in v.components.items()})
    if gen.kind == "tau":
        i = gen.arg
        if not 1 <= i <= n - 1:
            raise ValueError(f"tau({i}) out of range for n = {n}")
        k = i - 1
        out = KLRVector(n)
        for nu, g in v.components.items():
            if nu[k] == nu[k + 1]:
                num = _swap_poly(g, k, n) - g
                den = Poly(gens[k] - gens[k + 1], *gens, domain=QQ)
                quo, rem = num.div(den)
                if not rem.is_zero:
                    raise NonDivisible(f"(s_{i} - 1) g left remainder {rem.as_expr()} on nu = {nu}")
                out = out + KLRVector(n, {nu: quo})
            else:
                target = nu[:k] + (nu[k + 1], nu[k]) + nu[k + 2:]
                mult = _p_at(nu[k], nu[k + 1], k + 1, k, q, n)
                out = out + KLRVector(n, {target: mult * _swap_poly(g, k, n)})
        return out
    raise ValueError(f"unknown KLR generator '{gen.kind}'")


def apply_word(word: Sequence[KLRGen], v: KLRVector, q: Quiver) -> KLRVector:
    """Apply generators right to left (the last one acts first)."""
    for gen in reversed(word):
        v = klr_apply(gen, v, q)
    return v


def random_poly(rng: np.random.Generator, n: int, degree: int = RELATION_DEGREE, terms: int = 5) -> Poly:
    """Random polynomial with small rational coefficients and total degree <= degree."""
    coeffs: Dict[Tuple[int, ...], Any] = {}
    for _ in range(terms):
        total = int(rng.integers(0, degree + 1))
        cuts = sorted(int(c) for c in rng.integers(0, total + 1, size=n - 1))
        exps = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        num = int(rng.integers(-5, 6))
        den = int(rng.integers(1, 5))
        key = tuple(exps)
        coeffs[key] = coeffs.get(key, Rational(0)) + Rational(num, den)
    coeffs = {k: c for k, c in coeffs.items() if c != 0}
    if not coeffs:
        return Poly(1, *klr_gens(n), domain=QQ)
    return Poly.from_dict(coeffs, *klr_gens(n), domain=QQ)


def _random_word(rng: np.random.Generator, q: Quiver, n: int) -> Word:
    return tuple(q.vertices[int(k)] for k in rng.integers(0, len(q.vertices), size=n))


def _braid_expected(nu: Word, k: int) -> bool:
    """tau_i tau_{i+1} tau_i = tau_{i+1} tau_i tau_{i+1} unless nu_i = nu_{i+2} != nu_{i+1}."""
    return not (nu[k] == nu[k + 2] and nu[k] != nu[k + 1])


def klr_relation_suite(q: Quiver, n: int, trials: int, rng: np.random.Generator) -> List[Check]:
    """Exact relation checks of the polynomial representation on random inputs."""
    if not 1 <= n <= MAX_KLR_N:
        raise TooLarge(f"klr relation suite supports n <= {MAX_KLR_N}, got {n}")
    if len(q.vertices) > MAX_VERTICES:
        raise TooLarge(f"quiver has {len(q.vertices)} vertices, cap is {MAX_VERTICES}")
    name = f"{q.label} n={n}"
    checks: Dict[str, Check] = {}

    def chk(condition: str) -> Check:
        if condition not in checks:
            checks[condition] = Check(name, condition)
        return checks[condition]

    for _ in range(trials):
        nu = _random_word(rng, q, n)
        g = random_poly(rng, n)
        v = KLRVector.single(nu, g)
        detail = f"nu={nu} g={g.as_expr()}"

        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                lhs = apply_word([x(i), x(j)], v, q)
                rhs = apply_word([x(j), x(i)], v, q)
                chk("x_i x_j = x_j x_i").expect(lhs == rhs, detail)

        mu = nu if rng.random() < 0.5 else _random_word(rng, q, n)
        lhs = apply_word([idem(nu), idem(mu)], v, q)
        rhs = apply_word([idem(nu)], v, q) if mu == nu else KLRVector(n)
        chk("1_nu 1_mu = delta 1_nu").expect(lhs == rhs, detail)

        for i in range(1, n):
            k = i - 1
            for j in range(1, n + 1):
                if j in (i, i + 1):
                    continue
                lhs = apply_word([tau(i), x(j)], v, q)
                rhs = apply_word([x(j), tau(i)], v, q)
                chk("tau_i x_j = x_j tau_i").expect(lhs == rhs, detail)
            for j in range(i + 2, n):
                lhs = apply_word([tau(i), tau(j)], v, q)
                rhs = apply_word([tau(j), tau(i)], v, q)
                chk("tau_i tau_j = tau_j tau_i").expect(lhs == rhs, detail)

            sq = apply_word([tau(i), tau(i)], v, q)
            if nu[k] == nu[k + 1]:
                chk("tau_i^2 = 0 (same vertex)").expect(not sq.components, detail)
                lhs = apply_word([tau(i), x(i)], v, q) - apply_word([x(i + 1), tau(i)], v, q)
                chk("tau_i x_i - x_{i+1} tau_i = -1").expect(lhs == -v, detail)
                lhs = apply_word([tau(i), x(i + 1)], v, q) - apply_word([x(i), tau(i)], v, q)
                chk("tau_i x_{i+1} - x_i tau_i = 1").expect(lhs == v, detail)
            else:
                closed = _p_at(nu[k], nu[k + 1], k, k + 1, q, n) * _p_at(nu[k + 1], nu[k], k + 1, k, q, n)
                chk("tau_i^2 = P P (distinct)").expect(sq == KLRVector.single(nu, closed * g), detail)
                lhs = apply_word([tau(i), x(i)], v, q)
                rhs = apply_word([x(i + 1), tau(i)], v, q)
                chk("tau_i x_i = x_{i+1} tau_i (distinct)").expect(lhs == rhs, detail)

            if i + 1 < n and _braid_expected(nu, k):
                lhs = apply_word([tau(i), tau(i + 1), tau(i)], v, q)
                rhs = apply_word([tau(i + 1), tau(i), tau(i + 1)], v, q)
                chk("braid").expect(lhs == rhs, detail)

    logger.info(f"KLR relations on {name}: {sum(c.samples for c in checks.values())} comparisons")
    return sorted(checks.values(), key=lambda c: c.condition)


# -- torsion points and the local parameter ----------------------------------------

def t_point(n1: int, n2: int, c: CurveParams) -> CurvePoint:
    """t with DD(t) = (1/n1, 1/n2)."""
    return CurvePoint(1.0 / n1 + c.tau / n2, coords=(1.0 / n1, 1.0 / n2))


def s_t_point(label: Vertex, n1: int, n2: int, c: CurveParams) -> complex:
    u, v = label
    return u / n1 + (v / n2) * c.tau


@lru_cache(maxsize=512)
def _ell_series(center: complex, lp: FParams, c: CurveParams, cap: int) -> Tuple[complex, ...]:
    series = f_taylor(center, lp, c, cap)
    series[0] = f_eval(center, lp, c)
    return tuple(complex(s) for s in series)


def ell_jet(k: int, nvars: int, center: complex, lp: FParams, c: CurveParams, cap: int) -> Jet:
    """Jet of l(center + y_k) with l = f."""
    return Jet.univariate(_ell_series(complex(center), lp, c, cap), k, nvars, cap)


def shifted_multiplier(k: int, delta: complex, nvars: int, lp: FParams, c: CurveParams, cap: int) -> Jet:
    """l(y_{k+1} - delta) - l(y_k + delta) in the coordinates of the target component."""
    return ell_jet(k + 1, nvars, -delta, lp, c, cap) - ell_jet(k, nvars, delta, lp, c, cap)


def same_point_unit(k: int, nvars: int, lp: FParams, c: CurveParams, cap: int) -> Jet:
    """U = (l(y_k) - l(y_{k+1}))/(y_k - y_{k+1}); constant term f'(0) = 1."""
    return ell_jet(k, nvars, 0j, lp, c, cap).divided_difference(k)


def _coincide(a: complex, b: complex, c: CurveParams) -> bool:
    return lattice_distance(a - b, c) <= c.tol


def point_case(mu: Sequence[complex], k: int, t_value: complex, c: CurveParams) -> str:
    """'same' on D^i, 'shifted' on D^{i,gamma}, else 'generic' (0-based k)."""
    if _coincide(mu[k], mu[k + 1], c):
        return "same"
    if _coincide(mu[k + 1] - mu[k], t_value, c):
        return "shifted"
    return "generic"


JetOperator = Callable[[Jet], Tuple[Tuple[complex, ...], Jet]]


def completed_T(
    i: int,
    mu: Sequence[complex],
    t_value: Any,
    lp: FParams,
    c: CurveParams,
    D: int,
) -> JetOperator:
    """(T_i)_mu on jets at mu with gamma evaluated at t; returns (s_i mu or mu, image)."""
    mu = tuple(as_complex(m) for m in mu)
    n = len(mu)
    if not 1 <= i <= n - 1:
        raise ValueError(f"T_{i} out of range for n = {n}")
    k = i - 1
    t = as_complex(t_value)
    swapped = mu[:k] + (mu[k + 1], mu[k]) + mu[k + 2:]
    case = point_case(mu, k, t, c)

    if case == "same":
        unit_inv = same_point_unit(k, n, lp, c, D).inverse()
        ell_t = f_eval(t, lp, c)

        def run_same(g: Jet) -> Tuple[Tuple[complex, ...], Jet]:
            return mu, g.swap(k, k + 1) - g.divided_difference(k) * unit_inv * ell_t

        return run_same

    if case == "shifted":
        mult = shifted_multiplier(k, mu[k + 1] - mu[k], n, lp, c, D)

        def run_shifted(g: Jet) -> Tuple[Tuple[complex, ...], Jet]:
            return swapped, mult * g.swap(k, k + 1)

        return run_shifted

    def run_swap(g: Jet) -> Tuple[Tuple[complex, ...], Jet]:
        return swapped, g.swap(k, k + 1)

    return run_swap


# -- transport to jets ------------------------------------------------------------

class JetTransport:
    """phi images of x_i and tau_i acting on jets at points of S_t^n."""

    def __init__(self, q: Quiver, n: int, lp: FParams, c: CurveParams, cap: int):
        if "n1" not in q.meta:
            raise ConfigError("phi transport needs a quiver from build_gamma")
        self.q = q
        self.n = n
        self.lp = lp
        self.c = c
        self.cap = cap
        self.n1, self.n2 = q.meta["n1"], q.meta["n2"]
        self.t = as_complex(t_point(self.n1, self.n2, c))
        self._units: Dict[int, Jet] = {}
        self._mults: Dict[Tuple[Word, int], Jet] = {}

    def points(self, nu: Word) -> Tuple[complex, ...]:
        return tuple(s_t_point(v, self.n1, self.n2, self.c) for v in nu)

    def case(self, nu: Word, k: int) -> str:
        if nu[k] == nu[k + 1]:
            return "same"
        return point_case(self.points(nu), k, self.t, self.c)

    def unit_inverse(self, k: int) -> Jet:
        if k not in self._units:
            self._units[k] = same_point_unit(k, self.n, self.lp, self.c, self.cap).inverse()
        return self._units[k]

    def multiplier(self, nu: Word, k: int) -> Jet:
        key = (nu, k)
        if key not in self._mults:
            pts = self.points(nu)
            self._mults[key] = shifted_multiplier(k, pts[k + 1] - pts[k], self.n, self.lp, self.c, self.cap)
        return self._mults[key]

    def phi_x(self, i: int, nu: Word, g: Jet) -> Tuple[Word, Jet]:
        return nu, ell_jet(i - 1, self.n, 0j, self.lp, self.c, self.cap) * g

    def phi_tau(self, i: int, nu: Word, g: Jet) -> Tuple[Word, Jet]:
        k = i - 1
        if nu[k] == nu[k + 1]:
            # (s_i - 1)/(l(y_i) - l(y_{i+1})) = -partial_i U^{-1}
            return nu, -(g.divided_difference(k) * self.unit_inverse(k))
        target = nu[:k] + (nu[k + 1], nu[k]) + nu[k + 2:]
        return target, self.multiplier(nu, k) * g.swap(k, k + 1)

    def run(self, word: Sequence[Tuple[str, int]], nu: Word, g: Jet) -> Tuple[Word, Jet]:
        """Apply ('x', i) / ('tau', i) right to left."""
        for kind, i in reversed(word):
            nu, g = (self.phi_x if kind == "x" else self.phi_tau)(i, nu, g)
        return nu, g


def _record_close(chk: Check, lhs: Tuple[Word, Jet], rhs: Tuple[Word, Jet], detail: str) -> None:
    if lhs[0] != rhs[0]:
        chk.samples += 1
        chk.fail(f"components differ: {lhs[0]} vs {rhs[0]} ({detail})")
        return
    err, scale = jet_difference(lhs[1], rhs[1])
    if not chk.record(err, scale, 1e-7 * scale):
        chk.fail(detail)


def phi_transport_check(
    n1: int,
    n2: int,
    n: int,
    lp: FParams,
    c: CurveParams,
    D: int,
    trials: int,
    rng: np.random.Generator,
) -> Tuple[List[Check], Dict[str, Any]]:
    """Transported KLR relations on random jets, plus the same-point quotient pair."""
    if not 1 <= n <= MAX_PHI_N:
        raise TooLarge(f"phi transport supports n <= {MAX_PHI_N}, got {n}")
    q = build_gamma(n1, n2)
    tr = JetTransport(q, n, lp, c, D)
    name = f"phi {q.label} n={n}"
    checks: Dict[str, Check] = {}
    cases: Dict[str, int] = {"same": 0, "shifted": 0, "generic": 0}

    def chk(condition: str) -> Check:
        if condition not in checks:
            checks[condition] = Check(name, condition)
        return checks[condition]

    ell_t = f_eval(tr.t, lp, c)
    for _ in range(trials):
        nu = _random_word(rng, q, n)
        if n >= 2 and rng.random() < 0.5:
            # same-point components are rare under uniform draws
            k = int(rng.integers(0, n - 1))
            nu = nu[:k + 1] + (nu[k],) + nu[k + 2:]
        g = random_jet(rng, n, D)
        detail = f"nu={nu}"

        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                _record_close(chk("x_i x_j = x_j x_i"), tr.run([("x", i), ("x", j)], nu, g),
                              tr.run([("x", j), ("x", i)], nu, g), detail)

        for i in range(1, n):
            k = i - 1
            case = tr.case(nu, k)
            cases[case] += 1
            for j in range(1, n + 1):
                if j not in (i, i + 1):
                    _record_close(chk("tau_i x_j = x_j tau_i"), tr.run([("tau", i), ("x", j)], nu, g),
                                  tr.run([("x", j), ("tau", i)], nu, g), detail)
            if case == "same":
                sq = tr.run([("tau", i), ("tau", i)], nu, g)
                _record_close(chk("tau_i^2 = 0 (same point)"), sq, (nu, Jet(n, D)), detail)
                a = tr.run([("tau", i), ("x", i)], nu, g)
                b = tr.run([("x", i + 1), ("tau", i)], nu, g)
                _record_close(chk("tau_i x_i - x_{i+1} tau_i = -1"), (nu, a[1] - b[1]), (nu, -g), detail)
                a = tr.run([("tau", i), ("x", i + 1)], nu, g)
                b = tr.run([("x", i), ("tau", i)], nu, g)
                _record_close(chk("tau_i x_{i+1} - x_i tau_i = 1"), (nu, a[1] - b[1]), (nu, g), detail)

                # (T_i - 1)/(Delta - l(t)) against (s_i - 1)/Delta with Delta = l(y_{i+1}) - l(y_i)
                pts = tr.points(nu)
                _, tg = completed_T(i, pts, tr.t, lp, c, D)(g)
                delta = ell_jet(k + 1, n, 0j, lp, c, D) - ell_jet(k, n, 0j, lp, c, D)
                lhs = (delta - ell_t).inverse() * (tg - g)
                rhs = g.divided_difference(k) * tr.unit_inverse(k)
                _record_close(chk("same-point quotient pair"), (nu, lhs), (nu, rhs), detail)
            else:
                a = tr.run([("tau", i), ("x", i)], nu, g)
                b = tr.run([("x", i + 1), ("tau", i)], nu, g)
                _record_close(chk("tau_i x_i = x_{i+1} tau_i (distinct)"), a, b, detail)
                target = nu[:k] + (nu[k + 1], nu[k]) + nu[k + 2:]
                closed = tr.multiplier(target, k) * tr.multiplier(nu, k).swap(k, k + 1)
                _record_close(chk("tau_i^2 = composed multiplier (distinct)"),
                              tr.run([("tau", i), ("tau", i)], nu, g), (nu, closed * g), detail)
                if case == "generic" and tr.case(target, k) == "generic":
                    mu_pts = tr.points(nu)
                    once = completed_T(i, mu_pts, tr.t, lp, c, D)(g)[1]
                    twice = completed_T(i, tr.points(target), tr.t, lp, c, D)(once)
                    _record_close(chk("completed T involution (off divisor)"),
                                  (nu, twice[1]), (nu, g), detail)

            if i + 1 < n and nu[k] == nu[k + 1] == nu[k + 2]:
                _record_close(chk("braid (same point)"),
                              tr.run([("tau", i), ("tau", i + 1), ("tau", i)], nu, g),
                              tr.run([("tau", i + 1), ("tau", i), ("tau", i + 1)], nu, g), detail)

    metadata = {
        "t": [tr.t.real, tr.t.imag],
        "cap": D,
        "cases": cases,
        "same_point_orientation": "(s_i - 1)/(l(x_i) - l(x_{i+1})); the opposite denominator "
                                  "l(x_{i+1}) - l(x_i) flips the sign of tau_i x_i - x_{i+1} tau_i to +1",
        "three_term_extra": abs(f_eval(0j, lp, c)),
    }
    logger.info(f"{name}: cases {cases}")
    return sorted(checks.values(), key=lambda ch: ch.condition), metadata

"""
Section Expressions
Expression trees over theta factors and f-blocks of integer linear forms on
E^n x E, with scale-tracked evaluation, Weyl pullback, JSON round-trips,
random elliptic test sections and divisor sampling.
"""
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .elliptic import (
    CurveParams,
    CurvePoint,
    FParams,
    f_eval,
    lattice_distance,
    point_from_coords,
    theta,
)
from .errors import PoleAt, Singular
from .rootweyl import RootDatum, WeylElement

logger = logging.getLogger(__name__)

# Minimum parameter distance between sample points and unrelated singular loci.
LOCUS_MARGIN = 1e-2
MAX_SAMPLE_ATTEMPTS = 2000


class Scaled(NamedTuple):
    """A value together with the largest intermediate magnitude seen computing it."""

    value: complex
    scale: float


Evaluator = Callable[[np.ndarray], Scaled]


@dataclass(frozen=True)
class LinearForm:
    """sum coeffs_i z_i + gamma z_gamma + shift."""

    coeffs: Tuple[int, ...]
    gamma: int = 0
    shift: complex = 0j

    @classmethod
    def of(cls, coeffs: Sequence[int], gamma: int = 0, shift: complex = 0j) -> "LinearForm":
        return cls(tuple(int(x) for x in coeffs), int(gamma), complex(shift))

    @classmethod
    def gamma_form(cls, rank: int) -> "LinearForm":
        return cls((0,) * rank, 1)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def full_vector(self) -> np.ndarray:
        """Coefficients on (z_1..z_n, z_gamma)."""
        return np.array(self.coeffs + (self.gamma,), dtype=np.int64)

    def __call__(self, p: np.ndarray) -> complex:
        return complex(self.full_vector @ np.asarray(p, dtype=complex) + self.shift)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
            self.gamma - other.gamma,
            self.shift - other.shift,
        )

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-a for a in self.coeffs), -self.gamma, -self.shift)

    def is_constant(self) -> bool:
        return not any(self.coeffs) and self.gamma == 0

    def pullback(self, w: WeylElement) -> "LinearForm":
        """l o w^{-1}."""
        coeffs = np.array(self.coeffs, dtype=np.int64) @ w.inverse_matrix
        return LinearForm(tuple(int(x) for x in coeffs), self.gamma, self.shift)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "gamma": self.gamma, "shift": [self.shift.real, self.shift.imag]}

    @classmethod
    def from_json(cls, data: dict) -> "LinearForm":
        return cls.of(data["coeffs"], data.get("gamma", 0), complex(*data.get("shift", [0.0, 0.0])))


class SectionExpr:
    """Base class of expression nodes. Nodes are immutable and compare structurally."""

    def evaluate(self, p: np.ndarray, c: CurveParams) -> Scaled:
        raise NotImplementedError

    def map_forms(self, fn: Callable[[LinearForm], LinearForm]) -> "SectionExpr":
        raise NotImplementedError

    def children(self) -> Tuple["SectionExpr", ...]:
        return ()

    def __add__(self, other: "SectionExpr") -> "SectionExpr":
        return add(self, _coerce(other))

    def __radd__(self, other) -> "SectionExpr":
        return add(_coerce(other), self)

    def __sub__(self, other: "SectionExpr") -> "SectionExpr":
        return add(self, Neg(_coerce(other)))

    def __rsub__(self, other) -> "SectionExpr":
        return add(_coerce(other), Neg(self))

    def __mul__(self, other: "SectionExpr") -> "SectionExpr":
        return mul(self, _coerce(other))

    def __rmul__(self, other) -> "SectionExpr":
        return mul(_coerce(other), self)

    def __truediv__(self, other: "SectionExpr") -> "SectionExpr":
        return mul(self, Inv(_coerce(other)))

    def __neg__(self) -> "SectionExpr":
        return Neg(self)


@dataclass(frozen=True, eq=True)
class Const(SectionExpr):
    value: complex

    def evaluate(self, p, c):
        v = complex(self.value)
        return Scaled(v, max(1.0, abs(v)))

    def map_forms(self, fn):
        return self


@dataclass(frozen=True, eq=True)
class Theta(SectionExpr):
    form: LinearForm

    def evaluate(self, p, c):
        v = theta(self.form(p), c)
        return Scaled(v, max(1.0, abs(v)))

    def map_forms(self, fn):
        return Theta(fn(self.form))


@dataclass(frozen=True, eq=True)
class F(SectionExpr):
    form: LinearForm
    fp: FParams

    def evaluate(self, p, c):
        v = f_eval(self.form(p), self.fp, c)
        return Scaled(v, max(1.0, abs(v)))

    def map_forms(self, fn):
        return F(fn(self.form), self.fp)


@dataclass(frozen=True, eq=True)
class Sum(SectionExpr):
    terms: Tuple[SectionExpr, ...]

    def children(self):
        return self.terms

    def evaluate(self, p, c):
        total, scale = 0j, 1.0
        for term in self.terms:
            v, s = term.evaluate(p, c)
            total += v
            scale = max(scale, s, abs(total))
        return Scaled(total, scale)

    def map_forms(self, fn):
        return Sum(tuple(t.map_forms(fn) for t in self.terms))


@dataclass(frozen=True, eq=True)
class Prod(SectionExpr):
    factors: Tuple[SectionExpr, ...]

    def children(self):
        return self.factors

    def evaluate(self, p, c):
        total, scale = 1 + 0j, 1.0
        for factor in self.factors:
            v, s = factor.evaluate(p, c)
            total *= v
            scale = max(scale, s, abs(total))
        return Scaled(total, scale)

    def map_forms(self, fn):
        return Prod(tuple(f.map_forms(fn) for f in self.factors))


@dataclass(frozen=True, eq=True)
class Inv(SectionExpr):
    child: SectionExpr

    def children(self):
        return (self.child,)

    def evaluate(self, p, c):
        v, s = self.child.evaluate(p, c)
        if abs(v) < c.tol * s:
            raise PoleAt(f"denominator {abs(v):.3e} below tol*scale", point=np.asarray(p))
        inv = 1.0 / v
        return Scaled(inv, max(s, abs(inv)))

    def map_forms(self, fn):
        return Inv(self.child.map_forms(fn))


@dataclass(frozen=True, eq=True)
class Neg(SectionExpr):
    child: SectionExpr

    def children(self):
        return (self.child,)

    def evaluate(self, p, c):
        v, s = self.child.evaluate(p, c)
        return Scaled(-v, s)

    def map_forms(self, fn):
        return Neg(self.child.map_forms(fn))


ONE = Const(1 + 0j)
ZERO = Const(0j)


def _coerce(x: Union[SectionExpr, complex, float, int]) -> SectionExpr:
    return x if isinstance(x, SectionExpr) else Const(complex(x))


def add(*terms: SectionExpr) -> SectionExpr:
    """Flattened sum; zero constants are dropped."""
    flat: List[SectionExpr] = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        elif not is_zero(t):
            flat.append(t)
    if not flat:
        return ZERO
    return flat[0] if len(flat) == 1 else Sum(tuple(flat))


def mul(*factors: SectionExpr) -> SectionExpr:
    """Flattened product; unit constants are dropped, a zero constant kills the product."""
    flat: List[SectionExpr] = []
    for f in factors:
        if is_zero(f):
            return ZERO
        if isinstance(f, Prod):
            flat.extend(f.factors)
        elif not (isinstance(f, Const) and f.value == 1):
            flat.append(f)
    if not flat:
        return ONE
    return flat[0] if len(flat) == 1 else Prod(tuple(flat))


def is_zero(e: SectionExpr) -> bool:
    return isinstance(e, Const) and e.value == 0


def evaluate(e: SectionExpr, p: np.ndarray, c: CurveParams) -> complex:
    return e.evaluate(np.asarray(p, dtype=complex), c).value


def as_evaluator(e: SectionExpr, c: CurveParams) -> Evaluator:
    def run(p: np.ndarray) -> Scaled:
        return e.evaluate(np.asarray(p, dtype=complex), c)
    return run


def pullback(e: SectionExpr, w: WeylElement) -> SectionExpr:
    """Substitute every linear form l by l o w^{-1}, so eval(pullback(e, w), p) = eval(e, w^{-1} p)."""
    return e.map_forms(lambda form: form.pullback(w))


# -- ellipticity ------------------------------------------------------------

def _collect_factors(e: SectionExpr, sign: int, thetas: List[Tuple[LinearForm, int]], others: List[SectionExpr]):
    if isinstance(e, Prod):
        for f in e.factors:
            _collect_factors(f, sign, thetas, others)
    elif isinstance(e, Inv):
        _collect_factors(e.child, -sign, thetas, others)
    elif isinstance(e, Neg):
        _collect_factors(e.child, sign, thetas, others)
    elif isinstance(e, Theta):
        thetas.append((e.form, sign))
    else:
        others.append(e)


def _canonical_slope(form: LinearForm) -> Tuple[Tuple[int, ...], complex]:
    # theta is odd, so theta(-l) and theta(l) differ by a sign only.
    vec = tuple(int(x) for x in form.full_vector)
    lead = next((x for x in vec if x != 0), 0)
    if lead < 0:
        return tuple(-x for x in vec), -form.shift
    return vec, form.shift


def _theta_balanced(thetas: List[Tuple[LinearForm, int]]) -> bool:
    counts: Counter = Counter()
    shifts: Dict[Tuple[int, ...], complex] = defaultdict(complex)
    for form, sign in thetas:
        slope, shift = _canonical_slope(form)
        counts[slope] += sign
        shifts[slope] += sign * shift
    return all(v == 0 for v in counts.values()) and all(abs(s) < 1e-12 for s in shifts.values())


def is_elliptic(e: SectionExpr) -> bool:
    """True when every theta factor sits in a balanced quotient, so e is lattice-periodic."""
    if isinstance(e, (Const, F)):
        return True
    if isinstance(e, Theta):
        return False
    if isinstance(e, Sum):
        return all(is_elliptic(t) for t in e.terms)
    thetas: List[Tuple[LinearForm, int]] = []
    others: List[SectionExpr] = []
    _collect_factors(e, 1, thetas, others)
    return all(is_elliptic(o) for o in others) and _theta_balanced(thetas)


# -- singular loci ----------------------------------------------------------

@dataclass(frozen=True)
class Locus:
    """The set where form(p) equals target modulo the lattice."""

    form: LinearForm
    target: complex = 0j

    def distance(self, p: np.ndarray, c: CurveParams) -> float:
        return lattice_distance(self.form(p) - self.target, c)


def singular_loci(e: SectionExpr) -> List[Locus]:
    """Loci where e may have a zero or pole: f-blocks at {0, a+b, a, b}, theta factors at 0."""
    found: Dict[Locus, None] = {}

    def walk(node: SectionExpr):
        if isinstance(node, F):
            for pt in node.fp.singular_points:
                found.setdefault(Locus(node.form, pt.z))
        elif isinstance(node, Theta):
            found.setdefault(Locus(node.form, 0j))
        for child in node.children():
            walk(child)

    walk(e)
    return list(found)


def _parallel(a: LinearForm, b: LinearForm) -> bool:
    return np.linalg.matrix_rank(np.vstack([a.full_vector, b.full_vector]).astype(float)) <= 1


def _random_coordinates(rng: np.random.Generator, size: int, c: CurveParams) -> np.ndarray:
    ab = rng.random((size, 2))
    return ab[:, 0] + ab[:, 1] * c.tau


def _clear_of(p: np.ndarray, loci: Iterable[Locus], c: CurveParams, divisor: Optional[LinearForm], margin: float) -> bool:
    for locus in loci:
        dist = locus.distance(p, c)
        if dist >= margin:
            continue
        if divisor is not None and dist < 1e-7 and _parallel(locus.form, divisor):
            # The locus contains this component of the divisor itself.
            continue
        return False
    return True


def generic_point(
    rng: np.random.Generator,
    rank: int,
    c: CurveParams,
    loci: Sequence[Locus] = (),
    margin: float = LOCUS_MARGIN,
) -> np.ndarray:
    """Random point of E^n x E (reduced coordinates) away from the given loci."""
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        p = _random_coordinates(rng, rank + 1, c)
        if _clear_of(p, loci, c, None, margin):
            return p
    raise Singular(f"no generic point found clear of {len(loci)} loci")


def divisor_sample(
    form: LinearForm,
    rng: np.random.Generator,
    c: CurveParams,
    loci: Sequence[Locus] = (),
    margin: float = LOCUS_MARGIN,
) -> np.ndarray:
    """Random point with form(p) in the lattice, solved for the largest coefficient."""
    vec = form.full_vector
    if not np.any(vec):
        raise ValueError("cannot sample the divisor of a constant form")
    k = int(np.argmax(np.abs(vec)))
    ck = int(vec[k])
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        p = _random_coordinates(rng, len(vec), c)
        p[k] = 0
        m, n = rng.integers(0, abs(ck), size=2)
        target = m + n * c.tau
        p[k] = (target - form(p)) / ck
        if _clear_of(p, loci, c, form, margin):
            return p
    raise Singular(f"no clean sample found on the divisor of {form}")


def vanishes_on_divisor(
    e: SectionExpr,
    form: LinearForm,
    samples: int,
    rng: np.random.Generator,
    c: CurveParams,
    loci: Optional[Sequence[Locus]] = None,
) -> bool:
    """True iff e is below tol*scale at every sampled point of the divisor of form."""
    if form.is_constant():
        raise ValueError("form must be nonconstant")
    return worst_on_divisor(e, form, samples, rng, c, loci)[0]


def worst_on_divisor(
    e: SectionExpr,
    form: LinearForm,
    samples: int,
    rng: np.random.Generator,
    c: CurveParams,
    loci: Optional[Sequence[Locus]] = None,
) -> Tuple[bool, float, float]:
    """(all below bound, worst |value|, worst |value|/scale) over divisor samples."""
    loci = singular_loci(e) if loci is None else loci
    ok, worst_abs, worst_rel = True, 0.0, 0.0
    for _ in range(samples):
        p = divisor_sample(form, rng, c, loci)
        v, s = e.evaluate(p, c)
        worst_abs = max(worst_abs, abs(v))
        worst_rel = max(worst_rel, abs(v) / s)
        if abs(v) > c.bound(s):
            ok = False
    return ok, worst_abs, worst_rel


# -- random test sections -----------------------------------------------------

def random_fparams(rng: np.random.Generator, c: CurveParams, margin: float = 0.05) -> FParams:
    """FParams with a, b, a+b kept at least margin away from the lattice."""
    while True:
        a = point_from_coords(*rng.uniform(0.05, 0.95, 2), c)
        b = point_from_coords(*rng.uniform(0.05, 0.95, 2), c)
        if min(lattice_distance(x, c) for x in (a, b, a + b)) > margin:
            return FParams(a, b)


def _random_block(rng: np.random.Generator, d: RootDatum, c: CurveParams) -> SectionExpr:
    lam = np.zeros(d.rank, dtype=np.int64)
    while not lam.any():
        lam = rng.integers(-1, 2, size=d.rank)
    return F(LinearForm.of(lam), random_fparams(rng, c))


def _random_const(rng: np.random.Generator) -> Const:
    re, im = rng.uniform(-1.0, 1.0, 2)
    return Const(complex(round(re, 6), round(im, 6)))


def random_test_section(d: RootDatum, seed, complexity: int, c: CurveParams) -> SectionExpr:
    """Random sums and products of f-blocks; always elliptic-flagged.

    Args:
        d: Root datum supplying the number of coordinates.
        seed: Seed or numpy Generator.
        complexity: Number of f-blocks (0 gives a constant).
        c: Curve used to keep the random f parameters nondegenerate.
    """
    if complexity > 6:
        raise ValueError(f"complexity must be at most 6, got {complexity}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if complexity == 0:
        return _random_const(rng)
    expr = _random_block(rng, d, c)
    for _ in range(complexity - 1):
        block = _random_block(rng, d, c)
        if rng.random() < 0.5:
            expr = add(expr, mul(_random_const(rng), block))
        else:
            expr = mul(expr, block)
    return expr


# -- JSON ---------------------------------------------------------------------

def to_json(e: SectionExpr) -> dict:
    if isinstance(e, Const):
        return {"node": "Const", "value": [e.value.real, e.value.imag]}
    if isinstance(e, Theta):
        return {"node": "Theta", "form": e.form.to_json()}
    if isinstance(e, F):
        return {"node": "F", "form": e.form.to_json(), "fparams": e.fp.to_json()}
    if isinstance(e, (Sum, Prod)):
        return {"node": type(e).__name__, "children": [to_json(ch) for ch in e.children()]}
    if isinstance(e, (Inv, Neg)):
        return {"node": type(e).__name__, "child": to_json(e.child)}
    raise TypeError(f"unknown node {type(e).__name__}")


def from_json(data: dict) -> SectionExpr:
    node = data["node"]
    if node == "Const":
        return Const(complex(*data["value"]))
    if node == "Theta":
        return Theta(LinearForm.from_json(data["form"]))
    if node == "F":
        return F(LinearForm.from_json(data["form"]), FParams.from_json(data["fparams"]))
    if node == "Sum":
        return Sum(tuple(from_json(ch) for ch in data["children"]))
    if node == "Prod":
        return Prod(tuple(from_json(ch) for ch in data["children"]))
    if node == "Inv":
        return Inv(from_json(data["child"]))
    if node == "Neg":
        return Neg(from_json(data["child"]))
    raise ValueError(f"unknown node tag '{node}'")

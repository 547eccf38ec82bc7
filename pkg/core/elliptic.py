"""
Elliptic Curve Engine
Numeric evaluators on E = C/(Z + tau Z): lattice reduction, the theta
product, the rational section f, residues, pole orders, torsion and DD.
"""
import cmath
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import ConfigError, PoleAt, SingularParameter, Unstable

logger = logging.getLogger(__name__)

TWO_PI_I = 2j * np.pi

# Step ladder for residue extrapolation; consecutive steps halve.
RESIDUE_STEPS = (1e-4, 5e-5, 2.5e-5)
POLE_ORDER_STEP = 1e-4
THETA_DIFF_STEP = 1e-5
# Snap lattice coordinates this close to an integer before taking fractional parts.
COORD_SNAP = 1e-12


@dataclass(frozen=True)
class CurveParams:
    """The curve C/(Z + tau Z) together with truncation and tolerances."""

    tau: complex
    trunc: int = 40
    tol: float = 1e-9
    scale_tol: float = 1e-7

    def __post_init__(self):
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        if tau.imag <= 0:
            raise ConfigError(f"tau must lie in the upper half plane, got {tau}")
        if self.trunc < 20:
            raise ConfigError(f"trunc must be at least 20, got {self.trunc}")
        if self.tol <= 0 or self.scale_tol <= 0:
            raise ConfigError("tolerances must be positive")
        q = abs(cmath.exp(TWO_PI_I * tau))
        if q >= 1:
            raise ConfigError(f"|q| = {q} is not below 1")
        if q ** self.trunc > self.tol:
            raise ConfigError(
                f"theta tail |q|^trunc = {q ** self.trunc:.3e} exceeds tol {self.tol:.1e}"
            )

    @property
    def q(self) -> complex:
        return cmath.exp(TWO_PI_I * self.tau)

    @cached_property
    def q_powers(self) -> np.ndarray:
        return self.q ** np.arange(self.trunc + 1)

    @cached_property
    def norm_const(self) -> complex:
        return complex(1.0 / (TWO_PI_I * np.prod(1.0 - self.q_powers[1:]) ** 2))

    def bound(self, scale: float = 1.0) -> float:
        """Comparison threshold: absolute tol or relative scale_tol, whichever is larger."""
        return max(self.tol, self.scale_tol * max(1.0, scale))


@dataclass(frozen=True)
class CurvePoint:
    """A point of E given by a representative on the universal cover."""

    z: complex
    coords: Optional[Tuple[float, float]] = field(default=None, compare=False)

    def __add__(self, other: "PointLike") -> "CurvePoint":
        return CurvePoint(self.z + as_complex(other))

    def __sub__(self, other: "PointLike") -> "CurvePoint":
        return CurvePoint(self.z - as_complex(other))

    def __neg__(self) -> "CurvePoint":
        return CurvePoint(-self.z)


PointLike = Union[CurvePoint, complex, float, int]


def as_complex(p: PointLike) -> complex:
    if isinstance(p, CurvePoint):
        return p.z
    return complex(p)


def point_from_coords(a: float, b: float, c: CurveParams) -> CurvePoint:
    """The point a + b tau."""
    return CurvePoint(complex(a + b * c.tau))


def lattice_coords(p: PointLike, c: CurveParams) -> Tuple[float, float]:
    """Real coordinates (a, b) with z = a + b tau."""
    z = as_complex(p)
    b = z.imag / c.tau.imag
    a = z.real - b * c.tau.real
    return a, b


def _frac(x: float) -> float:
    if abs(x - round(x)) < COORD_SNAP:
        return 0.0
    y = x % 1.0
    return 0.0 if y == 1.0 else y


def reduce(p: PointLike, c: CurveParams) -> CurvePoint:
    """Representative a + b tau with a, b in [0, 1)."""
    if isinstance(p, CurvePoint) and p.coords is not None:
        a, b = p.coords
        if 0.0 <= a < 1.0 and 0.0 <= b < 1.0 and p.z == complex(a + b * c.tau):
            return p
    a, b = lattice_coords(p, c)
    a, b = _frac(a), _frac(b)
    return CurvePoint(complex(a + b * c.tau), coords=(a, b))


def lattice_distance(p: PointLike, c: CurveParams) -> float:
    """Distance from z to the nearest lattice point."""
    a, b = lattice_coords(p, c)
    a -= round(a)
    b -= round(b)
    return min(
        abs((a + da) + (b + db) * c.tau) for da in (-1, 0, 1) for db in (-1, 0, 1)
    )


def random_point(rng: np.random.Generator, c: CurveParams) -> CurvePoint:
    """Uniform point of the fundamental parallelogram."""
    a, b = rng.random(2)
    return CurvePoint(complex(a + b * c.tau), coords=(float(a), float(b)))


def richardson_extrapolate(
    base_values: Sequence[complex],
    p: int,
    r: float = 2.0,
) -> complex:
    """Richardson tableau on complex approximations with steps shrinking by r.

    Args:
        base_values: Approximations at steps h, h/r, h/r^2, ...
        p: Order of the leading error term.
        r: Step ratio between consecutive entries.

    Returns:
        The extrapolated value.
    """
    n = len(base_values)
    if n < 2:
        raise ValueError("richardson_extrapolate requires at least two base values.")
    vals = [complex(v) for v in base_values]
    for j in range(1, n):
        factor = r ** (p * j)
        for k in range(n - 1, j - 1, -1):
            vals[k] = (factor * vals[k] - vals[k - 1]) / (factor - 1.0)
    return vals[-1]


def theta(p: PointLike, c: CurveParams) -> complex:
    """Truncated product theta evaluated on the given representative (no reduction)."""
    z = as_complex(p)
    u = cmath.exp(TWO_PI_I * z)
    qs = c.q_powers
    first = np.prod(1.0 - qs[1:] * u)
    second = np.prod(1.0 - qs / u)
    return complex(cmath.exp(1j * np.pi * z) * first * second * c.norm_const)


def theta_derivative(p: PointLike, c: CurveParams, h: float = THETA_DIFF_STEP) -> complex:
    """Central difference of theta at p, Richardson-refined over (h, h/2)."""
    z = as_complex(p)

    def central(step: float) -> complex:
        return (theta(z + step, c) - theta(z - step, c)) / (2 * step)

    return richardson_extrapolate([central(h), central(h / 2)], p=2)


@lru_cache(maxsize=64)
def theta_prime_zero(c: CurveParams) -> complex:
    return theta_derivative(0.0, c)


def theta_prime_zero_series(c: CurveParams) -> complex:
    """d/dz of the truncated product at 0, taken factor by factor."""
    qs = c.q_powers
    # Only the s = 0 factor (1 - u^-1) vanishes at 0; its derivative there is 2 pi i.
    return complex(TWO_PI_I * np.prod(1.0 - qs[1:]) * np.prod(1.0 - qs[1:]) * c.norm_const)


def quasi_period_ratios(p: PointLike, c: CurveParams) -> Tuple[complex, complex]:
    """theta(z+1)/theta(z) and the normalized theta(z+tau) e^{2 pi i z}/theta(z)."""
    z = as_complex(p)
    base = theta(z, c)
    one = theta(z + 1, c) / base
    tau = theta(z + c.tau, c) * cmath.exp(TWO_PI_I * z) / base
    return one, tau


def quasi_period_constants(c: CurveParams) -> Tuple[complex, complex]:
    """Closed forms of the two ratios in quasi_period_ratios."""
    return -1.0 + 0j, -cmath.exp(-1j * np.pi * c.tau)


@dataclass(frozen=True)
class FParams:
    """Poles a, b of the elliptic function f; its zeros sit at 0 and a + b."""

    a: CurvePoint
    b: CurvePoint

    @classmethod
    def from_coords(
        cls, a: Tuple[float, float], b: Tuple[float, float], c: CurveParams
    ) -> "FParams":
        fp = cls(point_from_coords(*a, c), point_from_coords(*b, c))
        fp.validate(c)
        return fp

    @property
    def singular_points(self) -> Tuple[CurvePoint, ...]:
        """Zeros and poles of f: 0, a + b, a, b."""
        return (CurvePoint(0j), self.a + self.b, self.a, self.b)

    def validate(self, c: CurveParams) -> None:
        for label, pt in (("a", self.a), ("b", self.b), ("a+b", self.a + self.b)):
            if lattice_distance(pt, c) <= c.tol:
                raise SingularParameter(f"f parameter {label} = {pt.z} is zero modulo the lattice")

    def to_json(self) -> dict:
        return {"a": [self.a.z.real, self.a.z.imag], "b": [self.b.z.real, self.b.z.imag]}

    @classmethod
    def from_json(cls, data: dict) -> "FParams":
        return cls(CurvePoint(complex(*data["a"])), CurvePoint(complex(*data["b"])))


def sn_params(c: CurveParams) -> FParams:
    """Jacobi sign configuration: poles at tau/2 and (1+tau)/2, zeros at 0 and 1/2."""
    return FParams(CurvePoint(c.tau / 2), CurvePoint((1 + c.tau) / 2))


@lru_cache(maxsize=256)
def _f_constant(fp: FParams, c: CurveParams) -> complex:
    a, b = fp.a.z, fp.b.z
    return theta(a, c) * theta(b, c) / (theta_prime_zero(c) * -theta(a + b, c))


def f_eval(p: PointLike, fp: FParams, c: CurveParams) -> complex:
    """f(z) = theta(z) theta(z-a-b) C / (theta(z-a) theta(z-b)), with f(0) = 0 and f'(0) = 1."""
    z = as_complex(p)
    a, b = fp.a.z, fp.b.z
    for pole in (a, b):
        if lattice_distance(z - pole, c) <= c.tol:
            raise PoleAt(f"f has a pole at {pole} (evaluated at {z})", point=z)
    num = theta(z, c) * theta(z - a - b, c)
    den = theta(z - a, c) * theta(z - b, c)
    return num / den * _f_constant(fp, c)


def f_taylor(
    center: PointLike, fp: FParams, c: CurveParams, degree: int, nodes: int = 64
) -> np.ndarray:
    """Taylor coefficients of f at center, read off a Cauchy circle with an FFT."""
    z0 = as_complex(center)
    dist = min(lattice_distance(z0 - pole.z, c) for pole in (fp.a, fp.b))
    if dist < 1e-3:
        raise SingularParameter(f"f is singular next to the expansion point {z0}")
    radius = min(0.25, 0.5 * dist)
    return taylor_coefficients(lambda z: f_eval(z, fp, c), z0, degree, radius, nodes)


def taylor_coefficients(
    g: Callable[[complex], complex],
    center: complex,
    degree: int,
    radius: float,
    nodes: int = 64,
) -> np.ndarray:
    """Coefficients c_0..c_degree of g around center from equispaced samples on a circle."""
    angles = TWO_PI_I * np.arange(nodes) / nodes
    values = np.array([g(center + radius * cmath.exp(t)) for t in angles], dtype=complex)
    coeffs = np.fft.fft(values) / nodes
    return coeffs[: degree + 1] / radius ** np.arange(degree + 1)


def numeric_residue(
    g: Callable[[complex], complex],
    p: PointLike,
    direction: complex = 1.0,
    tol: float = 1e-9,
) -> complex:
    """Limit of eps * g(p + eps * direction) by Richardson extrapolation."""
    base = as_complex(p)
    samples = [eps * g(base + eps * direction) for eps in RESIDUE_STEPS]
    r0, r1 = samples[0], samples[1]
    if abs(r1 - r0) > 0.1 * max(abs(r0), tol) and abs(r1) > 0.75 * abs(r0):
        raise Unstable(
            f"scaled samples {r0:.3e} -> {r1:.3e} do not settle at {base}",
            samples=tuple(samples),
        )
    return richardson_extrapolate(samples, p=1)


def pole_order_estimate(
    g: Callable[[complex], complex],
    p: PointLike,
    direction: complex = 1.0,
    maxord: int = 2,
    tol: float = 1e-9,
) -> int:
    """Smallest k for which eps^k g(p + eps dir) stops growing under halving; maxord+1 if none."""
    if maxord > 4:
        raise ValueError(f"maxord must be at most 4, got {maxord}")
    base = as_complex(p)
    eps = POLE_ORDER_STEP
    g0 = g(base + eps * direction)
    g1 = g(base + eps / 2 * direction)
    for k in range(maxord + 1):
        v0 = abs(eps ** k * g0)
        v1 = abs((eps / 2) ** k * g1)
        if v1 <= 1.1 * v0 or v1 <= tol:
            return k
    return maxord + 1


def dd(p: PointLike, c: CurveParams) -> Tuple[float, float]:
    """Circle coordinates (a, b) in [0,1)^2 of the reduced point."""
    reduced = reduce(p, c)
    return reduced.coords


def is_torsion(p: PointLike, maxorder: int, c: CurveParams) -> Optional[int]:
    """Least m <= maxorder killing p, or None."""
    if maxorder > 64:
        raise ValueError(f"maxorder must be at most 64, got {maxorder}")
    a, b = dd(p, c)
    for m in range(1, maxorder + 1):
        if abs(m * a - round(m * a)) <= c.tol and abs(m * b - round(m * b)) <= c.tol:
            return m
    return None

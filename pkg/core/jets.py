"""
Truncated Power Series
Dense multivariate jets with a degree cap and a tracked precision, used as
the completed local rings around points of E^n.
"""
import logging
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

JET_RTOL = 1e-7


@lru_cache(maxsize=64)
def _degree_grid(nvars: int, cap: int) -> np.ndarray:
    """Total degree of every slot of a (cap+1,)^nvars array."""
    axes = np.indices((cap + 1,) * nvars)
    return axes.sum(axis=0)


class Jet:
    """Power series in nvars variables, truncated at total degree cap.

    prec is the highest total degree whose coefficients are trusted; division
    by a linear antisymmetric factor lowers it by one.
    """

    __slots__ = ("nvars", "cap", "coeffs", "prec")

    def __init__(self, nvars: int, cap: int, coeffs: Optional[np.ndarray] = None, prec: Optional[int] = None):
        if nvars < 1:
            raise ValueError(f"nvars must be positive, got {nvars}")
        self.nvars = nvars
        self.cap = cap
        shape = (cap + 1,) * nvars
        arr = np.zeros(shape, dtype=complex) if coeffs is None else np.array(coeffs, dtype=complex)
        if arr.shape != shape:
            raise ValueError(f"coefficient array has shape {arr.shape}, expected {shape}")
        self.prec = cap if prec is None else min(prec, cap)
        arr[_degree_grid(nvars, cap) > self.prec] = 0
        self.coeffs = arr

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, value: complex, nvars: int, cap: int) -> "Jet":
        jet = cls(nvars, cap)
        jet.coeffs[(0,) * nvars] = value
        return jet

    @classmethod
    def variable(cls, k: int, nvars: int, cap: int) -> "Jet":
        jet = cls(nvars, cap)
        idx = [0] * nvars
        idx[k] = 1
        jet.coeffs[tuple(idx)] = 1.0
        return jet

    @classmethod
    def univariate(cls, series: Sequence[complex], k: int, nvars: int, cap: int) -> "Jet":
        """sum_m series[m] * y_k^m."""
        jet = cls(nvars, cap)
        for m, value in enumerate(series[: cap + 1]):
            idx = [0] * nvars
            idx[k] = m
            jet.coeffs[tuple(idx)] = value
        return jet

    # -- queries ----------------------------------------------------------------

    def coefficient(self, exponents: Sequence[int]) -> complex:
        return complex(self.coeffs[tuple(exponents)])

    @property
    def constant_term(self) -> complex:
        return complex(self.coeffs[(0,) * self.nvars])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def _check(self, other: "Jet") -> None:
        if (self.nvars, self.cap) != (other.nvars, other.cap):
            raise ValueError("jets live in different rings")

    # -- ring operations ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Jet):
            return self + Jet.constant(other, self.nvars, self.cap)
        self._check(other)
        return Jet(self.nvars, self.cap, self.coeffs + other.coeffs, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(self.nvars, self.cap, -self.coeffs, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.nvars, self.cap, self.coeffs * complex(other), self.prec)
        self._check(other)
        cap = self.cap
        out = np.zeros_like(self.coeffs)
        for idx in np.argwhere(self.coeffs != 0):
            shift = tuple(int(x) for x in idx)
            if sum(shift) > cap:
                continue
            dst = tuple(slice(s, None) for s in shift)
            src = tuple(slice(0, cap + 1 - s) for s in shift)
            out[dst] += self.coeffs[shift] * other.coeffs[src]
        return Jet(self.nvars, cap, out, min(self.prec, other.prec))

    __rmul__ = __mul__

    def inverse(self) -> "Jet":
        """1/self by the geometric series around the constant term."""
        c0 = self.constant_term
        if abs(c0) < 1e-14:
            raise ZeroDivisionError("jet with vanishing constant term is not invertible")
        rest = self * (1.0 / c0) - 1.0
        term = Jet.constant(1.0, self.nvars, self.cap)
        total = Jet.constant(1.0, self.nvars, self.cap)
        for _ in range(self.prec):
            term = term * (-rest)
            total = total + term
        total.prec = self.prec
        return total * (1.0 / c0)

    def swap(self, i: int, j: int) -> "Jet":
        """Exchange the variables y_i and y_j."""
        return Jet(self.nvars, self.cap, np.swapaxes(self.coeffs, i, j), self.prec)

    def divided_difference(self, i: int, j: Optional[int] = None) -> "Jet":
        """(g - s g)/(y_i - y_j), exact monomial by monomial; precision drops by one."""
        j = i + 1 if j is None else j
        num = self.coeffs - np.swapaxes(self.coeffs, i, j)
        out = np.zeros_like(self.coeffs)
        for idx in np.argwhere(num != 0):
            e = [int(x) for x in idx]
            a, b = e[i], e[j]
            if a <= b:
                continue
            value = num[tuple(idx)]
            # (y_i^a y_j^b - y_i^b y_j^a)/(y_i - y_j) = y_i^b y_j^b sum_k y_i^k y_j^(a-b-1-k)
            for k in range(a - b):
                tgt = list(e)
                tgt[i] = b + k
                tgt[j] = b + (a - b - 1 - k)
                out[tuple(tgt)] += value
        return Jet(self.nvars, self.cap, out, self.prec - 1)

    def substitute(self, k: int, other: "Jet") -> "Jet":
        """Replace y_k by a jet without constant term (Horner along axis k)."""
        self._check(other)
        if abs(other.constant_term) > 0:
            raise ValueError("substituted jet must have zero constant term")
        result = Jet(self.nvars, self.cap)
        for m in range(self.cap, -1, -1):
            sl = [slice(None)] * self.nvars
            sl[k] = m
            layer = np.zeros_like(self.coeffs)
            put = [slice(None)] * self.nvars
            put[k] = 0
            layer[tuple(put)] = self.coeffs[tuple(sl)]
            result = result * other + Jet(self.nvars, self.cap, layer)
        result.prec = min(self.prec, other.prec)
        return result

    def truncated(self, prec: int) -> "Jet":
        return Jet(self.nvars, self.cap, self.coeffs, prec)

    def __repr__(self) -> str:
        return f"Jet(nvars={self.nvars}, cap={self.cap}, prec={self.prec}, max={self.max_abs():.3e})"


def jet_difference(a: Jet, b: Jet) -> Tuple[float, float]:
    """(max coefficient difference, scale) at the common precision."""
    prec = min(a.prec, b.prec)
    diff = a.truncated(prec) - b.truncated(prec)
    scale = max(1.0, a.truncated(prec).max_abs(), b.truncated(prec).max_abs())
    return diff.max_abs(), scale


def close(a: Jet, b: Jet, rtol: float = JET_RTOL) -> bool:
    err, scale = jet_difference(a, b)
    return err <= rtol * scale


def random_jet(rng: np.random.Generator, nvars: int, cap: int, integer: bool = False) -> Jet:
    """Random jet; integer=True draws small Gaussian integers so ring axioms hold exactly."""
    shape = (cap + 1,) * nvars
    if integer:
        coeffs = rng.integers(-3, 4, size=shape) + 1j * rng.integers(-3, 4, size=shape)
    else:
        coeffs = np.round(rng.uniform(-1, 1, size=shape) + 1j * rng.uniform(-1, 1, size=shape), 6)
    return Jet(nvars, cap, coeffs)

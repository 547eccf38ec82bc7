"""
Root Data and Weyl Groups
Preset root data, Weyl group enumeration, reduced words, Bruhat order,
inversion sets and the action on points of E^n x E.
"""
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .elliptic import CurveParams, CurvePoint, reduce
from .errors import ConfigError, GroupOverflow

logger = logging.getLogger(__name__)

MAX_GROUP_ORDER = 100_000
BRAID_ORDERS = {0: 2, 1: 3, 2: 4, 3: 6}

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class Root:
    """A root in character coordinates together with its coroot."""

    vector: Vector
    coroot: Vector

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.vector), tuple(-x for x in self.coroot))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vector, dtype=np.int64)

    @property
    def coroot_array(self) -> np.ndarray:
        return np.array(self.coroot, dtype=np.int64)


class WeylElement:
    """Element of W: a word in simple reflections and its integer matrix on cocharacters.

    Equality and hashing go through the matrix only.
    """

    __slots__ = ("word", "matrix", "length", "_inverse")

    def __init__(self, word: Sequence[int], matrix: np.ndarray, length: int):
        self.word = tuple(int(i) for i in word)
        self.matrix = np.asarray(matrix, dtype=np.int64)
        self.matrix.setflags(write=False)
        self.length = int(length)
        self._inverse = None

    @property
    def inverse_matrix(self) -> np.ndarray:
        if self._inverse is None:
            inv = np.rint(np.linalg.inv(self.matrix)).astype(np.int64)
            inv.setflags(write=False)
            self._inverse = inv
        return self._inverse

    @property
    def key(self) -> bytes:
        return self.matrix.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        letters = "".join(f"s{i + 1}" for i in self.word) or "e"
        return f"WeylElement({letters})"

    @property
    def label(self) -> str:
        return "".join(f"s{i + 1}" for i in self.word) or "e"


@dataclass(frozen=True)
class RootDatum:
    """Preset root datum: simple roots in character coordinates, simple coroots in cocharacter coordinates."""

    name: str
    rank: int
    simple_roots: Tuple[Vector, ...]
    simple_coroots: Tuple[Vector, ...]

    def __post_init__(self):
        if len(self.simple_roots) != len(self.simple_coroots):
            raise ConfigError(f"{self.name}: root/coroot count mismatch")
        for vec in self.simple_roots + self.simple_coroots:
            if len(vec) != self.rank:
                raise ConfigError(f"{self.name}: vector {vec} does not have length {self.rank}")
        cartan = self.cartan
        r = len(self.simple_roots)
        for i in range(r):
            if cartan[i, i] != 2:
                raise ConfigError(f"{self.name}: Cartan diagonal entry {cartan[i, i]}")
            for j in range(r):
                if i != j and (cartan[i, j] > 0 or (cartan[i, j] == 0) != (cartan[j, i] == 0)):
                    raise ConfigError(f"{self.name}: invalid Cartan entries at ({i}, {j})")

    @property
    def nsimple(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def roots_matrix(self) -> np.ndarray:
        return np.array(self.simple_roots, dtype=np.int64).reshape(self.nsimple, self.rank)

    @cached_property
    def coroots_matrix(self) -> np.ndarray:
        return np.array(self.simple_coroots, dtype=np.int64).reshape(self.nsimple, self.rank)

    @cached_property
    def cartan(self) -> np.ndarray:
        """C[i][j] = <alpha_j, alpha_i^vee>."""
        return self.coroots_matrix @ self.roots_matrix.T

    @cached_property
    def simple_reflections(self) -> Tuple[np.ndarray, ...]:
        eye = np.eye(self.rank, dtype=np.int64)
        return tuple(
            eye - np.outer(self.coroots_matrix[i], self.roots_matrix[i]) for i in range(self.nsimple)
        )

    def simple_root(self, i: int) -> Root:
        return Root(tuple(self.simple_roots[i]), tuple(self.simple_coroots[i]))

    def braid_order(self, i: int, j: int) -> int:
        if i == j:
            return 1
        return BRAID_ORDERS[int(self.cartan[i, j] * self.cartan[j, i])]

    # -- group elements -------------------------------------------------

    def matrix_of(self, word: Iterable[int]) -> np.ndarray:
        mat = np.eye(self.rank, dtype=np.int64)
        for i in word:
            mat = mat @ self.simple_reflections[i]
        return mat

    def element(self, word: Sequence[int]) -> WeylElement:
        """Element for an arbitrary word; the stored length is recomputed from inversions."""
        mat = self.matrix_of(word)
        return WeylElement(word, mat, self._inversion_count(mat))

    @cached_property
    def identity(self) -> WeylElement:
        return WeylElement((), np.eye(self.rank, dtype=np.int64), 0)

    @cached_property
    def elements(self) -> Tuple[WeylElement, ...]:
        return tuple(weyl_enumerate(self))

    @cached_property
    def _by_key(self) -> Dict[bytes, WeylElement]:
        return {w.key: w for w in self.elements}

    def canonical(self, matrix: np.ndarray) -> WeylElement:
        """The enumerated element with this matrix (canonical reduced word)."""
        return self._by_key[np.asarray(matrix, dtype=np.int64).tobytes()]

    def multiply(self, w: WeylElement, v: WeylElement) -> WeylElement:
        return self.canonical(w.matrix @ v.matrix)

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.canonical(w.inverse_matrix)

    def simple(self, i: int) -> WeylElement:
        return self.canonical(self.simple_reflections[i])

    @cached_property
    def longest_element(self) -> WeylElement:
        return max(self.elements, key=lambda w: w.length)

    # -- roots ----------------------------------------------------------

    def simple_coefficients(self, vector: Sequence[int]) -> np.ndarray:
        """Coordinates of a root in the basis of simple roots."""
        sol, *_ = np.linalg.lstsq(self.roots_matrix.T.astype(float), np.asarray(vector, dtype=float), rcond=None)
        return np.rint(sol).astype(np.int64)

    def is_positive(self, root: Root) -> bool:
        return bool(np.all(self.simple_coefficients(root.vector) >= 0))

    @cached_property
    def roots(self) -> Tuple[Root, ...]:
        """All roots, positive ones first, each list sorted by height then vector."""
        seen: Dict[Vector, Root] = {}
        queue = deque(self.simple_root(i) for i in range(self.nsimple))
        while queue:
            root = queue.popleft()
            if root.vector in seen:
                continue
            seen[root.vector] = root
            for i, refl in enumerate(self.simple_reflections):
                vec = tuple(int(x) for x in root.array @ refl)
                cov = tuple(int(x) for x in refl @ root.coroot_array)
                if vec not in seen:
                    queue.append(Root(vec, cov))
        def sort_key(r: Root):
            return (int(self.simple_coefficients(r.vector).sum()), r.vector)
        pos = sorted((r for r in seen.values() if self.is_positive(r)), key=sort_key)
        neg = [-r for r in pos]
        return tuple(pos + neg)

    @cached_property
    def positive_roots(self) -> Tuple[Root, ...]:
        return tuple(r for r in self.roots if self.is_positive(r))

    def act_root(self, w: WeylElement, root: Root) -> Root:
        """w(alpha) = alpha o w^{-1} on characters, w(alpha^vee) on cocharacters."""
        vec = tuple(int(x) for x in root.array @ w.inverse_matrix)
        cov = tuple(int(x) for x in w.matrix @ root.coroot_array)
        return Root(vec, cov)

    def act_character(self, w: WeylElement, lam: Sequence[int]) -> Vector:
        return tuple(int(x) for x in np.asarray(lam, dtype=np.int64) @ w.inverse_matrix)

    def reflection(self, root: Root) -> WeylElement:
        eye = np.eye(self.rank, dtype=np.int64)
        return self.canonical(eye - np.outer(root.coroot_array, root.array))

    def _inversion_count(self, matrix: np.ndarray) -> int:
        # length = #{beta > 0 : w(beta) < 0}; the row action beta o w^{-1} needs the inverse.
        inv = np.rint(np.linalg.inv(matrix)).astype(np.int64)
        count = 0
        for root in self.positive_roots:
            image = Root(tuple(int(x) for x in root.array @ inv), root.coroot)
            if not self.is_positive(image):
                count += 1
        return count

    def right_descents(self, w: WeylElement) -> List[int]:
        """Indices i with w(alpha_i) < 0."""
        return [i for i in range(self.nsimple) if not self.is_positive(self.act_root(w, self.simple_root(i)))]


def _matrix_key(mat: np.ndarray) -> bytes:
    return np.asarray(mat, dtype=np.int64).tobytes()


def reduced_word(matrix: np.ndarray, d: RootDatum) -> Tuple[int, ...]:
    """Reduced word by repeatedly stripping the smallest right descent."""
    mat = np.asarray(matrix, dtype=np.int64)
    word: List[int] = []
    eye = np.eye(d.rank, dtype=np.int64)
    guard = 0
    while not np.array_equal(mat, eye):
        inv = np.rint(np.linalg.inv(mat)).astype(np.int64)
        for i in range(d.nsimple):
            image = d.roots_matrix[i] @ inv
            if not d.is_positive(Root(tuple(int(x) for x in image), d.simple_coroots[i])):
                break
        else:
            raise RuntimeError("non-identity element without a right descent")
        word.append(i)
        mat = mat @ d.simple_reflections[i]
        guard += 1
        if guard > len(d.positive_roots):
            raise RuntimeError("descent stripping did not terminate")
    return tuple(reversed(word))


def weyl_enumerate(d: RootDatum, cap: int = MAX_GROUP_ORDER) -> List[WeylElement]:
    """All elements by breadth-first closure under right multiplication by generators."""
    eye = np.eye(d.rank, dtype=np.int64)
    seen = {_matrix_key(eye): eye}
    order = [eye]
    queue = deque([eye])
    while queue:
        mat = queue.popleft()
        for refl in d.simple_reflections:
            nxt = mat @ refl
            key = _matrix_key(nxt)
            if key not in seen:
                seen[key] = nxt
                order.append(nxt)
                queue.append(nxt)
                if len(seen) > cap:
                    raise GroupOverflow(f"{d.name}: Weyl group closure exceeds {cap} elements")
    elements = []
    for mat in order:
        word = reduced_word(mat, d)
        elements.append(WeylElement(word, mat, len(word)))
    elements.sort(key=lambda w: (w.length, w.word))
    logger.debug(f"{d.name}: enumerated {len(elements)} Weyl group elements")
    return elements


def inversion_set(w: WeylElement, d: RootDatum) -> List[Root]:
    """Sigma(w) = w Sigma^- intersected with Sigma^+, i.e. positive beta with w^{-1} beta < 0."""
    result = []
    for root in d.positive_roots:
        pre = Root(tuple(int(x) for x in root.array @ w.matrix), root.coroot)
        if not d.is_positive(pre):
            result.append(root)
    return result


def bruhat_leq(v: WeylElement, w: WeylElement, d: RootDatum) -> bool:
    """Subword property against the canonical reduced word of w."""
    reachable = {_matrix_key(np.eye(d.rank, dtype=np.int64)): np.eye(d.rank, dtype=np.int64)}
    for i in reduced_word(w.matrix, d):
        refl = d.simple_reflections[i]
        for mat in list(reachable.values()):
            nxt = mat @ refl
            reachable.setdefault(_matrix_key(nxt), nxt)
    return v.key in reachable


def all_reduced_words(w: WeylElement, d: RootDatum) -> List[Tuple[int, ...]]:
    """Every reduced word of w, in lexicographic order."""
    if w.length == 0:
        return [()]
    words = []
    for i in d.right_descents(w):
        shorter = d.canonical(w.matrix @ d.simple_reflections[i])
        for prefix in all_reduced_words(shorter, d):
            words.append(prefix + (i,))
    return sorted(set(words))


def act_point(w: WeylElement, p: np.ndarray, d: RootDatum) -> np.ndarray:
    """Apply the cocharacter matrix to (z_1..z_n) and keep z_gamma."""
    p = np.asarray(p, dtype=complex)
    out = np.empty_like(p)
    out[: d.rank] = w.matrix @ p[: d.rank]
    out[d.rank] = p[d.rank]
    return out


def character_eval(
    lam: Sequence[int], p: np.ndarray, c: CurveParams, gamma: int = 0
) -> CurvePoint:
    """chi_lambda(p) = sum lambda_i z_i + m z_gamma, reduced."""
    p = np.asarray(p, dtype=complex)
    lam = np.asarray(lam, dtype=np.int64)
    n = len(lam)
    if len(p) != n + 1:
        raise ValueError(f"point has {len(p)} slots, expected {n + 1}")
    return reduce(CurvePoint(complex(lam @ p[:n] + gamma * p[n])), c)


# -- presets ----------------------------------------------------------------

_CARTAN_PRESETS = {
    "sl2": ((2,),),
    "a2": ((2, -1), (-1, 2)),
    "b2": ((2, -1), (-2, 2)),
    "g2": ((2, -1), (-3, 2)),
}


def _simply_connected(name: str, cartan: Tuple[Tuple[int, ...], ...]) -> RootDatum:
    # Fundamental weight coordinates: alpha_j is column j of C, alpha_i^vee = e_i.
    r = len(cartan)
    roots = tuple(tuple(cartan[i][j] for i in range(r)) for j in range(r))
    coroots = tuple(tuple(1 if k == i else 0 for k in range(r)) for i in range(r))
    return RootDatum(name, r, roots, coroots)


def gl_datum(n: int) -> RootDatum:
    if not 2 <= n <= 6:
        raise ConfigError(f"GLn preset supports 2 <= n <= 6, got {n}")
    vecs = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        vecs.append(tuple(v))
    return RootDatum(f"gl{n}", n, tuple(vecs), tuple(vecs))


def preset(name: str) -> RootDatum:
    """Preset datum by name: sl2, a2, b2, g2 or gl2..gl6."""
    key = name.lower()
    if key in _CARTAN_PRESETS:
        return _simply_connected(key, _CARTAN_PRESETS[key])
    if key.startswith("gl") and key[2:].isdigit():
        return gl_datum(int(key[2:]))
    raise ConfigError(f"unknown root datum preset '{name}'")


def root_label(root: Root, d: RootDatum) -> str:
    coeffs = d.simple_coefficients(root.vector)
    return "(" + ",".join(str(int(x)) for x in coeffs) + ")"


def find_root(d: RootDatum, vector: Sequence[int]) -> Optional[Root]:
    vec = tuple(int(x) for x in vector)
    for root in d.roots:
        if root.vector == vec:
            return root
    return None

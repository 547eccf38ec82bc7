"""
Type-A Parameters
Eigenvalue strings at a non-torsion t, multisegment enumeration and an
independent finite-field orbit count.
"""
import logging
from collections import deque
from dataclasses import dataclass
from functools import reduce as fold
from itertools import product
from typing import Any, Dict, List, Sequence, Tuple

import galois
import numpy as np

from .elliptic import CurveParams, CurvePoint, dd, is_torsion, lattice_distance, point_from_coords, reduce
from .errors import AmbiguousString, ConfigError, Mismatch, NonTorsionRequired, TooLarge

logger = logging.getLogger(__name__)

MAX_POINTS = 8
MAX_ORACLE_DIM = 4
TORSION_SEARCH = 64
ORACLE_FIELDS = (2, 3)

Segment = Tuple[int, int, int]


@dataclass(frozen=True)
class EigenData:
    """Points a_1..a_n (repetition = multiplicity) and the parameter t."""

    points: Tuple[CurvePoint, ...]
    t: CurvePoint

    @classmethod
    def from_json(cls, payload: Dict[str, Any], c: CurveParams) -> "EigenData":
        """{points: [[a, b], ...], t: [a, b]} in lattice coordinates."""
        try:
            points = tuple(point_from_coords(float(a), float(b), c) for a, b in payload["points"])
            ta, tb = payload["t"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed parameter input: {exc}") from exc
        if not points:
            raise ConfigError("parameter input has no points")
        return cls(points, point_from_coords(float(ta), float(tb), c))


@dataclass(frozen=True)
class StringData:
    """One t-string: base point and multiplicities at positions 0..L."""

    base: CurvePoint
    multiplicities: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {"base": list(self.base.coords or (0.0, 0.0)), "multiplicities": list(self.multiplicities)}


@dataclass(frozen=True)
class SegmentQuiver:
    strings: Tuple[StringData, ...]

    @property
    def dim_vectors(self) -> List[List[int]]:
        return [list(s.multiplicities) for s in self.strings]

    @property
    def total_dim(self) -> int:
        return sum(sum(s.multiplicities) for s in self.strings)


@dataclass(frozen=True)
class Multisegment:
    """Sorted (string id, start, end) triples."""

    segments: Tuple[Segment, ...]

    def content(self, sq: SegmentQuiver) -> List[List[int]]:
        out = [[0] * len(s.multiplicities) for s in sq.strings]
        for sid, start, end in self.segments:
            for pos in range(start, end + 1):
                out[sid][pos] += 1
        return out

    def to_list(self) -> List[List[int]]:
        return [list(seg) for seg in self.segments]


# -- strings ---------------------------------------------------------------------

def _offsets(a: CurvePoint, b: CurvePoint, t: CurvePoint, bound: int, c: CurveParams) -> List[int]:
    """All m in [-bound, bound] with a - b - m t in the lattice (match tolerance scale_tol)."""
    return [m for m in range(-bound, bound + 1) if lattice_distance(a.z - b.z - m * t.z, c) <= c.scale_tol]


def build_strings(e: EigenData, c: CurveParams) -> SegmentQuiver:
    """Group the points into t-strings with integer positions."""
    n = len(e.points)
    if n > MAX_POINTS:
        raise TooLarge(f"at most {MAX_POINTS} points supported, got {n}")
    order = is_torsion(e.t, TORSION_SEARCH, c)
    if order is not None:
        raise NonTorsionRequired(f"t is torsion of order {order}")

    bound = 2 * n
    edges: Dict[int, List[Tuple[int, int]]] = {j: [] for j in range(n)}
    for j in range(n):
        for k in range(j + 1, n):
            ms = _offsets(e.points[j], e.points[k], e.t, bound, c)
            if len(ms) > 1:
                raise AmbiguousString(f"points {j} and {k} match offsets {ms}")
            if ms:
                # a_j = a_k + m t: pos_j = pos_k + m
                edges[j].append((k, -ms[0]))
                edges[k].append((j, ms[0]))

    position: Dict[int, int] = {}
    strings: List[StringData] = []
    for root in range(n):
        if root in position:
            continue
        position[root] = 0
        members = [root]
        queue = deque([root])
        while queue:
            j = queue.popleft()
            for k, step in edges[j]:
                if k not in position:
                    position[k] = position[j] + step
                    members.append(k)
                    queue.append(k)
                elif position[k] != position[j] + step:
                    raise AmbiguousString(f"inconsistent t-offsets around point {k}")
        low = min(position[j] for j in members)
        span = max(position[j] for j in members) - low
        mult = [0] * (span + 1)
        base_index = None
        for j in members:
            mult[position[j] - low] += 1
            if position[j] == low and base_index is None:
                base_index = j
        strings.append(StringData(reduce(e.points[base_index], c), tuple(mult)))

    strings.sort(key=lambda s: (round(s.base.coords[0], 9), round(s.base.coords[1], 9), s.multiplicities))
    logger.debug(f"build_strings: {n} points -> {len(strings)} strings")
    return SegmentQuiver(tuple(strings))


# -- multisegments -------------------------------------------------------------------

def _runs(mult: Sequence[int]) -> List[Tuple[int, ...]]:
    """Maximal blocks of nonzero multiplicities."""
    runs, cur = [], []
    for m in mult:
        if m:
            cur.append(m)
        elif cur:
            runs.append(tuple(cur))
            cur = []
    if cur:
        runs.append(tuple(cur))
    return runs


def _string_multisegments(mult: Sequence[int]) -> List[Tuple[Tuple[int, int], ...]]:
    """Multisets of intervals with the given content, by leftmost-start recursion."""
    results: List[Tuple[Tuple[int, int], ...]] = []

    def recurse(rest: List[int], chosen: List[Tuple[int, int]]):
        try:
            start = next(p for p, m in enumerate(rest) if m > 0)
        except StopIteration:
            results.append(tuple(chosen))
            return
        end = start
        while end < len(rest) and rest[end] > 0:
            seg = (start, end)
            if not chosen or chosen[-1][0] < start or chosen[-1][1] <= end:
                for p in range(start, end + 1):
                    rest[p] -= 1
                chosen.append(seg)
                recurse(rest, chosen)
                chosen.pop()
                for p in range(start, end + 1):
                    rest[p] += 1
            end += 1

    recurse(list(mult), [])
    return sorted(results)


def enumerate_multisegments(sq: SegmentQuiver) -> List[Multisegment]:
    """Every multisegment with content equal to the dimension vectors, in canonical order."""
    if sq.total_dim > MAX_POINTS:
        raise TooLarge(f"total dimension {sq.total_dim} exceeds {MAX_POINTS}")
    per_string = [_string_multisegments(s.multiplicities) for s in sq.strings]
    out = []
    for combo in product(*per_string):
        segs = tuple(sorted((sid, a, b) for sid, segs in enumerate(combo) for a, b in segs))
        out.append(Multisegment(segs))
    return sorted(out, key=lambda ms: ms.segments)


# -- finite-field oracle -----------------------------------------------------------------

def _gl_generators(m: int, GF) -> List[Any]:
    """Transvections I + E_ij plus diag(g, 1, ..., 1) with g primitive."""
    gens = []
    for i in range(m):
        for j in range(m):
            if i != j:
                mat = GF.Identity(m)
                mat[i, j] = 1
                gens.append(mat)
    diag = GF.Identity(m)
    diag[0, 0] = GF.primitive_element
    gens.append(diag)
    return gens


def _run_orbit_count(dims: Tuple[int, ...], p: int) -> int:
    """Orbits of prod GL(m_j) on prod Hom(F^{m_j}, F^{m_{j+1}}) via g_{j+1} A_j g_j^{-1}."""
    if len(dims) == 1:
        return 1
    GF = galois.GF(p)
    shapes = [(dims[j + 1], dims[j]) for j in range(len(dims) - 1)]
    sizes = [r * s for r, s in shapes]
    total = sum(sizes)

    def unpack(key: Tuple[int, ...]) -> List[Any]:
        mats, at = [], 0
        for shape, size in zip(shapes, sizes):
            mats.append(GF(np.array(key[at:at + size], dtype=int).reshape(shape)))
            at += size
        return mats

    def pack(mats: List[Any]) -> Tuple[int, ...]:
        return tuple(int(v) for mat in mats for v in np.asarray(mat).ravel())

    moves = []
    for slot, m in enumerate(dims):
        for g in _gl_generators(m, GF):
            moves.append((slot, g, np.linalg.inv(g)))

    def neighbours(key: Tuple[int, ...]):
        mats = unpack(key)
        for slot, g, g_inv in moves:
            new = list(mats)
            if slot >= 1:
                new[slot - 1] = g @ new[slot - 1]
            if slot < len(mats):
                new[slot] = new[slot] @ g_inv
            yield pack(new)

    seen = set()
    orbits = 0
    for key in product(range(p), repeat=total):
        if key in seen:
            continue
        orbits += 1
        seen.add(key)
        queue = deque([key])
        while queue:
            cur = queue.popleft()
            for nxt in neighbours(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return orbits


def orbit_count_oracle(sq: SegmentQuiver, fieldsize: int) -> int:
    """Number of group orbits on the representation space over F_fieldsize."""
    if fieldsize not in ORACLE_FIELDS:
        raise ValueError(f"fieldsize must be one of {ORACLE_FIELDS}, got {fieldsize}")
    if sq.total_dim > MAX_ORACLE_DIM:
        raise TooLarge(f"orbit oracle supports total dimension <= {MAX_ORACLE_DIM}, got {sq.total_dim}")
    counts = [_run_orbit_count(run, fieldsize) for s in sq.strings for run in _runs(s.multiplicities)]
    return fold(lambda a, b: a * b, counts, 1)


def classify(e: EigenData, c: CurveParams) -> Dict[str, Any]:
    """Strings, multisegments and (for small dimension) oracle counts.

    Raises:
        Mismatch: An oracle count disagrees with the enumeration.
    """
    sq = build_strings(e, c)
    multisegments = enumerate_multisegments(sq)
    count = len(multisegments)
    oracle: Dict[str, int] = {}
    if sq.total_dim <= MAX_ORACLE_DIM:
        for p in ORACLE_FIELDS:
            oracle[f"F{p}"] = orbit_count_oracle(sq, p)
        if any(v != count for v in oracle.values()):
            raise Mismatch(f"enumeration gives {count}, oracle gives {oracle}", counts={"enumeration": count, **oracle})
    logger.info(f"classify: {len(sq.strings)} strings, {count} parameters")
    return {
        "strings": [s.to_dict() for s in sq.strings],
        "dim_vectors": sq.dim_vectors,
        "count": count,
        "oracle_counts": oracle,
        "parameters": [ms.to_list() for ms in multisegments],
        "t": list(dd(e.t, c)),
    }

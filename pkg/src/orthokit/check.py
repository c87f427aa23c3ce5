"""Property deciders: k-orthogoval, orthomorphism, askew, half-dimension.

The k=2 checks run off a triple index: one packed 64-bit key per
colinear point triple, kept sorted so pair and family checks are merges
instead of line-by-line intersections.  The naive all-line-pairs scan is
kept as an independent oracle path (``naive_k_orthogoval_pair``).

All predicates are pure and deterministic; the ``workers`` argument
partitions scans into chunks whose results are merged canonically, so
verdicts and witnesses do not depend on the worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryMismatch, OddDimension
from .geom import AFFINE, Geometry

_TRIPLE_CACHE_LIMIT = 2_000_000


@dataclass
class Space:
    """A geometry together with a point bijection from the standard space."""

    geometry: Geometry
    perm: np.ndarray
    name: str = ""
    linear: bool = False
    _triples: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.perm = np.asarray(self.perm, dtype=np.int64)
        n = self.geometry.point_count
        if len(self.perm) != n or len(np.unique(self.perm)) != n:
            raise ValueError("map is not a permutation of the point indices")

    @property
    def is_standard(self) -> bool:
        return bool(np.array_equal(self.perm, np.arange(len(self.perm))))

    def inverse(self) -> np.ndarray:
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm))
        return inv

    def lines(self) -> np.ndarray:
        out = self.perm[self.geometry.lines()]
        out.sort(axis=1)
        return out

    def line_sets(self) -> list[frozenset]:
        return [frozenset(row) for row in self.lines().tolist()]

    def triples(self) -> np.ndarray:
        """Sorted packed keys of all colinear triples of this space."""
        if self._triples is not None:
            return self._triples
        out = packed_triples(self.geometry, self.lines())
        if len(out) <= _TRIPLE_CACHE_LIMIT:
            self._triples = out
        return out


def standard(g: Geometry, name: str = "standard") -> Space:
    return Space(g, np.arange(g.point_count), name=name, linear=True)


def from_map(g: Geometry, perm, name: str = "", linear: bool = False) -> Space:
    return Space(g, np.asarray(perm), name=name, linear=linear)


@dataclass
class Verdict:
    ok: bool
    witness: dict = None

    def __bool__(self):
        return self.ok


# ----------------------------------------------------------------------
# triple index
# ----------------------------------------------------------------------

def packed_triples(g: Geometry, lines: np.ndarray) -> np.ndarray:
    """One uint64 key per colinear triple: ((a*N)+b)*N+c with a<b<c."""
    n = np.uint64(g.point_count)
    b = g.points_per_line
    rows = np.sort(lines, axis=1).astype(np.uint64)
    parts = []
    for i, j, k in itertools.combinations(range(b), 3):
        parts.append((rows[:, i] * n + rows[:, j]) * n + rows[:, k])
    out = np.concatenate(parts)
    out.sort()
    return out


def unpack_triple(key: int, n: int) -> tuple[int, int, int]:
    key = int(key)
    c = key % n
    key //= n
    return (key // n, key % n, c)


def _check_same_geometry(spaces):
    g = spaces[0].geometry
    for s in spaces[1:]:
        if not g.same_as(s.geometry):
            raise GeometryMismatch("spaces live on different geometries")
    return g


def _chunk_bounds(n: int, workers: int):
    workers = max(1, min(workers, n)) if n else 1
    step = -(-n // workers)
    return [(i, min(i + step, n)) for i in range(0, n, step)]


# ----------------------------------------------------------------------
# pair checks
# ----------------------------------------------------------------------

def is_k_orthogoval_pair(s: Space, t: Space, k: int = 2, workers: int = 1) -> Verdict:
    """Every line of s meets every line of t in at most k points."""
    g = _check_same_geometry([s, t])
    if k >= g.points_per_line:
        return Verdict(True)
    if k == 2:
        common = np.intersect1d(s.triples(), t.triples(), assume_unique=True)
        if len(common) == 0:
            return Verdict(True)
        return Verdict(False, _triple_witness(int(common[0]), s, t))
    if g.kind == AFFINE and s.is_standard and t.linear:
        return _linear_affine_orthogoval(s, t, k)
    return naive_k_orthogoval_pair(s, t, k, workers=workers)


def naive_k_orthogoval_pair(s: Space, t: Space, k: int, workers: int = 1) -> Verdict:
    """Oracle path: intersect every line pair directly."""
    _check_same_geometry([s, t])
    ls = s.line_sets()
    lt = t.line_sets()

    def scan(bounds):
        lo, hi = bounds
        for i in range(lo, hi):
            li = ls[i]
            for j, lj in enumerate(lt):
                inter = li & lj
                if len(inter) > k:
                    return (i, j, inter)
        return None

    bounds = _chunk_bounds(len(ls), workers)
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = [h for h in pool.map(scan, bounds) if h is not None]
    else:
        hits = [h for h in map(scan, bounds) if h is not None]
    if not hits:
        return Verdict(True)
    i, j, inter = min(hits)
    return Verdict(False, {
        "line_a": tuple(sorted(ls[i])),
        "line_b": tuple(sorted(lt[j])),
        "intersection": tuple(sorted(inter)),
    })


def _linear_affine_orthogoval(s: Space, t: Space, k: int) -> Verdict:
    """Shortcut for a linear map: only origin lines and their translates.

    |f(l) ∩ l'| for arbitrary translates is the multiplicity of a value
    in the difference multiset of the two origin lines, so the max over
    all translate pairs comes from one pass per direction pair.
    """
    g = s.geometry
    base = g.field
    origin_lines = []
    pts = g.points()
    for row in g.lines():
        if 0 in row:
            origin_lines.append([int(x) for x in row])
    fmap = t.perm
    for lu in origin_lines:
        image = [int(fmap[x]) for x in lu]
        for lv in origin_lines:
            counts = {}
            for x in image:
                cx = pts[x]
                for y in lv:
                    cy = pts[y]
                    d = g.point_index(tuple(base.sub(a, b) for a, b in zip(cx, cy)))
                    counts[d] = counts.get(d, 0) + 1
            worst = max(counts.values())
            if worst > k:
                shift = min(c for c, v in counts.items() if v == worst)
                sc = pts[shift]
                line_b = tuple(sorted(
                    g.point_index(tuple(base.add(a, b) for a, b in zip(pts[y], sc)))
                    for y in lv))
                inter = tuple(sorted(set(image) & set(line_b)))
                return Verdict(False, {
                    "line_a": tuple(sorted(image)),
                    "line_b": line_b,
                    "intersection": inter,
                })
    return Verdict(True)


def _triple_witness(key: int, s: Space, t: Space) -> dict:
    g = s.geometry
    tri = unpack_triple(key, g.point_count)
    return {
        "triple": tri,
        "line_a": _line_containing(s, tri),
        "line_b": _line_containing(t, tri),
    }


def _line_containing(space: Space, tri) -> tuple[int, ...]:
    want = set(tri)
    for row in space.lines().tolist():
        if want <= set(row):
            return tuple(row)
    return None  # pragma: no cover


# ----------------------------------------------------------------------
# families
# ----------------------------------------------------------------------

def are_mutually_orthogoval(spaces: list[Space], k: int = 2,
                            workers: int = 1) -> Verdict:
    """No point triple colinear in two spaces of the family (k=2), or
    pairwise k-orthogoval for general k."""
    if len(spaces) < 2:
        raise ValueError("need at least 2 spaces")
    g = _check_same_geometry(spaces)
    if k != 2:
        for i, j in itertools.combinations(range(len(spaces)), 2):
            v = is_k_orthogoval_pair(spaces[i], spaces[j], k, workers=workers)
            if not v:
                v.witness = dict(v.witness, space_a=i, space_b=j)
                return v
        return Verdict(True)
    per_space = g.line_count * _c3(g.points_per_line)
    total = per_space * len(spaces)
    buf = np.empty(total, dtype=np.uint64)
    for i, s in enumerate(spaces):
        buf[i * per_space:(i + 1) * per_space] = s.triples()
    buf.sort()
    dup = _first_duplicate(buf)
    if dup is None:
        return Verdict(True)
    owners = [i for i, s in enumerate(spaces)
              if np.searchsorted(s.triples(), dup) < len(s.triples())
              and s.triples()[np.searchsorted(s.triples(), dup)] == dup]
    i, j = owners[0], owners[1]
    w = _triple_witness(int(dup), spaces[i], spaces[j])
    w["space_a"], w["space_b"] = i, j
    return Verdict(False, w)


def _c3(m: int) -> int:
    return m * (m - 1) * (m - 2) // 6


def _first_duplicate(sorted_arr: np.ndarray):
    """Least value occurring twice in a sorted array, scanned in chunks."""
    n = len(sorted_arr)
    step = 8_000_000
    for lo in range(0, n - 1, step):
        hi = min(lo + step + 1, n)
        seg = sorted_arr[lo:hi]
        eq = seg[1:] == seg[:-1]
        idx = np.argmax(eq)
        if eq[idx]:
            return np.uint64(seg[idx])
    return None


# ----------------------------------------------------------------------
# orthomorphisms, general position, askew, half-dimension
# ----------------------------------------------------------------------

def is_orthomorphism(g: Geometry, perm, workers: int = 1) -> Verdict:
    """Bijection whose line images are caps of the standard space."""
    image = from_map(g, perm)
    return is_k_orthogoval_pair(standard(g), image, 2, workers=workers)


def in_general_position(space: Space, pts) -> bool:
    """Every subset of size min(|pts|, dim+1) spans a flat of full rank,
    measured in the line structure of the given space."""
    g = space.geometry
    if space.is_standard:
        inv_pts = list(pts)
    else:
        inv = space.inverse()
        inv_pts = [int(inv[p]) for p in pts]
    m = len(inv_pts)
    if m < 2:
        return True
    s = min(m, g.dim + 1)
    if m == s:
        return g.rank_of(inv_pts) == m
    for sub in itertools.combinations(sorted(inv_pts), s):
        if g.rank_of(sub) != s:
            return False
    return True


def is_askew_pair(s: Space, t: Space, workers: int = 1) -> Verdict:
    """Every line of each space is in general linear position in the other."""
    _check_same_geometry([s, t])

    def scan(args):
        lines, other, tag, bounds = args
        lo, hi = bounds
        for i in range(lo, hi):
            row = [int(x) for x in lines[i]]
            if not in_general_position(other, row):
                return (tag, i, tuple(row))
        return None

    tasks = []
    for tag, (src, other) in enumerate([(s, t), (t, s)]):
        lines = src.lines()
        for bounds in _chunk_bounds(len(lines), workers):
            tasks.append((lines, other, tag, bounds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = [h for h in pool.map(scan, tasks) if h is not None]
    else:
        hits = [h for h in map(scan, tasks) if h is not None]
    if not hits:
        return Verdict(True)
    tag, i, row = min(hits)
    return Verdict(False, {
        "line_of": "first" if tag == 0 else "second",
        "line": row,
    })


def is_half_dimension_orthogoval(s: Space, t: Space, workers: int = 1) -> Verdict:
    """In dimension 2k, k-flats of one space meet k-flats of the other in
    at most k+1 points."""
    g = _check_same_geometry([s, t])
    if g.dim % 2:
        raise OddDimension(f"dimension {g.dim} is odd")
    k = g.dim // 2
    std = g.flats(k)
    flats_s = [frozenset(int(s.perm[p]) for p in f) for f in std]
    flats_t = [frozenset(int(t.perm[p]) for p in f) for f in std]

    def scan(bounds):
        lo, hi = bounds
        for i in range(lo, hi):
            fi = flats_s[i]
            for j, fj in enumerate(flats_t):
                inter = fi & fj
                if len(inter) > k + 1:
                    return (i, j, inter)
        return None

    bounds = _chunk_bounds(len(flats_s), workers)
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = [h for h in pool.map(scan, bounds) if h is not None]
    else:
        hits = [h for h in map(scan, bounds) if h is not None]
    if not hits:
        return Verdict(True)
    i, j, inter = min(hits)
    return Verdict(False, {
        "flat_a": tuple(sorted(flats_s[i])),
        "flat_b": tuple(sorted(flats_t[j])),
        "intersection": tuple(sorted(inter)),
    })


# ----------------------------------------------------------------------
# handy maps for tests and invariance checks
# ----------------------------------------------------------------------

def translation_map(g: Geometry, t_coords) -> np.ndarray:
    """Index permutation of an affine translation."""
    base = g.field
    pts = g.points()
    out = np.empty(g.point_count, dtype=np.int64)
    for i, pt in enumerate(pts):
        out[i] = g.point_index(tuple(base.add(a, b) for a, b in zip(pt, t_coords)))
    return out


def singer_shift(g: Geometry, c: int) -> np.ndarray:
    """Multiplication of Singer labels by z^c: a projective collineation."""
    n = g.point_count
    return (np.arange(n) + c) % n


def compose(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Permutation composition: (outer . inner)(x) = outer[inner[x]]."""
    return np.asarray(outer)[np.asarray(inner)]

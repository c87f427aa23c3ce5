"""Search engines.

Four task kinds: exponent scans for orthomorphism power maps, power
chains, branch-and-bound clique search over candidate bijections, and
the symmetry-reduced exhaustive search over affine structures used for
the half-dimension nonexistence question.  All searches are
deterministic: candidate orders are canonical and results never depend
on timing.  Every certificate emitted here is re-verified through
:mod:`orthokit.check` before it is reported.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import geom
from .build import build_phi_map, phi_space
from .check import (
    Space,
    from_map,
    is_half_dimension_orthogoval,
    is_k_orthogoval_pair,
    is_orthomorphism,
    standard,
)
from .errors import BudgetExceeded, NotCoprime
from .gf import prime_factors


@dataclass
class SearchResult:
    certificates: list
    nodes: int
    exhaustive: bool


# ----------------------------------------------------------------------
# orthomorphism exponent scans
# ----------------------------------------------------------------------

def sufficient_exponents(q: int, r: int, w_max: int) -> list[int]:
    """Exponents w in [2, w_max] meeting the sufficient conditions:
    coprime to q^r - 1, not a power of char p, and r coprime to w!."""
    p = prime_factors(q)[0]
    big = q ** r - 1
    out = []
    for w in range(2, w_max + 1):
        if math.gcd(w, big) != 1:
            continue
        x = w
        while x % p == 0:
            x //= p
        if x == 1:
            continue
        if any(r % pr == 0 for pr in prime_factors(math.factorial(w))):
            continue
        out.append(w)
    return out


def exponent_scan(q: int, r: int, w_max: int, workers: int = 1) -> dict:
    """All w in [2, w_max] coprime to q^r - 1 whose power map is an
    orthomorphism of PG(r-1, q), plus the sufficient-condition subset."""
    g = geom.projective(r - 1, q)
    big = q ** r - 1
    found = []
    for w in range(2, w_max + 1):
        if math.gcd(w, big) != 1:
            continue
        if is_orthomorphism(g, build_phi_map(g, w), workers=workers):
            found.append(w)
    return {
        "q": q,
        "r": r,
        "w_max": w_max,
        "orthomorphisms": found,
        "sufficient_conditions": sufficient_exponents(q, r, w_max),
    }


def _mult_order(w: int, m: int) -> int:
    o, x = 1, w % m
    while x != 1:
        x = (x * w) % m
        o += 1
    return o


def power_chain(q: int, r: int, w: int, workers: int = 1) -> int:
    """Largest n with the w^i power map an orthomorphism for all
    1 <= i <= n; scan stops at the first failure and is capped by the
    multiplicative order of w (the order-th power is the identity)."""
    big = q ** r - 1
    if math.gcd(w, big) != 1:
        raise NotCoprime(f"w = {w} shares a factor with {big}")
    g = geom.projective(r - 1, q)
    std = standard(g)
    cap = _mult_order(w, big)
    n = 0
    for i in range(1, cap + 1):
        perm = build_phi_map(g, pow(w, i, big))
        if not is_k_orthogoval_pair(std, from_map(g, perm), 2, workers=workers):
            break
        n = i
    return n


# ----------------------------------------------------------------------
# maximum clique over candidate bijections
# ----------------------------------------------------------------------

@dataclass
class CliqueResult:
    members: list
    nodes: int
    exhaustive: bool


def clique_search(candidates: list, g: geom.Geometry,
                  budget: int = None, workers: int = 1) -> CliqueResult:
    """Largest found set of candidate maps whose induced spaces are
    mutually orthogoval: exact branch-and-bound with greedy-coloring
    bounds and canonical tie-breaking."""
    spaces = [from_map(g, p) for p in candidates]
    m = len(spaces)
    adj = [[False] * m for _ in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        ok = bool(is_k_orthogoval_pair(spaces[i], spaces[j], 2, workers=workers))
        adj[i][j] = adj[j][i] = ok

    best: list[int] = []
    nodes = 0
    exhausted = True

    class _Stop(Exception):
        pass

    def color_sort(cand):
        # greedy coloring; returns candidates with color numbers, ascending
        colors = []
        classes = []
        for v in cand:
            placed = False
            for ci, cls in enumerate(classes):
                if all(not adj[v][u] for u in cls):
                    cls.append(v)
                    colors.append((v, ci + 1))
                    placed = True
                    break
            if not placed:
                classes.append([v])
                colors.append((v, len(classes)))
        colors.sort(key=lambda t: (t[1], t[0]))
        return colors

    def expand(clique, cand):
        nonlocal best, nodes, exhausted
        for v, color in reversed(color_sort(cand)):
            if len(clique) + color <= len(best):
                return
            nodes += 1
            if budget is not None and nodes > budget:
                exhausted = False
                raise _Stop
            new_clique = clique + [v]
            new_cand = [u for u in cand if u > v and adj[v][u]]
            if not new_cand:
                if len(new_clique) > len(best):
                    best = new_clique
            else:
                expand(new_clique, new_cand)

    try:
        expand([], list(range(m)))
    except _Stop:
        pass
    return CliqueResult(members=sorted(best), nodes=nodes, exhaustive=exhausted)


# ----------------------------------------------------------------------
# exhaustive search over affine structures (half-dimension question)
# ----------------------------------------------------------------------

def _gl_point_perms(g: geom.Geometry, limit: int = 200_000) -> list:
    """Point permutations of all invertible linear maps (origin fixed)."""
    base, d, q = g.field, g.dim, g.q
    if q ** (d * d) > limit:
        return []
    pts = g.points()
    perms = []
    for entries in itertools.product(range(q), repeat=d * d):
        mat = [entries[i * d:(i + 1) * d] for i in range(d)]
        from .geom import _gf_rank
        if _gf_rank([list(r) for r in mat], base) != d:
            continue
        perm = [0] * g.point_count
        ok = True
        for i, x in enumerate(pts):
            y = []
            for row in mat:
                acc = 0
                for c, xv in zip(row, x):
                    acc = base.add(acc, base.mul(c, xv))
                y.append(acc)
            perm[i] = g.point_index(tuple(y))
        perms.append(perm)
    return perms


def _flat_image_ok(g: geom.Geometry, image: list[int], k: int) -> bool:
    """No k+2 of the image points may lie in a common k-flat."""
    s = k + 2
    if len(image) == s:
        return g.rank_of(image) == s
    for sub in itertools.combinations(sorted(image), s):
        if g.rank_of(sub) != s:
            return False
    return True


@dataclass
class _HalfDimState:
    path: list
    idx: list
    nodes: int
    certificates: list = dc_field(default_factory=list)


def _checkpoint_path(d, q, override=None):
    if override is not None:
        return override
    root = os.environ.get("ORTHOKIT_CHECKPOINT_DIR")
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    return os.path.join(root, f"half-dim-{d}-{q}.json")


def half_dim_exhaustive(d: int, q: int, budget: int = None,
                        checkpoint_path: str = None,
                        checkpoint_every: int = 250_000,
                        max_certificates: int = 1,
                        gl_prune_depth: int = 4,
                        resume: bool = True) -> SearchResult:
    """Search all affine structures on the AG(d, q) point set for one
    forming a half-dimension-orthogoval pair with the standard space.

    Structures are swept as point bijections with the image of the
    origin pinned to the origin and a lex-minimality filter under the
    linear group at shallow depths, which quotients by the collineations
    of the standard space.  Raises BudgetExceeded (with the partial
    result attached) when the node budget runs out; a checkpoint file is
    written so the run can resume.
    """
    if d % 2:
        raise ValueError("dimension must be even")
    g = geom.affine(d, q)
    k = d // 2
    n = g.point_count
    flats = [tuple(f) for f in g.flats(k)]
    by_max = [[] for _ in range(n)]
    for f in flats:
        by_max[max(f)].append(f)
    gl = _gl_point_perms(g)
    cpath = _checkpoint_path(d, q, checkpoint_path)

    if q == 2 and k == 2:
        # F_2 point indices are the coordinate bit-vectors, and a 4-point
        # flat image is degenerate exactly when the indices xor to zero.
        def flat_ok(image):
            return image[0] ^ image[1] ^ image[2] ^ image[3] != 0
    else:
        def flat_ok(image):
            return _flat_image_ok(g, image, k)

    def candidates(path):
        """Admissible images for the next point, ascending."""
        depth = len(path)  # next point to assign is `depth`
        used = set(path)
        out = []
        for v in range(n):
            if v in used:
                continue
            trial = path + [v]
            ok = True
            for f in by_max[depth]:
                image = [trial[p] for p in f]
                if not flat_ok(image):
                    ok = False
                    break
            if ok and gl and depth <= gl_prune_depth:
                part = trial[1:]
                for sigma in gl:
                    if [sigma[x] for x in part] < part:
                        ok = False
                        break
            if ok:
                out.append(v)
        return out

    state = None
    if resume and cpath and os.path.exists(cpath):
        with open(cpath) as fh:
            saved = json.load(fh)
        if saved.get("task") == {"kind": "HALF_DIM_EXHAUSTIVE", "d": d, "q": q}:
            state = _HalfDimState(path=saved["path"], idx=saved["idx"],
                                  nodes=saved["nodes"],
                                  certificates=saved["certificates"])
    if state is None:
        state = _HalfDimState(path=[0], idx=[], nodes=0)

    # rebuild the candidate stack from the saved path
    cands = []
    for depth in range(1, len(state.path)):
        cands.append(candidates(state.path[:depth]))
    if len(state.idx) == len(cands) + 1:
        # a frontier candidate list beyond the path tip
        cands.append(candidates(state.path))

    def save_checkpoint():
        if not cpath:
            return
        payload = {
            "task": {"kind": "HALF_DIM_EXHAUSTIVE", "d": d, "q": q},
            "path": state.path,
            "idx": state.idx,
            "nodes": state.nodes,
            "certificates": state.certificates,
        }
        tmp = cpath + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, cpath)

    if not state.idx:
        cands.append(candidates(state.path))
        state.idx.append(0)

    while True:
        depth = len(state.idx)
        cur = cands[depth - 1]
        pos = state.idx[depth - 1]
        if pos >= len(cur):
            # backtrack
            cands.pop()
            state.idx.pop()
            if not state.idx:
                save_checkpoint()
                return SearchResult(state.certificates, state.nodes, True)
            state.path.pop()
            state.idx[-1] += 1
            continue
        v = cur[pos]
        state.nodes += 1
        if budget is not None and state.nodes > budget:
            state.nodes -= 1
            save_checkpoint()
            raise BudgetExceeded(
                f"node budget {budget} exhausted",
                SearchResult(state.certificates, state.nodes, False))
        if cpath and state.nodes % checkpoint_every == 0:
            save_checkpoint()
        state.path.append(v)
        if len(state.path) == n:
            perm = list(state.path)
            if is_half_dimension_orthogoval(standard(g), from_map(g, perm)):
                state.certificates.append(perm)
                if len(state.certificates) >= max_certificates:
                    save_checkpoint()
                    return SearchResult(state.certificates, state.nodes, False)
            state.path.pop()
            state.idx[-1] += 1
            continue
        cands.append(candidates(state.path))
        state.idx.append(0)


def phi_half_dim_probe(cases: list) -> list[dict]:
    """For each (q, k), whether the standard PG(2k, q) and its
    label-inversion image are half-dimension orthogoval."""
    out = []
    for q, k in cases:
        g = geom.projective(2 * k, q)
        verdict = is_half_dimension_orthogoval(standard(g), phi_space(g, -1))
        out.append({"q": q, "k": k, "half_dimension_orthogoval": bool(verdict)})
    return out


# ----------------------------------------------------------------------
# the seven-space affine plane family over F_3
# ----------------------------------------------------------------------

def plane_structures_f3() -> list[tuple]:
    """All line structures on 9 points isomorphic to AG(2, F_3):
    every pair of points covered by exactly one 3-point line."""
    pairs = list(itertools.combinations(range(9), 2))
    pair_id = {p: i for i, p in enumerate(pairs)}
    results = []

    def backtrack(covered, chosen):
        if len(chosen) == 12:
            results.append(tuple(sorted(chosen)))
            return
        first = next(p for p in pairs if pair_id[p] not in covered)
        a, b = first
        for c in range(9):
            if c == a or c == b:
                continue
            pa = pair_id[tuple(sorted((a, c)))]
            pb = pair_id[tuple(sorted((b, c)))]
            if pa in covered or pb in covered:
                continue
            tri = tuple(sorted((a, b, c)))
            newcov = covered | {pair_id[first], pa, pb}
            backtrack(newcov, chosen + [tri])

    backtrack(frozenset(), [])
    return sorted(results)


def partition_plane_structures() -> list[tuple]:
    """Partition of all 84 point triples of a 9-set into 7 plane
    structures (each triple colinear in exactly one), found by exact
    cover over the full structure list; first solution in canonical
    order."""
    structures = plane_structures_f3()
    triples = list(itertools.combinations(range(9), 3))
    by_triple = {}
    for si, s in enumerate(structures):
        for t in s:
            by_triple.setdefault(t, []).append(si)

    used = set()
    chosen = []

    def backtrack():
        if len(chosen) == 7:
            return True
        first = next(t for t in triples if t not in used)
        for si in by_triple[first]:
            s = structures[si]
            if any(t in used for t in s):
                continue
            chosen.append(s)
            used.update(s)
            if backtrack():
                return True
            chosen.pop()
            used.difference_update(s)
        return False

    if not backtrack():  # pragma: no cover
        raise AssertionError("no partition found; structure enumeration is broken")
    return list(chosen)


def structure_bijection(g: geom.Geometry, target_lines) -> np.ndarray:
    """A point bijection sending the standard line set onto the target
    line structure (first one in lex order of image tuples)."""
    std = [tuple(r) for r in g.lines().tolist()]
    target = {frozenset(t) for t in target_lines}
    n = g.point_count
    by_max = [[] for _ in range(n)]
    for line in std:
        by_max[max(line)].append(line)
    assign = [-1] * n
    used = [False] * n

    def backtrack(i):
        if i == n:
            return True
        for v in range(n):
            if used[v]:
                continue
            assign[i] = v
            used[v] = True
            ok = all(
                frozenset(assign[p] for p in line) in target
                for line in by_max[i]
            )
            if ok and backtrack(i + 1):
                return True
            used[v] = False
            assign[i] = -1
        return False

    if not backtrack(0):
        raise ValueError("target structure is not isomorphic to the geometry")
    return np.array(assign, dtype=np.int64)


def seven_ag2_f3() -> list[Space]:
    """Seven mutually orthogoval AG(2, F_3), derived from the triple
    partition; their colinear triple sets are disjoint by construction."""
    g = geom.affine(2, 3)
    return [
        from_map(g, structure_bijection(g, s), name=f"plane7[{i}]")
        for i, s in enumerate(partition_plane_structures())
    ]

"""Polytopes in facet and vertex form, with exact conversions.

A facet presentation lists pairs (normal, offset) encoding the half space
<normal, x> >= -offset with a primitive integer inner normal.  Vertex
presentations list exact rational points.  Conversions use brute force over
n-element subsets, which is exact and fast at the intended scale (dimension
at most 6, a few dozen facets or vertices).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import lpx
from .errors import InvalidPolytope
from .ratlin import (
    UNIQUE,
    det,
    dot,
    mat_mul,
    mat_vec,
    primitive,
    rank,
    solve_exact,
    vadd,
    vsub,
)

Point = tuple
Facet = tuple  # (normal, offset)


def _q(x):
    """Normalize a rational scalar, preferring plain ints."""
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


@dataclass(frozen=True)
class HPolytope:
    dim: int
    facets: tuple[Facet, ...]


@dataclass(frozen=True)
class VPolytope:
    dim: int
    vertices: tuple[Point, ...]


@dataclass(frozen=True)
class VertexData:
    point: Point
    incident: tuple[int, ...]
    u: tuple[int, ...] | None  # solves <rho_i, u> = 1 over the incident normals


def hpolytope(normals: Sequence[Sequence[int]], offsets: Sequence) -> HPolytope:
    if len(normals) != len(offsets):
        raise ValueError("normals and offsets must have equal length")
    if not normals:
        raise ValueError("need at least one half space")
    n = len(normals[0])
    if any(len(r) != n for r in normals):
        raise ValueError("mixed normal lengths")
    return HPolytope(n, tuple((tuple(int(c) for c in r), _q(a)) for r, a in zip(normals, offsets)))


def _constraint_rows(p: HPolytope):
    lhs = [list(normal) for normal, _ in p.facets]
    rhs = [-offset for _, offset in p.facets]
    return lhs, rhs


def contains(p: HPolytope, x: Sequence) -> bool:
    return all(dot(normal, x) >= -offset for normal, offset in p.facets)


def is_empty(p: HPolytope) -> bool:
    lhs, rhs = _constraint_rows(p)
    return not lpx.feasible(lhs, rhs)


def is_bounded(p: HPolytope) -> bool:
    """True iff the recession cone {x : <rho_i, x> >= 0 for all i} is {0}."""
    n = p.dim
    lhs = [list(normal) for normal, _ in p.facets]
    rhs = [0] * len(lhs)
    for j in range(n):
        for sign in (1, -1):
            e = [0] * n
            e[j] = sign
            if lpx.feasible(lhs + [e], rhs + [1]):
                return False
    return True


def _interior_gap(p: HPolytope) -> Fraction | None:
    """Largest slack (capped at 1) achievable on all facets, None if empty."""
    n = p.dim
    lhs = [list(normal) + [-1] for normal, _ in p.facets]
    rhs = [-offset for _, offset in p.facets]
    lhs.append([0] * n + [-1])
    rhs.append(-1)
    out = lpx.solve(lpx.linear_program([0] * n + [-1], lhs, rhs))
    if out.status == lpx.INFEASIBLE:
        return None
    return -out.value


def canonicalize(p: HPolytope) -> HPolytope:
    """Canonical facet presentation of a bounded full-dimensional polytope.

    Normals are made primitive, duplicates and redundant half spaces are
    dropped, and the list is sorted by (normal, offset).  Raises
    InvalidPolytope when the input is empty, unbounded, or lower-dimensional.
    """
    if p.dim < 1:
        raise InvalidPolytope("ambient dimension must be at least 1")
    tight: dict[tuple, object] = {}
    for normal, offset in p.facets:
        g = math.gcd(*normal)
        if g == 0:
            raise InvalidPolytope("zero normal vector in facet list")
        key = tuple(c // g for c in normal)
        val = _q(Fraction(offset, g))
        if key not in tight or val < tight[key]:
            tight[key] = val
    facets = sorted(tight.items())
    work = HPolytope(p.dim, tuple(facets))
    if is_empty(work):
        raise InvalidPolytope("polytope is empty")
    if not is_bounded(work):
        raise InvalidPolytope("polytope is unbounded")
    gap = _interior_gap(work)
    if gap is None or gap <= 0:
        raise InvalidPolytope("polytope is not full-dimensional")
    kept = list(facets)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        lhs = [list(normal) for normal, _ in others]
        rhs = [-offset for _, offset in others]
        normal, offset = kept[i]
        out = lpx.solve(lpx.linear_program(list(normal), lhs, rhs))
        if out.status == lpx.OPTIMAL and out.value >= -offset:
            kept.pop(i)
        else:
            i += 1
    return HPolytope(p.dim, tuple(kept))


@lru_cache(maxsize=None)
def vertex_data(p: HPolytope) -> tuple[VertexData, ...]:
    """All vertices with their incident facet sets, sorted by point.

    Works on any bounded nonempty facet presentation, canonical or not
    (shrunk presentations keep redundant hyperplanes on purpose).
    """
    n = p.dim
    if n < 1:
        raise InvalidPolytope("ambient dimension must be at least 1")
    if is_empty(p):
        raise InvalidPolytope("polytope is empty")
    if not is_bounded(p):
        raise InvalidPolytope("polytope is unbounded")
    points = set()
    for subset in itertools.combinations(range(len(p.facets)), n):
        a = [p.facets[i][0] for i in subset]
        b = [-p.facets[i][1] for i in subset]
        out = solve_exact(a, b)
        if out.status != UNIQUE:
            continue
        x = tuple(_q(c) for c in out.point)
        if contains(p, x):
            points.add(x)
    data = []
    for x in sorted(points):
        incident = tuple(i for i, (normal, offset) in enumerate(p.facets) if dot(normal, x) == -offset)
        u = None
        if len(incident) == n:
            normals = [p.facets[i][0] for i in incident]
            if abs(det(normals)) == 1:
                sol = solve_exact(normals, [1] * n)
                u = tuple(int(c) for c in sol.point)
        data.append(VertexData(x, incident, u))
    return tuple(data)


def vertices(p: HPolytope) -> VPolytope:
    return VPolytope(p.dim, tuple(v.point for v in vertex_data(p)))


def affine_dim(points: Sequence[Point]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [vsub(x, base) for x in points[1:]]
    return rank(diffs) if diffs else 0


def _integer_row(row: Sequence) -> tuple[int, ...]:
    fracs = [Fraction(x) for x in row]
    scale = math.lcm(*(f.denominator for f in fracs))
    return tuple(int(f * scale) for f in fracs)


@lru_cache(maxsize=None)
def facets(q: VPolytope) -> HPolytope:
    """Exact convex hull of a full-dimensional vertex presentation.

    Every n-element subset of vertices spanning a hyperplane is tested as a
    candidate facet; those with all vertices on one side survive.  The output
    is canonical (primitive inward normals, irredundant, sorted).
    """
    n = q.dim
    if n < 1:
        raise InvalidPolytope("ambient dimension must be at least 1")
    adim = affine_dim(q.vertices)
    if adim != n:
        raise InvalidPolytope(f"affine hull has dimension {adim}, expected {n}")
    verts = q.vertices
    found = set()
    for subset in itertools.combinations(range(len(verts)), n):
        base = verts[subset[0]]
        rows = [_integer_row(vsub(verts[i], base)) for i in subset[1:]]
        # Cofactor expansion gives an integer normal to the spanned hyperplane.
        normal = tuple(
            (-1) ** j * det([r[:j] + r[j + 1 :] for r in rows]) for j in range(n)
        )
        if all(c == 0 for c in normal):
            continue  # subset does not span a hyperplane
        normal = primitive(normal)
        level = dot(normal, base)
        vals = [dot(normal, v) for v in verts]
        if all(v >= level for v in vals):
            found.add((normal, _q(-level)))
        elif all(v <= level for v in vals):
            found.add((tuple(-c for c in normal), _q(level)))
    return HPolytope(n, tuple(sorted(found)))


def lattice_points(p: HPolytope) -> tuple[tuple[int, ...], ...]:
    """Integer points of a bounded presentation, in lexicographic order."""
    n = p.dim
    if n < 1:
        raise InvalidPolytope("ambient dimension must be at least 1")
    lhs, rhs = _constraint_rows(p)
    bounds = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        lo = lpx.solve(lpx.linear_program(e, lhs, rhs))
        if lo.status == lpx.INFEASIBLE:
            return ()
        hi = lpx.solve(lpx.linear_program([-c for c in e], lhs, rhs))
        if lo.status == lpx.UNBOUNDED or hi.status == lpx.UNBOUNDED:
            raise InvalidPolytope("polytope is unbounded")
        bounds.append(range(math.ceil(lo.value), math.floor(-hi.value) + 1))
    return tuple(
        pt for pt in itertools.product(*bounds) if contains(p, pt)
    )


def shrink(p: HPolytope, a: int, b: int) -> HPolytope:
    """Dilate by a and move every listed hyperplane inward by b.

    The result keeps the input presentation facet by facet; shifted
    hyperplanes that become redundant or infeasible stay in the list.
    """
    if not isinstance(a, int) or a <= 0:
        raise ValueError("dilation factor must be a positive integer")
    if not isinstance(b, int) or b < 0:
        raise ValueError("inward shift must be a nonnegative integer")
    return HPolytope(p.dim, tuple((normal, _q(a * offset - b)) for normal, offset in p.facets))


def ensure_lattice(points: Sequence[Point]) -> None:
    for pt in points:
        for c in pt:
            if Fraction(c).denominator != 1:
                raise InvalidPolytope(f"non-integer vertex {pt}")


def is_smooth(p: HPolytope):
    """Whether every vertex has exactly n incident facets forming a lattice
    basis; on failure returns the lexicographically first offending vertex."""
    ensure_lattice([v.point for v in vertex_data(p)])
    for v in vertex_data(p):
        if len(v.incident) != p.dim or v.u is None:
            return False, v.point
    return True, None


def _in_cone(vec, gens) -> bool:
    """Exact membership of vec in the nonnegative span of gens."""
    if not gens:
        return all(c == 0 for c in vec)
    k = len(gens)
    n = len(vec)
    lhs = []
    rhs = []
    for c in range(n):
        row = [g[c] for g in gens]
        lhs.append(row)
        rhs.append(vec[c])
        lhs.append([-x for x in row])
        rhs.append(-vec[c])
    for j in range(k):
        e = [0] * k
        e[j] = 1
        lhs.append(e)
        rhs.append(0)
    return lpx.feasible(lhs, rhs)


def _max_cones(p: HPolytope) -> frozenset:
    cones = set()
    for v in vertex_data(p):
        gens = [p.facets[i][0] for i in v.incident]
        if len(gens) == p.dim:
            rays = gens
        else:
            rays = [
                g
                for i, g in enumerate(gens)
                if not _in_cone(g, gens[:i] + gens[i + 1 :])
            ]
        cones.add(tuple(sorted(rays)))
    return frozenset(cones)


def normal_fan_equal(p: HPolytope, q: HPolytope) -> bool:
    """Whether the sets of maximal normal cones coincide.

    Inputs must be canonical bounded full-dimensional presentations; a cone
    is compared as the sorted set of its primitive extreme rays.
    """
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    return _max_cones(p) == _max_cones(q)


def reduce_vertices(points: Sequence[Point], dim: int) -> VPolytope:
    """Deduplicate and keep only extreme points of the given set."""
    uniq = sorted({tuple(_q(c) for c in pt) for pt in points})
    if any(len(pt) != dim for pt in uniq):
        raise ValueError("point length does not match the ambient dimension")
    if len(uniq) <= 1:
        return VPolytope(dim, tuple(uniq))
    keep = []
    for i, pt in enumerate(uniq):
        others = uniq[:i] + uniq[i + 1 :]
        k = len(others)
        lhs = []
        rhs = []
        for c in range(dim):
            row = [o[c] for o in others]
            lhs.append(row)
            rhs.append(pt[c])
            lhs.append([-x for x in row])
            rhs.append(-pt[c])
        ones = [1] * k
        lhs.append(ones)
        rhs.append(1)
        lhs.append([-1] * k)
        rhs.append(-1)
        for j in range(k):
            e = [0] * k
            e[j] = 1
            lhs.append(e)
            rhs.append(0)
        if not lpx.feasible(lhs, rhs):
            keep.append(pt)
    return VPolytope(dim, tuple(keep))


def apply_unimodular(q: VPolytope, u: Sequence[Sequence[int]], t: Sequence[int]) -> VPolytope:
    """Image of a vertex presentation under x -> U x + t."""
    pts = sorted(tuple(vadd(mat_vec(u, v), t)) for v in q.vertices)
    return VPolytope(q.dim, tuple(pts))


@lru_cache(maxsize=None)
def _edge_directions(q: VPolytope):
    """Primitive edge directions at every vertex, via the facet structure."""
    h = facets(q)
    data = vertex_data(h)
    incident = {v.point: frozenset(v.incident) for v in data}
    verts = [v.point for v in data]
    dirs = {v: [] for v in verts}
    n = q.dim
    for x, y in itertools.combinations(verts, 2):
        common = incident[x] & incident[y]
        normals = [h.facets[i][0] for i in common]
        r = rank(normals) if normals else 0
        if r == n - 1:
            d = primitive(vsub(y, x))
            dirs[x].append(d)
            dirs[y].append(tuple(-c for c in d))
    return verts, dirs


def lattice_equivalent(p: VPolytope, q: VPolytope):
    """Search for (U, t) with U unimodular mapping p onto q, or None.

    One vertex of p is fixed together with n independent primitive edge
    directions; every (vertex, ordered edge tuple) of q is tried as its
    image, the linear part is solved for exactly, and the full vertex map
    is verified.
    """
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    n = p.dim
    ensure_lattice(p.vertices)
    ensure_lattice(q.vertices)
    if n == 0:
        return (), ()
    verts_p, dirs_p = _edge_directions(p)
    verts_q, dirs_q = _edge_directions(q)
    if len(verts_p) != len(verts_q):
        return None
    target = set(verts_q)
    v0 = verts_p[0]
    chosen = []
    for d in dirs_p[v0]:
        if rank(chosen + [d]) > len(chosen):
            chosen.append(d)
        if len(chosen) == n:
            break
    if len(chosen) < n:
        return None
    dmat = tuple(zip(*chosen))  # columns are the chosen directions
    absd = abs(det(dmat))
    dinv_cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        dinv_cols.append(solve_exact(dmat, e).point)
    dinv = tuple(tuple(dinv_cols[j][i] for j in range(n)) for i in range(n))
    for w in verts_q:
        for perm in itertools.permutations(dirs_q[w], n):
            fmat = tuple(zip(*perm))
            if abs(det(fmat)) != absd:
                continue
            u = mat_mul(fmat, dinv)
            if any(Fraction(x).denominator != 1 for row in u for x in row):
                continue
            u = tuple(tuple(int(x) for x in row) for row in u)
            t = vsub(w, mat_vec(u, v0))
            image = {tuple(vadd(mat_vec(u, v), t)) for v in verts_p}
            if image == target:
                return u, t
    return None

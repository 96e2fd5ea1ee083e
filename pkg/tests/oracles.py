"""Brute-force reference implementations used only by the tests.

None of these import the algorithms they check; they use the slowest
obviously-correct method available (minors, exhaustive subsets, boxes).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations, permutations, product
from math import gcd


def det(M) -> Fraction:
    """Laplace-free Gaussian elimination over Fraction."""
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        out *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return sign * out


def minors(M, k):
    rows, cols = len(M), len(M[0]) if M else 0
    for R in combinations(range(rows), k):
        for C in combinations(range(cols), k):
            yield det([[M[r][c] for c in C] for r in R])


def rank_by_minors(M) -> int:
    if not M or not M[0]:
        return 0
    for k in range(min(len(M), len(M[0])), 0, -1):
        if any(m != 0 for m in minors(M, k)):
            return k
    return 0


def determinantal_divisors(M) -> list[int]:
    """d_k = gcd of k x k minors; the Smith invariants are d_k / d_{k-1}."""
    out = []
    for k in range(1, min(len(M), len(M[0])) + 1):
        g = reduce(gcd, (abs(int(m)) for m in minors(M, k)), 0)
        if g == 0:
            break
        out.append(g)
    return out


def smith_invariants(M) -> list[int]:
    d = determinantal_divisors(M)
    return [d[0]] + [d[k] // d[k - 1] for k in range(1, len(d))] if d else []


def hyperplane_through(points):
    """Primitive integer normal c and offset with c.x = offset on the points, or None."""
    n = len(points[0])
    rows = [[Fraction(x - y) for x, y in zip(p, points[0])] for p in points[1:]]
    # solve rows . c = 0 by brute search over cofactor expansion
    if rank_by_minors(rows) != n - 1:
        return None
    c = []
    for j in range(n):
        sub = [[r[k] for k in range(n) if k != j] for r in rows]
        c.append((-1) ** j * det(sub))
    den = reduce(gcd, (x.denominator for x in c), 1)
    c = [int(x * den) for x in c]
    g = reduce(gcd, (abs(x) for x in c), 0)
    c = tuple(x // g for x in c)
    return c, sum(a * b for a, b in zip(c, points[0]))


def facets(points):
    """Facet inequalities c.x >= b of a full-dimensional hull, by trying all n-subsets."""
    n = len(points[0])
    out = set()
    for sub in combinations(points, n):
        h = hyperplane_through(list(sub))
        if h is None:
            continue
        c, b = h
        vals = [sum(a * x for a, x in zip(c, p)) - b for p in points]
        if all(v >= 0 for v in vals):
            out.add((c, b))
        elif all(v <= 0 for v in vals):
            out.add((tuple(-x for x in c), -b))
    return sorted(out)


def vertices(points):
    """Points on facets whose normals span: the vertices."""
    F = facets(points)
    n = len(points[0])
    out = []
    for p in set(map(tuple, points)):
        tight = [c for c, b in F if sum(a * x for a, x in zip(c, p)) == b]
        if rank_by_minors(tight) == n:
            out.append(p)
    return sorted(out)


def box_points(points):
    lo = [min(p[i] for p in points) for i in range(len(points[0]))]
    hi = [max(p[i] for p in points) for i in range(len(points[0]))]
    return product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def lattice_points(points):
    F = facets(points)
    return sorted(
        x for x in box_points(points)
        if all(sum(a * y for a, y in zip(c, x)) >= b for c, b in F)
    )


def polygon_edge_normals(vertices_ccw):
    """Cyclic sequence of primitive inner edge normals of a convex polygon."""
    out = []
    k = len(vertices_ccw)
    for i in range(k):
        (x0, y0), (x1, y1) = vertices_ccw[i], vertices_ccw[(i + 1) % k]
        dx, dy = x1 - x0, y1 - y0
        g = gcd(dx, dy)
        out.append((-dy // g, dx // g))
    return out


def ccw_hull(points):
    """Monotone chain."""
    pts = sorted(set(map(tuple, points)))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def polygons_strictly_isomorphic(P, Q) -> bool:
    """Same cyclic sequence of edge normals up to rotation (no reflection needed: normals are absolute)."""
    a, b = polygon_edge_normals(ccw_hull(P)), polygon_edge_normals(ccw_hull(Q))
    if len(a) != len(b):
        return False
    return any(a == b[i:] + b[:i] for i in range(len(b)))


def in_cone(x, gens) -> bool:
    """Membership in the real cone spanned by gens, via facets of gens plus origin."""
    return all(sum(a * y for a, y in zip(c, x)) >= 0 for c in cone_facet_normals(gens))


def cone_points_in_ball(gens, radius):
    n = len(gens[0])
    return [x for x in product(range(-radius, radius + 1), repeat=n)
            if sum(map(abs, x)) <= radius and in_cone(x, gens)]


def cone_facet_normals(gens):
    return _cone_facet_normals(tuple(map(tuple, gens)))


@lru_cache(maxsize=256)
def _cone_facet_normals(gens):
    n = len(gens[0])
    pts = [tuple([0] * n)] + list(gens)
    return tuple(c for c, b in facets(pts) if b == 0)


def combination_checker(basis, gens):
    """Predicate x -> x is a nonnegative integer combination of ``basis``.

    Memoised descent that subtracts basis elements while staying in the cone
    spanned by ``gens``; the sum of facet normals is positive on the cone
    minus the origin, so the descent terminates. The cache is shared across
    calls.
    """
    normals = cone_facet_normals(gens)
    basis = [tuple(b) for b in basis if any(b)]

    def inside(y):
        return all(sum(a * b for a, b in zip(c, y)) >= 0 for c in normals)

    @lru_cache(maxsize=None)
    def go(y):
        if not any(y):
            return True
        for b in basis:
            z = tuple(p - q for p, q in zip(y, b))
            if inside(z) and go(z):
                return True
        return False

    return lambda x: inside(x) and go(tuple(x))


def is_nonneg_combination(x, basis, gens) -> bool:
    return combination_checker(basis, gens)(x)


def is_reducible(x, gens) -> bool:
    """x = y + z with y, z nonzero lattice points of the cone.

    With f the sum of facet normals, one summand has f(y) <= f(x) / 2; a cone
    point is a combination sum c_g g with sum c_g f(g) = f(y), so
    |y_i| <= f(y) * max_g |g_i| / f(g), which bounds the search box.
    """
    normals = cone_facet_normals(gens)
    n = len(x)
    f = [sum(c[i] for c in normals) for i in range(n)]
    fv = lambda v: sum(a * b for a, b in zip(f, v))
    fx = fv(x)
    bounds = [
        int(max(Fraction(abs(g[i]), fv(g)) for g in gens) * Fraction(fx, 2)) for i in range(n)
    ]
    for y in product(*(range(-b, b + 1) for b in bounds)):
        if not any(y) or 2 * fv(y) > fx:
            continue
        z = tuple(a - b for a, b in zip(x, y))
        if any(z) and in_cone(y, gens) and in_cone(z, gens):
            return True
    return False


def simplex_lattice_defect(verts) -> int:
    """Largest number of disjoint vertex blocks minus one such that every lattice point
    has barycentric support in one block; barycentric coordinates by Cramer's rule."""
    n = len(verts[0])
    k = len(verts)
    pts = lattice_points(verts) if k == n + 1 else None
    assert pts is not None, "full-dimensional simplices only"
    M = [[1] * k] + [[v[i] for v in verts] for i in range(n)]
    D = det(M)
    supports = set()
    for p in pts:
        rhs = [1] + list(p)
        bary = []
        for j in range(k):
            Mj = [row[:j] + [rhs[r]] + row[j + 1:] for r, row in enumerate(M)]
            bary.append(det(Mj) / D)
        supports.add(frozenset(j for j, b in enumerate(bary) if b))
    best = 0
    for labels in product(range(k), repeat=k):
        blocks = {}
        for j, l in enumerate(labels):
            blocks.setdefault(l, set()).add(j)
        if all(any(s <= b for b in blocks.values()) for s in supports):
            best = max(best, len(blocks))
    return best - 1


def permutation_isomorphic(P_vertices, P_faces, Q_vertices, Q_faces) -> bool:
    """Brute vertex bijection preserving the face lattice (small inputs)."""
    if len(P_vertices) != len(Q_vertices):
        return False
    PF = {frozenset(f) for f in P_faces}
    QF = {frozenset(f) for f in Q_faces}
    for perm in permutations(range(len(Q_vertices))):
        if {frozenset(perm[i] for i in f) for f in PF} == QF:
            return True
    return False

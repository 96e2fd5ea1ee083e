"""Lattice polytopes: exact hulls, face lattices, lattice points.

Polytopes of any dimension inside Z^n are handled. Every polytope carries the
saturated lattice parallel to its affine hull (its *direction lattice*) and an
intrinsic description in coordinates of that lattice, so lower-dimensional
faces can be analysed on their own terms.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

from .doubledesc import facet_normals
from .errors import DimensionMismatch, NotAVertex, NotASimplex, NotFullDimensional
from .lattice import (
    IntVector,
    Sublattice,
    annihilator,
    dot,
    rank,
    saturate,
    solve,
    sub,
    transpose,
    lift_functionals,
)

MAX_DIM = 8


@dataclass(frozen=True)
class PointConfiguration:
    """A finite ordered set A of distinct points in Z^dim."""

    dim: int
    points: tuple[IntVector, ...]

    def __post_init__(self):
        if self.dim <= 0:
            raise ValueError("ambient dimension must be positive")
        if not self.points:
            raise ValueError("point configuration is empty")
        pts = tuple(tuple(int(x) for x in p) for p in self.points)
        for i, p in enumerate(pts):
            if len(p) != self.dim:
                raise ValueError(f"point {i} has length {len(p)}, expected {self.dim}")
        if len(set(pts)) != len(pts):
            raise ValueError("points are not pairwise distinct")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable[Sequence[int]]) -> "PointConfiguration":
        pts = tuple(tuple(p) for p in points)
        return cls(len(pts[0]) if pts else 0, pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[IntVector]:
        return iter(self.points)

    def translate(self, v: Sequence[int]) -> "PointConfiguration":
        return PointConfiguration(self.dim, tuple(sub(p, v) for p in self.points))


@dataclass(frozen=True)
class Facet:
    """Inequality ``<normal, x> >= -offset`` with a primitive normal."""

    normal: IntVector
    offset: int

    def value(self, x: Sequence[int]) -> int:
        return dot(self.normal, x) + self.offset


@dataclass(frozen=True)
class Face:
    vertex_indices: tuple[int, ...]
    vertices: tuple[IntVector, ...]
    dim: int
    direction_lattice: Sublattice

    def polytope(self) -> "LatticePolytope":
        return LatticePolytope(self.vertices)


def _direction(points: Sequence[IntVector], n: int) -> Sublattice:
    p0 = points[0]
    return saturate(Sublattice.from_generators(n, [sub(p, p0) for p in points[1:]]))


class LatticePolytope:
    """Convex hull of finitely many points of Z^n, computed exactly.

    Attributes
    ----------
    vertices : sorted tuple of vertex coordinates
    facets : facet inequalities, within the affine hull
    equations : pairs ``(normal, value)`` cutting out the affine hull
    direction : saturated lattice parallel to the affine hull
    dim : dimension of the polytope
    """

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise ValueError("cannot take the hull of no points")
        n = len(pts[0])
        self.ambient_dim = n
        self.direction = _direction(pts, n)
        self.dim = self.direction.rank
        base = pts[0]
        coords = [self.direction.coordinates(sub(p, base)) for p in pts]
        k = self.dim

        if k == 0:
            keep = [0]
            ifacets: list[tuple[IntVector, int]] = []
        else:
            hom = [(1,) + c for c in coords]
            ifacets = [(w[1:], w[0]) for w in facet_normals(hom)]
            keep = []
            for i, c in enumerate(coords):
                tight = [w for w, b in ifacets if dot(w, c) + b == 0]
                if tight and rank(tight) == k:
                    keep.append(i)

        self.vertices: tuple[IntVector, ...] = tuple(pts[i] for i in keep)
        # intrinsic data is anchored at the first vertex
        self._base = self.vertices[0]
        self._icoords = tuple(
            self.direction.coordinates(sub(v, self._base)) if k else () for v in self.vertices
        )
        self._ifacets = tuple(sorted(
            (w, -min(dot(w, c) for c in self._icoords)) for w, _ in ifacets
        ))

        lifted = lift_functionals(self.direction, [w for w, _ in self._ifacets]) if k else []
        self.facets: tuple[Facet, ...] = tuple(
            Facet(u, b - dot(u, self._base)) for u, (_, b) in zip(lifted, self._ifacets)
        )
        ann = annihilator(self.direction) if k < n else Sublattice.zero(n)
        self.equations: tuple[tuple[IntVector, int], ...] = tuple(
            (row, dot(row, self._base)) for row in ann.basis
        )

    # -- basic predicates --------------------------------------------------

    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, x: Sequence) -> bool:
        if any(dot(u, x) != val for u, val in self.equations):
            return False
        return all(f.value(x) >= 0 for f in self.facets)

    def vertex_index(self, v: Sequence[int]) -> int:
        try:
            return self.vertices.index(tuple(v))
        except ValueError:
            raise NotAVertex(f"{tuple(v)} is not a vertex") from None

    @cached_property
    def incidence(self) -> tuple[frozenset[int], ...]:
        """Vertex index set of each facet, aligned with ``facets``."""
        return tuple(
            frozenset(i for i, c in enumerate(self._icoords) if dot(w, c) + b == 0)
            for w, b in self._ifacets
        )

    def vertex_normals(self) -> list[frozenset[IntVector]]:
        """Intrinsic facet normals at each vertex (the vertex's normal cone)."""
        out = []
        for i in range(len(self.vertices)):
            out.append(frozenset(self._ifacets[f][0] for f, inc in enumerate(self.incidence) if i in inc))
        return out

    # -- lattice points ------------------------------------------------------

    @cached_property
    def lattice_points(self) -> tuple[IntVector, ...]:
        lo = [min(v[i] for v in self.vertices) for i in range(self.ambient_dim)]
        hi = [max(v[i] for v in self.vertices) for i in range(self.ambient_dim)]
        box = product(*(range(a, b + 1) for a, b in zip(lo, hi)))
        return tuple(p for p in box if self.contains(p))

    # -- faces ---------------------------------------------------------------

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        """All nonempty faces, graded by dimension, ``self`` included."""
        every = frozenset(range(len(self.vertices)))
        facet_sets = list(set(self.incidence))
        found = set(facet_sets) | {every}
        frontier = list(facet_sets)
        while frontier:
            fresh = []
            for f in frontier:
                for g in facet_sets:
                    h = f & g
                    if h and h not in found:
                        found.add(h)
                        fresh.append(h)
            frontier = fresh
        out = []
        for s in found:
            idx = tuple(sorted(s))
            verts = tuple(self.vertices[i] for i in idx)
            lat = _direction(verts, self.ambient_dim)
            out.append(Face(idx, verts, lat.rank, lat))
        out.sort(key=lambda f: (f.dim, f.vertex_indices))
        return tuple(out)

    def faces_of_dim(self, d: int) -> list[Face]:
        return [f for f in self.faces if f.dim == d]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(f.vertex_indices for f in self.faces if f.dim == 1)

    def neighbours(self, i: int) -> list[int]:
        return sorted(j for e in self.edges if i in e for j in e if j != i)

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for f in self.faces:
            counts[f.dim] += 1
        return tuple(counts)

    # -- shape predicates ----------------------------------------------------

    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    def is_simple(self) -> bool:
        if not self.is_full_dimensional:
            raise NotFullDimensional("simplicity is tested on full-dimensional polytopes")
        return all(len(self.neighbours(i)) == self.dim for i in range(len(self.vertices)))

    def translate(self, v: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope(sub(p, v) for p in self.vertices)

    def intrinsic(self) -> "LatticePolytope":
        """The same polytope in coordinates of its direction lattice, anchored at the first vertex."""
        return LatticePolytope(self._icoords) if self.dim else LatticePolytope([()])

    def barycentric(self, x: Sequence[int]) -> tuple[Fraction, ...]:
        """Barycentric coordinates of ``x`` in a simplex."""
        if not self.is_simplex():
            raise NotASimplex("barycentric coordinates need a simplex")
        v0 = self.vertices[0]
        if self.dim == 0:
            return (Fraction(1),)
        cols = [sub(v, v0) for v in self.vertices[1:]]
        c = solve(transpose(cols), list(sub(x, v0)))
        if c is None:
            raise ValueError(f"{tuple(x)} is not in the affine hull")
        return (1 - sum(c),) + tuple(c)


def convex_hull(A: PointConfiguration | Iterable[Sequence[int]]) -> LatticePolytope:
    points = A.points if isinstance(A, PointConfiguration) else A
    return LatticePolytope(points)


def face_lattice(P: LatticePolytope) -> tuple[Face, ...]:
    return P.faces


def lattice_points(P: LatticePolytope) -> tuple[IntVector, ...]:
    return P.lattice_points


def is_simple(P: LatticePolytope) -> bool:
    return P.is_simple()


def is_simplex(P: LatticePolytope) -> bool:
    return P.is_simplex()


def translate_to_vertex(P: LatticePolytope, v: Sequence[int]) -> LatticePolytope:
    P.vertex_index(v)
    return P.translate(v)


def comb_isomorphism(P: LatticePolytope, Q: LatticePolytope) -> dict[int, int] | None:
    """Vertex bijection realising a strict combinatorial isomorphism, or None.

    Two polytopes with the same direction lattice are strictly combinatorially
    isomorphic exactly when their normal fans agree, i.e. when the collections
    of vertex normal cones coincide.
    """
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch("polytopes live in different ambient lattices")
    if P.direction != Q.direction:
        return None
    np_, nq = P.vertex_normals(), Q.vertex_normals()
    if len(np_) != len(nq):
        return None
    lookup = {cone: j for j, cone in enumerate(nq)}
    if len(lookup) != len(nq):
        return None
    mapping = {}
    for i, cone in enumerate(np_):
        if cone not in lookup:
            return None
        mapping[i] = lookup[cone]
    return mapping


def strictly_comb_isomorphic(P: LatticePolytope, Q: LatticePolytope) -> bool:
    return comb_isomorphism(P, Q) is not None

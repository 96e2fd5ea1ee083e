"""Rational polyhedral cones, Hilbert bases and semigroup generation."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .doubledesc import facet_normals
from .errors import GeneratorOutsideCone, NotFullDimensional, NotPointed
from .lattice import (
    IntVector,
    Sublattice,
    annihilator,
    dot,
    integer_kernel,
    inverse,
    lift_functionals,
    primitive_generator,
    rank,
    saturate,
    smith_normal_form,
    sub,
)
from .polytope import LatticePolytope, PointConfiguration, convex_hull


class Cone:
    """The cone of nonnegative rational combinations of integer generators."""

    def __init__(self, generators: Iterable[Sequence[int]], ambient: int | None = None):
        gens = sorted({primitive_generator(g) for g in generators if any(g)})
        if ambient is None:
            if not gens:
                raise ValueError("ambient dimension needed for the zero cone")
            ambient = len(gens[0])
        self.ambient = ambient
        self.generators: tuple[IntVector, ...] = tuple(gens)
        self.span = saturate(Sublattice.from_generators(ambient, gens))
        k = self.span.rank
        self._igens = [self.span.coordinates(g) for g in gens]
        self._inormals = facet_normals(self._igens) if k else []
        self.normals: tuple[IntVector, ...] = tuple(lift_functionals(self.span, self._inormals)) if k else ()
        self.equations: tuple[IntVector, ...] = annihilator(self.span).basis if k < ambient else ()

    def __repr__(self) -> str:
        return f"Cone({list(self.generators)})"

    @property
    def dim(self) -> int:
        return self.span.rank

    def contains(self, x: Sequence[int]) -> bool:
        if any(dot(e, x) for e in self.equations):
            return False
        return all(dot(u, x) >= 0 for u in self.normals)

    def is_pointed(self) -> bool:
        return self.dim == 0 or (bool(self._inormals) and rank(self._inormals) == self.dim)

    @cached_property
    def rays(self) -> tuple[IntVector, ...]:
        """Primitive generators of the extreme rays."""
        k = self.dim
        if not self.is_pointed():
            raise NotPointed("extreme rays need a pointed cone")
        if k <= 1:
            return self.generators
        out = []
        for g, ig in zip(self.generators, self._igens):
            tight = [w for w in self._inormals if dot(w, ig) == 0]
            if tight and rank(tight) == k - 1:
                out.append(g)
        return tuple(out)

    def positive_functional(self) -> IntVector:
        """An integer functional strictly positive on the cone minus the origin."""
        if not self.is_pointed():
            raise NotPointed("no strictly positive functional on a non-pointed cone")
        if self.dim == 0:
            return (0,) * self.ambient
        return tuple(sum(col) for col in zip(*self.normals))


def vertex_cone(P: LatticePolytope, v: Sequence[int]) -> Cone:
    """Cone generated by the edge directions of ``P`` at the vertex ``v``."""
    i = P.vertex_index(v)
    gens = [sub(P.vertices[j], P.vertices[i]) for j in P.neighbours(i)]
    return Cone(gens, P.ambient_dim)


# -- Hilbert bases -----------------------------------------------------------


def _hyperplane_normal(vectors: Sequence[IntVector], k: int) -> IntVector:
    ker = integer_kernel(list(vectors), k)
    assert len(ker) == 1
    return ker[0]


def placing_triangulation(rays: Sequence[IntVector]) -> list[tuple[int, ...]]:
    """Triangulate a full-dimensional pointed cone on its rays (in Z^k).

    Rays are placed one at a time; each new ray is coned over the boundary
    facets it sees.
    """
    k = len(rays[0])
    start: list[int] = []
    for i, r in enumerate(rays):
        if rank([rays[j] for j in start] + [r]) > len(start):
            start.append(i)
        if len(start) == k:
            break
    simplices = [tuple(start)]
    for i in range(len(rays)):
        if i in start:
            continue
        count: dict[frozenset[int], int] = {}
        for s in simplices:
            for j in s:
                f = frozenset(s) - {j}
                count[f] = count.get(f, 0) + 1
        new = []
        for s in simplices:
            for j in s:
                f = frozenset(s) - {j}
                if count[f] != 1:
                    continue
                if f:
                    w = _hyperplane_normal([rays[t] for t in sorted(f)], k)
                else:
                    w = (1,) if dot((1,), rays[j]) > 0 else (-1,)
                if dot(w, rays[j]) < 0:
                    w = tuple(-x for x in w)
                if dot(w, rays[i]) < 0:
                    new.append(tuple(sorted(f | {i})))
        simplices.extend(new)
    return simplices


def parallelepiped_points(gens: Sequence[IntVector]) -> list[IntVector]:
    """Lattice points of the half-open parallelepiped spanned by ``gens``."""
    k = len(gens)
    G = [[gens[j][i] for j in range(k)] for i in range(k)]
    U, D, _ = smith_normal_form(G)
    Uinv = [[int(x) for x in row] for row in inverse(U)]
    Ginv = inverse(G)
    diag = [D[i][i] for i in range(k)]
    out = []
    for y in product(*(range(d) for d in diag)):
        x = [sum(Uinv[i][j] * y[j] for j in range(k)) for i in range(k)]
        lam = [sum(Ginv[i][j] * x[j] for j in range(k)) for i in range(k)]
        frac = [c - (c.numerator // c.denominator) for c in lam]
        out.append(tuple(int(sum(G[i][j] * frac[j] for j in range(k))) for i in range(k)))
    return out


def hilbert_basis(C: Cone) -> list[IntVector]:
    """Minimal generating set of the semigroup of lattice points of ``C``."""
    if not C.is_pointed():
        raise NotPointed(f"{C} is not pointed")
    k = C.dim
    if k == 0:
        return []
    rays = [C.span.coordinates(r) for r in C.rays]
    candidates = set(rays)
    for simplex in placing_triangulation(rays):
        for x in parallelepiped_points([rays[i] for i in simplex]):
            if any(x):
                candidates.add(x)
    icone = Cone(rays, k)
    basis = [
        x for x in candidates
        if not any(y != x and icone.contains(sub(x, y)) for y in candidates)
    ]
    B = C.span.basis
    return sorted(tuple(sum(c * b[i] for c, b in zip(x, B)) for i in range(C.ambient)) for x in basis)


# -- semigroup generation ----------------------------------------------------


@dataclass(frozen=True)
class SemigroupCheck:
    """Outcome of a semigroup-generation test; truthy when it passes."""

    generates: bool
    witness: IntVector | None = None

    def __bool__(self) -> bool:
        return self.generates


def is_nonnegative_combination(x: Sequence[int], gens: Sequence[IntVector], C: Cone) -> bool:
    """Decide whether ``x`` is a nonnegative integer combination of ``gens``.

    Depth-first search over remainders; every remainder must stay in ``C``,
    which bounds the search because each generator is nonzero in a pointed cone.
    """
    gens = [tuple(g) for g in gens if any(g)]
    gset = set(gens)

    @lru_cache(maxsize=None)
    def reach(y: IntVector) -> bool:
        if not any(y) or y in gset:
            return True
        for g in gens:
            z = sub(y, g)
            if C.contains(z) and reach(z):
                return True
        return False

    return reach(tuple(x))


def semigroup_generates(G: Iterable[Sequence[int]], C: Cone) -> SemigroupCheck:
    gens = [tuple(g) for g in G]
    for g in gens:
        if not C.contains(g):
            raise GeneratorOutsideCone(f"{g} is not in {C}")
    for h in hilbert_basis(C):
        if not is_nonnegative_combination(h, gens, C):
            return SemigroupCheck(False, h)
    return SemigroupCheck(True)


@dataclass(frozen=True)
class VertexCheck:
    vertex: IntVector
    generates: bool
    witness: IntVector | None


@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    vertices: tuple[VertexCheck, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[VertexCheck]:
        return [v for v in self.vertices if not v.generates]


def check_embedding_hypothesis(A: PointConfiguration, P: LatticePolytope | None = None) -> EmbeddingReport:
    """Test, at every vertex v of Conv(A), that A - v generates the vertex cone's lattice points."""
    P = P or convex_hull(A)
    if not P.is_full_dimensional:
        raise NotFullDimensional("Conv(A) is not full-dimensional")
    checks = []
    for v in P.vertices:
        res = semigroup_generates([sub(a, v) for a in A.points], vertex_cone(P, v))
        checks.append(VertexCheck(v, res.generates, res.witness))
    return EmbeddingReport(all(c.generates for c in checks), tuple(checks))

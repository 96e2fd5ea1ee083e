"""Twisted Cayley sum structures on point configurations.

A structure is a lattice surjection pi : Z^n -> Lambda under which Conv(A)
is the convex hull of pairwise strictly combinatorially isomorphic faces
R_i sitting over the distinct vertices v_i of S = Conv(pi(A)). The kernel
of pi is the common direction lattice of the R_i; the fibration it induces
on the toric variety is given by the annihilator of that kernel.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import HypothesisViolation, NotSurjective
from .lattice import IntVector, LatticeMap, Sublattice, annihilator, quotient_map, saturate
from .polytope import LatticePolytope, PointConfiguration, comb_isomorphism, convex_hull


@dataclass(frozen=True)
class Block:
    vertex: IntVector
    points: PointConfiguration
    polytope: LatticePolytope


@dataclass(frozen=True)
class CayleyStructure:
    pi: LatticeMap
    image: LatticePolytope
    blocks: tuple[Block, ...]
    kernel: Sublattice

    @property
    def fibration_lattice(self) -> Sublattice:
        """The sublattice Delta of N whose inclusion induces the fibration."""
        return annihilator(self.kernel)

    @property
    def base_rank(self) -> int:
        """Rank of Lambda, equal to dim S."""
        return self.pi.target

    def is_simplex_image(self) -> bool:
        return self.image.is_simplex()

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b.points) for b in self.blocks)

    def sort_key(self):
        return (self.kernel.rank, self.kernel.basis)


@dataclass(frozen=True)
class CayleyCheck:
    """Result of checking the Cayley conditions for one projection."""

    ok: bool
    failed: str | None = None
    structure: CayleyStructure | None = None

    def __bool__(self) -> bool:
        return self.ok


CONDITIONS = ("simplex", "blocks", "covering", "isomorphic")


def _blocks(A: PointConfiguration, pi: LatticeMap, S: LatticePolytope) -> list[Block] | None:
    """Blocks A_i = A ∩ pi^{-1}(v_i) over the vertices of S; None if one is empty."""
    images = [pi(a) for a in A.points]
    out = []
    for v in S.vertices:
        pts = tuple(a for a, w in zip(A.points, images) if w == v)
        if not pts:
            return None
        out.append(Block(v, PointConfiguration(A.dim, pts), LatticePolytope(pts)))
    return out


def _pairwise_isomorphic(blocks: Sequence[Block]) -> bool:
    first = blocks[0].polytope
    return all(comb_isomorphism(first, b.polytope) is not None for b in blocks[1:])


def verify_cayley(A: PointConfiguration, pi: LatticeMap) -> CayleyCheck:
    """Check the simplex, covering and isomorphism conditions for ``pi``.

    Conditions are tested in the order of ``CONDITIONS`` and the first one
    that fails is named.
    """
    if pi.source != A.dim or not pi.is_surjective():
        raise NotSurjective("projection is not a surjection of Z^n")
    S = LatticePolytope([pi(a) for a in A.points]) if pi.target else LatticePolytope([()])
    if not S.is_simplex():
        return CayleyCheck(False, "simplex")
    blocks = _blocks(A, pi, S)
    if blocks is None:
        return CayleyCheck(False, "blocks")
    hull = LatticePolytope([p for b in blocks for p in b.points.points])
    if not all(hull.contains(a) for a in A.points):
        return CayleyCheck(False, "covering")
    if not _pairwise_isomorphic(blocks):
        return CayleyCheck(False, "isomorphic")
    return CayleyCheck(True, None, CayleyStructure(pi, S, tuple(blocks), pi.kernel()))


def structure_from_kernel(
    A: PointConfiguration, kernel: Sublattice, P: LatticePolytope | None = None
) -> CayleyStructure | None:
    """The Cayley structure with the given kernel, if ``Conv(A)`` is one.

    The image need not be a simplex here; only the Cayley sum conditions are
    checked: distinct images of the blocks are the vertices of S, the blocks
    are pairwise strictly combinatorially isomorphic, and their hull is
    Conv(A).
    """
    P = P or convex_hull(A)
    n = A.dim
    if kernel.rank >= n or saturate(kernel) != kernel:
        return None
    pi = quotient_map(n, kernel)
    S = LatticePolytope([pi(a) for a in A.points])
    if len(S.vertices) < 2:
        return None
    blocks = _blocks(A, pi, S)
    if blocks is None:
        return None
    covered = {p for b in blocks for p in b.polytope.vertices}
    if not set(P.vertices) <= covered:
        return None
    if not _pairwise_isomorphic(blocks):
        return None
    return CayleyStructure(pi, S, tuple(blocks), kernel)


def enumerate_cayley_structures(
    A: PointConfiguration, P: LatticePolytope | None = None
) -> list[CayleyStructure]:
    """All Cayley structures whose kernel is a face-direction lattice of Conv(A).

    Faces are grouped by direction lattice; a class of at least two faces
    that covers every vertex and whose members are pairwise strictly
    combinatorially isomorphic gives a candidate kernel. The class of
    vertices (kernel zero) is used only when Conv(A) is a simplex.
    """
    P = P or convex_hull(A)
    if not P.is_full_dimensional:
        raise HypothesisViolation("Conv(A) is not full-dimensional")
    if not P.is_simple():
        raise HypothesisViolation("Conv(A) is not simple")
    n = A.dim
    classes: dict[Sublattice, list] = {}
    for face in P.faces:
        if face.dim < n:
            classes.setdefault(face.direction_lattice, []).append(face)
    all_vertices = set(range(len(P.vertices)))
    out = []
    for lat, faces in classes.items():
        if len(faces) < 2 or (lat.rank == 0 and not P.is_simplex()):
            continue
        seen: set[int] = set()
        disjoint = True
        for f in faces:
            if seen & set(f.vertex_indices):
                disjoint = False
            seen |= set(f.vertex_indices)
        if not disjoint or seen != all_vertices:
            continue
        polys = [f.polytope() for f in faces]
        if any(comb_isomorphism(polys[0], q) is None for q in polys[1:]):
            continue
        s = structure_from_kernel(A, lat, P)
        if s is not None:
            out.append(s)
    out.sort(key=CayleyStructure.sort_key)
    return out

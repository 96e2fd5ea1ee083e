"""Named lattice polytopes used as fixtures, scripts and CLI examples."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .lattice import IntVector
from .polytope import LatticePolytope, PointConfiguration


@dataclass(frozen=True)
class Fixture:
    name: str
    vertices: tuple[IntVector, ...]
    description: str
    hull_points: bool = True

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def polytope(self) -> LatticePolytope:
        return LatticePolytope(self.vertices)

    def configuration(self) -> PointConfiguration:
        """A: all lattice points of the hull, or just the listed vertices."""
        pts = self.polytope().lattice_points if self.hull_points else self.vertices
        return PointConfiguration.of(pts)


def standard_simplex(n: int) -> tuple[IntVector, ...]:
    return ((0,) * n,) + tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def cube(n: int) -> tuple[IntVector, ...]:
    return tuple(product((0, 1), repeat=n))


def _fx(name, verts, desc, hull=True) -> Fixture:
    return Fixture(name, tuple(tuple(v) for v in verts), desc, hull)


FIXTURES: dict[str, Fixture] = {f.name: f for f in [
    _fx("line", standard_simplex(1), "P^1"),
    _fx("plane", standard_simplex(2), "P^2"),
    _fx("space", standard_simplex(3), "P^3"),
    _fx("conic_cone", [(0, 0), (2, 0), (0, 1)], "cone over a conic"),
    _fx("veronese_triangle", [(0, 0), (2, 0), (0, 2)], "Veronese surface, not covered by lines"),
    _fx("square", cube(2), "P^1 x P^1"),
    _fx("cube", cube(3), "P^1 x P^1 x P^1"),
    _fx("cubic_scroll", [(0, 0), (2, 0), (0, 1), (1, 1)], "cubic surface scroll (Hirzebruch F_1)"),
    _fx("plane_x_line", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)], "P^2 x P^1"),
    _fx("conic_join", [(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 1, 2)], "join of two skew conics"),
    _fx("conic_cone_line_vertex", [(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1)],
        "cone over a conic with vertex a line"),
    _fx("veronese_cone", [(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 1)],
        "cone over the Veronese surface"),
    _fx("conic_cone_x_line", [(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 1), (0, 1, 1)],
        "cone over a conic times P^1"),
    _fx("plane_bundle", [(0, 0, 0), (0, 0, 1), (1, 0, 0), (1, 0, 1), (0, 1, 0), (0, 1, 2)],
        "P^2-bundle over P^1"),
    _fx("point_blowup", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 1), (0, 2, 1)],
        "P^1-bundle over P^2"),
    _fx("quadric_cone_x_line", [
        (0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 2, 1, 0),
        (0, 0, 0, 1), (1, 0, 0, 1), (0, 0, 1, 1), (0, 2, 1, 1),
    ], "quadric cone with a singular line, times P^1"),
    _fx("square_pyramid", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)],
        "cone over a quadric surface; not simple"),
    _fx("thin_triangle", [(0, 0), (3, 0), (0, 1)], "vertices only; not a normal embedding", hull=False),
]}


def fixture(name: str) -> Fixture:
    return FIXTURES[name]

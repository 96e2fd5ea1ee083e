"""Normal fans, Cartier data in Picard number one, and toric fibrations.

A fibration is given by a sublattice Delta of N = Z^n (one-parameter
subgroups). Polytopes live in the dual lattice M, also written Z^n; a Cayley
projection pi : M -> Lambda has kernel equal to the annihilator of Delta.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm
from typing import Sequence

from .cones import Cone
from .errors import (
    InternalInconsistency,
    NonPrimitive,
    NotAFibration,
    NotFullDimensional,
    NotInterior,
    WrongPicardNumber,
)
from .lattice import (
    IntVector,
    Sublattice,
    determinant,
    dot,
    is_integral,
    is_primitive,
    primitive_generator,
    quotient_map,
    rank,
    saturate,
    solve,
    transpose,
)
from .polytope import LatticePolytope


@dataclass(frozen=True)
class Fan:
    """A fan given by primitive rays and maximal cones (sorted ray-index tuples).

    ``polarization`` optionally records facet offsets ``b_i`` of a polytope
    ``{u : <u, e_i> >= -b_i}`` whose normal fan this is.
    """

    rays: tuple[IntVector, ...]
    max_cones: tuple[tuple[int, ...], ...]
    dim: int
    polarization: tuple[int, ...] | None = None

    def __post_init__(self):
        for r in self.rays:
            if len(r) != self.dim:
                raise ValueError(f"ray {r} does not live in Z^{self.dim}")
            if primitive_generator(r) != tuple(r):
                raise NonPrimitive(f"ray {r} is not primitive")
        if self.polarization is not None and len(self.polarization) != len(self.rays):
            raise ValueError("polarization must have one offset per ray")

    @property
    def picard_number(self) -> int:
        return len(self.rays) - self.dim

    def cone_rays(self, sigma: Sequence[int]) -> list[IntVector]:
        return [self.rays[i] for i in sigma]

    def is_simplicial(self) -> bool:
        return all(
            len(s) == 0 or rank(self.cone_rays(s)) == len(s) for s in self.max_cones
        )

    def is_complete(self) -> bool:
        """Structural completeness test for simplicial, full-dimensional fans.

        Every ridge must be shared by exactly two maximal cones lying on
        opposite sides of it.
        """
        n = self.dim
        if n == 0:
            return self.max_cones == ((),)
        if not self.is_simplicial() or any(len(s) != n for s in self.max_cones):
            return False
        ridges: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        for s in self.max_cones:
            for j in s:
                ridge = tuple(i for i in s if i != j)
                ridges.setdefault(ridge, []).append((j, s))
        for ridge, sides in ridges.items():
            if len(sides) != 2:
                return False
            (j1, _), (j2, _) = sides
            rows = self.cone_rays(ridge)
            if determinant(rows + [self.rays[j1]]) * determinant(rows + [self.rays[j2]]) >= 0:
                return False
        return True

    def cone_index(self, rays: Sequence[int]) -> int:
        return self.max_cones.index(tuple(sorted(rays)))

    def polarization_degree(self, a: "CartierProfile") -> Fraction:
        """Multiple r with O(D) = r H for the recorded polarization (Picard number one)."""
        if self.polarization is None:
            raise ValueError("fan carries no polarization")
        return sum((Fraction(b, ai) for b, ai in zip(self.polarization, a.a)), Fraction(0))


@dataclass(frozen=True)
class CartierProfile:
    a: tuple[int, ...]

    def weighted_rays(self, F: Fan) -> list[tuple[Fraction, ...]]:
        return [tuple(Fraction(x, ai) for x in e) for e, ai in zip(F.rays, self.a)]


def normal_fan(P: LatticePolytope) -> Fan:
    """Inner normal fan of a full-dimensional polytope.

    Rays follow the order of ``P.facets``; maximal cone i belongs to vertex i.
    """
    if not P.is_full_dimensional:
        raise NotFullDimensional("normal fans are built for full-dimensional polytopes")
    rays = tuple(f.normal for f in P.facets)
    cones = tuple(
        tuple(sorted(k for k, inc in enumerate(P.incidence) if i in inc))
        for i in range(len(P.vertices))
    )
    return Fan(rays, cones, P.ambient_dim, tuple(f.offset for f in P.facets))


def _require_rho_one(F: Fan) -> None:
    if F.picard_number != 1:
        raise WrongPicardNumber(f"fan has {len(F.rays)} rays in dimension {F.dim}")


def _dual_basis_column(F: Fan, sigma: Sequence[int], i: int) -> tuple[Fraction, ...]:
    """The u with <e_j, u> = [j == i] for the rays e_j of a simplicial maximal cone."""
    rows = F.cone_rays(sigma)
    u = solve(rows, [int(j == i) for j in sigma])
    assert u is not None
    return u


def cartier_multiples(F: Fan) -> CartierProfile:
    """Least a_i > 0 making a_i D_{e_i} Cartier, for a fan of Picard number one.

    a_i D_{e_i} is Cartier iff on every maximal cone sigma containing e_i the
    local equation a_i * u_sigma is integral, u_sigma being dual to e_i on
    sigma. Cones without e_i impose nothing.
    """
    _require_rho_one(F)
    a = []
    for i in range(len(F.rays)):
        m = 1
        for sigma in F.max_cones:
            if i in sigma:
                u = _dual_basis_column(F, sigma, i)
                m = lcm(m, *(x.denominator for x in u))
        a.append(m)
    profile = CartierProfile(tuple(a))
    total = [sum(col) for col in zip(*profile.weighted_rays(F))]
    if any(total):
        raise InternalInconsistency(f"sum of e_i / a_i is {total}, not zero")
    return profile


def line_criterion(F: Fan, a: CartierProfile) -> tuple[int, ...] | None:
    """A proper nonempty I with sum_{i in I} e_i / a_i integral, or None.

    Subsets are tried by size, then lexicographically. When the fan carries a
    polarization, lines exist only if it is the ample generator, so a
    polarization of degree r > 1 yields None.
    """
    _require_rho_one(F)
    if F.polarization is not None and F.polarization_degree(a) != 1:
        return None
    w = a.weighted_rays(F)
    idx = range(len(F.rays))
    for size in range(1, len(F.rays)):
        for I in combinations(idx, size):
            if is_integral([sum(w[i][k] for i in I) for k in range(F.dim)]):
                return I
    return None


def orbit_curve_degree(v: Sequence[int], F: Fan, a: CartierProfile) -> int:
    """Degree of the closure of a general orbit of the one-parameter subgroup v."""
    _require_rho_one(F)
    v = tuple(v)
    if not any(v):
        raise NotInterior("the zero vector lies in no proper cone interior")
    if primitive_generator(v) != v:
        raise NonPrimitive(f"{v} is not primitive")
    for sigma in F.max_cones:
        c = solve(transpose(F.cone_rays(sigma)), list(v))
        if c is None or any(x < 0 for x in c):
            continue
        m = [a.a[i] * x for i, x in zip(sigma, c) if x > 0]
        if len(m) == len(F.rays):
            raise NotInterior("v is interior to the whole space")
        if not is_integral(m):
            raise InternalInconsistency(f"cone coordinates {m} of {v} are not integral")
        return int(max(m))
    raise NotInterior(f"{v} lies in no cone of the fan")


# -- fibrations --------------------------------------------------------------


@dataclass(frozen=True)
class ConeSplit:
    """Decomposition sigma = tau + eta of one maximal cone (ray indices)."""

    tau: tuple[int, ...]
    eta: tuple[int, ...]


def _positively_dependent(vectors: Sequence[Sequence[int]], ambient: int) -> bool:
    """True iff some nonzero nonnegative combination of the vectors vanishes."""
    if not vectors:
        return False
    if any(not any(v) for v in vectors):
        return True
    return not Cone(vectors, ambient).is_pointed()


def check_fibration(F: Fan, delta: Sublattice) -> dict[tuple[int, ...], ConeSplit] | None:
    """Per-cone splits witnessing that ``delta`` induces a toric fibration, or None."""
    if delta.ambient != F.dim or not is_primitive(delta):
        return None
    if not F.is_simplicial():
        raise ValueError("fibrations are checked on simplicial fans")
    q = quotient_map(F.dim, delta)
    inside = [delta.contains_rational(r) for r in F.rays]
    out = {}
    for sigma in F.max_cones:
        tau = tuple(i for i in sigma if inside[i])
        eta = tuple(i for i in sigma if not inside[i])
        if _positively_dependent([q(F.rays[i]) for i in eta], q.target):
            return None
        out[sigma] = ConeSplit(tau, eta)
    return out


def _require_fibration(F: Fan, delta: Sublattice) -> dict[tuple[int, ...], ConeSplit]:
    splits = check_fibration(F, delta)
    if splits is None:
        raise NotAFibration(f"{delta.basis} does not induce a fibration")
    return splits


def fiber_and_base(F: Fan, delta: Sublattice) -> tuple[Fan, Fan]:
    """Fan of the general fiber (in coordinates of ``delta``) and of the base."""
    splits = _require_fibration(F, delta)
    k = delta.rank
    fiber_rays = sorted({i for s in splits.values() for i in s.tau})
    fpos = {i: j for j, i in enumerate(fiber_rays)}
    fiber = Fan(
        tuple(delta.coordinates(F.rays[i]) for i in fiber_rays),
        tuple(sorted({tuple(sorted(fpos[i] for i in s.tau)) for s in splits.values() if len(s.tau) == k})),
        k,
    )
    q = quotient_map(F.dim, delta)
    images = {i: primitive_generator(q(F.rays[i])) for s in splits.values() for i in s.eta}
    base_rays = sorted(set(images.values()))
    bpos = {r: j for j, r in enumerate(base_rays)}
    base = Fan(
        tuple(base_rays),
        tuple(sorted({
            tuple(sorted(bpos[images[i]] for i in s.eta))
            for s in splits.values() if len(s.eta) == F.dim - k
        })),
        F.dim - k,
    )
    for name, fan in (("fiber", fiber), ("base", base)):
        if not (fan.is_simplicial() and fan.is_complete()):
            raise InternalInconsistency(f"{name} fan is not complete and simplicial")
    return fiber, base


def invariant_fibers(F: Fan, delta: Sublattice) -> list[tuple[int, ...]]:
    """Cones eta~ whose orbit closures are the invariant fibers."""
    splits = _require_fibration(F, delta)
    m = F.dim - delta.rank
    return sorted({s.eta for s in splits.values() if len(s.eta) == m})


def fiber_reduced(F: Fan, delta: Sublattice, eta: Sequence[int]) -> bool:
    """Whether the fiber over the fixed point of ``eta`` is reduced.

    Tested as N = delta (+) (span(eta) saturated), an index-one check.
    """
    eta = tuple(sorted(eta))
    if eta not in invariant_fibers(F, delta):
        raise NotAFibration(f"cone {eta} is not an invariant fiber cone")
    n = F.dim
    span = saturate(Sublattice.from_generators(n, F.cone_rays(eta)))
    rows = list(delta.basis) + list(span.basis)
    return len(rows) == n and abs(determinant(rows)) == 1


def fibration_sublattices(F: Fan) -> list[Sublattice]:
    """All primitive sublattices spanned by ray subsets that induce fibrations."""
    found = set()
    for size in range(0, F.dim + 1):
        for subset in combinations(range(len(F.rays)), size):
            lat = Sublattice.from_generators(F.dim, F.cone_rays(subset))
            if lat.rank != size:
                continue
            lat = saturate(lat)
            if lat not in found and check_fibration(F, lat) is not None:
                found.add(lat)
    return sorted(found, key=lambda s: (s.rank, s.basis))

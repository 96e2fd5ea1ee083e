from itertools import combinations

import pytest
from hypothesis import assume, given

from strategies import full_dim_polytopes
from toricdefect.catalog import FIXTURES
from toricdefect.cayley import enumerate_cayley_structures, structure_from_kernel, verify_cayley
from toricdefect.errors import HypothesisViolation, NotSurjective
from toricdefect.lattice import LatticeMap, Sublattice, saturate, sub
from toricdefect.polytope import PointConfiguration, comb_isomorphism


def structures(name):
    return enumerate_cayley_structures(FIXTURES[name].configuration())


def test_quadric_cone_times_line():
    ss = structures("quadric_cone_x_line")
    assert [(s.kernel.rank, s.block_sizes()) for s in ss] == [(1, (2, 2, 2, 2)), (3, (5, 5))]
    tetra = ss[0]
    assert tetra.is_simplex_image() and tetra.image.dim == 3
    assert tetra.kernel == Sublattice.from_generators(4, [(0, 0, 0, 1)])
    assert tetra.fibration_lattice.rank == 3


def test_scroll_has_one_structure():
    ss = structures("cubic_scroll")
    assert len(ss) == 1
    assert ss[0].block_sizes() == (3, 2)
    assert ss[0].image.dim == 1


def test_products_and_simplices():
    assert len(structures("square")) == 2
    cube = structures("cube")
    assert sorted(s.image.dim for s in cube) == [1, 1, 1, 2, 2, 2]
    tri = structures("plane")
    assert len(tri) == 1 and tri[0].kernel.rank == 0 and tri[0].block_sizes() == (1, 1, 1)


def test_hypotheses_enforced():
    with pytest.raises(HypothesisViolation):
        structures("square_pyramid")
    with pytest.raises(HypothesisViolation):
        enumerate_cayley_structures(PointConfiguration(3, ((0, 0, 0), (1, 0, 0), (0, 1, 0))))


def test_verify_cayley_conditions():
    sq = FIXTURES["square"].configuration()
    assert verify_cayley(sq, LatticeMap(((1, 0),), 2))
    diag = verify_cayley(sq, LatticeMap(((1, 1),), 2))
    assert not diag and diag.failed == "covering"
    cone = FIXTURES["conic_cone"].configuration()
    iso = verify_cayley(cone, LatticeMap(((1, 0),), 2))
    assert iso.failed == "isomorphic"
    hexagon = PointConfiguration(2, ((0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1), (1, 1)))
    assert verify_cayley(hexagon, LatticeMap(((1, 0), (0, 1)), 2)).failed == "simplex"
    with pytest.raises(NotSurjective):
        verify_cayley(sq, LatticeMap(((2, 0),), 2))


def test_enumerated_structures_verify():
    for name in ("quadric_cone_x_line", "cube", "plane_bundle", "conic_join"):
        A = FIXTURES[name].configuration()
        for s in enumerate_cayley_structures(A):
            if s.is_simplex_image():
                assert verify_cayley(A, s.pi).ok


def _brute_structures(A, P):
    """Kernels from every saturated span of edge directions, tested directly."""
    n = A.dim
    dirs = sorted({sub(P.vertices[j], P.vertices[i]) for i, j in P.edges})
    lats = set()
    for k in range(1, n):
        for gens in combinations(dirs, k):
            L = Sublattice.from_generators(n, gens)
            if L.rank == k:
                lats.add(saturate(L))
    if P.is_simplex():
        lats.add(Sublattice.zero(n))
    out = []
    for L in lats:
        s = structure_from_kernel(A, L, P)
        if s is not None:
            out.append(L)
    return sorted(out, key=lambda L: (L.rank, L.basis))


@given(full_dim_polytopes(3, bound=2, max_size=7))
def test_enumeration_matches_brute_force_3d(P):
    assume(P.is_simple())
    A = PointConfiguration(3, P.lattice_points)
    found = [s.kernel for s in enumerate_cayley_structures(A, P)]
    assert found == _brute_structures(A, P)


@given(full_dim_polytopes(2, bound=4))
def test_enumeration_matches_brute_force_2d(P):
    A = PointConfiguration(2, P.lattice_points)
    found = enumerate_cayley_structures(A, P)
    assert [s.kernel for s in found] == _brute_structures(A, P)
    for s in found:
        polys = [b.polytope for b in s.blocks]
        assert all(comb_isomorphism(polys[0], q) is not None for q in polys[1:])
        covered = {v for q in polys for v in q.vertices}
        assert set(P.vertices) <= covered

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import int_matrices
from toricdefect.errors import NonPrimitive, ZeroVector
from toricdefect.lattice import (
    LatticeMap,
    Sublattice,
    annihilator,
    determinant,
    hermite_normal_form,
    integer_kernel,
    inverse,
    is_primitive,
    lift_functionals,
    matmul,
    nullspace,
    primitive_generator,
    quotient_map,
    rank,
    rational_rank,
    saturate,
    smith_diagonal,
    smith_normal_form,
    solve,
    transpose,
    unimodular_completion,
)


def _unimodular(M):
    return abs(determinant(M)) == 1


@given(int_matrices())
def test_smith_form_factorisation(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert _unimodular(U) and _unimodular(V)
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[: len(nz)] == nz


@given(int_matrices(max_rows=3, max_cols=4))
def test_smith_invariants_match_minors(M):
    assert smith_diagonal(M) == oracles.smith_invariants(M)


def test_smith_known():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_diagonal([[0, 0], [0, 0]]) == []


@given(int_matrices())
def test_bareiss_rank_agrees(M):
    assert rank(M) == rational_rank(M) == oracles.rank_by_minors(M)


@given(int_matrices(max_rows=4, max_cols=4).filter(lambda M: len(M) == len(M[0])))
def test_determinant(M):
    assert determinant(M) == oracles.det(M)


@given(int_matrices())
def test_hnf_spans_same_lattice(M):
    H = hermite_normal_form(M)
    n = len(M[0])
    L = Sublattice.from_generators(n, M)
    assert L.basis == H
    assert all(L.contains(row) for row in M)
    lat_m = Sublattice(n, H)
    for row in H:
        # each HNF row is an integer combination of M's rows
        assert Sublattice.from_generators(n, M).contains(row)
    assert len(H) == rank(M) == lat_m.rank
    pivots = [next(j for j, x in enumerate(r) if x) for r in H]
    assert pivots == sorted(set(pivots))
    for i, p in enumerate(pivots):
        assert H[i][p] > 0
        assert all(0 <= H[k][p] < H[i][p] for k in range(i))


@given(int_matrices())
def test_hnf_is_canonical(M):
    n = len(M[0])
    shuffled = list(reversed(M)) + [[a + b for a, b in zip(M[0], M[-1])]]
    assert hermite_normal_form(M) == hermite_normal_form(shuffled)
    assert Sublattice.from_generators(n, M) == Sublattice.from_generators(n, shuffled)


@given(int_matrices())
def test_integer_kernel_saturated(M):
    n = len(M[0])
    K = integer_kernel(M)
    assert len(K) == n - rank(M)
    for k in K:
        assert all(sum(a * b for a, b in zip(row, k)) == 0 for row in M)
    assert is_primitive(Sublattice(n, K)) if K else True


@given(int_matrices())
def test_nullspace_dimension(M):
    N = nullspace(M)
    assert len(N) == len(M[0]) - rational_rank(M)
    for v in N:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in M)


def test_solve_cases():
    assert solve([[1, 1], [1, -1]], [2, 0]) == (1, 1)
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(ValueError):
        solve([[1, 1]], [1])
    assert inverse([[2, 1], [1, 1]]) == [[1, -1], [-1, 2]]


def test_primitive_generator():
    assert primitive_generator((4, -6)) == (2, -3)
    assert primitive_generator((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    with pytest.raises(ZeroVector):
        primitive_generator((0, 0))


@given(int_matrices(max_rows=3, max_cols=4))
def test_saturation_and_annihilator(M):
    n = len(M[0])
    L = Sublattice.from_generators(n, M)
    S = saturate(L)
    assert S.rank == L.rank
    assert all(S.contains(b) for b in L.basis)
    assert is_primitive(S)
    assert annihilator(annihilator(L)) == S
    if L.rank:
        assert S.index_in_saturation() == 1
        # product of the invariant factors is the gcd of the maximal minors
        assert L.index_in_saturation() == oracles.determinantal_divisors([list(b) for b in L.basis])[-1]


def test_index_in_saturation():
    L = Sublattice.from_generators(2, [(2, 0), (0, 3)])
    assert L.index_in_saturation() == 6
    assert not is_primitive(L)
    assert saturate(Sublattice.from_generators(3, [(2, 4, 6)])).basis == ((1, 2, 3),)


@given(int_matrices(max_rows=3, max_cols=4))
def test_quotient_map(M):
    n = len(M[0])
    K = saturate(Sublattice.from_generators(n, M))
    if K.rank == 0:
        return
    q = quotient_map(n, K)
    assert q.is_surjective()
    assert q.kernel() == K
    assert q.target == n - K.rank


def test_quotient_rejects_nonprimitive():
    with pytest.raises(NonPrimitive):
        quotient_map(2, Sublattice.from_generators(2, [(2, 0)]))


def test_lattice_map_surjectivity():
    assert LatticeMap(((1, 1),), 2).is_surjective()
    assert not LatticeMap(((2, 0),), 2).is_surjective()
    assert LatticeMap(((2, 0), (0, 1)), 2).kernel() == Sublattice.zero(2)


@given(int_matrices(max_rows=3, max_cols=4))
def test_unimodular_completion_and_lifts(M):
    n = len(M[0])
    L = saturate(Sublattice.from_generators(n, M))
    if L.rank == 0:
        return
    C = unimodular_completion(L.basis, n)
    assert _unimodular(C)
    assert [tuple(r) for r in C[: L.rank]] == list(L.basis)
    w = [tuple(int(i == j) for j in range(L.rank)) for i in range(L.rank)]
    for u, wi in zip(lift_functionals(L, w), w):
        assert tuple(sum(a * b for a, b in zip(u, b_)) for b_ in L.basis) == wi


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_big_integers_stay_exact(a, b, c):
    big = 2**80
    M = [[big * a + 1, b], [c, big]]
    assert determinant(M) == (big * a + 1) * big - b * c
    assert rank(M) == rational_rank(M)
    assert transpose(transpose(M)) == M

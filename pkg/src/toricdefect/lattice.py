"""Exact integer and rational linear algebra on Z^n.

Vectors are tuples of Python ints (or Fractions for rational vectors),
matrices are tuples of row tuples. Nothing in here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NonPrimitive, ZeroVector

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


def _as_matrix(M: Iterable[Iterable[int]]) -> list[list[int]]:
    rows = [list(r) for r in M]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B) -> list[list[int]]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(M) -> list[list[int]]:
    return [list(c) for c in zip(*M)]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a + b for a, b in zip(u, v))


def scale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


def smith_normal_form(M) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    U and V are unimodular, D is diagonal with nonnegative entries
    d_1 | d_2 | ... . Pivots are chosen by least absolute value.
    """
    A = _as_matrix(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            line = [(abs(A[i][t]), i, None) for i in range(t, m) if A[i][t]]
            line += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
            _, i, j = min(line, key=lambda e: e[0])
            if i is not None and i != t:
                swap_rows(t, i)
            elif j is not None:
                swap_cols(t, j)
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    add_col(j, t, -q)
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def smith_diagonal(M) -> list[int]:
    _, D, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def hermite_normal_form(M) -> IntMatrix:
    """Row-style Hermite normal form with zero rows dropped.

    The result is the unique echelon basis of the row lattice of ``M``: pivots
    positive, entries above each pivot reduced into ``[0, pivot)``.
    """
    A = _as_matrix(M)
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [(abs(A[i][c]), i) for i in range(r, m) if A[i][c]]
            if not nz:
                break
            _, i = min(nz)
            A[r], A[i] = A[i], A[r]
            p = A[r][c]
            for k in range(r + 1, m):
                q = A[k][c] // p
                if q:
                    A[k] = [a - q * b for a, b in zip(A[k], A[r])]
            if not any(A[k][c] for k in range(r + 1, m)):
                break
        if r < m and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            p = A[r][c]
            for k in range(r):
                q = A[k][c] // p
                if q:
                    A[k] = [a - q * b for a, b in zip(A[k], A[r])]
            r += 1
    return tuple(tuple(row) for row in A[:r])


# ---------------------------------------------------------------------------
# Rational linear algebra


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q, returning ``(R, pivot_columns)``."""
    R = [[Fraction(x) for x in row] for row in M]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(M) -> int:
    """Rank via fraction-free (Bareiss) elimination."""
    A = _as_matrix(M)
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            A[i] = [(A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev for j in range(n)]
        prev = A[r][c]
        r += 1
        if r == m:
            break
    return r


def rational_rank(M) -> int:
    return len(rref(M)[1])


def determinant(M) -> int:
    """Integer determinant (Bareiss)."""
    A = _as_matrix(M)
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def solve(M, b) -> tuple[Fraction, ...] | None:
    """Unique rational solution of ``M x = b``.

    Returns None when the system is inconsistent; raises if it is
    underdetermined.
    """
    n = len(M[0])
    aug = [list(row) + [rhs] for row, rhs in zip(M, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    if len(piv) < n:
        raise ValueError("system does not have a unique solution")
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return tuple(x)


def nullspace(M, ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Rational basis of ``{x : M x = 0}``."""
    if not M:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    R, piv = rref(M)
    n = len(R[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(tuple(v))
    return basis


def inverse(M) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def integer_kernel(M, ncols: int | None = None) -> IntMatrix:
    """Saturated basis (rows, in HNF) of ``{x in Z^n : M x = 0}``."""
    rows = _as_matrix(M)
    if not rows:
        return tuple(tuple(r) for r in identity(ncols or 0))
    n = len(rows[0])
    _, D, V = smith_normal_form(rows)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    basis = [tuple(V[i][j] for i in range(n)) for j in range(r, n)]
    return hermite_normal_form(basis) if basis else ()


def primitive_generator(v: Sequence) -> IntVector:
    """Primitive integer vector on the ray through a nonzero rational ``v``."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ZeroVector("zero vector has no primitive generator")
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    return tuple(x // g for x in ints)


def is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


# ---------------------------------------------------------------------------
# Sublattices and lattice maps


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^ambient, stored by its canonical (HNF) basis."""

    ambient: int
    basis: IntMatrix

    @classmethod
    def from_generators(cls, ambient: int, generators: Iterable[Sequence[int]]) -> "Sublattice":
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != ambient:
                raise ValueError(f"generator {g} does not live in Z^{ambient}")
        return cls(ambient, hermite_normal_form(gens) if gens else ())

    @classmethod
    def zero(cls, ambient: int) -> "Sublattice":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Sublattice":
        return cls(ambient, tuple(tuple(r) for r in identity(ambient)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        if not self.basis:
            return all(x == 0 for x in v)
        c = solve(transpose(self.basis), list(v))
        return c is not None and is_integral(c)

    def contains_rational(self, v: Sequence) -> bool:
        """Membership of ``v`` in the rational span of the lattice."""
        if not self.basis:
            return all(x == 0 for x in v)
        return solve(transpose(self.basis), list(v)) is not None

    def coordinates(self, v: Sequence[int]) -> IntVector:
        """Integer coordinates of ``v`` with respect to ``basis``."""
        c = solve(transpose(self.basis), list(v)) if self.basis else ()
        if c is None or not is_integral(c):
            raise ValueError(f"{tuple(v)} is not in the sublattice")
        return tuple(int(x) for x in c)

    def __add__(self, other: "Sublattice") -> "Sublattice":
        return Sublattice.from_generators(self.ambient, self.basis + other.basis)

    def index_in_saturation(self) -> int:
        if not self.basis:
            return 1
        return reduce(lambda a, b: a * b, smith_diagonal(self.basis), 1)


def saturate(lat: Sublattice) -> Sublattice:
    """Return ``lat_Q ∩ Z^n``."""
    if lat.rank == 0:
        return lat
    annihilator = integer_kernel(lat.basis)
    return Sublattice(lat.ambient, integer_kernel(annihilator, lat.ambient))


def is_primitive(lat: Sublattice) -> bool:
    return saturate(lat) == lat


def annihilator(lat: Sublattice) -> Sublattice:
    """The (saturated) sublattice of the dual lattice vanishing on ``lat``."""
    if lat.rank == 0:
        return Sublattice.full(lat.ambient)
    return Sublattice(lat.ambient, integer_kernel(lat.basis))


@dataclass(frozen=True)
class LatticeMap:
    """An integer matrix viewed as a homomorphism Z^source -> Z^target."""

    matrix: IntMatrix
    source: int

    @property
    def target(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence[int]) -> IntVector:
        return tuple(dot(row, v) for row in self.matrix)

    def image_rational(self, v: Sequence) -> tuple:
        return tuple(dot(row, v) for row in self.matrix)

    def is_surjective(self) -> bool:
        if self.target == 0:
            return True
        diag = smith_diagonal(self.matrix)
        return len(diag) == self.target and all(d == 1 for d in diag)

    def kernel(self) -> Sublattice:
        if self.target == 0:
            return Sublattice.full(self.source)
        return Sublattice(self.source, integer_kernel(self.matrix))

    def dual_image(self) -> Sublattice:
        """Row lattice of the matrix: the image of the transpose map."""
        return Sublattice.from_generators(self.source, self.matrix)


def quotient_map(n: int, lat: Sublattice) -> LatticeMap:
    """Surjection Z^n -> Z^(n - rk) with kernel exactly ``lat``.

    The codomain basis is the HNF basis of the annihilator, so the result is
    canonical.
    """
    if lat.ambient != n:
        raise ValueError("sublattice lives in a different ambient lattice")
    if not is_primitive(lat):
        raise NonPrimitive(f"{lat.basis} is not saturated in Z^{n}")
    rows = annihilator(lat).basis if lat.rank < n else ()
    return LatticeMap(tuple(rows), n)


def unimodular_completion(basis: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Extend the rows of a saturated basis to a unimodular n x n matrix."""
    B = [list(r) for r in basis]
    if not B:
        return identity(n)
    # U B^T V = [I; 0]; rows of inverse(U)^T complete B^T's column space.
    U, D, V = smith_normal_form(transpose(B))
    k = len(B)
    if any(D[i][i] != 1 for i in range(k)):
        raise NonPrimitive("basis does not span a saturated sublattice")
    Uinv = [[int(x) for x in row] for row in inverse(U)]
    # columns of Uinv: first k span B's lattice; the rest complete it.
    extra = [[Uinv[i][j] for i in range(n)] for j in range(k, n)]
    return B + extra


def lift_functionals(lat: Sublattice, functionals: Sequence[Sequence[int]]) -> list[IntVector]:
    """Extend functionals given in coordinates of ``lat.basis`` to Z^n.

    ``lat`` must be saturated. Each lift ``u`` satisfies ``<u, b_i> = w_i`` on
    the basis and vanishes on a fixed complement, so it is integral and
    primitive whenever ``w`` is.
    """
    n, k = lat.ambient, lat.rank
    if k == n and lat.basis == tuple(tuple(r) for r in identity(n)):
        return [tuple(w) for w in functionals]
    cinv = inverse(unimodular_completion(lat.basis, n))
    out = []
    for w in functionals:
        rhs = list(w) + [0] * (n - k)
        out.append(tuple(int(sum(cinv[i][j] * rhs[j] for j in range(n))) for i in range(n)))
    return out

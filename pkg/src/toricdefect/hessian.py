"""Randomised Hessian-rank oracle for the dual defect.

At the point (1, ..., 1) of the torus, in logarithmic coordinates, a section
sum_u lambda_u chi^u has gradient sum_u lambda_u u and Hessian
H = sum_u lambda_u u u^T. Sections vanishing there to order two are the
integer kernel of the matrix with rows (1, ..., 1) and the coordinates of A.
The dual defect is n minus the generic rank of H; each sample gives an upper
bound on the defect.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .errors import DegenerateConfiguration
from .lattice import IntVector, integer_kernel, rank, sub
from .polytope import PointConfiguration

COEFF_RANGE = 9
DEFAULT_TRIALS = 8


@dataclass(frozen=True)
class OracleConfig:
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    coeff_range: int = COEFF_RANGE


class HessianEstimate(NamedTuple):
    estimate: int
    max_rank: int


def _centered(A: PointConfiguration) -> list[IntVector]:
    a0 = A.points[0]
    return [sub(a, a0) for a in A.points]


def section_kernel(A: PointConfiguration) -> tuple[IntVector, ...]:
    """Integer basis of the coefficient vectors lambda with sum 0 and sum lambda_u u = 0."""
    pts = A.points
    M = [[1] * len(pts)] + [[p[i] for p in pts] for i in range(A.dim)]
    return tuple(integer_kernel(M, len(pts)))


def sample_sections(
    A: PointConfiguration, trials: int, seed: int = 0, coeff_range: int = COEFF_RANGE
) -> Iterator[IntVector]:
    """Random kernel elements; the stream for a seed is prefix-consistent."""
    basis = section_kernel(A)
    rng = random.Random(seed)
    for _ in range(trials):
        c = [rng.randint(-coeff_range, coeff_range) for _ in basis]
        yield tuple(sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(len(A)))


def hessian_matrix(points: Sequence[Sequence[int]], lam: Sequence[int]) -> list[list[int]]:
    n = len(points[0])
    H = [[0] * n for _ in range(n)]
    for u, l in zip(points, lam):
        if l:
            for i in range(n):
                li = l * u[i]
                if li:
                    row = H[i]
                    for j in range(n):
                        row[j] += li * u[j]
    return H


def hessian_defect(
    A: PointConfiguration, trials: int = DEFAULT_TRIALS, seed: int = 0, coeff_range: int = COEFF_RANGE
) -> HessianEstimate:
    """Upper bound n - max rank H(lambda) on the dual defect, exact for generic samples."""
    if trials < 1:
        raise ValueError("trials must be positive")
    n = A.dim
    pts = _centered(A)
    if rank(pts) < n:
        raise DegenerateConfiguration("A does not affinely span Q^n")
    if not section_kernel(A):
        # a linear space: every such section vanishes
        return HessianEstimate(n, 0)
    best = 0
    for lam in sample_sections(A, trials, seed, coeff_range):
        best = max(best, rank(hessian_matrix(pts, lam)))
        if best == n:
            break
    return HessianEstimate(n - best, best)


@dataclass(frozen=True)
class Agreement:
    status: str  # "certified", "oracle-above" or "oracle-below"
    estimate: int
    combinatorial: int

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def explain(self) -> str:
        if self.status == "certified":
            return "oracle and Cayley witness agree"
        if self.status == "oracle-above":
            return "oracle exceeds the combinatorial value: a Cayley structure may be missing"
        return "oracle below a witnessed lower bound: implementation error"


def certify_agreement(
    A: PointConfiguration, combinatorial_defect: int, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> Agreement:
    est = hessian_defect(A, trials, seed).estimate
    if est == combinatorial_defect:
        status = "certified"
    elif est > combinatorial_defect:
        status = "oracle-above"
    else:
        status = "oracle-below"
    return Agreement(status, est, combinatorial_defect)

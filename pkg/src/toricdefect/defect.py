"""Lattice defect, join decompositions, covering fibrations and dual defect."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .cayley import CayleyStructure, enumerate_cayley_structures
from .cones import EmbeddingReport, check_embedding_hypothesis
from .errors import (
    DegenerateConfiguration,
    DimensionMismatch,
    HypothesisViolation,
    InternalInconsistency,
    NotASimplex,
    NotCoveredByLines,
    ToricError,
)
from .fan import check_fibration, fiber_reduced, invariant_fibers, normal_fan
from .lattice import IntVector, Sublattice, is_primitive, saturate, sub
from .polytope import Face, LatticePolytope, PointConfiguration, convex_hull

VERDICTS = ("trivial", "nontrivial", "hypotheses-unmet")


# -- set partitions ----------------------------------------------------------


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length n, in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n
    while True:
        yield tuple(a)
        # rightmost position that may still grow: a[i] <= max(a[:i])
        i = n - 1
        while i > 0 and a[i] > max(a[:i]):
            i -= 1
        if i == 0:
            return
        a[i] += 1
        a[i + 1:] = [0] * (n - i - 1)


def set_partitions(items: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    for rgs in restricted_growth_strings(len(items)):
        blocks: dict[int, list[int]] = {}
        for x, k in zip(items, rgs):
            blocks.setdefault(k, []).append(x)
        yield tuple(tuple(blocks[k]) for k in sorted(blocks))


# -- lattice defect ----------------------------------------------------------


@dataclass(frozen=True)
class LatticeDefectWitness:
    """Maximal family of pairwise disjoint faces covering all lattice points."""

    d: int
    blocks: tuple[tuple[int, ...], ...]
    faces: tuple[Face, ...]
    unique: bool

    def two_face(self, S: LatticePolytope) -> tuple[Face, Face] | None:
        """Coarsen to two disjoint faces covering the lattice points."""
        if self.d == 0:
            return None
        rest = tuple(sorted(i for b in self.blocks[1:] for i in b))
        return _face(S, self.blocks[0]), _face(S, rest)


def _face(S: LatticePolytope, idx: Sequence[int]) -> Face:
    idx = tuple(sorted(idx))
    for f in S.faces:
        if f.vertex_indices == idx:
            return f
    raise InternalInconsistency(f"{idx} is not a face")


def _supports(S: LatticePolytope) -> list[frozenset[int]]:
    out = []
    for p in S.lattice_points:
        bary = S.barycentric(p)
        out.append(frozenset(i for i, c in enumerate(bary) if c))
    return out


def lattice_defect(S: LatticePolytope) -> LatticeDefectWitness:
    """Lattice defect of a simplex, relative to its own affine lattice.

    Disjoint faces covering every lattice point must partition the vertices,
    so every set partition is tried; a partition works when the barycentric
    support of each lattice point lies inside one block.
    """
    if not S.is_simplex():
        raise NotASimplex(f"{S} is not a simplex")
    supports = set(_supports(S))
    best: list[tuple[tuple[int, ...], ...]] = []
    best_size = 0
    for part in set_partitions(range(len(S.vertices))):
        if len(part) < best_size:
            continue
        blocks = [frozenset(b) for b in part]
        if all(any(s <= b for b in blocks) for s in supports):
            if len(part) > best_size:
                best, best_size = [part], len(part)
            else:
                best.append(part)
    chosen = best[0]
    return LatticeDefectWitness(
        best_size - 1, chosen, tuple(_face(S, b) for b in chosen), len(best) == 1
    )


@dataclass(frozen=True)
class JoinDecomposition:
    factors: tuple[Face, ...]
    unique: bool


def join_decomposition(S: LatticePolytope) -> JoinDecomposition:
    """Split S into disjoint faces of lattice defect zero whose join is S."""
    w = lattice_defect(S)
    if w.d == 0:
        raise NotCoveredByLines("simplex has lattice defect zero")
    factors: list[Face] = []
    unique = w.unique
    stack = list(w.faces)
    while stack:
        f = stack.pop(0)
        sub_w = lattice_defect(f.polytope())
        if sub_w.d == 0:
            factors.append(f)
            continue
        # a factor of positive defect splits further; indices are local to f
        unique = unique and sub_w.unique
        for b in sub_w.blocks:
            stack.append(_face(S, [f.vertex_indices[i] for i in b]))
    if len(factors) != w.d + 1:
        raise InternalInconsistency("refinement changed the number of join factors")
    factors.sort(key=lambda f: f.vertex_indices)
    return JoinDecomposition(tuple(factors), unique)


# -- the covering fibration ----------------------------------------------------


@dataclass(frozen=True)
class ElementaryStructure:
    structure: CayleyStructure
    dim: int
    defect: int

    @property
    def excess(self) -> int:
        return self.dim + self.defect


@dataclass(frozen=True)
class StructureReport:
    """Fibration contracting every line through the open orbit."""

    elementary: tuple[ElementaryStructure, ...]
    candidates: tuple[ElementaryStructure, ...]
    combined_kernel: Sublattice
    fiber_factors: tuple[tuple[int, int], ...]
    base_dim: int
    reduced_fibers: bool
    notes: tuple[str, ...] = ()

    @property
    def fiber_dim(self) -> int:
        return sum(d for d, _ in self.fiber_factors)


def _rank_additive(lats: Sequence[Sublattice], n: int) -> bool:
    gens = [b for lat in lats for b in lat.basis]
    return Sublattice.from_generators(n, gens).rank == len(gens) if gens else True


def elementary_structures(
    A: PointConfiguration, P: LatticePolytope | None = None
) -> list[ElementaryStructure]:
    """Cayley structures with simplex image of positive lattice defect."""
    out = []
    for s in enumerate_cayley_structures(A, P):
        if s.is_simplex_image():
            d = lattice_defect(s.image).d
            if d > 0:
                out.append(ElementaryStructure(s, s.image.dim, d))
    return out


def covering_fibration(
    A: PointConfiguration, P: LatticePolytope | None = None, strict: bool = True
) -> StructureReport:
    """Assemble the fibration whose fiber is the product of the join fibers.

    Elementary structures are taken greedily by decreasing dim S + def S,
    keeping those whose fibration lattices meet the accepted ones trivially.
    The combined lattice must induce a fibration with reduced fibers; with
    ``strict`` a failure raises InternalInconsistency, otherwise it is noted.
    """
    P = P or convex_hull(A)
    n = A.dim
    cands = elementary_structures(A, P)
    order = sorted(cands, key=lambda e: (-e.excess, e.structure.sort_key()))
    chosen: list[ElementaryStructure] = []
    for e in order:
        if _rank_additive([c.structure.fibration_lattice for c in chosen] + [e.structure.fibration_lattice], n):
            chosen.append(e)
    notes = []

    def flag(msg: str) -> None:
        if strict:
            raise InternalInconsistency(msg)
        notes.append(msg)

    # exhaustive pass: no larger independent family exists
    lats = [e.structure.fibration_lattice for e in cands]
    for size in range(len(chosen) + 1, len(cands) + 1):
        if any(_rank_additive(sub_, n) for sub_ in combinations(lats, size)):
            flag(f"greedy family of size {len(chosen)} is not maximal")
            break

    combined = Sublattice.from_generators(n, [b for e in chosen for b in e.structure.fibration_lattice.basis])
    reduced = True
    if chosen:
        if not is_primitive(combined):
            flag("combined fibration lattice is not primitive")
            combined = saturate(combined)
        fan = normal_fan(P)
        if check_fibration(fan, combined) is None:
            flag("combined lattice does not induce a fibration")
            reduced = False
        else:
            reduced = all(fiber_reduced(fan, combined, eta) for eta in invariant_fibers(fan, combined))
            if not reduced:
                flag("combined fibration has a non reduced fiber")
    chosen.sort(key=lambda e: e.structure.sort_key())
    factors = tuple((e.dim, e.defect) for e in chosen)
    return StructureReport(
        tuple(chosen),
        tuple(cands),
        combined,
        factors,
        n - sum(d for d, _ in factors),
        reduced,
        tuple(notes),
    )


def fiber_defect(factors: Sequence[tuple[int, int]], dim_f: int) -> int:
    """Dual defect of a product of joins from the (dim, defect) of its factors."""
    if sum(d for d, _ in factors) != dim_f:
        raise DimensionMismatch("factor dimensions do not add up to the fiber dimension")
    return max([0] + [d + df - dim_f for d, df in factors])


# -- affine re-embedding ---------------------------------------------------------


@dataclass(frozen=True)
class AffineEmbedding:
    """Coordinates on Aff(A) ∩ Z^n: x = origin + sum c_i basis_i."""

    origin: IntVector
    basis: tuple[IntVector, ...]

    def coordinates(self, x: Sequence[int]) -> IntVector:
        lat = Sublattice(len(self.origin), self.basis)
        return lat.coordinates(sub(x, self.origin))


def reembed(A: PointConfiguration) -> tuple[PointConfiguration, AffineEmbedding | None]:
    """Express A in its own affine lattice when Conv(A) is not full-dimensional."""
    P = convex_hull(A)
    if P.is_full_dimensional:
        return A, None
    if P.dim == 0:
        raise DegenerateConfiguration("a single point has no dual defect")
    emb = AffineEmbedding(P.vertices[0], P.direction.basis)
    return PointConfiguration(P.dim, tuple(emb.coordinates(a) for a in A.points)), emb


# -- dual defect -------------------------------------------------------------------


@dataclass(frozen=True)
class DualDefect:
    value: int
    structure: StructureReport
    embedding: AffineEmbedding | None = None


def _require_hypotheses(A: PointConfiguration, P: LatticePolytope) -> EmbeddingReport:
    if not P.is_simple():
        raise HypothesisViolation("Conv(A) is not simple")
    rep = check_embedding_hypothesis(A, P)
    if not rep:
        bad = rep.failures()[0]
        raise HypothesisViolation(
            f"A - v does not generate the vertex cone at {bad.vertex} (missing {bad.witness})"
        )
    return rep


def dual_defect(A: PointConfiguration, check_hypotheses: bool = True) -> DualDefect:
    """Dual defect of X_A from its Cayley structures.

    The value is max(0, max(dim S_i + def S_i) - n) over the covering
    family; it is cross-checked against the fiber/base form and against all
    elementary structures.
    """
    A, emb = reembed(A)
    P = convex_hull(A)
    if check_hypotheses:
        _require_hypotheses(A, P)
    report = covering_fibration(A, P)
    n = A.dim
    value = max([0] + [e.excess - n for e in report.elementary])
    via_fiber = max(0, fiber_defect(report.fiber_factors, report.fiber_dim) - report.base_dim)
    via_all = max([0] + [e.excess - n for e in report.candidates])
    if not (value == via_fiber == via_all):
        raise InternalInconsistency(f"defect formulas disagree: {value}, {via_fiber}, {via_all}")
    if P.is_simplex() and value != lattice_defect(P).d:
        raise InternalInconsistency("simplex defect differs from its lattice defect")
    return DualDefect(value, report, emb)


# -- verdict -------------------------------------------------------------------------


@dataclass(frozen=True)
class DefectReport:
    hypotheses_ok: bool
    simple: bool
    embedding: EmbeddingReport | None
    dual_defect: int | None
    oracle_defect: int | None
    agreement: str | None
    verdict: str
    structure: StructureReport | None = None
    simplex_witness: LatticeDefectWitness | None = None
    two_face: tuple[Face, Face] | None = None
    reembedding: AffineEmbedding | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def d_a_trivial(self) -> bool:
        return self.verdict == "trivial"


def discriminant_verdict(
    A: PointConfiguration, oracle: bool = True, trials: int = 8, seed: int = 0
) -> DefectReport:
    """Decide whether the A-discriminant is trivial; failures land in the report."""
    from .hessian import certify_agreement, hessian_defect

    notes: list[str] = []
    A, emb = reembed(A)
    P = convex_hull(A)
    simple = P.is_simple()
    embedding = check_embedding_hypothesis(A, P)
    ok = simple and embedding.ok
    if not simple:
        notes.append("Conv(A) is not simple")
    if not embedding.ok:
        notes.extend(
            f"vertex {c.vertex}: {c.witness} is not generated by A - v" for c in embedding.failures()
        )

    value = structure = witness = two = None
    if ok:
        try:
            dd = dual_defect(A, check_hypotheses=False)
            value, structure = dd.value, dd.structure
            notes.extend(structure.notes)
            if P.is_simplex():
                witness = lattice_defect(P)
                two = witness.two_face(P)
                if not witness.unique:
                    notes.append("maximal join decomposition is not unique")
        except ToricError as exc:
            notes.append(f"{type(exc).__name__}: {exc}")
            ok = False

    estimate = agreement = None
    if oracle:
        estimate = hessian_defect(A, trials=trials, seed=seed).estimate
        if value is not None:
            agreement = certify_agreement(A, value, trials=trials, seed=seed).status

    if not ok:
        verdict = "hypotheses-unmet"
    else:
        verdict = "trivial" if value > 0 else "nontrivial"
    return DefectReport(
        ok, simple, embedding, value, estimate, agreement, verdict,
        structure, witness, two, emb, tuple(notes),
    )

"""Double description method for full-dimensional rational cones.

Given generators of a cone spanning Q^d, compute its primitive inward facet
normals, i.e. the extreme rays of ``{y : <g, y> >= 0 for all generators g}``.
Integer arithmetic throughout; rays are kept primitive.
"""
from __future__ import annotations

from math import gcd
from functools import reduce
from typing import Sequence

from .lattice import IntVector, dot, inverse, primitive_generator, rank


def _primitive(v) -> IntVector:
    g = reduce(gcd, v, 0)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _independent_rows(rows: Sequence[IntVector], d: int) -> list[int]:
    chosen: list[int] = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in chosen] + [r]) > len(chosen):
            chosen.append(i)
            if len(chosen) == d:
                break
    return chosen


def facet_normals(generators: Sequence[Sequence[int]]) -> list[IntVector]:
    """Primitive inward normals of the facets of ``cone(generators)``.

    The generators must span Q^d. The returned list is sorted.
    """
    rows = [tuple(int(x) for x in g) for g in generators if any(g)]
    if not rows:
        raise ValueError("cone has no nonzero generators")
    d = len(rows[0])
    basis = _independent_rows(rows, d)
    if len(basis) < d:
        raise ValueError("generators do not span the ambient space")

    inv = inverse([rows[i] for i in basis])
    rays: list[IntVector] = []
    zeros: list[frozenset[int]] = []
    for j in range(d):
        rays.append(primitive_generator([inv[i][j] for i in range(d)]))
        zeros.append(frozenset(basis[k] for k in range(d) if k != j))

    for idx, a in enumerate(rows):
        if idx in basis:
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            zeros = [z | {idx} if vals[i] == 0 else z for i, z in enumerate(zeros)]
            continue
        new_rays = [rays[i] for i in range(len(rays)) if vals[i] >= 0]
        new_zeros = [zeros[i] | {idx} if vals[i] == 0 else zeros[i]
                     for i in range(len(rays)) if vals[i] >= 0]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < d - 2:
                    continue
                if any(k != p and k != q and common <= zeros[k] for k in range(len(rays))):
                    continue
                ray = _primitive([vals[p] * x - vals[q] * y for x, y in zip(rays[q], rays[p])])
                new_rays.append(ray)
                new_zeros.append(common | {idx})
        rays, zeros = new_rays, new_zeros
    return sorted(set(rays))

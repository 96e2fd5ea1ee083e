"""Hypothesis strategies for small integer objects."""
from hypothesis import strategies as st

from toricdefect.polytope import LatticePolytope


def int_matrices(max_rows=4, max_cols=4, bound=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                min_size=m, max_size=m,
            )
        )
    )


def point_sets(n, bound=3, min_size=None, max_size=8):
    pt = st.tuples(*[st.integers(0, bound)] * n)
    return st.lists(pt, min_size=min_size or n + 1, max_size=max_size, unique=True)


@st.composite
def full_dim_polytopes(draw, n, bound=3, max_size=7):
    pts = draw(point_sets(n, bound, max_size=max_size))
    P = LatticePolytope(pts)
    from hypothesis import assume
    assume(P.is_full_dimensional)
    return P


@st.composite
def polygons(draw, bound=4):
    return draw(full_dim_polytopes(2, bound))

"""Exact algebraic graph theory.

Laplacians and their pseudoinverses over the rationals, all-minors spanning
forest counts, effective resistances, the block formula for the pseudoinverse
of a bunkbed Laplacian, and positive-semidefiniteness certificates.  The
pseudoinverse is computed as (L + J/n)^{-1} - J/n, which stays inside exact
rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactnum import (
    MultiPoly,
    Rational,
    RationalMatrix,
    bareiss_det,
    invert,
    psd_certificate,
    rat,
)
from .graph import (
    ALL_VERTICALS,
    POSTS_CONTRACTED,
    BunkbedSpec,
    Graph,
    bunkbed,
    bunkbed_copies,
)

__all__ = [
    "laplacian",
    "LaplacianBundle",
    "all_minors_count",
    "pseudoinverse",
    "psd_certificate",
    "resistance",
    "resistance_matrix",
    "cross_inner",
    "bunkbed_pseudoinverse",
    "posts_entry",
    "posts_bunkbed_pseudoinverse_gap",
]


def laplacian(g: Graph) -> RationalMatrix:
    """Weighted graph Laplacian; parallel edges add, rows sum to zero."""
    n = g.n
    data = [[rat(0)] * n for _ in range(n)]
    for u, v, w in g.edges:
        if isinstance(w, MultiPoly):
            raise ValueError("Laplacian needs rational edge weights")
        data[u][u] += w
        data[v][v] += w
        data[u][v] -= w
        data[v][u] -= w
    return RationalMatrix(data)


def all_minors_count(g: Graph, s_set, t_set) -> Rational:
    """|det L(S^c, T^c)|: spanning forests with one vertex of S and T per tree."""
    s_set, t_set = sorted(set(s_set)), sorted(set(t_set))
    if len(s_set) != len(t_set):
        raise ValueError("vertex sets must have equal size")
    lap = laplacian(g)
    keep_rows = [i for i in range(g.n) if i not in s_set]
    keep_cols = [j for j in range(g.n) if j not in t_set]
    if not keep_rows:
        return rat(1)
    det = bareiss_det(lap.submatrix(keep_rows, keep_cols))
    return det if det >= 0 else -det


def pseudoinverse(lap: RationalMatrix) -> RationalMatrix:
    """Moore-Penrose pseudoinverse of a connected graph's Laplacian."""
    n = lap.rows
    j_over_n = RationalMatrix.ones(n) * rat(1, n)
    try:
        inv = invert(lap + j_over_n)
    except ValueError:
        raise ValueError(
            "Laplacian + J/n is singular: the graph is disconnected"
        ) from None
    return inv - j_over_n


@dataclass
class LaplacianBundle:
    """A graph with its Laplacian and lazily computed pseudoinverse."""

    graph: Graph
    lap: RationalMatrix = field(init=False)
    _pinv: RationalMatrix | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.lap = laplacian(self.graph)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def pinv(self) -> RationalMatrix:
        if self._pinv is None:
            self._pinv = pseudoinverse(self.lap)
        return self._pinv

    def resistance(self, u: int, v: int) -> Rational:
        p = self.pinv
        return p[u, u] + p[v, v] - 2 * p[u, v]

    def cross_inner(self, a: int, b: int, c: int, d: int) -> Rational:
        p = self.pinv
        return p[a, c] - p[a, d] - p[b, c] + p[b, d]


def resistance(g: Graph, u: int, v: int) -> Rational:
    """Effective resistance between two vertices of a connected graph."""
    return LaplacianBundle(g).resistance(u, v)


def resistance_matrix(g: Graph) -> RationalMatrix:
    bundle = LaplacianBundle(g)
    n = g.n
    return RationalMatrix(
        [[bundle.resistance(i, j) if i != j else rat(0) for j in range(n)] for i in range(n)]
    )


def cross_inner(g: Graph, a: int, b: int, c: int, d: int) -> Rational:
    """<L_pinv (e_a - e_b), e_c - e_d>, exactly."""
    return LaplacianBundle(g).cross_inner(a, b, c, d)


def bunkbed_pseudoinverse(g: Graph) -> RationalMatrix:
    """Pseudoinverse of the bunkbed Laplacian, validated two ways.

    Computes it directly from the bunkbed graph and through the block formula
    (half the sum of an all-blocks L-pinv matrix and a signed (L+2I)^{-1}
    matrix); raises if the two disagree anywhere.
    """
    n = g.n
    bb = bunkbed(BunkbedSpec(g, mode=ALL_VERTICALS), vertical_weight=rat(1))
    direct = pseudoinverse(laplacian(bb))

    lp = pseudoinverse(laplacian(g))
    shifted = invert(laplacian(g) + RationalMatrix.identity(n) * rat(2))
    half = rat(1, 2)
    data = [[rat(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            same = half * (lp[i, j] + shifted[i, j])
            cross = half * (lp[i, j] - shifted[i, j])
            data[i][j] = same
            data[n + i][n + j] = same
            data[i][n + j] = cross
            data[n + i][j] = cross
    blocks = RationalMatrix(data)
    if direct != blocks:
        raise ValueError("bunkbed pseudoinverse block formula mismatch")
    return direct


def posts_entry(g: Graph, posts, u: int, v: int) -> Rational:
    """Entry (u, v) of the inverse of the Laplacian restricted to non-posts.

    The restriction L^SS (S = non-post vertices) is an M-matrix whenever the
    post set is nonempty and the graph connected, so the entry is >= 0; it
    equals the two-layer pseudoinverse gap computed by
    posts_bunkbed_pseudoinverse_gap.
    """
    posts = frozenset(posts)
    if not posts:
        raise ValueError("post set must be nonempty (L^SS would be singular)")
    if u in posts or v in posts:
        raise ValueError("query vertices must not be posts")
    s_vertices = [x for x in range(g.n) if x not in posts]
    lap = laplacian(g)
    lss = lap.submatrix(s_vertices, s_vertices)
    inv = invert(lss)
    iu, iv = s_vertices.index(u), s_vertices.index(v)
    return inv[iu, iv]


def posts_bunkbed_pseudoinverse_gap(g: Graph, posts, u: int, v: int) -> Rational:
    """L_pinv(u1, v1) - L_pinv(u1, v2) on the posts-contracted bunkbed."""
    bb = bunkbed(BunkbedSpec(g, frozenset(posts), POSTS_CONTRACTED))
    pinv = pseudoinverse(laplacian(bb))
    u1, _ = bunkbed_copies(bb, u)
    v1, v2 = bunkbed_copies(bb, v)
    return pinv[u1, v1] - pinv[u1, v2]

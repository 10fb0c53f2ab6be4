import random

import pytest

from bunkbed.catalog import connected_graphs, named_graph
from bunkbed.exactnum import RationalMatrix, psd_certificate, rat
from bunkbed.graph import ALL_VERTICALS, BunkbedSpec, Graph, bunkbed, bunkbed_copies, minor
from bunkbed.measures import forest_table
from bunkbed.partition import canonicalize
from bunkbed.treealg import (
    LaplacianBundle,
    all_minors_count,
    bunkbed_pseudoinverse,
    cross_inner,
    laplacian,
    posts_bunkbed_pseudoinverse_gap,
    posts_entry,
    pseudoinverse,
    resistance,
    resistance_matrix,
)


def _pattern(marked, *groups):
    return canonicalize(tuple(marked), groups)


def test_laplacian_examples():
    assert laplacian(named_graph("K2")) == RationalMatrix([[1, -1], [-1, 1]])
    k3 = laplacian(named_graph("K3"))
    assert k3 == RationalMatrix([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    doubled = Graph(2, ((0, 1, rat(1)), (0, 1, rat(1))))
    assert laplacian(doubled) == RationalMatrix([[2, -2], [-2, 2]])


def test_all_minors_examples():
    k3 = named_graph("K3")
    assert all_minors_count(k3, {0}, {0}) == 3
    assert all_minors_count(k3, {0, 1}, {0, 1}) == 2
    p3 = named_graph("P3")
    assert all_minors_count(p3, {0, 2}, {0, 2}) == 2
    with pytest.raises(ValueError):
        all_minors_count(k3, {0}, {0, 1})


def test_all_minors_matches_forest_oracle():
    for _, g in connected_graphs(5, min_n=2):
        ft = forest_table(g, (0, g.n - 1))
        pair = all_minors_count(g, {0, g.n - 1}, {0, g.n - 1})
        assert pair == ft.bracket(_pattern((0, g.n - 1), (0,), (g.n - 1,)))
        trees = all_minors_count(g, {0}, {0})
        assert trees == ft.bracket(_pattern((0, g.n - 1), (0, g.n - 1)))


def test_pseudoinverse_closed_forms_and_penrose():
    k2 = pseudoinverse(laplacian(named_graph("K2")))
    assert k2 == RationalMatrix([[rat(1, 4), rat(-1, 4)], [rat(-1, 4), rat(1, 4)]])
    k3 = pseudoinverse(laplacian(named_graph("K3")))
    expected = (RationalMatrix.identity(3) - RationalMatrix.ones(3) * rat(1, 3)) * rat(1, 3)
    assert k3 == expected
    for name in ("K2", "K3", "C4", "K4", "P4"):
        lap = laplacian(named_graph(name))
        pinv = pseudoinverse(lap)
        n = lap.rows
        assert lap * pinv * lap == lap
        assert pinv * lap * pinv == pinv
        prod = lap * pinv
        assert prod.transpose() == prod
        assert prod == RationalMatrix.identity(n) - RationalMatrix.ones(n) * rat(1, n)


def test_pseudoinverse_rejects_disconnected():
    g = Graph(4, ((0, 1, rat(1)), (2, 3, rat(1))))
    with pytest.raises(ValueError, match="disconnected"):
        pseudoinverse(laplacian(g))


def test_resistance_examples():
    assert resistance(named_graph("K2"), 0, 1) == 1
    assert resistance(named_graph("K3"), 0, 1) == rat(2, 3)
    c4 = named_graph("C4")
    assert resistance(c4, 0, 2) == 1
    assert resistance(c4, 0, 1) == rat(3, 4)


def test_resistance_equals_bracket_ratio():
    for _, g in connected_graphs(5, min_n=2):
        bundle = LaplacianBundle(g)
        ft = forest_table(g, tuple(range(g.n)))
        trees = ft.bracket(_pattern(tuple(range(g.n)), tuple(range(g.n))))
        for u in range(g.n):
            for v in range(u + 1, g.n):
                split = all_minors_count(g, {u, v}, {u, v})
                assert bundle.resistance(u, v) == split / trees


def test_cross_inner_examples():
    p4 = named_graph("P4")
    assert cross_inner(p4, 0, 1, 0, 1) == resistance(p4, 0, 1)
    assert cross_inner(p4, 0, 1, 2, 2) == 0


def test_cross_inner_bracket_formula():
    for _, g in connected_graphs(5, min_n=4):
        bundle = LaplacianBundle(g)
        marked_all = tuple(range(g.n))
        ft = forest_table(g, marked_all)
        trees = ft.bracket(_pattern(marked_all, marked_all))
        verts = list(range(g.n))
        rng = random.Random(g.m)
        for _ in range(6):
            a, b, c, d = rng.sample(verts, 4)
            rest = [x for x in verts if x not in (a, b, c, d)]
            # [ac|bd] style brackets on four marked vertices.
            ft4 = forest_table(g, (a, b, c, d))
            ac_bd = ft4.bracket(_pattern((a, b, c, d), (a, c), (b, d)))
            ad_bc = ft4.bracket(_pattern((a, b, c, d), (a, d), (b, c)))
            assert bundle.cross_inner(a, b, c, d) == rat(ac_bd - ad_bc) / trees


def test_cross_inner_path_vanishes():
    p4 = named_graph("P4")
    assert cross_inner(p4, 0, 1, 2, 3) == 0


def test_resistance_matrix_identities():
    for name in ("K3", "C4", "K4", "P4", "house"):
        g = named_graph(name)
        lap = laplacian(g)
        pinv = pseudoinverse(lap)
        r = resistance_matrix(g)
        assert lap * r * lap == lap * rat(-2)
        assert pinv * r * pinv == pinv * pinv * pinv * rat(-2)


def test_psd_of_pseudoinverse_difference():
    g = named_graph("K3")
    h = minor(g, deletions=[2])  # one triangle edge removed, still connected
    diff = pseudoinverse(laplacian(h)) - pseudoinverse(laplacian(g))
    ok, _ = psd_certificate(diff)
    assert ok


def test_bunkbed_pseudoinverse_k2_values():
    mat = bunkbed_pseudoinverse(named_graph("K2"))
    assert mat[0, 0] == rat(5, 16)
    assert mat[0, 1] == rat(-1, 16)
    assert mat[0, 2] == rat(-1, 16)
    assert mat[0, 3] == rat(-3, 16)
    # Effective resistances on the resulting 4-cycle.
    r11 = mat[0, 0] + mat[2, 2] - 2 * mat[0, 2]
    r12 = mat[0, 0] + mat[3, 3] - 2 * mat[0, 3]
    assert r11 == rat(3, 4)
    assert r12 == 1


def test_bunkbed_pseudoinverse_block_formula_on_catalog():
    for _, g in connected_graphs(5, min_n=2):
        bunkbed_pseudoinverse(g)  # raises on any mismatch


def test_posts_entry_examples():
    p3 = named_graph("P3")
    assert posts_entry(p3, {1}, 0, 2) == 0
    k3 = named_graph("K3")
    assert posts_entry(k3, {2}, 0, 1) == rat(1, 3)
    with pytest.raises(ValueError):
        posts_entry(k3, set(), 0, 1)
    with pytest.raises(ValueError):
        posts_entry(k3, {0}, 0, 1)


def test_posts_entry_equals_contracted_bunkbed_gap():
    rng = random.Random(44)
    for _, g in connected_graphs(4, min_n=3):
        verts = list(range(g.n))
        for _ in range(3):
            t = frozenset(rng.sample(verts, rng.randint(1, g.n - 2)))
            non_posts = [x for x in verts if x not in t]
            if len(non_posts) < 2:
                continue
            u, v = rng.sample(non_posts, 2)
            assert posts_entry(g, t, u, v) == posts_bunkbed_pseudoinverse_gap(g, t, u, v)
            assert posts_entry(g, t, u, v) >= 0


def test_rayleigh_monotonicity_over_edge_deletions():
    for _, g in connected_graphs(5, min_n=2):
        ft = forest_table(g, (0, g.n - 1))
        marked = (0, g.n - 1)
        trees = ft.bracket(_pattern(marked, marked))
        split = ft.bracket(_pattern(marked, (0,), (g.n - 1,)))
        for f in range(g.m):
            smaller = minor(g, deletions=[f])
            if not smaller.is_connected():
                continue
            ft2 = forest_table(smaller, marked)
            trees2 = ft2.bracket(_pattern(marked, marked))
            split2 = ft2.bracket(_pattern(marked, (0,), (g.n - 1,)))
            assert rat(split) / trees <= rat(split2) / trees2


def test_bunkbed_resistance_ordering_via_blocks():
    # In the doubled graph the same-layer resistance never exceeds the
    # cross-layer one, and the pseudoinverse gap is the shifted inverse entry.
    from bunkbed.exactnum import invert

    for _, g in connected_graphs(4, min_n=2):
        n = g.n
        mat = bunkbed_pseudoinverse(g)
        resolvent = invert(laplacian(g) + RationalMatrix.identity(n) * rat(2))
        for u in range(n):
            for v in range(n):
                gap = mat[u, v] - mat[u, n + v]
                assert gap == resolvent[u, v]
                assert gap >= 0

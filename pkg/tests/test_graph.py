import random
from itertools import combinations, permutations

import pytest

from bunkbed.catalog import (
    CONNECTED_UPTO_5,
    connected_graphs,
    named_graph,
    named_instance,
)
from bunkbed.exactnum import MultiPoly, rat
from bunkbed.graph import (
    ALL_VERTICALS,
    POSTS_CONTRACTED,
    BunkbedSpec,
    Graph,
    bunkbed,
    bunkbed_copies,
    components_of,
    gadget,
    graph_from_json,
    graph_to_json,
    hollom_instance,
    hypergraph_bunkbed,
    minor,
)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, ((0, 2, rat(1)),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 0, rat(1)),))
    g = Graph(3, ((0, 1), (0, 1), (1, 2)))
    assert g.m == 3  # parallel edges preserved


def test_bunkbed_all_verticals_k2_is_four_cycle():
    bb = bunkbed(BunkbedSpec(named_graph("K2")))
    assert bb.n == 4 and bb.m == 4
    part, kappa = components_of(bb, range(bb.m))
    assert kappa == 1


def test_bunkbed_path_examples():
    path = named_graph("P3")  # a - t - b with t = 1
    bb = bunkbed(BunkbedSpec(path))
    assert bb.n == 6 and bb.m == 2 * 2 + 3
    posts = bunkbed(BunkbedSpec(path, {1}, POSTS_CONTRACTED))
    assert posts.n == 5 and posts.m == 4
    t1, t2 = bunkbed_copies(posts, 1)
    assert t1 == t2


def test_bunkbed_edge_count_formula():
    for name, g in connected_graphs(4):
        bb = bunkbed(BunkbedSpec(g))
        assert bb.n == 2 * g.n
        assert bb.m == 2 * g.m + g.n


def test_layer_swap_is_an_automorphism():
    for name, g in connected_graphs(4, min_n=2):
        bb = bunkbed(BunkbedSpec(g))
        swap = {}
        for v in range(g.n):
            a, b = bunkbed_copies(bb, v)
            swap[a], swap[b] = b, a
        original = sorted(
            (min(u, v), max(u, v), w.numerator, w.denominator) for u, v, w in bb.edges
        )
        mapped = sorted(
            (min(swap[u], swap[v]), max(swap[u], swap[v]), w.numerator, w.denominator)
            for u, v, w in bb.edges
        )
        assert original == mapped


def test_minor_examples():
    tri = named_graph("K3")
    assert minor(tri, deletions=[0]).m == 2
    contracted = minor(tri, contractions=[0])
    assert contracted.n == 2 and contracted.m == 2  # two parallel edges survive
    p3 = named_graph("P3")
    collapsed = minor(p3, contractions=[0, 1])
    assert collapsed.n == 1 and collapsed.m == 0
    with pytest.raises(ValueError):
        minor(tri, deletions=[0], contractions=[0])
    with pytest.raises(ValueError):
        minor(tri, deletions=[5])


def test_components_examples():
    tri = named_graph("K3")  # edges (0,1), (0,2), (1,2)
    part, kappa = components_of(tri, [0])
    assert kappa == 2 and part.together(0, 1) and not part.together(0, 2)
    _, kappa = components_of(tri, [])
    assert kappa == 3
    _, kappa = components_of(tri, [0, 2])
    assert kappa == 1


def _dfs_components(g, open_edges):
    adj = [[] for _ in range(g.n)]
    for i in open_edges:
        u, v, _ = g.edges[i]
        adj[u].append(v)
        adj[v].append(u)
    comp = [-1] * g.n
    c = 0
    for s in range(g.n):
        if comp[s] != -1:
            continue
        stack = [s]
        comp[s] = c
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if comp[y] == -1:
                    comp[y] = c
                    stack.append(y)
        c += 1
    return comp, c


def test_components_match_dfs_oracle():
    rng = random.Random(23)
    for _, g in connected_graphs(5, min_n=3):
        for _ in range(5):
            sub = [i for i in range(g.m) if rng.random() < 0.5]
            part, kappa = components_of(g, sub)
            comp, c = _dfs_components(g, sub)
            assert kappa == c
            for u in range(g.n):
                for v in range(u + 1, g.n):
                    assert part.together(u, v) == (comp[u] == comp[v])


def test_gadget_structure():
    g = gadget(5, rat(1, 100))
    assert g.n == 8 and g.m == 13
    g1 = gadget(1, rat(1, 2))
    assert g1.n == 4 and g1.m == 5
    for n in range(1, 51):
        assert gadget(n, rat(1, 100)).m == 2 * n + 3
    weights = {w for _, _, w in gadget(4, rat(1, 100)).edges}
    assert weights == {rat(1, 100), rat(99, 100)}
    with pytest.raises(ValueError):
        gadget(0, rat(1, 2))


def test_hollom_instance_facts():
    h = hollom_instance()
    assert len(h.hyperedges) == 6
    assert h.posts == frozenset({3, 5, 8})
    for he in h.hyperedges:
        assert len(set(he) & h.posts) == 1
    vertices, doubled = hypergraph_bunkbed(h)
    assert len(doubled) == 12
    labels = {v for he in doubled for v in he}
    assert 20 in labels and 1 in labels
    assert len(vertices) == 17  # 2*10 labels, three pairs merged at the posts
    assert max(vertices) == 20


def test_graph_json_round_trip(tmp_path):
    g = named_graph("K3").with_weights(rat(1, 3))
    poly_weight = MultiPoly.variable("l") * MultiPoly.variable("q")
    g2 = Graph(3, ((0, 1, poly_weight), (1, 2, rat(2, 5))))
    for graph in (g, g2):
        doc = graph_to_json(graph, posts={1})
        back, posts = graph_from_json(doc)
        assert back.n == graph.n
        assert posts == frozenset({1})
        assert [(u, v) for u, v, _ in back.edges] == [(u, v) for u, v, _ in graph.edges]
        assert all(wa == wb for (_, _, wa), (_, _, wb) in zip(back.edges, graph.edges))


def _canonical(n, edges):
    best = None
    for perm in permutations(range(n)):
        mapped = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or mapped < best:
            best = mapped
    return best


def test_catalog_matches_fresh_enumeration():
    for n in range(1, 6):
        pairs = list(combinations(range(n), 2))
        seen = set()
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            g = Graph(n, tuple(edges))
            if not g.is_connected():
                continue
            seen.add(_canonical(n, edges))
        frozen = {_canonical(n, e) for e in CONNECTED_UPTO_5[n]}
        assert frozen == seen
        assert len(CONNECTED_UPTO_5[n]) == len(seen)


def test_named_instances():
    assert named_graph("K4").m == 6
    assert named_graph("K23").m == 6
    fig4 = named_instance("fig4-left")
    assert fig4.graph.m == 4 and fig4.posts == frozenset({1})
    fig5 = named_instance("fig5-G-3")
    assert fig5.graph.m == 8 + 2 * 3
    assert fig5.graph.n == 8 + 2 * 2
    with pytest.raises(ValueError):
        named_instance("nope")

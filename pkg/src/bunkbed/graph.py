"""Finite weighted multigraphs, bunkbed constructions and named instances.

Vertices of a Graph are 0..n-1.  Parallel edges are kept (their weights
multiply independently under every measure here); self-loops are discarded by
contraction.  Hypergraph vertices follow the source numbering 1..n because the
one instance that matters is traditionally drawn that way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from .exactnum import MultiPoly, format_rational, parse_poly, parse_rational, rat
from .partition import SetPartition, canonical_rgs

__all__ = [
    "Graph",
    "BunkbedSpec",
    "Hypergraph",
    "bunkbed",
    "bunkbed_copies",
    "minor",
    "components_of",
    "gadget",
    "hollom_instance",
    "hypergraph_bunkbed",
    "graph_to_json",
    "graph_from_json",
    "hypergraph_to_json",
    "hypergraph_from_json",
]

ALL_VERTICALS = "all-verticals"
POSTS_CONTRACTED = "posts-contracted"


def _check_weight(w):
    if isinstance(w, MultiPoly):
        return w
    return rat(w)


@dataclass(frozen=True)
class Graph:
    """Finite multigraph with exact edge weights and optional provenance labels.

    labels maps a vertex to anything hashable; bunkbed() uses (layer, base)
    pairs with layer 1/2 for the two copies and 0 for a contracted post.
    """

    n: int
    edges: tuple = ()
    labels: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        norm = []
        for e in self.edges:
            u, v, w = (e[0], e[1], e[2]) if len(e) == 3 else (e[0], e[1], rat(1))
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge endpoint out of range: {e}")
            if u == v:
                raise ValueError(f"self-loop not allowed: {e}")
            norm.append((u, v, _check_weight(w)))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of (neighbour, edge index)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return adj

    def with_weights(self, weight) -> "Graph":
        """Same topology with every edge reweighted."""
        w = _check_weight(weight)
        return Graph(self.n, tuple((u, v, w) for u, v, _ in self.edges), dict(self.labels))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        _, kappa = components_of(self, range(self.m))
        return kappa == 1


@dataclass(frozen=True)
class BunkbedSpec:
    """Base graph, post set, and which vertical edges the bunkbed carries."""

    base: Graph
    posts: frozenset = frozenset()
    mode: str = ALL_VERTICALS

    def __post_init__(self):
        object.__setattr__(self, "posts", frozenset(self.posts))
        if self.mode not in (ALL_VERTICALS, POSTS_CONTRACTED):
            raise ValueError(f"unknown bunkbed mode {self.mode!r}")
        if not all(0 <= t < self.base.n for t in self.posts):
            raise ValueError("post outside the base vertex range")
        if self.mode == ALL_VERTICALS:
            object.__setattr__(self, "posts", frozenset(range(self.base.n)))


@dataclass(frozen=True)
class Hypergraph:
    """3-uniform hypergraph on vertices 1..n with a set of posts."""

    n: int
    hyperedges: tuple = ()
    posts: frozenset = frozenset()

    def __post_init__(self):
        norm = []
        for he in self.hyperedges:
            members = tuple(sorted(he))
            if len(set(members)) != 3:
                raise ValueError(f"hyperedge must have 3 distinct members: {he}")
            if not all(1 <= v <= self.n for v in members):
                raise ValueError(f"hyperedge member out of range: {he}")
            norm.append(members)
        object.__setattr__(self, "hyperedges", tuple(norm))
        object.__setattr__(self, "posts", frozenset(self.posts))
        if not all(1 <= t <= self.n for t in self.posts):
            raise ValueError("post outside the vertex range")


def bunkbed(spec: BunkbedSpec, vertical_weight=None) -> Graph:
    """Two layers of the base graph glued along the posts.

    In all-verticals mode every vertex gets a vertical edge (weight
    `vertical_weight`, default 1/2).  In posts-contracted mode the two copies
    of each post are merged into one vertex, which is exactly conditioning the
    post's vertical edge to be open, and non-posts get no vertical edge.
    """
    base = spec.base
    n = base.n
    if spec.mode == ALL_VERTICALS:
        vw = rat(1, 2) if vertical_weight is None else _check_weight(vertical_weight)
        ids1 = {v: v for v in range(n)}
        ids2 = {v: v + n for v in range(n)}
        total = 2 * n
        verticals = [(ids1[v], ids2[v], vw) for v in range(n)]
    else:
        ids1 = {v: v for v in range(n)}
        ids2 = {}
        nxt = n
        for v in range(n):
            if v in spec.posts:
                ids2[v] = v
            else:
                ids2[v] = nxt
                nxt += 1
        total = nxt
        verticals = []
    edges = [(ids1[u], ids1[v], w) for u, v, w in base.edges]
    edges += [(ids2[u], ids2[v], w) for u, v, w in base.edges]
    edges += verticals
    labels = {}
    for v in range(n):
        if ids1[v] == ids2[v]:
            labels[ids1[v]] = (0, v)
        else:
            labels[ids1[v]] = (1, v)
            labels[ids2[v]] = (2, v)
    return Graph(total, tuple(edges), labels)


def bunkbed_copies(bb: Graph, base_vertex: int) -> tuple[int, int]:
    """Vertex ids of the two copies of a base vertex (equal for a post)."""
    first = second = None
    for v, tag in bb.labels.items():
        if isinstance(tag, tuple) and len(tag) == 2 and tag[1] == base_vertex:
            if tag[0] == 0:
                return v, v
            if tag[0] == 1:
                first = v
            elif tag[0] == 2:
                second = v
    if first is None or second is None:
        raise ValueError(f"vertex {base_vertex} has no bunkbed copies")
    return first, second


def minor(g: Graph, deletions=(), contractions=()) -> Graph:
    """Delete and contract edges by index; loops vanish, parallels persist.

    The merged vertex inherits the smaller index; labels record merge history
    as tuples of original labels.
    """
    deletions = set(deletions)
    contractions = set(contractions)
    if deletions & contractions:
        raise ValueError("an edge cannot be deleted and contracted")
    for i in deletions | contractions:
        if not (0 <= i < g.m):
            raise ValueError(f"edge index out of range: {i}")
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in contractions:
        u, v, _ = g.edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    roots = sorted({find(v) for v in range(g.n)})
    new_id = {r: i for i, r in enumerate(roots)}
    edges = []
    for i, (u, v, w) in enumerate(g.edges):
        if i in deletions or i in contractions:
            continue
        a, b = new_id[find(u)], new_id[find(v)]
        if a != b:
            edges.append((a, b, w))
    labels = {}
    for v in range(g.n):
        labels.setdefault(new_id[find(v)], []).append(g.labels.get(v, v))
    labels = {k: tuple(v) if len(v) > 1 else v[0] for k, v in labels.items()}
    return Graph(len(roots), tuple(edges), labels)


def components_of(g: Graph, open_edges) -> tuple[SetPartition, int]:
    """Connectivity partition of all vertices under a subset of open edges."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in open_edges:
        u, v, _ = g.edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
    rgs = canonical_rgs(find(v) for v in range(g.n))
    part = SetPartition(tuple(range(g.n)), rgs)
    return part, part.block_count


def gadget(n: int, p) -> Graph:
    """Apex-over-path gadget with boundary a, b, c.

    Vertices: apex a=0, then the bottom row b=1, x_1..x_n = 2..n+1, c = n+2.
    The n+1 bottom-path edges carry weight p, the n+2 apex spokes weight 1-p.
    """
    if n < 1:
        raise ValueError("gadget needs n >= 1")
    p = rat(p)
    if not (0 < p < 1):
        raise ValueError("gadget weight must satisfy 0 < p < 1")
    a, b, c = 0, 1, n + 2
    bottom = [b] + [1 + i for i in range(1, n + 1)] + [c]
    edges = [(u, v, p) for u, v in zip(bottom, bottom[1:])]
    edges += [(a, v, 1 - p) for v in bottom]
    labels = {a: "a", b: "b", c: "c"}
    return Graph(n + 3, tuple(edges), labels)


def hollom_instance() -> Hypergraph:
    """The 10-vertex, 6-hyperedge counterexample hypergraph; posts 3, 5, 8."""
    return Hypergraph(
        10,
        ((1, 2, 3), (2, 4, 5), (3, 6, 7), (4, 6, 8), (7, 8, 9), (5, 9, 10)),
        frozenset({3, 5, 8}),
    )


def hypergraph_bunkbed(h: Hypergraph):
    """Doubled hyperedges with posts contracted.

    Layer-1 copies keep their ids, layer-2 copies are id + n, and the two
    copies of each post share the layer-1 id.  Returns (vertex ids, hyperedge
    id-triples); the skeleton has 2n labels but fewer distinct vertices when
    posts exist.
    """
    n = h.n

    def lift(v, layer):
        if v in h.posts:
            return v
        return v if layer == 1 else v + n

    hyperedges = []
    for layer in (1, 2):
        for he in h.hyperedges:
            hyperedges.append(tuple(sorted(lift(v, layer) for v in he)))
    vertices = sorted({v for he in hyperedges for v in he})
    return vertices, tuple(hyperedges)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def _weight_to_string(w) -> str:
    if isinstance(w, MultiPoly):
        return w.to_string()
    return format_rational(w)


def _weight_from_string(s: str):
    try:
        return parse_rational(s)
    except ValueError:
        return parse_poly(s)


def graph_to_json(g: Graph, posts=None) -> dict:
    doc = {
        "n": g.n,
        "edges": [[u, v, _weight_to_string(w)] for u, v, w in g.edges],
    }
    if posts is not None:
        doc["posts"] = sorted(posts)
    if g.labels:
        doc["labels"] = {str(k): list(v) if isinstance(v, tuple) else v
                         for k, v in g.labels.items()}
    return doc


def graph_from_json(doc: dict):
    """Returns (graph, posts) where posts may be None."""
    edges = tuple((u, v, _weight_from_string(w)) for u, v, w in doc["edges"])
    labels = {}
    for k, v in doc.get("labels", {}).items():
        labels[int(k)] = tuple(v) if isinstance(v, list) else v
    g = Graph(doc["n"], edges, labels)
    posts = frozenset(doc["posts"]) if "posts" in doc else None
    return g, posts


def hypergraph_to_json(h: Hypergraph) -> dict:
    return {
        "n": h.n,
        "hyperedges": [list(he) for he in h.hyperedges],
        "posts": sorted(h.posts),
    }


def hypergraph_from_json(doc: dict) -> Hypergraph:
    return Hypergraph(
        doc["n"],
        tuple(tuple(he) for he in doc["hyperedges"]),
        frozenset(doc.get("posts", ())),
    )


def load_graph(path) -> tuple[Graph, frozenset | None]:
    with open(path) as fh:
        return graph_from_json(json.load(fh))


def save_graph(g: Graph, path, posts=None) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_json(g, posts), fh, indent=1)

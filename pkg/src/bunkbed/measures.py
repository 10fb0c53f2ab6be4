"""Brute-force exact computation of random-cluster and forest quantities.

Everything here enumerates edge subsets directly: a fresh union-find pass per
subset, weights multiplied along an explicit include/exclude tree so that both
rational and polynomial edge weights work.  The enumeration guard is 2^28
subsets; larger instances belong to the factor-contraction engine in
``bunkbed.glue``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .exactnum import MultiPoly, Rational, rat
from .graph import Graph, Hypergraph, hypergraph_bunkbed
from .partition import SetPartition, canonical_rgs

__all__ = [
    "EnumerationGuardError",
    "BoundaryTable",
    "BracketQuery",
    "ForestTable",
    "rc_boundary_table",
    "rc_profile",
    "rc_connection_prob",
    "forest_table",
    "forest_masks",
    "alt_colouring_counts",
    "hypergraph_rc_difference",
    "bunkbed_case_profiles",
    "case_difference",
    "case_probability",
]

_SUBSET_GUARD = 28
_ALT_GUARD = 24
_HYPER_GUARD = 16


class EnumerationGuardError(ValueError):
    pass


def _guard_edges(m: int, limit: int = _SUBSET_GUARD) -> None:
    override = os.environ.get("BUNKBED_SUBSET_GUARD")
    if override:
        limit = max(limit, int(override))
    if m > limit:
        raise EnumerationGuardError(
            f"enumeration would visit 2^{m} = {2 ** m} edge subsets "
            f"(guard is 2^{limit}); use the factor contraction engine "
            f"in bunkbed.glue for instances this large"
        )


def _roots_and_kappa(n: int, edges, mask: int):
    """Union-find pass for one subset; returns (root per vertex, kappa)."""
    parent = list(range(n))
    i = 0
    mm = mask
    while mm:
        if mm & 1:
            u, v = edges[i]
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            if u != v:
                parent[v] = u
        mm >>= 1
        i += 1
    kappa = 0
    roots = [0] * n
    for v in range(n):
        r = v
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        roots[v] = r
        if r == v:
            kappa += 1
    return roots, kappa


def _weighted_subsets(edges):
    """Yield (mask, product of w_e over included and 1-w_e over excluded)."""
    m = len(edges)
    one = rat(1)
    stack = [(0, 0, one)]
    while stack:
        i, mask, w = stack.pop()
        if i == m:
            yield mask, w
            continue
        _, _, wt = edges[i]
        stack.append((i + 1, mask, w * (1 - wt)))
        stack.append((i + 1, mask | (1 << i), w * wt))


@dataclass
class BoundaryTable:
    """Random-cluster event weights resolved by the partition of marked vertices.

    entry(pi) carries the full weight including q**kappa for every component,
    so the entries sum to the partition function.
    """

    marked: tuple
    entries: dict

    def z(self) -> MultiPoly:
        total = MultiPoly.zero()
        for p in self.entries.values():
            total += p
        return total

    def event(self, predicate) -> MultiPoly:
        """Total weight of partitions satisfying a predicate."""
        total = MultiPoly.zero()
        for part, poly in self.entries.items():
            if predicate(part):
                total += poly
        return total

    def connection_numerator(self, u, v) -> MultiPoly:
        return self.event(lambda part: part.together(u, v))


def rc_boundary_table(g: Graph, marked) -> BoundaryTable:
    """Exact random-cluster table over the connectivity patterns of `marked`.

    Edge weights come from the graph and may be rationals or polynomials; the
    component count always enters through the symbolic variable q.
    """
    _guard_edges(g.m)
    marked = tuple(marked)
    pairs = [(u, v) for u, v, _ in g.edges]
    acc: dict = {}
    for mask, w in _weighted_subsets(g.edges):
        roots, kappa = _roots_and_kappa(g.n, pairs, mask)
        rgs = canonical_rgs(roots[x] for x in marked)
        key = (rgs, kappa)
        prev = acc.get(key)
        acc[key] = w if prev is None else prev + w
    entries: dict = {}
    for (rgs, kappa), w in acc.items():
        part = SetPartition(marked, rgs)
        term = w * MultiPoly.monomial(1, q=kappa)
        entries[part] = entries.get(part, MultiPoly.zero()) + term
    return BoundaryTable(marked, entries)


def rc_profile(g: Graph, marked) -> dict:
    """Subset counts keyed (marked partition RGS, |S|, kappa); weights ignored.

    This is the uniform-p fast path: one enumeration serves every (p, q)
    evaluation afterwards.
    """
    _guard_edges(g.m)
    marked = tuple(marked)
    pairs = [(u, v) for u, v, _ in g.edges]
    counts: dict = {}
    for mask in range(1 << g.m):
        roots, kappa = _roots_and_kappa(g.n, pairs, mask)
        rgs = canonical_rgs(roots[x] for x in marked)
        key = (rgs, mask.bit_count(), kappa)
        counts[key] = counts.get(key, 0) + 1
    return counts


def rc_connection_prob(g: Graph, q, u: int, v: int) -> Rational:
    """P[u connected to v] under the random-cluster measure with graph weights."""
    if u == v:
        return rat(1)
    q = rat(q)
    if q <= 0:
        raise ValueError("cluster weight q must be positive")
    table = rc_boundary_table(g, (u, v))
    num = table.connection_numerator(u, v).eval({"q": q})
    z = table.z().eval({"q": q})
    return num / z


@dataclass(frozen=True)
class BracketQuery:
    """Separation pattern of marked vertices plus allowed extra components.

    extra = 0 asks for the minimal component count realizing the pattern,
    extra = 1 for one more, and so on; pattern None places no restriction.
    """

    marked: tuple
    pattern: SetPartition | None = None
    extra: int = 0

    def __post_init__(self):
        if self.extra < 0:
            raise ValueError("extra component count must be non-negative")
        if self.pattern is not None and tuple(self.pattern.ground) != tuple(self.marked):
            raise ValueError("pattern ground must equal the marked vertices")


@dataclass
class ForestTable:
    """Spanning-forest weights keyed by (marked partition, component count)."""

    marked: tuple
    n: int
    entries: dict

    def query(self, q: BracketQuery):
        if tuple(q.marked) != tuple(self.marked):
            raise ValueError("query marked vertices do not match the table")
        return self.bracket(q.pattern, q.extra)

    def bracket(self, pattern: SetPartition | None = None, extra: int = 0):
        """Forest count for a separation pattern at minimal components + extra.

        ``pattern=None`` places no restriction on the marked vertices (the
        all-trees bracket and its relaxations).
        """
        if extra < 0:
            raise ValueError("extra component count must be non-negative")
        if pattern is None:
            kappa = 1 + extra
            return sum(
                (w for (p, k), w in self.entries.items() if k == kappa),
                start=0,
            )
        kappa = pattern.block_count + extra
        return self.entries.get((pattern, kappa), 0)

    def probability(self, predicate, lam) -> Rational:
        """Arboreal-gas probability of an event on the marked partition."""
        lam = rat(lam)
        num = 0
        den = 0
        for (part, kappa), w in self.entries.items():
            weight = w * lam ** (self.n - kappa)
            den += weight
            if predicate(part):
                num += weight
        return num / den


def forest_table(g: Graph, marked) -> ForestTable:
    """Enumerate spanning forests (acyclic edge subsets) of the graph.

    Values are integers when every edge weight is 1, otherwise exact products
    of the included edges' weights.
    """
    _guard_edges(g.m)
    marked = tuple(marked)
    pairs = [(u, v) for u, v, _ in g.edges]
    n = g.n
    unweighted = all(w == 1 for _, _, w in g.edges)
    entries: dict = {}
    if unweighted:
        for mask in range(1 << g.m):
            roots, kappa = _roots_and_kappa(n, pairs, mask)
            if mask.bit_count() + kappa != n:
                continue
            rgs = canonical_rgs(roots[x] for x in marked)
            key = (SetPartition(marked, rgs), kappa)
            entries[key] = entries.get(key, 0) + 1
    else:
        weights = [w for _, _, w in g.edges]
        for mask in range(1 << g.m):
            roots, kappa = _roots_and_kappa(n, pairs, mask)
            if mask.bit_count() + kappa != n:
                continue
            w = rat(1)
            mm, i = mask, 0
            while mm:
                if mm & 1:
                    w = w * weights[i]
                mm >>= 1
                i += 1
            rgs = canonical_rgs(roots[x] for x in marked)
            key = (SetPartition(marked, rgs), kappa)
            prev = entries.get(key)
            entries[key] = w if prev is None else prev + w
    return ForestTable(marked, n, entries)


def forest_masks(g: Graph):
    """All spanning forests as (edge mask, kappa) pairs."""
    _guard_edges(g.m)
    pairs = [(u, v) for u, v, _ in g.edges]
    out = []
    for mask in range(1 << g.m):
        _, kappa = _roots_and_kappa(g.n, pairs, mask)
        if mask.bit_count() + kappa == g.n:
            out.append((mask, kappa))
    return out


def alt_colouring_counts(g: Graph, posts, u: int, v: int):
    """Red-blue colouring counts for the two-layer model via the bunkbed bijection.

    A colouring picks, for every base edge, its copy in layer 1 (red) or layer
    2 (blue) of the posts-contracted bunkbed.  Admissible colourings are the
    acyclic ones; among them N_RR counts u1 connected to v1 and N_RB counts u1
    connected to v2.  Returns (N_RR, N_RB, N_total).
    """
    from .graph import POSTS_CONTRACTED, BunkbedSpec, bunkbed, bunkbed_copies

    posts = frozenset(posts)
    if u in posts or v in posts:
        raise ValueError("endpoints of the colouring query must not be posts")
    _guard_edges(g.m, _ALT_GUARD)
    bb = bunkbed(BunkbedSpec(g, posts, POSTS_CONTRACTED))
    u1, _ = bunkbed_copies(bb, u)
    v1, v2 = bunkbed_copies(bb, v)
    pairs = [(a, b) for a, b, _ in bb.edges]
    m = g.m
    n = bb.n
    n_rr = n_rb = n_total = 0
    for colouring in range(1 << m):
        mask = 0
        for i in range(m):
            mask |= 1 << (i if colouring >> i & 1 else m + i)
        roots, kappa = _roots_and_kappa(n, pairs, mask)
        if m + kappa != n:
            continue
        n_total += 1
        if roots[u1] == roots[v1]:
            n_rr += 1
        if roots[u1] == roots[v2]:
            n_rb += 1
    return n_rr, n_rb, n_total


def hypergraph_rc_difference(h: Hypergraph, u: int, v: int) -> MultiPoly:
    """Unnormalized numerator of P[u1 <-> v1] - P[u1 <-> v2] on the hypergraph bunkbed.

    Hyperedges are doubled and the posts contracted.  A present hyperedge
    merges its three vertices and weighs g, an absent one weighs h, and every
    configuration carries q**kappa.  The normalizing partition function is
    positive for q, g, h > 0, so the sign of the difference is the sign of
    this polynomial.
    """
    vertices, doubled = hypergraph_bunkbed(h)
    k = len(doubled)
    if k > _HYPER_GUARD:
        raise EnumerationGuardError(
            f"hypergraph bunkbed has {k} hyperedges; enumeration guard is 2^{_HYPER_GUARD}"
        )
    index = {x: i for i, x in enumerate(vertices)}
    n = len(vertices)
    u1 = index[u]
    v1 = index[v]
    v2 = index[v if v in h.posts else v + h.n]
    triples = [tuple(index[x] for x in he) for he in doubled]
    terms: dict = {}
    for mask in range(1 << k):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        present = 0
        mm, i = mask, 0
        while mm:
            if mm & 1:
                present += 1
                a, b, c = triples[i]
                ra, rb, rc = find(a), find(b), find(c)
                if rb != ra:
                    parent[rb] = ra
                rc = find(c)
                if rc != find(a):
                    parent[rc] = find(a)
            mm >>= 1
            i += 1
        ru, rv1, rv2 = find(u1), find(v1), find(v2)
        diff = (ru == rv1) - (ru == rv2)
        if diff == 0:
            continue
        kappa = sum(1 for x in range(n) if parent[x] == x)
        exp = (kappa, 0, present, k - present)
        terms[exp] = terms.get(exp, 0) + diff
    return MultiPoly({exp: rat(c) for exp, c in terms.items() if c})


# ---------------------------------------------------------------------------
# Bunkbed scan fast path
# ---------------------------------------------------------------------------


def bunkbed_case_profiles(bb: Graph, triples):
    """One enumeration of a bunkbed graph serving many (u1, v1, v2) queries.

    For each triple the result maps (case, |S|, kappa) -> count, where case is
    bit 0 = u1 connected to v1, bit 1 = u1 connected to v2.
    """
    _guard_edges(bb.m)
    pairs = [(a, b) for a, b, _ in bb.edges]
    n = bb.n
    profiles = [dict() for _ in triples]
    for mask in range(1 << bb.m):
        roots, kappa = _roots_and_kappa(n, pairs, mask)
        s = mask.bit_count()
        for prof, (a, b, c) in zip(profiles, triples):
            case = (roots[a] == roots[b]) + 2 * (roots[a] == roots[c])
            key = (case, s, kappa)
            prof[key] = prof.get(key, 0) + 1
    return profiles


def case_difference(profile: dict, m: int, p, q) -> Rational:
    """Exact numerator of P[case bit0] - P[case bit1] at uniform edge weight p."""
    p, q = rat(p), rat(q)
    pw = [p**s * (1 - p) ** (m - s) for s in range(m + 1)]
    total = rat(0)
    for (case, s, kappa), count in profile.items():
        sgn = (case & 1) - (case >> 1 & 1)
        if sgn:
            total += sgn * count * pw[s] * q**kappa
    return total


def case_probability(profile: dict, m: int, p, q, bit: int = 0) -> Rational:
    """Exact probability that the queried connection (bit 0 or 1) holds."""
    p, q = rat(p), rat(q)
    pw = [p**s * (1 - p) ** (m - s) for s in range(m + 1)]
    num = rat(0)
    den = rat(0)
    for (case, s, kappa), count in profile.items():
        w = count * pw[s] * q**kappa
        den += w
        if case >> bit & 1:
            num += w
    return num / den


def profile_probability(profile: dict, m: int, p, q, predicate) -> Rational:
    """Probability of an event on the marked RGS, from an rc_profile."""
    p, q = rat(p), rat(q)
    pw = [p**s * (1 - p) ** (m - s) for s in range(m + 1)]
    num = rat(0)
    den = rat(0)
    for (rgs, s, kappa), count in profile.items():
        w = count * pw[s] * q**kappa
        den += w
        if predicate(rgs):
            num += w
    return num / den

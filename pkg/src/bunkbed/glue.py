"""Boundary-partition factor contraction.

A Factor assigns to each connectivity pattern of its boundary vertices the
total weight of internal configurations inducing that pattern, with one power
of q per fully internal component.  Components that still touch the boundary
accrue their q only when the caller reads probabilities off the final table.
Multiplying factors glues edge-disjoint subgraphs along shared boundary
vertices; eliminating a vertex projects it out, closing its component (one
more q) when it sits in a singleton block.

Internally an entry is a dense list of integer q-coefficients over a shared
positive denominator, which keeps the hot convolution loop in plain integer
arithmetic; the public table view converts to MultiPoly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactnum import MultiPoly, Rational, rat
from .graph import Graph, hollom_instance, hypergraph_bunkbed
from .measures import EnumerationGuardError, _roots_and_kappa, _weighted_subsets
from .partition import SetPartition, bell_number, canonical_rgs, join_rgs

__all__ = [
    "Factor",
    "FactorNetwork",
    "factor_from_graph",
    "edge_factor",
    "gadget_factor",
    "multiply",
    "eliminate",
    "contract_network",
    "counterexample_polynomial",
    "hollom_network",
]

_BOUNDARY_GUARD = 12
_EDGE_GUARD = 28


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _add_into(target: list, source: list) -> list:
    if len(source) > len(target):
        target.extend([0] * (len(source) - len(target)))
    for i, c in enumerate(source):
        target[i] += c
    return target


def _convolve(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return out


@dataclass(frozen=True)
class Factor:
    """Boundary vertex tuple (sorted global ids) with a partition-keyed table.

    entries maps each boundary partition's RGS tuple to a dense list of
    integer q-coefficients; every entry shares the positive denominator den.
    """

    boundary: tuple[int, ...]
    entries: dict
    den: int = 1

    def __post_init__(self):
        if tuple(sorted(self.boundary)) != self.boundary:
            raise ValueError("factor boundary must be sorted")
        if self.den <= 0:
            raise ValueError("denominator must be positive")

    @staticmethod
    def scalar(value) -> "Factor":
        value = rat(value)
        return Factor((), {(): [int(value.numerator)]}, int(value.denominator))

    def table(self) -> dict:
        """Public view: SetPartition of the boundary -> MultiPoly in q."""
        out = {}
        for rgs, coeffs in self.entries.items():
            part = SetPartition(self.boundary, rgs)
            out[part] = MultiPoly(
                {(k, 0, 0, 0): Rational(c, self.den) for k, c in enumerate(coeffs) if c}
            )
        return out

    def entry(self, partition: SetPartition) -> MultiPoly:
        if tuple(partition.ground) != self.boundary:
            raise ValueError("partition ground does not match the factor boundary")
        coeffs = self.entries.get(partition.rgs, [])
        return MultiPoly(
            {(k, 0, 0, 0): Rational(c, self.den) for k, c in enumerate(coeffs) if c}
        )

    def total(self) -> MultiPoly:
        """Sum of all entries with q**blocks restored: the partition function."""
        total = MultiPoly.zero()
        for rgs, coeffs in self.entries.items():
            blocks = (max(rgs) + 1) if rgs else 0
            total += MultiPoly(
                {
                    (k + blocks, 0, 0, 0): Rational(c, self.den)
                    for k, c in enumerate(coeffs)
                    if c
                }
            )
        return total

    def relabel(self, mapping: dict) -> "Factor":
        """Rename boundary vertices through an injective mapping."""
        new = [mapping.get(v, v) for v in self.boundary]
        if len(set(new)) != len(new):
            raise ValueError("relabel mapping must stay injective on the boundary")
        order = sorted(range(len(new)), key=lambda i: new[i])
        boundary = tuple(new[i] for i in order)
        entries = {}
        for rgs, coeffs in self.entries.items():
            permuted = canonical_rgs(rgs[i] for i in order)
            entries[permuted] = list(coeffs)
        return Factor(boundary, entries, self.den)

    def to_json(self) -> dict:
        return {
            "boundary": list(self.boundary),
            "entries": {
                part.to_string(): poly.to_string() for part, poly in self.table().items()
            },
        }


def edge_factor(u: int, v: int, weight) -> Factor:
    """Single-edge factor: present with its weight, absent with the complement."""
    w = rat(weight)
    den = int(w.denominator)
    num = int(w.numerator)
    if u == v:
        raise ValueError("self-loops are not allowed")
    a, b = (u, v) if u < v else (v, u)
    return Factor((a, b), {(0, 0): [num], (0, 1): [den - num]}, den)


def factor_from_graph(g: Graph, boundary, labels=None) -> Factor:
    """Brute-force factor of a rational-weight graph over a boundary set.

    With internal components absorbed as powers of q; boundary-touching
    components contribute no q here.  `labels` optionally maps local vertex
    ids to global ids for network assembly.
    """
    if g.m > _EDGE_GUARD:
        raise EnumerationGuardError(
            f"factor enumeration would visit 2^{g.m} subsets (guard 2^{_EDGE_GUARD})"
        )
    boundary_local = tuple(boundary)
    if len(set(boundary_local)) != len(boundary_local):
        raise ValueError("duplicate boundary vertex")
    den = 1
    for _, _, w in g.edges:
        if isinstance(w, MultiPoly):
            raise ValueError("factors need rational edge weights")
        den *= int(rat(w).denominator)
    pairs = [(u, v) for u, v, _ in g.edges]
    acc: dict = {}
    for mask, w in _weighted_subsets(g.edges):
        w = rat(w)
        roots, kappa = _roots_and_kappa(g.n, pairs, mask)
        broots = [roots[x] for x in boundary_local]
        internal = kappa - len(set(broots))
        rgs = canonical_rgs(broots)
        scaled = int(w.numerator) * (den // int(w.denominator))
        coeffs = acc.setdefault(rgs, [])
        if len(coeffs) <= internal:
            coeffs.extend([0] * (internal + 1 - len(coeffs)))
        coeffs[internal] += scaled
    mapping = labels or {}
    glob = [mapping.get(v, v) for v in boundary_local]
    if len(set(glob)) != len(glob):
        raise ValueError("labels must stay injective on the boundary")
    order = sorted(range(len(glob)), key=lambda i: glob[i])
    entries = {}
    for rgs, coeffs in acc.items():
        permuted = canonical_rgs(rgs[i] for i in order)
        target = entries.setdefault(permuted, [])
        _add_into(target, _trim(coeffs))
    return Factor(tuple(glob[i] for i in order), entries, den)


def multiply(f1: Factor, f2: Factor) -> Factor:
    """Glue two factors of edge-disjoint subgraphs along shared boundary vertices."""
    union = tuple(sorted(set(f1.boundary) | set(f2.boundary)))
    if not f1.entries or not f2.entries:
        return Factor(union, {}, f1.den * f2.den)
    pos = {v: i for i, v in enumerate(union)}
    k = len(union)
    idx1 = [pos[v] for v in f1.boundary]
    idx2 = [pos[v] for v in f2.boundary]

    def lift(idx, rgs):
        # Lift a partition onto the union: unseen vertices become singletons.
        full = [-1] * k
        top = max(rgs, default=-1) + 1
        for i, block in zip(idx, rgs):
            full[i] = block
        for i in range(k):
            if full[i] == -1:
                full[i] = top
                top += 1
        return tuple(full)

    lifted2 = [(lift(idx2, rgs2), c2) for rgs2, c2 in f2.entries.items()]
    entries: dict = {}
    for rgs1, c1 in f1.entries.items():
        lift1 = lift(idx1, rgs1)
        for lift2, c2 in lifted2:
            joined = join_rgs(lift1, lift2)
            prod = _convolve(c1, c2)
            target = entries.get(joined)
            if target is None:
                entries[joined] = prod
            else:
                _add_into(target, prod)
    for rgs in entries:
        _trim(entries[rgs])
    return Factor(union, entries, f1.den * f2.den)


def eliminate(f: Factor, vertex: int) -> Factor:
    """Project a boundary vertex out; singleton blocks close and earn one q."""
    try:
        pos = f.boundary.index(vertex)
    except ValueError:
        raise ValueError(f"vertex {vertex} is not on the factor boundary") from None
    boundary = f.boundary[:pos] + f.boundary[pos + 1 :]
    entries: dict = {}
    for rgs, coeffs in f.entries.items():
        closed = rgs.count(rgs[pos]) == 1
        reduced = canonical_rgs(rgs[:pos] + rgs[pos + 1 :])
        shifted = [0] + list(coeffs) if closed else list(coeffs)
        target = entries.get(reduced)
        if target is None:
            entries[reduced] = shifted
        else:
            _add_into(target, shifted)
    for rgs in entries:
        _trim(entries[rgs])
    return Factor(boundary, entries, f.den)


@dataclass(frozen=True)
class FactorNetwork:
    """Factors over global vertex ids plus query vertices kept to the end."""

    factors: tuple
    queries: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "queries", tuple(sorted(set(self.queries))))
        covered = set()
        for f in self.factors:
            covered.update(f.boundary)
        missing = [v for v in self.queries if v not in covered]
        if missing:
            raise ValueError(f"query vertices {missing} appear in no factor boundary")


def contract_network(net: FactorNetwork, order=None) -> Factor:
    """Multiply factors and eliminate all non-query vertices.

    The elimination order defaults to a greedy minimum-new-boundary choice;
    the result is order-invariant.  Raises when any intermediate boundary
    would exceed the Bell-number guard, reporting the order attempted.
    """
    if not net.queries:
        raise ValueError("network needs at least one query vertex")
    queries = set(net.queries)
    active = list(net.factors)
    pending = set()
    for f in active:
        pending.update(f.boundary)
    pending -= queries
    if order is not None:
        order = list(order)
        if set(order) != pending:
            raise ValueError("explicit order must cover exactly the non-query vertices")
    done_order = []
    while pending:
        if order:
            v = order.pop(0)
        else:
            best = None
            for v_cand in pending:
                new_boundary = set()
                for f in active:
                    if v_cand in f.boundary:
                        new_boundary.update(f.boundary)
                size = len(new_boundary) - 1
                key = (size, v_cand)
                if best is None or key < best[0]:
                    best = (key, v_cand)
            v = best[1]
        group = [f for f in active if v in f.boundary]
        rest = [f for f in active if v not in f.boundary]
        merged_boundary = set()
        for f in group:
            merged_boundary.update(f.boundary)
        if len(merged_boundary) > _BOUNDARY_GUARD:
            raise EnumerationGuardError(
                f"eliminating vertex {v} needs a boundary of {len(merged_boundary)} "
                f"vertices (Bell({len(merged_boundary)}) = "
                f"{bell_number(len(merged_boundary))} partitions exceeds the "
                f"Bell({_BOUNDARY_GUARD}) guard); order so far: {done_order}"
            )
        group.sort(key=lambda f: len(f.entries))
        merged = group[0]
        for f in group[1:]:
            merged = multiply(merged, f)
        merged = eliminate(merged, v)
        active = rest + [merged]
        pending.discard(v)
        done_order.append(v)
    active.sort(key=lambda f: len(f.entries))
    result = active[0] if active else Factor.scalar(1)
    for f in active[1:]:
        result = multiply(result, f)
    return result


def gadget_factor(n: int, p) -> Factor:
    """Factor of the apex gadget over its three boundary vertices a, b, c.

    Built by a left-to-right sweep along the bottom path, keeping a table
    over partitions of {apex, left end, current vertex}; cost is linear in n
    and the result equals factor_from_graph(gadget(n, p), boundary) exactly.
    Boundary ids: a=0, b=1, c=n+2 as in graph.gadget.
    """
    if n < 1:
        raise ValueError("gadget needs n >= 1")
    p = rat(p)
    a, b, c = 0, 1, n + 2
    spoke = 1 - p
    # Start with the a-b spoke.
    state = edge_factor(a, b, spoke)
    prev = b
    for i in range(1, n + 1):
        x = 1 + i
        state = multiply(state, edge_factor(prev, x, p))
        state = multiply(state, edge_factor(a, x, spoke))
        if prev != b:
            state = eliminate(state, prev)
        prev = x
    state = multiply(state, edge_factor(prev, c, p))
    state = multiply(state, edge_factor(a, c, spoke))
    state = eliminate(state, prev)
    return state


def hollom_network(n: int, p) -> FactorNetwork:
    """Twelve gadget factors on the skeleton of the doubled counterexample.

    Each hyperedge of the 10-vertex instance, in both layers with the posts
    contracted, is replaced by a gadget factor whose apex sits on the post.
    Queries are 1, 10 (same layer) and 20 (the other copy of 10).
    """
    h = hollom_instance()
    _, doubled = hypergraph_bunkbed(h)
    base = gadget_factor(n, p)
    a, b, c = 0, 1, n + 2
    factors = []
    for he in doubled:
        post = [v for v in he if v in h.posts]
        others = [v for v in he if v not in h.posts]
        if len(post) != 1:
            raise ValueError("every hyperedge must contain exactly one post")
        factors.append(base.relabel({a: post[0], b: others[0], c: others[1]}))
    return FactorNetwork(tuple(factors), (1, 10, 20))


def counterexample_polynomial(n: int, p):
    """Numerator and partition function of the doubled-instance connection gap.

    N is the unnormalized numerator of P[1 <-> 10] - P[1 <-> 20] (positive
    denominators cancel), Z the partition function; both are exact
    polynomials in q.  sign P_n(q) = sign N(q) for q > 0.
    """
    net = hollom_network(n, p)
    final = contract_network(net)
    # Readout: restore q**blocks for the query partitions.
    same_10 = (0, 0, 1)  # {1,10}{20}
    same_20 = (0, 1, 0)  # {1,20}{10}
    den = final.den
    diff = {}
    for rgs, sign in ((same_10, 1), (same_20, -1)):
        for k, coeff in enumerate(final.entries.get(rgs, [])):
            if coeff:
                exp = k + 2
                diff[exp] = diff.get(exp, 0) + sign * coeff
    numerator = MultiPoly({(e, 0, 0, 0): Rational(cv, den) for e, cv in diff.items() if cv})
    z = final.total()
    return numerator, z

"""Canonical set partitions of labelled finite sets.

A partition is stored as a restricted-growth string (RGS) over an ordered
ground tuple: element i carries the index of its block, blocks are numbered by
first appearance.  This gives O(k) equality and a compact dictionary key,
which matters because contraction tables are keyed by partitions millions of
times.
"""

from __future__ import annotations

from dataclasses import dataclass
__all__ = [
    "SetPartition",
    "canonicalize",
    "join",
    "enumerate_partitions",
    "eliminate",
    "bell_number",
    "canonical_rgs",
    "join_rgs",
]

_BELL_GUARD = 12


def bell_number(k: int) -> int:
    """Bell number B(k) via the Bell triangle."""
    if k < 0:
        raise ValueError("negative set size")
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def canonical_rgs(assignment) -> tuple[int, ...]:
    """Renumber an arbitrary block-label sequence into restricted-growth form."""
    seen: dict = {}
    out = []
    for label in assignment:
        if label not in seen:
            seen[label] = len(seen)
        out.append(seen[label])
    return tuple(out)


def join_rgs(a, b) -> tuple[int, ...]:
    """RGS of the finest common coarsening of two block-label sequences."""
    k = len(a)
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first_a: dict = {}
    first_b: dict = {}
    for i in range(k):
        for labels, first in ((a, first_a), (b, first_b)):
            lab = labels[i]
            if lab in first:
                ra, rb = find(first[lab]), find(i)
                if ra != rb:
                    parent[rb] = ra
            else:
                first[lab] = i
    return canonical_rgs(find(i) for i in range(k))


@dataclass(frozen=True)
class SetPartition:
    """Partition of an ordered ground tuple, in restricted-growth form."""

    ground: tuple
    rgs: tuple[int, ...]

    def __post_init__(self):
        if len(self.ground) != len(self.rgs):
            raise ValueError("ground and RGS lengths differ")
        top = -1
        for x in self.rgs:
            if x > top + 1 or x < 0:
                raise ValueError(f"not a restricted-growth string: {self.rgs}")
            top = max(top, x)

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def block_count(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    def blocks(self) -> tuple[tuple, ...]:
        out: list[list] = [[] for _ in range(self.block_count)]
        for el, b in zip(self.ground, self.rgs):
            out[b].append(el)
        return tuple(tuple(b) for b in out)

    def block_of(self, element) -> int:
        try:
            return self.rgs[self.ground.index(element)]
        except ValueError:
            raise ValueError(f"element {element!r} not in ground") from None

    def together(self, *elements) -> bool:
        ids = {self.block_of(e) for e in elements}
        return len(ids) == 1

    def restrict(self, elements) -> "SetPartition":
        """Induced partition on a subsequence of the ground."""
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(self.ground)}
        labels = [self.rgs[idx[e]] for e in elements]
        return SetPartition(elements, canonical_rgs(labels))

    def to_string(self) -> str:
        """Block notation such as ``0|12`` (comma-separated for wide labels)."""
        rendered = []
        for block in self.blocks():
            names = [str(e) for e in block]
            rendered.append(
                "".join(names) if all(len(s) == 1 for s in names) else ",".join(names)
            )
        return "|".join(rendered)

    def __repr__(self):
        return f"SetPartition({self.to_string()})"


def canonicalize(ground, grouping) -> SetPartition:
    """Canonical partition from explicit groups, independent of group order."""
    ground = tuple(ground)
    label: dict = {}
    for b, group in enumerate(grouping):
        for el in group:
            if el in label:
                raise ValueError(f"duplicate element {el!r} in grouping")
            label[el] = b
    if set(label) != set(ground) or len(ground) != len(set(ground)):
        raise ValueError("grouping does not partition the ground")
    return SetPartition(ground, canonical_rgs(label[el] for el in ground))


def join(x: SetPartition, y: SetPartition) -> SetPartition:
    """Finest common coarsening: u, v share a block iff connected in x union y."""
    if x.ground != y.ground:
        raise ValueError("join requires identical grounds")
    return SetPartition(x.ground, join_rgs(x.rgs, y.rgs))


def enumerate_partitions(k: int) -> list[SetPartition]:
    """All partitions of the ground (0, ..., k-1), in RGS lexicographic order."""
    if k < 1:
        raise ValueError("ground must have at least one element")
    if k > _BELL_GUARD:
        raise ValueError(
            f"refusing to enumerate Bell({k}) = {bell_number(k)} partitions "
            f"(guard is k <= {_BELL_GUARD})"
        )
    ground = tuple(range(k))
    out = []
    rgs = [0] * k

    def rec(i, top):
        if i == k:
            out.append(SetPartition(ground, tuple(rgs)))
            return
        for b in range(top + 2):
            rgs[i] = b
            rec(i + 1, max(top, b))

    rec(1, 0) if k > 1 else out.append(SetPartition(ground, (0,)))
    return out


def eliminate(x: SetPartition, element):
    """Remove an element; `closed` flags that it formed a singleton block."""
    try:
        pos = x.ground.index(element)
    except ValueError:
        raise ValueError(f"element {element!r} not in ground") from None
    closed = x.rgs.count(x.rgs[pos]) == 1
    ground = x.ground[:pos] + x.ground[pos + 1 :]
    labels = x.rgs[:pos] + x.rgs[pos + 1 :]
    return SetPartition(ground, canonical_rgs(labels)), closed

"""
Set partitions of {1, ..., n}: refinement order, join and Möbius function.

A SetPartition is stored canonically as a tuple of block labels
(``labels[i]`` is the index of the block containing ``i+1``), with blocks
numbered by increasing minimum element.  This makes partitions hashable and
gives every enumeration a deterministic order.

    >>> a = SetPartition.parse("{1,2}{3,4}")
    >>> b = SetPartition.parse("{2,3}{1}{4}")
    >>> str(join(a, b))
    '{1,2,3,4}'
    >>> moebius(SetPartition.finest(3), SetPartition.coarsest(3))
    2
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence


def _canonical(labels: Sequence) -> tuple:
    relabel = {}
    out = []
    for x in labels:
        if x not in relabel:
            relabel[x] = len(relabel)
        out.append(relabel[x])
    return tuple(out)


class SetPartition:
    __slots__ = ("labels", "_blocks")

    def __init__(self, blocks: Iterable[Iterable[int]], n: int | None = None):
        blocks = [sorted(int(x) for x in b) for b in blocks]
        if any(not b for b in blocks):
            raise ValueError("empty block")
        elems = sorted(x for b in blocks for x in b)
        if n is None:
            n = len(elems)
        if elems != list(range(1, n + 1)):
            raise ValueError("blocks do not partition {1..%d}" % n)
        labels = [0] * n
        for i, b in enumerate(blocks):
            for x in b:
                labels[x - 1] = i
        self.labels = _canonical(labels)
        self._blocks = None

    @classmethod
    def from_labels(cls, labels: Sequence) -> "SetPartition":
        sp = cls.__new__(cls)
        sp.labels = _canonical(labels)
        sp._blocks = None
        return sp

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "SetPartition":
        s = text.strip()
        if not re.fullmatch(r"(\{[0-9,\s]*\})+", s):
            raise ValueError("cannot parse set partition %r" % text)
        blocks = [[int(t) for t in re.split(r"[,\s]+", body) if t] for body in re.findall(r"\{([^}]*)\}", s)]
        return cls(blocks, n)

    @classmethod
    def finest(cls, n: int) -> "SetPartition":
        return cls.from_labels(range(n))

    @classmethod
    def coarsest(cls, n: int) -> "SetPartition":
        return cls.from_labels([0] * n)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def blocks(self) -> tuple:
        """Blocks as tuples of 1-based elements, sorted by minimum."""
        if self._blocks is None:
            out = [[] for _ in range(len(self))]
            for i, b in enumerate(self.labels):
                out[b].append(i + 1)
            self._blocks = tuple(tuple(b) for b in out)
        return self._blocks

    def __len__(self):
        return max(self.labels) + 1 if self.labels else 0

    def block_of(self, x: int) -> tuple:
        return self.blocks[self.labels[x - 1]]

    def is_coarsest(self) -> bool:
        return all(x == 0 for x in self.labels)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __le__(self, other):
        return refines(self, other)

    def __repr__(self):
        return "SetPartition(%s)" % self

    def __str__(self):
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def _check(a: SetPartition, b: SetPartition):
    if a.n != b.n:
        raise ValueError("ground set mismatch: %d vs %d" % (a.n, b.n))


def refines(a: SetPartition, b: SetPartition) -> bool:
    """True iff a <= b: each block of a lies in a block of b."""
    _check(a, b)
    image = {}
    for x, y in zip(a.labels, b.labels):
        if image.setdefault(x, y) != y:
            return False
    return True


@lru_cache(maxsize=None)
def _join_labels(a: tuple, b: tuple) -> tuple:
    n = len(a)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab in (a, b):
        first = {}
        for i, x in enumerate(lab):
            j = first.setdefault(x, i)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return _canonical([find(i) for i in range(n)])


def join(a: SetPartition, b: SetPartition) -> SetPartition:
    """The finest partition coarser than both a and b."""
    _check(a, b)
    return SetPartition.from_labels(_join_labels(a.labels, b.labels))


def join_all(parts: Sequence[SetPartition], n: int | None = None) -> SetPartition:
    parts = list(parts)
    if not parts:
        if n is None:
            raise ValueError("empty join with undefined n")
        return SetPartition.finest(n)
    lab = parts[0].labels
    for p in parts[1:]:
        if p.n != len(lab):
            raise ValueError("ground set mismatch")
        lab = _join_labels(lab, p.labels)
    return SetPartition.from_labels(lab)


def moebius(sub: SetPartition, sup: SetPartition) -> int:
    r"""
    Möbius function of the partition lattice on the interval [sub, sup].

    Each block of ``sup`` made of ``k`` blocks of ``sub`` contributes
    ``(-1)^(k-1) (k-1)!``.
    """
    if not refines(sub, sup):
        raise ValueError("%s does not refine %s" % (sub, sup))
    count = {}
    seen = set()
    for x, y in zip(sub.labels, sup.labels):
        if x not in seen:
            seen.add(x)
            count[y] = count.get(y, 0) + 1
    r = 1
    for k in count.values():
        r *= (-1) ** (k - 1) * factorial(k - 1)
    return r


def _rgs(n: int) -> Iterator[tuple]:
    # restricted growth strings a_0=0, a_i <= 1 + max(a_0..a_{i-1})
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, m):
        if i == n:
            yield tuple(a)
            return
        for v in range(m + 2):
            a[i] = v
            yield from rec(i + 1, max(m, v))

    yield from rec(1, 0)


def enumerate_partitions(n: int) -> Iterator[SetPartition]:
    """All Bell(n) set partitions of {1..n}."""
    if n < 1:
        raise ValueError("n must be positive")
    for lab in _rgs(n):
        yield SetPartition.from_labels(lab)


def enumerate_coarser(base: SetPartition) -> Iterator[SetPartition]:
    """All partitions pi with base <= pi, via partitions of the blocks of base."""
    k = len(base)
    for lab in _rgs(k):
        yield SetPartition.from_labels([lab[b] for b in base.labels])


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    # Bell triangle
    row = [1]
    for _ in range(n):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
    return row[0]


def restrict_partition(p: SetPartition, block: Sequence[int]) -> SetPartition:
    """Restriction of p to a union of its blocks, relabelled by increasing label."""
    b = sorted(block)
    return SetPartition.from_labels([p.labels[x - 1] for x in b])

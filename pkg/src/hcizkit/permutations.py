"""
Permutations of {1, ..., n} and their cycle statistics.

Permutations are stored in one-line notation.  The degree ``n`` is always
explicit: a permutation of degree 3 and one of degree 4 are never mixed
silently.  Composition follows ``(a*b)(s) = a(b(s))``.

    >>> p = Permutation.parse("(1 2)(3 4 5)")
    >>> p.images
    (2, 1, 4, 5, 3)
    >>> p.num_cycles(), p.length()
    (2, 3)
    >>> str(compose(Permutation.parse("(1 2)", 3), Permutation.parse("(2 3)", 3)))
    '(1 2 3)'
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from math import factorial, prod
from typing import Iterable, Iterator, Sequence


class Permutation:
    r"""
    A bijection of {1..n}, stored 0-based internally in ``_img``.

    ``images`` exposes the 1-based one-line notation.
    """

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int], n: int | None = None):
        img = tuple(int(x) - 1 for x in images)
        if n is not None and n != len(img):
            raise ValueError("degree %d does not match %d images" % (n, len(img)))
        if sorted(img) != list(range(len(img))):
            raise ValueError("not a bijection of {1..%d}: %r" % (len(img), tuple(images)))
        self._img = img
        self._hash = hash(img)

    @classmethod
    def _from0(cls, img: tuple) -> "Permutation":
        # trusted constructor from a 0-based tuple
        p = cls.__new__(cls)
        p._img = img
        p._hash = hash(img)
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._from0(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            for x in cyc:
                if not 1 <= x <= n:
                    raise ValueError("label %d out of range 1..%d" % (x, n))
                if x in seen:
                    raise ValueError("label %d repeated in cycle notation" % x)
                seen.add(x)
            for i, x in enumerate(cyc):
                img[x - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls._from0(tuple(img))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        r"""
        Parse cycle notation ``"(1 2)(3 4 5)"`` or one-line ``"[2,1,4,5,3]"``.

        In cycle notation without separators each character is a label, so
        ``"(12)(354)"`` is accepted.  ``"()"`` is the identity.  When ``n`` is
        omitted it is the largest label seen (at least 1).

            >>> Permutation.parse("(12)(354)").images
            (2, 1, 5, 3, 4)
            >>> Permutation.parse("()", 3).is_identity()
            True
        """
        s = text.strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise ValueError("unterminated one-line notation: %r" % text)
            body = s[1:-1].strip()
            images = [int(t) for t in re.split(r"[,\s]+", body) if t] if body else []
            return cls(images, n)
        if s == "" or s == "id":
            cycles = []
        else:
            if not re.fullmatch(r"(\([0-9,\s]*\))+", s):
                raise ValueError("cannot parse permutation %r" % text)
            cycles = []
            for body in re.findall(r"\(([^)]*)\)", s):
                body = body.strip()
                if not body:
                    continue
                if re.search(r"[,\s]", body):
                    cyc = [int(t) for t in re.split(r"[,\s]+", body) if t]
                else:
                    cyc = [int(ch) for ch in body]
                cycles.append(cyc)
        m = max((x for c in cycles for x in c), default=1)
        if n is None:
            n = m
        elif m > n:
            raise ValueError("label %d exceeds degree %d" % (m, n))
        return cls.from_cycles(cycles, n)

    # basic accessors

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return tuple(x + 1 for x in self._img)

    def __call__(self, s: int) -> int:
        return self._img[s - 1] + 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.n, self._img) < (other.n, other._img)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __repr__(self):
        return "Permutation(%r)" % (self.images,)

    def __str__(self):
        return self.cycle_string()

    def cycle_string(self, fixed_points: bool = False) -> str:
        cyc = [c for c in self.cycles() if fixed_points or len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    # structure

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self._img):
            inv[x] = i
        return Permutation._from0(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def cycles(self) -> list:
        """Cycles as lists of 1-based labels, each starting at its minimum."""
        seen = [False] * self.n
        out = []
        for i in range(self.n):
            if not seen[i]:
                cyc = []
                j = i
                while not seen[j]:
                    seen[j] = True
                    cyc.append(j + 1)
                    j = self._img[j]
                out.append(cyc)
        return out

    def num_cycles(self) -> int:
        return len(self.cycles())

    def length(self) -> int:
        return length(self)

    def cycle_type(self) -> "CycleType":
        return CycleType(len(c) for c in self.cycles())

    def conjugate(self, g: "Permutation") -> "Permutation":
        """Return g self g^{-1}."""
        return compose(compose(g, self), g.inverse())

    def stabilizes(self, block: Iterable[int]) -> bool:
        b = set(block)
        return all(self(x) in b for x in b)


def _check_degree(a: Permutation, b: Permutation):
    if a.n != b.n:
        raise ValueError("degree mismatch: %d vs %d" % (a.n, b.n))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return a∘b, i.e. s -> a(b(s))."""
    _check_degree(a, b)
    ai = a._img
    return Permutation._from0(tuple(ai[x] for x in b._img))


def compose_all(perms: Sequence[Permutation], n: int) -> Permutation:
    """Product p_1 p_2 ... p_k (identity of degree n when empty)."""
    r = Permutation.identity(n)
    for p in perms:
        r = compose(r, p)
    return r


def length(p: Permutation) -> int:
    """Minimal number of transpositions whose product is p."""
    return p.n - p.num_cycles()


def transitivity_partition(ps: Sequence[Permutation], n: int | None = None):
    """
    Orbits of the group generated by ``ps`` as a SetPartition.

        >>> str(transitivity_partition([Permutation.parse("(1 2)", 3), Permutation.parse("(2 3)", 3)]))
        '{1,2,3}'
    """
    from .setpartitions import SetPartition

    ps = list(ps)
    if n is None:
        if not ps:
            raise ValueError("empty permutation list with undefined degree")
        n = ps[0].n
    for p in ps:
        if p.n != n:
            raise ValueError("degree mismatch in transitivity_partition")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in ps:
        for i, x in enumerate(p._img):
            ri, rx = find(i), find(x)
            if ri != rx:
                parent[max(ri, rx)] = min(ri, rx)
    return SetPartition.from_labels([find(i) for i in range(n)])


def restrict(p: Permutation, block: Iterable[int]) -> Permutation:
    """
    Restriction of p to a stabilized block, relabelled by increasing label.

        >>> str(restrict(Permutation.parse("(1 2)(3 4 5)"), [3, 4, 5]))
        '(1 2 3)'
    """
    b = sorted(set(block))
    if not b:
        raise ValueError("empty block")
    if not all(1 <= x <= p.n for x in b):
        raise ValueError("block not contained in {1..%d}" % p.n)
    if not p.stabilizes(b):
        raise ValueError("block %r is not stabilized by %s" % (b, p))
    pos = {x: i for i, x in enumerate(b)}
    return Permutation._from0(tuple(pos[p(x)] for x in b))


def lift(p: Permutation, block: Sequence[int], n: int) -> Permutation:
    """Inverse of restrict: act as p on the sorted block, fix everything else."""
    b = sorted(block)
    if len(b) != p.n:
        raise ValueError("block size does not match degree")
    img = list(range(n))
    for i, x in enumerate(b):
        img[x - 1] = b[p._img[i]] - 1
    return Permutation._from0(tuple(img))


class CycleType:
    r"""
    An integer partition, stored with parts in non-increasing order.

        >>> t = CycleType.parse("2,1,1")
        >>> t.n, t.num_parts(), t.multiplicities()
        (4, 3, {2: 1, 1: 2})
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        ps = tuple(sorted((int(x) for x in parts), reverse=True))
        if not ps or any(x <= 0 for x in ps):
            raise ValueError("a cycle type needs positive parts: %r" % (ps,))
        self.parts = ps

    @classmethod
    def parse(cls, text: str) -> "CycleType":
        s = text.strip().strip("[]()")
        return cls(int(t) for t in re.split(r"[,\s]+", s) if t)

    @classmethod
    def trivial(cls, n: int) -> "CycleType":
        return cls([1] * n)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def num_parts(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> dict:
        return dict(Counter(self.parts))

    def is_trivial(self) -> bool:
        return all(x == 1 for x in self.parts)

    def representative(self) -> Permutation:
        """Canonical element: consecutive labels filled cycle by cycle."""
        cycles, start = [], 1
        for p in self.parts:
            cycles.append(list(range(start, start + p)))
            start += p
        return Permutation.from_cycles(cycles, self.n)

    def __eq__(self, other):
        return isinstance(other, CycleType) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return self.parts < other.parts

    def __repr__(self):
        return "CycleType(%r)" % (list(self.parts),)

    def __str__(self):
        return ",".join(map(str, self.parts))


def conjugacy_class_size(t: CycleType) -> int:
    """n! / prod_p p^{d_p} d_p!"""
    return factorial(t.n) // prod(p ** d * factorial(d) for p, d in t.multiplicities().items())


def integer_partitions(n: int) -> Iterator[CycleType]:
    """All partitions of n, in reverse lexicographic order."""
    def rec(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, maxpart), 0, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail

    for parts in rec(n, n):
        yield CycleType(parts)


def all_permutations(n: int) -> Iterator[Permutation]:
    for img in itertools.permutations(range(n)):
        yield Permutation._from0(img)


def enumerate_class(t: CycleType) -> Iterator[Permutation]:
    """
    Every permutation of cycle type t exactly once.

    Cycles are generated as: smallest unused label starts a cycle whose
    length is taken from the remaining parts, and the rest of the cycle is
    any ordered choice of unused labels larger than the start.
    """
    n = t.n

    def rec(img, unused, parts):
        if not unused:
            yield Permutation._from0(tuple(img))
            return
        start = unused[0]
        rest = unused[1:]
        for p in sorted(set(parts), reverse=True):
            remaining = list(parts)
            remaining.remove(p)
            for tail in itertools.permutations(rest, p - 1):
                cyc = (start,) + tail
                for i, x in enumerate(cyc):
                    img[x] = cyc[(i + 1) % p]
                left = [x for x in rest if x not in tail]
                yield from rec(img, left, remaining)

    yield from rec(list(range(n)), list(range(n)), list(t.parts))


def transpositions(n: int) -> list:
    """All transpositions (p q), p < q, as Permutations, ordered by (q, p)."""
    out = []
    for q in range(2, n + 1):
        for p in range(1, q):
            out.append(Permutation.from_cycles([[p, q]], n))
    return out

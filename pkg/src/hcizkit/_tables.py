"""
Transfer-matrix counting of factorizations in S_n.

Every factorization counted by the library is an ordered tuple of group
elements, so it can be counted by walking the prefix products: a state is
(prefix product, orbit partition of the factors used so far, extra data).
Appending a factor moves the prefix to ``prefix∘factor`` and joins the orbit
partition with the orbits of the factor, because the orbits of a generated
group are the join of the orbits of its generators.

These tables count exactly the sets that ``constellations.enumerate_factorizations``
lists one by one; the tests compare the two on small n.

Permutations are 0-based image tuples here and orbit partitions are
canonical block-label tuples (see setpartitions).
"""

from __future__ import annotations

import itertools
import threading
from collections import defaultdict
from functools import lru_cache

from .setpartitions import _join_labels, _canonical

_lock = threading.RLock()


@lru_cache(maxsize=None)
def group(n: int) -> tuple:
    return tuple(itertools.permutations(range(n)))


def compose0(a: tuple, b: tuple) -> tuple:
    return tuple(a[x] for x in b)


def inverse0(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def num_cycles0(a: tuple) -> int:
    seen = [False] * len(a)
    c = 0
    for i in range(len(a)):
        if not seen[i]:
            c += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
    return c


def orbit_labels0(a: tuple) -> tuple:
    lab = [-1] * len(a)
    for i in range(len(a)):
        if lab[i] < 0:
            j = i
            while lab[j] < 0:
                lab[j] = i
                j = a[j]
    return _canonical(lab)


@lru_cache(maxsize=None)
def _elements(n: int, proper: bool) -> tuple:
    # (perm, length, orbit labels)
    out = []
    for g in group(n):
        ln = n - num_cycles0(g)
        if proper and ln == 0:
            continue
        out.append((g, ln, orbit_labels0(g)))
    return tuple(out)


class _ProperTable:
    """Counts of proper factorizations layered by total length."""

    def __init__(self, n: int, orbits: bool):
        self.n = n
        self.orbits = orbits
        ident = tuple(range(n))
        lab = tuple(range(n)) if orbits else None
        self.layers = [{(ident, lab, 0): 1}]

    def layer(self, l: int) -> dict:
        with _lock:
            while len(self.layers) <= l:
                self._extend()
        return self.layers[l]

    def _extend(self):
        L = len(self.layers)
        new = defaultdict(int)
        for g, ln, glab in _elements(self.n, True):
            if ln > L:
                continue
            for (P, lab, k), c in self.layers[L - ln].items():
                P2 = tuple(P[x] for x in g)
                lab2 = _join_labels(lab, glab) if self.orbits else None
                new[(P2, lab2, k + 1)] += c
        self.layers.append(dict(new))


@lru_cache(maxsize=None)
def _proper_table(n: int, orbits: bool) -> _ProperTable:
    return _ProperTable(n, orbits)


def proper_counts(n: int, l: int, orbits: bool = True) -> dict:
    """{(product, orbit labels or None, k): count} over proper factorizations of total length l."""
    return _proper_table(n, orbits).layer(l)


@lru_cache(maxsize=None)
def proper_by_product(n: int, l: int) -> dict:
    """{product: [(orbit labels, k, count), ...]} at total length l."""
    out = defaultdict(list)
    for (P, lab, k), c in proper_counts(n, l).items():
        out[P].append((lab, k, c))
    return dict(out)


@lru_cache(maxsize=None)
def generic_counts(n: int, k: int, max_l: int) -> dict:
    """
    {(product, orbit labels, total length): count} over all k-tuples of
    permutations (identity allowed) with total length <= max_l.
    """
    if k == 0:
        ident = tuple(range(n))
        return {(ident, tuple(range(n)), 0): 1}
    prev = generic_counts(n, k - 1, max_l)
    new = defaultdict(int)
    for g, ln, glab in _elements(n, False):
        for (P, lab, l), c in prev.items():
            if l + ln > max_l:
                continue
            new[(tuple(P[x] for x in g), _join_labels(lab, glab), l + ln)] += c
    return dict(new)


@lru_cache(maxsize=None)
def transposition_list(n: int) -> tuple:
    """Transpositions as (perm, max label q (1-based), orbit labels), ordered by q."""
    out = []
    for q in range(1, n):
        for p in range(q):
            t = list(range(n))
            t[p], t[q] = q, p
            t = tuple(t)
            out.append((t, q + 1, orbit_labels0(t)))
    return tuple(out)


class _MonotoneTable:
    """Weakly monotone transposition sequences layered by length."""

    def __init__(self, n: int, orbits: bool):
        self.n = n
        self.orbits = orbits
        ident = tuple(range(n))
        lab = tuple(range(n)) if orbits else None
        self.layers = [{(ident, lab, 0): 1}]
        self.summaries = []

    def _extend(self):
        new = defaultdict(int)
        trs = transposition_list(self.n)
        for (P, lab, last), c in self.layers[-1].items():
            for t, q, tlab in trs:
                if q < last:
                    continue
                P2 = tuple(P[x] for x in t)
                lab2 = _join_labels(lab, tlab) if self.orbits else None
                new[(P2, lab2, q)] += c
        self.layers.append(dict(new))

    def summary(self, l: int) -> dict:
        with _lock:
            while len(self.layers) <= l:
                self._extend()
            while len(self.summaries) <= l:
                s = defaultdict(int)
                for (P, lab, _), c in self.layers[len(self.summaries)].items():
                    s[(P, lab)] += c
                self.summaries.append(dict(s))
        return self.summaries[l]


@lru_cache(maxsize=None)
def _monotone_table(n: int, orbits: bool) -> _MonotoneTable:
    return _MonotoneTable(n, orbits)


def monotone_counts(n: int, l: int, orbits: bool = True) -> dict:
    """{(product, orbit labels or None): count} over weakly monotone sequences of length l."""
    return _monotone_table(n, orbits).summary(l)


@lru_cache(maxsize=None)
def monotone_by_product(n: int, l: int) -> dict:
    """{product: [(orbit labels, count), ...]} at length l."""
    out = defaultdict(list)
    for (P, lab), c in monotone_counts(n, l).items():
        out[P].append((lab, c))
    return dict(out)

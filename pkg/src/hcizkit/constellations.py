r"""
Constellations: ordered tuples of permutations read as embedded maps.

A k-constellation ``(rho_1, ..., rho_k)`` in S_n has ``n`` hyperedges, one
vertex per cycle of each ``rho_i`` and one face per cycle of the product
``rho_1 ... rho_k``.  Its genus follows from the Euler relation

    sum_i #(rho_i) - n(k-1) + #(rho_1...rho_k) = 2|Pi| - 2g

where ``|Pi|`` is the number of orbits of the generated group.

This module also holds the planar counts: ``gamma_tilde_planar`` (connected
planar constellations with given faces), its proper version
``gamma_planar_proper``, the alternating sum ``gamma_alternating`` and the
non-crossing Möbius function ``moebius_nc``.  Exhaustive counts
(``gamma_l``, ``gamma_tilde_l``) come from the factorization tables.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

from . import _tables
from .permutations import CycleType, Permutation, compose, compose_all, length, transitivity_partition


class Constellation:
    """An ordered tuple of permutations of common degree."""

    __slots__ = ("perms", "n")

    def __init__(self, perms: Sequence[Permutation], n: int | None = None):
        perms = tuple(perms)
        if n is None:
            if not perms:
                raise ValueError("empty constellation needs an explicit degree")
            n = perms[0].n
        if any(p.n != n for p in perms):
            raise ValueError("constellation factors must share degree %d" % n)
        self.perms = perms
        self.n = n

    @property
    def k(self) -> int:
        return len(self.perms)

    def product(self) -> Permutation:
        return compose_all(self.perms, self.n)

    def orbits(self):
        return transitivity_partition(self.perms, self.n)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_proper(self) -> bool:
        return not any(p.is_identity() for p in self.perms)

    def total_length(self) -> int:
        return sum(length(p) for p in self.perms)

    def genus(self) -> int:
        return genus(self)

    def __iter__(self):
        return iter(self.perms)

    def __eq__(self, other):
        return isinstance(other, Constellation) and self.n == other.n and self.perms == other.perms

    def __hash__(self):
        return hash((self.n, self.perms))

    def __repr__(self):
        return "Constellation(%s)" % ", ".join(str(p) for p in self.perms)


def euler_defect(c: Constellation) -> int:
    """sum #(rho_i) - n(k-1) + #(product); equals 2|Pi| - 2g."""
    return sum(p.num_cycles() for p in c.perms) - c.n * (c.k - 1) + c.product().num_cycles()


def genus(c: Constellation) -> int:
    """
    Genus from the Euler relation, summed over connected components.

        >>> genus(Constellation([Permutation.parse("(123)")] * 3))
        1
    """
    two_g = 2 * len(c.orbits()) - euler_defect(c)
    assert two_g % 2 == 0 and two_g >= 0, "Euler relation gave 2g = %d" % two_g
    return two_g // 2


def enumerate_factorizations(nu: Permutation, k: int, proper: bool = False,
                             total_length: int | None = None,
                             transitive: bool = False) -> Iterator[Constellation]:
    """
    All ordered (rho_1, ..., rho_k) with rho_1...rho_k = nu.

    Depth first over rho_1..rho_{k-1}; the last factor is forced to
    rho_{k-1}^{-1}...rho_1^{-1} nu.  Partial lengths are pruned against
    ``total_length`` and transitivity is tested at the leaves.
    """
    n = nu.n
    if k == 0:
        c = Constellation((), n)
        if nu.is_identity() and (total_length in (None, 0)) and (not transitive or n <= 1):
            yield c
        return
    elems = [p for p in _group_perms(n) if not (proper and p.is_identity())]
    lengths = {p: length(p) for p in elems}
    stack: list = []

    def rec(prefix: Permutation, used: int):
        if len(stack) == k - 1:
            last = compose(prefix.inverse(), nu)
            if proper and last.is_identity():
                return
            tot = used + length(last)
            if total_length is not None and tot != total_length:
                return
            c = Constellation(stack + [last], n)
            if transitive and not c.is_transitive():
                return
            yield c
            return
        for p in elems:
            u = used + lengths[p]
            if total_length is not None and u > total_length:
                continue
            stack.append(p)
            yield from rec(compose(prefix, p), u)
            stack.pop()

    yield from rec(Permutation.identity(n), 0)


@lru_cache(maxsize=None)
def _group_perms(n: int) -> tuple:
    return tuple(Permutation._from0(g) for g in _tables.group(n))


def _one_block(n: int) -> tuple:
    return (0,) * n


@lru_cache(maxsize=None)
def _gamma_l_k(parts: tuple, l: int, k: int) -> int:
    rep = CycleType(parts).representative()
    return _tables.proper_counts(rep.n, l).get((rep._img, _one_block(rep.n), k), 0)


def gamma_l(nu: Permutation, l: int, k: int | None = None) -> int:
    r"""
    Connected proper constellations with product nu and total length l.

    With ``k`` the count of such k-constellations; without it the alternating
    sum over k (finite, since proper factors have length >= 1).

        >>> gamma_l(Permutation.parse("(12)"), 1)
        -1
    """
    parts = nu.cycle_type().parts
    if k is not None:
        if k > l:
            return 0
        return _gamma_l_k(parts, l, k)
    return sum((-1) ** j * _gamma_l_k(parts, l, j) for j in range(l + 1))


def gamma_tilde_l(nu: Permutation, l: int, k: int) -> int:
    """Connected k-constellations (identity factors allowed) with product nu and total length l."""
    counts = _tables.generic_counts(nu.n, k, l)
    return counts.get((nu._img, _one_block(nu.n), l), 0)


def minimal_planar_length(nu: Permutation) -> int:
    """Total length 2n - 2 - ||nu|| of connected planar constellations with faces nu."""
    return 2 * nu.n - 2 - length(nu)


def gamma_tilde_planar(nu: Permutation, k: int) -> int:
    r"""
    Number of connected planar k-constellations with product nu.

    For k >= 2 this is
    k [(k-1)n - 1]! / [(k-1)n - #(nu) + 2]! * prod_p [p C(kp-1, p)]^{d_p}.
    For k = 1 the only candidate is nu itself, planar and connected iff nu is
    an n-cycle.  For k = 0 the empty tuple is connected only when n = 1.
    """
    n = nu.n
    if k == 0:
        return 1 if n == 1 else 0
    if k == 1:
        return 1 if nu.num_cycles() == 1 else 0
    num = k * factorial((k - 1) * n - 1)
    den = factorial((k - 1) * n - nu.num_cycles() + 2)
    for p, d in nu.cycle_type().multiplicities().items():
        num *= (p * comb(k * p - 1, p)) ** d
    assert num % den == 0
    return num // den


def gamma_planar_proper(nu: Permutation, k: int) -> int:
    """Connected planar proper k-constellations: inclusion-exclusion over gamma_tilde_planar."""
    return sum(comb(k, j) * gamma_tilde_planar(nu, j) * (-1) ** (k + j) for j in range(k + 1))


def gamma_alternating(nu: Permutation) -> int:
    r"""
    sum_k (-1)^k gamma(nu; k), in closed form

    (-1)^{||nu||} (3n - ||nu|| - 3)! / (2n)! * prod_p [(2p)! / (p! (p-1)!)]^{d_p}.

        >>> gamma_alternating(Permutation.parse("(12)"))
        -1
    """
    n = nu.n
    ln = length(nu)
    arg = 3 * n - ln - 3
    if n < 1 or arg < 0:
        raise ValueError("closed form needs 3n - ||nu|| - 3 >= 0, got %d" % arg)
    num = factorial(arg)
    for p, d in nu.cycle_type().multiplicities().items():
        num *= (factorial(2 * p) // (factorial(p) * factorial(p - 1))) ** d
    den = factorial(2 * n)
    assert num % den == 0
    return (-1) ** ln * (num // den)


def moebius_nc(nu: Permutation) -> int:
    """
    Möbius function of non-crossing partitions: prod over cycles of the signed
    Catalan number (-1)^{p-1} Cat_{p-1}.

        >>> moebius_nc(Permutation.parse("(123)"))
        2
    """
    r = Fraction(1)
    for p, d in nu.cycle_type().multiplicities().items():
        r *= (Fraction((-1) ** (p - 1), p) * comb(2 * p - 2, p - 1)) ** d
    assert r.denominator == 1
    return int(r)


def gamma_alternating_sum(nu: Permutation) -> int:
    """The alternating sum of exhaustive counts at the minimal length; oracle for the closed form."""
    return gamma_l(nu, minimal_planar_length(nu))

r"""
Monotone Hurwitz numbers and their multi-color generalizations.

* ``single_hurwitz(alpha, h)``: |C_alpha| p_C[nu, id; l], l = #(alpha) + n + 2h - 2;
* ``double_hurwitz(alpha, beta, h)``: sum over sigma in C_alpha, tau in C_beta
  of p_C[sigma, tau; l], l = #(alpha) + #(beta) + 2h - 2;
* ``double_from_single``: the same numbers rebuilt from single ones by a sum
  over coarsenings of the cycles of sigma tau^-1;
* ``higher_order_hurwitz`` and ``bms_numbers``: D-color sums of p_C and m_C.

Class sums use simultaneous-conjugation invariance: the first sigma is
fixed to a canonical representative and the result multiplied by the class
size (``naive=True`` sums over the whole class instead).

    >>> single_hurwitz(CycleType([2]), 0)
    1
    >>> double_hurwitz(CycleType([2]), CycleType([2]), 0)
    1
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod
from .constellations import Constellation, gamma_l, genus
from .cumulant import (PermTuple, _connected_choices, _poly_mul, blocks_of, m_C, orbit_partition, p_C)
from .permutations import CycleType, Permutation, conjugacy_class_size, enumerate_class


def _as_type(x) -> CycleType:
    if isinstance(x, CycleType):
        return x
    if isinstance(x, str):
        return CycleType.parse(x)
    return CycleType(x)


def single_l(alpha: CycleType, h: int) -> int:
    return alpha.num_parts() + alpha.n + 2 * h - 2


def double_l(alpha: CycleType, beta: CycleType, h: int) -> int:
    return alpha.num_parts() + beta.num_parts() + 2 * h - 2


def _resolve(h, l, l_of_h, base):
    # h and l are tied by l = base + 2h
    if h is None and l is None:
        raise ValueError("give a genus or a transposition count")
    if l is None:
        if h < 0:
            raise ValueError("genus must be non-negative")
        return h, l_of_h(h)
    if (l - base) % 2 or l < base:
        raise ValueError("l=%d does not correspond to an integer genus >= 0" % l)
    hh = (l - base) // 2
    if h is not None and h != hh:
        raise ValueError("inconsistent genus %d and l=%d (genus would be %d)" % (h, l, hh))
    return hh, l


def single_hurwitz(alpha, h: int | None = None, l: int | None = None, route: str = "monotone") -> int:
    """Genus-h monotone single Hurwitz number of cycle type alpha."""
    alpha = _as_type(alpha)
    base = single_l(alpha, 0)
    h, l = _resolve(h, l, lambda g: single_l(alpha, g), base)
    return _single(alpha.parts, l, route)


@lru_cache(maxsize=None)
def _single(parts: tuple, l: int, route: str) -> int:
    alpha = CycleType(parts)
    nu = alpha.representative()
    size = conjugacy_class_size(alpha)
    if route == "gamma":
        return (-1) ** (nu.num_cycles() + nu.n) * size * gamma_l(nu, l)
    return size * p_C(PermTuple([nu]), PermTuple([Permutation.identity(nu.n)]), l, route)


def single_hurwitz_genus0(alpha) -> int:
    """n!/prod d_p! * (2n + #(alpha) - 3)!/(2n)! * prod_p C(2p, p)^{d_p}."""
    alpha = _as_type(alpha)
    n = alpha.n
    mult = alpha.multiplicities()
    num = factorial(n) * factorial(2 * n + alpha.num_parts() - 3) * prod(comb(2 * p, p) ** d for p, d in mult.items())
    den = prod(factorial(d) for d in mult.values()) * factorial(2 * n)
    assert num % den == 0
    return num // den


def _class_pairs(alpha: CycleType, beta: CycleType, naive: bool):
    # yields (weight, sigma, tau)
    if naive:
        for s in enumerate_class(alpha):
            for t in enumerate_class(beta):
                yield 1, s, t
    else:
        s = alpha.representative()
        w = conjugacy_class_size(alpha)
        for t in enumerate_class(beta):
            yield w, s, t


def double_hurwitz(alpha, beta, h: int | None = None, l: int | None = None,
                   naive: bool = False, route: str = "monotone") -> int:
    """Genus-h monotone double Hurwitz number."""
    alpha, beta = _as_type(alpha), _as_type(beta)
    if alpha.n != beta.n:
        raise ValueError("alpha and beta must partition the same n")
    h, l = _resolve(h, l, lambda g: double_l(alpha, beta, g), double_l(alpha, beta, 0))
    total = 0
    for w, s, t in _class_pairs(alpha, beta, naive):
        total += w * p_C(PermTuple([s]), PermTuple([t]), l, route)
    return total


def _single_weight(nu_B: Permutation, g: int) -> int:
    """H_g(c(nu_B)) / |C_{c(nu_B)}|."""
    t = nu_B.cycle_type()
    num = single_hurwitz(t, g)
    size = conjugacy_class_size(t)
    assert num % size == 0
    return num // size


def double_from_single(alpha, beta, h: int, naive: bool = False) -> int:
    r"""
    Double Hurwitz number from single ones: for each (sigma, tau), sum over
    excess L <= h - g(sigma, tau^-1), over pi >= Pi(nu) connected through
    Pi(sigma, tau) with #(nu) - |pi| = |Pi(sigma, tau)| + L - 1, and over
    genus assignments g_B summing to h - g(sigma, tau^-1) - L, of
    prod_B H_{g_B}(c(nu_B)) / |C_{c(nu_B)}|.
    """
    alpha, beta = _as_type(alpha), _as_type(beta)
    if alpha.n != beta.n:
        raise ValueError("alpha and beta must partition the same n")
    total = 0
    for w, s, t in _class_pairs(alpha, beta, naive):
        nu = s * t.inverse()
        g0 = genus(Constellation([s, t.inverse()]))
        top = h - g0
        if top < 0:
            continue
        Pi = orbit_partition(PermTuple([s]), PermTuple([t]))
        cyc = nu.num_cycles()
        inner = 0
        for (pi,) in _connected_choices(Pi, [nu]):
            L = cyc - len(pi) - len(Pi) + 1
            if L > top:
                continue
            budget = top - L
            poly = {0: 1}
            for B in blocks_of(nu, pi):
                poly = _poly_mul(poly, {g: _single_weight(B, g) for g in range(budget + 1)}, budget)
            inner += poly.get(budget, 0)
        total += w * inner
    return total


def double_hurwitz_genus0(alpha, beta) -> int:
    r"""
    Genus-0 double numbers from explicit factorial weights: sum over planar
    (sigma, tau^-1) of prod_p ((2p)!/(p!(p-1)!))^{d_p(nu)} times the tree
    sum over pi of prod_B (2|B| + #(nu_B) - 3)!/(2|B|)!.
    """
    from fractions import Fraction
    alpha, beta = _as_type(alpha), _as_type(beta)
    total = Fraction(0)
    for w, s, t in _class_pairs(alpha, beta, False):
        if genus(Constellation([s, t.inverse()])) != 0:
            continue
        nu = s * t.inverse()
        Pi = orbit_partition(PermTuple([s]), PermTuple([t]))
        pref = prod((factorial(2 * p) // (factorial(p) * factorial(p - 1))) ** d
                    for p, d in nu.cycle_type().multiplicities().items())
        inner = Fraction(0)
        for (pi,) in _connected_choices(Pi, [nu]):
            if nu.num_cycles() - len(pi) != len(Pi) - 1:
                continue
            term = Fraction(1)
            for B in blocks_of(nu, pi):
                term *= Fraction(factorial(2 * B.n + B.num_cycles() - 3), factorial(2 * B.n))
            inner += term
        total += w * pref * inner
    assert total.denominator == 1
    return int(total)


@dataclass(frozen=True)
class HurwitzQuery:
    """
    Profiles (alpha_c, beta_c) per color plus either a transposition count
    ``l`` or an arithmetic genus ``genus``; they are tied by
    l = sum_c (#alpha_c + #beta_c) + 2 genus - 2 - 2n(D - 1).
    """

    profiles: tuple
    l: int | None = None
    genus: int | None = None

    def __post_init__(self):
        profs = tuple((_as_type(a), _as_type(b)) for a, b in self.profiles)
        if not profs:
            raise ValueError("need at least one color")
        n = profs[0][0].n
        if any(a.n != n or b.n != n for a, b in profs):
            raise ValueError("all profiles must partition the same n")
        object.__setattr__(self, "profiles", profs)

    @property
    def n(self) -> int:
        return self.profiles[0][0].n

    @property
    def D(self) -> int:
        return len(self.profiles)

    def _base(self) -> int:
        return sum(a.num_parts() + b.num_parts() for a, b in self.profiles) - 2 - 2 * self.n * (self.D - 1)

    def resolve(self) -> tuple:
        """(genus, l) with consistency checked."""
        return _resolve(self.genus, self.l, lambda g: self._base() + 2 * g, self._base())

    def resolved_l(self) -> int:
        if self.l is not None and self.genus is None:
            return self.l
        return self.resolve()[1]


def _tuple_pairs(q: HurwitzQuery, naive: bool):
    # yields (weight, sigma tuple, tau tuple)
    classes_s = [list(enumerate_class(a)) for a, _ in q.profiles]
    classes_t = [list(enumerate_class(b)) for _, b in q.profiles]
    if naive:
        first, w = classes_s[0], 1
    else:
        first, w = [q.profiles[0][0].representative()], conjugacy_class_size(q.profiles[0][0])
    for s1 in first:
        for rest in itertools.product(*classes_s[1:]):
            sig = PermTuple((s1,) + rest)
            for taus in itertools.product(*classes_t):
                yield w, sig, PermTuple(taus)


def higher_order_hurwitz(q: HurwitzQuery, naive: bool = False, route: str = "monotone") -> int:
    """sum over sigma_c in C_{alpha_c}, tau_c in C_{beta_c} of p_C[sigma, tau; l]."""
    l = q.resolved_l()
    return sum(w * p_C(s, t, l, route) for w, s, t in _tuple_pairs(q, naive))


def bms_numbers(q: HurwitzQuery, k: int, naive: bool = False) -> int:
    """sum over sigma_c in C_{alpha_c}, tau_c in C_{beta_c} of m_C(sigma, tau; l, k)."""
    l = q.resolved_l()
    return sum(w * m_C(s, t, l, k) for w, s, t in _tuple_pairs(q, naive))


def hurwitz_factorizations(alpha, h: int) -> list:
    """
    Explicit (nu, mu_1..mu_l) counted by single_hurwitz for the canonical
    representative nu (small n only).  Used to check Riemann-Hurwitz.
    """
    alpha = _as_type(alpha)
    nu = alpha.representative()
    n = nu.n
    l = single_l(alpha, h)
    from .permutations import transpositions, transitivity_partition
    trs = transpositions(n)
    maxima = {t: max(i for i in range(1, n + 1) if t(i) != i) for t in trs}
    out = []

    def rec(prefix, seq, last):
        if len(seq) == l:
            if prefix == nu and len(transitivity_partition([nu] + seq, n)) == 1:
                out.append(tuple(seq))
            return
        for t in trs:
            if maxima[t] >= last:
                seq.append(t)
                rec(prefix * t, seq, maxima[t])
                seq.pop()

    rec(Permutation.identity(n), [], 0)
    return out

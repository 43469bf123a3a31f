r"""
The unitary Weingarten function W^(N) on S_n.

Two independent routes are provided:

* ``weingarten_exact`` solves the convolution identity
  ``sum_nu W(nu) N^{#(nu^-1 sigma)} = delta_{sigma, id}`` over class
  functions with exact rational elimination;
* ``weingarten_series`` builds the 1/N expansion
  ``N^-n sum_l (-1)^l p(nu; l) N^-l`` from counts of weakly monotone
  transposition factorizations.

``m_count`` counts proper factorizations, the other combinatorial side of
the same coefficients: ``(-1)^l p(nu; l) = sum_k (-1)^k m(nu; l, k)``.

    >>> nu = Permutation.parse("(12)")
    >>> weingarten_exact(nu, 3)
    Fraction(-1, 24)
    >>> weingarten_asymptotic(nu)
    (-1, 3)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import _tables
from .constellations import moebius_nc
from .permutations import CycleType, Permutation, all_permutations, integer_partitions, length
from .series import LaurentSeries


def m_count(nu: Permutation, l: int, k: int) -> int:
    """Number of (rho_1..rho_k), rho_i != id, with product nu and total length l."""
    if k > l or l < 0:
        return 0
    return _tables.proper_counts(nu.n, l, orbits=False).get((nu._img, None, k), 0)


def p_coeff(nu: Permutation, l: int) -> int:
    """Number of weakly monotone transposition sequences of length l with product nu."""
    if l < 0:
        return 0
    return _tables.monotone_counts(nu.n, l, orbits=False).get((nu._img, None), 0)


def weingarten_series(nu: Permutation, order: int | None = None) -> LaurentSeries:
    """
    Expansion of W^(N)(nu) in 1/N keeping the terms l = 0..order, that is
    powers up to N^-(n + order).  Default order is 2n.
    """
    n = nu.n
    if order is None:
        order = 2 * n
    lead = n + length(nu)
    coeffs = [(-1) ** l * p_coeff(nu, l) for l in range(length(nu), order + 1)]
    return LaurentSeries(lead, coeffs, n + order)


def weingarten_asymptotic(nu: Permutation) -> tuple:
    """(M(nu), n + ||nu||): W^(N)(nu) = M(nu) N^-(n + ||nu||) (1 + O(N^-2))."""
    return moebius_nc(nu), nu.n + length(nu)


def solve_exact(matrix: list, rhs: list) -> list:
    """Gauss-Jordan elimination over Fractions; raises on a singular system."""
    m = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(m):
        piv = next((r for r in range(col, m) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(m):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[-1] for row in a]


@lru_cache(maxsize=None)
def _class_cycle_counts(n: int) -> tuple:
    """For each pair of cycle types (mu, lam): {c: #{nu in C_lam : #(nu^-1 sigma_mu) = c}}."""
    types = list(integer_partitions(n))
    reps = [t.representative() for t in types]
    index = {t: i for i, t in enumerate(types)}
    table = [[{} for _ in types] for _ in types]
    for nu in all_permutations(n):
        lam = index[nu.cycle_type()]
        nu_inv = nu.inverse()
        for i, s in enumerate(reps):
            c = (nu_inv * s).num_cycles()
            d = table[i][lam]
            d[c] = d.get(c, 0) + 1
    return tuple(types), tuple(tuple(row) for row in table)


@lru_cache(maxsize=None)
def _weingarten_class_values(n: int, N: int) -> dict:
    types, table = _class_cycle_counts(n)
    matrix = [[sum(cnt * Fraction(N) ** c for c, cnt in cell.items()) for cell in row] for row in table]
    rhs = [1 if t.is_trivial() else 0 for t in types]
    try:
        sol = solve_exact(matrix, rhs)
    except ZeroDivisionError:
        raise ValueError("convolution system singular for n=%d, N=%d" % (n, N)) from None
    return dict(zip(types, sol))


def weingarten_exact(nu: Permutation, N: int) -> Fraction:
    """Exact W^(N)(nu) for N >= n."""
    if N < nu.n:
        raise ValueError("Weingarten function is only determined for N >= n (n=%d, N=%d)" % (nu.n, N))
    if nu.n == 0:
        return Fraction(1)
    return _weingarten_class_values(nu.n, N)[nu.cycle_type()]


def weingarten_class_function(t: CycleType, N: int) -> Fraction:
    return weingarten_exact(t.representative(), N)


def monotone_tail_bound(n: int, order: int, N: int) -> Fraction:
    r"""
    Upper bound on sum_{l > order} p(nu; l) N^-(n+l), valid for every nu in S_n.

    The total number of weakly monotone sequences of length l is the complete
    homogeneous polynomial h_l(1, 2, ..., n-1), whose generating function is
    prod_j 1/(1 - j x).  For N >= n the tail of that series at x = 1/N bounds
    the omitted part of any single coefficient sum.
    """
    if N < n:
        raise ValueError("bound needs N >= n")
    x = Fraction(1, N)
    total = Fraction(1)
    for j in range(1, n):
        total /= 1 - j * x
    head = sum((_h(n - 1, l) * x ** l for l in range(order + 1)), Fraction(0))
    return (total - head) * x ** n


@lru_cache(maxsize=None)
def _h(m: int, l: int) -> int:
    # complete homogeneous symmetric polynomial h_l(1, ..., m)
    if l == 0:
        return 1
    if m == 0:
        return 0
    return _h(m - 1, l) + m * _h(m, l - 1)


def total_monotone_count(n: int, l: int) -> int:
    return _h(n - 1, l) if n >= 1 else int(l == 0)


__all__ = [
    "m_count", "p_coeff", "weingarten_series", "weingarten_exact", "weingarten_asymptotic",
    "monotone_tail_bound", "solve_exact",
]

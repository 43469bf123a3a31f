"""
Cross-route identity suites behind ``hcizkit verify``.

Each suite returns a list of ``Check(name, passed, counterexample)``; the
counterexample is the first input on which the identity failed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .permutations import Permutation, all_permutations, integer_partitions, length


@dataclass
class Check:
    name: str
    passed: bool
    counterexample: object = None
    cases: int = 0


def _run(name: str, cases: Iterable, test: Callable) -> Check:
    n = 0
    for case in cases:
        n += 1
        if not test(case):
            return Check(name, False, _describe(case), n)
    return Check(name, True, None, n)


def _describe(case):
    if isinstance(case, tuple):
        return [_describe(x) for x in case]
    if isinstance(case, (Permutation,)):
        return str(case)
    if hasattr(case, "perms"):
        return [str(p) for p in case.perms]
    if isinstance(case, Fraction):
        return str(case)
    return case if isinstance(case, (int, str, list)) else str(case)


def _pc_grid(max_n: int, max_D: int = 2):
    from .cumulant import PermTuple, ell
    for n in range(1, max_n + 1):
        S = list(all_permutations(n))
        for D in range(1, max_D + 1):
            for ss in itertools.product(S, repeat=D):
                for tt in itertools.product(S, repeat=D):
                    s, t = PermTuple(ss, n), PermTuple(tt, n)
                    yield s, t, ell(s, t)


def suite_weingarten(max_n: int = 4) -> list:
    from .weingarten import (m_count, monotone_tail_bound, p_coeff, weingarten_exact,
                             weingarten_series)
    out = []

    def conv(case):
        n, N, sigma = case
        tot = sum(weingarten_exact(nu, N) * Fraction(N) ** (nu.inverse() * sigma).num_cycles()
                  for nu in all_permutations(n))
        return tot == int(sigma.is_identity())

    out.append(_run("convolution identity", ((n, N, s) for n in range(1, max_n + 1)
                                             for N in range(n, n + 3) for s in all_permutations(n)), conv))

    def series(case):
        n, N, nu, order = case
        diff = abs(weingarten_exact(nu, N) - weingarten_series(nu, order).evaluate(N))
        return diff <= monotone_tail_bound(n, order, N)

    out.append(_run("series within monotone tail bound", ((n, N, nu, 12) for n in range(1, max_n + 1)
                                                         for N in range(n, n + 3) for nu in all_permutations(n)), series))

    def alt(case):
        nu, l = case
        return (-1) ** l * p_coeff(nu, l) == sum((-1) ** k * m_count(nu, l, k) for k in range(l + 1))

    out.append(_run("monotone count = alternating proper count",
                    ((nu, l) for n in range(1, max_n + 1) for nu in all_permutations(n) for l in range(6)), alt))
    out.append(_run("no term at ||nu|| + 1",
                    (nu for n in range(1, max_n + 1) for nu in all_permutations(n)),
                    lambda nu: p_coeff(nu, length(nu) + 1) == 0))
    return out


def suite_pc_routes(max_n: int = 3) -> list:
    from .cumulant import p_C
    from .nodal import folding_decomposition
    max_n = min(max_n, 3)
    grid = list(_pc_grid(max_n))

    def routes(case):
        s, t, lo = case
        for l in range(lo, lo + 3):
            vals = {p_C(s, t, l, r) for r in ("alternating", "monotone", "partition")}
            vals.add(folding_decomposition(s, t, l))
            if len(vals) != 1:
                return False
        return True

    def threshold(case):
        s, t, lo = case
        return all(p_C(s, t, l) == 0 for l in range(lo)) and p_C(s, t, lo) != 0

    return [_run("four routes agree", grid, routes), _run("threshold sharp", grid, threshold)]


def suite_hurwitz(max_n: int = 4) -> list:
    from .hurwitz import (double_from_single, double_hurwitz, double_hurwitz_genus0, single_hurwitz,
                          single_hurwitz_genus0)
    parts = [a for n in range(1, max_n + 1) for a in integer_partitions(n)]
    pairs = [(a, b) for a in parts for b in parts if a.n == b.n]
    out = [
        _run("genus-0 single closed form", parts, lambda a: single_hurwitz(a, 0) == single_hurwitz_genus0(a)),
        _run("double from single", ((a, b, h) for a, b in pairs for h in (0, 1)),
             lambda c: double_hurwitz(*c) == double_from_single(*c)),
        _run("genus-0 double closed form", pairs, lambda c: double_hurwitz(c[0], c[1], 0) == double_hurwitz_genus0(*c)),
        _run("class representative shortcut", [(a, b) for a, b in pairs if a.n <= 3],
             lambda c: all(double_hurwitz(c[0], c[1], h) == double_hurwitz(c[0], c[1], h, naive=True) for h in (0, 1))),
    ]
    return out


def suite_nodal(max_n: int = 3) -> list:
    from .cumulant import m_C
    from .hurwitz import HurwitzQuery
    from .nodal import (arithmetic_genus_S, covering_count, covering_orbits, ell_from_genus,
                        nodal_bookkeeping, singular_point_count)
    max_n = min(max_n, 3)
    grid = list(_pc_grid(max_n))

    def book(case):
        s, t, lo = case
        if ell_from_genus(s, t) != lo:
            return False
        for l in range(lo, lo + 3):
            r = nodal_bookkeeping(s, t, l)
            if r["failure"] or any(r["by_k"].get(k, 0) != m_C(s, t, l, k) for k in range(l + 1)):
                return False
        return True

    def queries():
        for n in range(2, max_n + 1):
            nt = [a for a in integer_partitions(n) if not a.is_trivial()]
            for D in (1, 2):
                for prof in itertools.product(itertools.product(nt, nt), repeat=D):
                    for H in (0, 1):
                        q = HurwitzQuery(prof, genus=H)
                        try:
                            q.resolve()
                        except ValueError:
                            continue
                        yield q

    def cover(q):
        _, l = q.resolve()
        for k in range(l + 1):
            o = covering_orbits(q, k)
            if o["weighted"] != covering_count(q, k):
                return False
            if o["systems"] and o["singular_points"] != {singular_point_count(q, k)}:
                return False
        o = covering_orbits(q, restricted_monotone=True)
        return Fraction(o["systems"]) == covering_count(q, restricted_monotone=True) * _fact(q.n)

    return [_run("genus identities on every (sigma, tau, eta)", grid, book),
            _run("covering counts match enumerated systems", list(queries()), cover)]


def _fact(n):
    from math import factorial
    return factorial(n)


def suite_hciz(max_n: int = 3) -> list:
    from .hciz import cumulants, identity_tensor, moments
    cases = [(n, N, D) for D in (1, 2) for n in range(1, max_n + 1) for N in range(n, n + 3)]
    return [
        _run("identity moments are N^{nD}", cases,
             lambda c: moments(identity_tensor(c[1], c[2]), identity_tensor(c[1], c[2]), c[0], c[1]) == Fraction(c[1]) ** (c[0] * c[2])),
        _run("identity cumulants vanish", [c for c in cases if c[0] >= 2],
             lambda c: cumulants(identity_tensor(c[1], c[2]), identity_tensor(c[1], c[2]), c[0], c[1]) == 0),
    ]


SUITES = {
    "weingarten": suite_weingarten,
    "pc-routes": suite_pc_routes,
    "hurwitz": suite_hurwitz,
    "nodal": suite_nodal,
    "hciz": suite_hciz,
}


def run_suite(name: str, max_n: int) -> list:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](max_n)

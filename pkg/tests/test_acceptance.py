"""
Acceptance criteria, one test per criterion.  Each test records a
"CRITERION i ... PASS/FAIL" line (printed immediately and again in the
terminal summary) before asserting.
"""

import itertools
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import factorial

import numpy as np
import pytest

import conftest
from hcizkit.constellations import Constellation, enumerate_factorizations, gamma_tilde_planar, genus
from hcizkit.cumulant import PermTuple, ell, m_C, p_C, p_C_partition_lengths
from hcizkit.hciz import (cumulants, haar_sample_moment, identity_tensor, moments, random_hermitian)
from hcizkit.hurwitz import (HurwitzQuery, bms_numbers, double_from_single, double_hurwitz, higher_order_hurwitz,
                             hurwitz_factorizations, single_hurwitz, single_hurwitz_genus0)
from hcizkit.nodal import (_monotone_sequences, arithmetic_genus_S, covering_count, covering_orbits,
                           folding_decomposition, nodal_bookkeeping)
from hcizkit.permutations import CycleType, Permutation, all_permutations, conjugacy_class_size, integer_partitions, length
from hcizkit.weingarten import monotone_tail_bound, p_coeff, weingarten_exact, weingarten_series

F = Fraction


def report(i, ok, detail):
    line = "CRITERION %2d %-4s %s" % (i, "PASS" if ok else "FAIL", detail)
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


def _grid(max_n, Ds=(1, 2)):
    for n in range(1, max_n + 1):
        S = list(all_permutations(n))
        for D in Ds:
            for ss in itertools.product(S, repeat=D):
                for tt in itertools.product(S, repeat=D):
                    yield PermTuple(ss, n), PermTuple(tt, n)


# 1 -------------------------------------------------------------------------

def _weingarten_cases():
    for n in range(1, 5):
        for N in (n, n + 1, n + 2):
            for nu in all_permutations(n):
                yield n, N, nu


def test_criterion_01_weingarten_coherence():
    conv_bad = []
    for n in range(1, 5):
        for N in (n, n + 1, n + 2):
            for sigma in all_permutations(n):
                tot = sum(weingarten_exact(nu, N) * F(N) ** (nu.inverse() * sigma).num_cycles()
                          for nu in all_permutations(n))
                if tot != int(sigma.is_identity()):
                    conv_bad.append((n, N, str(sigma)))
    literal_bad, tail_bad, cases = [], [], 0
    for n, N, nu in _weingarten_cases():
        cases += 1
        err = abs(weingarten_exact(nu, N) - weingarten_series(nu, 12).evaluate(N))
        first = F(p_coeff(nu, 13), N ** (n + 13))
        if err > first:
            literal_bad.append((str(nu), N))
        if err > monotone_tail_bound(n, 12, N):
            tail_bad.append((str(nu), N))
    ok_literal = not literal_bad
    report(1, not conv_bad and ok_literal,
           "convolution exact on %d cases: %s; rigorous tail bound: %s; literal first-omitted-term bound "
           "violated on %d/%d cases (series terms share one sign, so the error exceeds the first omitted "
           "term whenever two omitted terms are nonzero)"
           % (cases, "ok" if not conv_bad else conv_bad[:3], "ok" if not tail_bad else tail_bad[:3],
              len(literal_bad), cases))
    assert not conv_bad
    assert not tail_bad


@pytest.mark.xfail(strict=True, reason="truncation error of a one-signed series exceeds its first omitted term")
def test_criterion_01_literal_first_omitted_term_bound():
    for n, N, nu in _weingarten_cases():
        err = abs(weingarten_exact(nu, N) - weingarten_series(nu, 12).evaluate(N))
        assert err <= F(p_coeff(nu, 13), N ** (n + 13)), (str(nu), N)


# 2 -------------------------------------------------------------------------

def test_criterion_02_monotone_vs_alternating_proper():
    bad, cases = [], 0
    for nu in all_permutations(4):
        for l in range(0, 6):
            # m by explicit enumeration, p both from the tables and from explicit monotone sequences
            m = [sum(1 for _ in enumerate_factorizations(nu, k, proper=True, total_length=l)) for k in range(l + 1)]
            p = p_coeff(nu, l)
            cases += 1
            if (-1) ** l * p != sum((-1) ** k * m[k] for k in range(l + 1)) or p != len(_monotone_sequences(nu, l)):
                bad.append((str(nu), l))
    report(2, not bad, "%d (nu, l) cases in S_4, l <= 5; mismatches: %s" % (cases, bad[:3] or "none"))
    assert not bad


# 3 -------------------------------------------------------------------------

def test_criterion_03_planar_closed_form():
    bad, cases = [], 0
    for n in range(1, 5):
        for nu in all_permutations(n):
            for k in range(0, 5):
                cases += 1
                brute = sum(1 for c in enumerate_factorizations(nu, k, transitive=True) if genus(c) == 0)
                if brute != gamma_tilde_planar(nu, k):
                    bad.append((str(nu), k, brute))
    report(3, not bad, "%d (nu, k) cases, n <= 4, k <= 4; mismatches: %s" % (cases, bad[:3] or "none"))
    assert not bad


# 4 -------------------------------------------------------------------------

def test_criterion_04_subleading_gap():
    bad = [str(nu) for nu in all_permutations(5) if p_coeff(nu, length(nu) + 1) != 0]
    report(4, not bad, "p(nu; ||nu|| + 1) = 0 for all 120 nu in S_5; nonzero: %s" % (bad[:3] or "none"))
    assert not bad


# 5 -------------------------------------------------------------------------

ROUTE_FUNCS = {
    "alternating": lambda s, t, l: p_C(s, t, l, "alternating"),
    "monotone": lambda s, t, l: p_C(s, t, l, "monotone"),
    "partition": lambda s, t, l: p_C(s, t, l, "partition"),
    "partition-lengths": p_C_partition_lengths,
    "folding": folding_decomposition,
}


def _n3_grid():
    S = list(all_permutations(3))
    for D in (1, 2):
        for ss in itertools.product(S, repeat=D):
            for tt in itertools.product(S, repeat=D):
                yield PermTuple(ss, 3), PermTuple(tt, 3)


SUBGRID_SCRIPT = r"""
import itertools, random, sys, time
t0 = time.perf_counter()
from hcizkit.cumulant import PermTuple, ell, p_C
from hcizkit.nodal import folding_decomposition
from hcizkit.permutations import all_permutations
S = list(all_permutations(3))
rng = random.Random(2024)
bad = 0
for _ in range(100):
    D = rng.choice((1, 2))
    s = PermTuple([rng.choice(S) for _ in range(D)], 3)
    t = PermTuple([rng.choice(S) for _ in range(D)], 3)
    lo = ell(s, t)
    for l in (lo, lo + 1, lo + 2):
        vals = {p_C(s, t, l, r) for r in ("alternating", "monotone", "partition")}
        vals.add(folding_decomposition(s, t, l))
        bad += len(vals) != 1
print(bad, time.perf_counter() - t0)
"""


def test_criterion_05_route_equality():
    bad, cases = [], 0
    for s, t in _n3_grid():
        lo = ell(s, t)
        for l in (lo, lo + 1, lo + 2):
            cases += 1
            vals = {name: f(s, t, l) for name, f in ROUTE_FUNCS.items()}
            if len(set(vals.values())) != 1:
                bad.append(([str(p) for p in s], [str(p) for p in t], l, vals))
    r = subprocess.run([sys.executable, "-c", SUBGRID_SCRIPT], capture_output=True, text=True, timeout=600)
    sub_bad, sub_time = r.stdout.split()
    sub_ok = r.returncode == 0 and sub_bad == "0" and float(sub_time) < 60
    report(5, not bad and sub_ok,
           "%d (sigma, tau, l) cases over (S_3)^D x (S_3)^D, D <= 2, five routes; mismatches: %s; "
           "100-tuple subgrid in a fresh process: %s mismatches in %.1f s"
           % (cases, bad[:1] or "none", sub_bad, float(sub_time)))
    assert not bad and sub_ok


# 6 -------------------------------------------------------------------------

def test_criterion_06_threshold_sharpness():
    bad, cases = [], 0
    for s, t in _grid(3):
        cases += 1
        lo = ell(s, t)
        if any(p_C(s, t, l) != 0 for l in range(lo)) or p_C(s, t, lo) == 0:
            bad.append(([str(p) for p in s], [str(p) for p in t]))
        # the minimal l also agrees with a direct scan of the monotone route
        first = next(l for l in range(0, lo + 1) if p_C(s, t, l, "alternating") != 0)
        if first != lo:
            bad.append(([str(p) for p in s], [str(p) for p in t], first))
    report(6, not bad, "%d pairs, n <= 3, D <= 2; violations: %s" % (cases, bad[:3] or "none"))
    assert not bad


# 7 -------------------------------------------------------------------------

def test_criterion_07_genus0_single_closed_form():
    bad, cases = [], 0
    for n in range(1, 6):
        for a in integer_partitions(n):
            cases += 1
            brute = len(hurwitz_factorizations(a, 0)) * conjugacy_class_size(a)
            if not brute == single_hurwitz(a, 0) == single_hurwitz_genus0(a):
                bad.append((str(a), brute))
    spots = single_hurwitz_genus0(CycleType([1])) == 1 and single_hurwitz_genus0(CycleType([2])) == 1
    report(7, not bad and spots, "%d partitions of n <= 5 against explicit monotone factorizations; "
           "H_0([1]) = H_0([2]) = 1: %s; mismatches: %s" % (cases, spots, bad[:3] or "none"))
    assert not bad and spots


# 8 -------------------------------------------------------------------------

def test_criterion_08_double_from_single():
    bad, cases = [], 0
    for n in range(1, 5):
        parts = list(integer_partitions(n))
        for a in parts:
            for b in parts:
                for h in (0, 1):
                    cases += 1
                    if double_from_single(a, b, h) != double_hurwitz(a, b, h):
                        bad.append((str(a), str(b), h))
    report(8, not bad, "%d (alpha, beta, h) cases, n <= 4; mismatches: %s" % (cases, bad[:3] or "none"))
    assert not bad


# 9 -------------------------------------------------------------------------

def test_criterion_09_nodal_bookkeeping():
    bad, tuples, cases = [], 0, 0
    for s, t in _grid(3):
        lo = ell(s, t)
        for l in range(0, lo + 3):
            cases += 1
            r = nodal_bookkeeping(s, t, l)
            tuples += r["tuples"]
            if r["failure"] or any(r["by_k"].get(k, 0) != m_C(s, t, l, k) for k in range(l + 1)):
                bad.append(([str(p) for p in s], [str(p) for p in t], l, r["failure"]))
    s = PermTuple.parse(["(13)", "(123)(45)"], 5)
    t = PermTuple.parse(["(13)(45)", "()"], 5)
    G, lo = arithmetic_genus_S(s, t), ell(s, t)
    example = G == 2 and lo == 6
    report(9, not bad and example,
           "%d (sigma, tau, l) cases, %d enumerated (sigma, tau, eta) tuples; failures: %s; "
           "two-color n=5 example: genus %d, ell %d" % (cases, tuples, bad[:1] or "none", G, lo))
    assert not bad and example


# 10 ------------------------------------------------------------------------

def _queries():
    for n in range(2, 4):
        nt = [a for a in integer_partitions(n) if not a.is_trivial()]
        for D in (1, 2):
            for prof in itertools.product(itertools.product(nt, nt), repeat=D):
                for H in (0, 1, 2):
                    q = HurwitzQuery(prof, genus=H)
                    try:
                        q.resolve()
                    except ValueError:
                        continue
                    yield q


def test_criterion_10_covering_integrality():
    bad, cases = [], 0
    for q in _queries():
        _, l = q.resolve()
        nf = factorial(q.n)
        for k in range(l + 1):
            cases += 1
            c = covering_count(q, k)
            ok = c >= 0 and (c * nf).denominator == 1 and c * nf == bms_numbers(q, k)
            if q.n <= 3 and l <= 4:
                ok = ok and covering_orbits(q, k)["weighted"] == c
            if not ok:
                bad.append((str(q.profiles), q.genus, k))
        c = covering_count(q, restricted_monotone=True)
        cases += 1
        if not (c >= 0 and (c * nf).denominator == 1 and c * nf == higher_order_hurwitz(q)
                and covering_orbits(q, restricted_monotone=True)["systems"] == c * nf):
            bad.append((str(q.profiles), q.genus, "monotone"))
    report(10, not bad, "%d (profile, genus, k) cases, n <= 3, D <= 2; n! * count matches the Hurwitz/BMS sums "
           "and the enumerated covering systems; mismatches: %s" % (cases, bad[:3] or "none"))
    assert not bad


# 11 ------------------------------------------------------------------------

def test_criterion_11_hciz_exactness():
    bad, cases = [], 0
    for D in (1, 2):
        for n in range(1, 5):
            for N in range(n, n + 4):
                I = identity_tensor(N, D)
                cases += 1
                m = moments(I, I, n, N)
                if not (isinstance(m, (int, Fraction)) and m == F(N) ** (n * D)):
                    bad.append(("moment", D, n, N, m))
                if 2 <= n <= 3:
                    c = cumulants(I, I, n, N)
                    if c != 0:
                        bad.append(("cumulant", D, n, N, c))
    report(11, not bad, "%d (D, n, N) cases, D <= 2, n <= 4, N <= n + 3; failures: %s" % (cases, bad[:3] or "none"))
    assert not bad


# 12 ------------------------------------------------------------------------

def test_criterion_12_monte_carlo():
    rows, bad = [], []
    seed = 12345
    for D in (1, 2):
        for N in (2, 3):
            for n in (1, 2):
                rng = np.random.default_rng([D, N, n])
                A, B = random_hermitian(N, D, rng), random_hermitian(N, D, rng)
                exact = complex(moments(A, B, n, N))
                r = haar_sample_moment(A, B, n, N, 100_000, seed=seed)
                z = abs(r.estimate - exact) / r.standard_error
                rows.append(z)
                if z > 4:
                    bad.append((D, N, n, round(z, 2)))
    # reproducibility: the same seed gives the same estimate
    rng = np.random.default_rng(0)
    A, B = random_hermitian(2, 2, rng), random_hermitian(2, 2, rng)
    r1 = haar_sample_moment(A, B, 2, 2, 20_000, seed=seed)
    r2 = haar_sample_moment(A, B, 2, 2, 20_000, seed=seed, jobs=2)
    repro = r1.estimate == r2.estimate
    report(12, not bad and repro, "8 configurations at 1e5 samples, max |z| = %.2f; beyond 4 sigma: %s; "
           "seed-reproducible: %s" % (max(rows), bad or "none", repro))
    assert not bad and repro

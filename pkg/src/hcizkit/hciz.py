r"""
Tensor HCIZ moments and cumulants for explicit N^D x N^D matrices.

Trace invariants contract n copies of A: copy s has row multi-index
(a^1_s..a^D_s) and column multi-index (b^1_s..b^D_s), and color c glues
a^c_s to b^c_{sigma_c(s)}.  The contraction is done by ``numpy.einsum`` so
it costs N^{(number of free loops)} rather than N^{2nD}; with an object
array of Fractions the result is exact.

    >>> A = identity_tensor(2, 2)
    >>> trace_invariant(A, PermTuple.parse(["(12)", "()"], 2))
    Fraction(8, 1)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from pathlib import Path
from typing import Sequence

import numpy as np

from .cumulant import PermTuple, W_C_exact
from .permutations import all_permutations
from .weingarten import weingarten_exact


class DenseTensorMatrix:
    """
    An N^D x N^D matrix whose rows and columns are D-tuples in [N]^D (row
    major, color 1 slowest).  ``exact`` matrices hold Fractions in an object
    array; others hold complex128.
    """

    def __init__(self, entries, N: int, D: int, check_hermitian: bool = True, tol: float = 1e-9):
        M = N ** D
        arr = np.asarray(entries)
        if arr.shape != (M, M):
            raise ValueError("expected a %d x %d matrix for N=%d, D=%d, got %s" % (M, M, N, D, arr.shape))
        self.exact = arr.dtype == object
        if self.exact:
            arr = np.vectorize(Fraction, otypes=[object])(arr)
        else:
            arr = arr.astype(np.complex128)
        self.N, self.D, self.entries = N, D, arr
        if check_hermitian and not self.is_hermitian(tol):
            raise ValueError("tensor matrix is not self-adjoint")

    def is_hermitian(self, tol: float = 1e-9) -> bool:
        if self.exact:
            return bool(np.all(self.entries == self.entries.T))
        a = self.entries
        return bool(np.allclose(a, a.conj().T, rtol=tol, atol=tol * max(1.0, np.abs(a).max(initial=0.0))))

    def tensor(self) -> np.ndarray:
        """Entries as an array with 2D axes (a^1..a^D, b^1..b^D)."""
        return self.entries.reshape((self.N,) * (2 * self.D))

    def as_complex(self) -> np.ndarray:
        if self.exact:
            return np.array([[complex(x) for x in row] for row in self.entries])
        return self.entries

    def conjugated(self, U: np.ndarray) -> "DenseTensorMatrix":
        """U A U^* (float)."""
        return DenseTensorMatrix(U @ self.as_complex() @ U.conj().T, self.N, self.D, check_hermitian=False)


def identity_tensor(N: int, D: int) -> DenseTensorMatrix:
    M = N ** D
    arr = np.empty((M, M), dtype=object)
    for i in range(M):
        for j in range(M):
            arr[i, j] = Fraction(int(i == j))
    return DenseTensorMatrix(arr, N, D)


def _parse_entry(tok: str):
    if "/" in tok:
        return Fraction(tok)
    try:
        return Fraction(int(tok))
    except ValueError:
        pass
    if "j" in tok or "J" in tok:
        return complex(tok)
    return float(tok)


def parse_tensor(text: str) -> DenseTensorMatrix:
    """
    Text format::

        N 2
        D 1
        1 0
        0 1/2

    followed by N^D rows of N^D entries: exact rationals ``p/q``, integers,
    decimals or complex literals like ``1+2j``.  '#' starts a comment.
    """
    header: dict = {}
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] in ("N", "D") and len(parts) == 2 and len(header) < 2:
            header[parts[0]] = int(parts[1])
            continue
        rows.append([_parse_entry(t) for t in parts])
    if set(header) != {"N", "D"}:
        raise ValueError("tensor file needs 'N <int>' and 'D <int>' lines")
    N, D = header["N"], header["D"]
    flat = [x for r in rows for x in r]
    exact = all(isinstance(x, Fraction) for x in flat)
    M = N ** D
    if len(rows) != M or any(len(r) != M for r in rows):
        raise ValueError("expected %d rows of %d entries" % (M, M))
    arr = np.array(rows, dtype=object if exact else np.complex128)
    return DenseTensorMatrix(arr, N, D)


def load_tensor(path) -> DenseTensorMatrix:
    return parse_tensor(Path(path).read_text())


def format_tensor(A: DenseTensorMatrix) -> str:
    lines = ["N %d" % A.N, "D %d" % A.D]
    for row in A.entries:
        lines.append(" ".join(str(x) if A.exact else repr(complex(x)).strip("()") for x in row))
    return "\n".join(lines) + "\n"


# --- trace invariants ----------------------------------------------------

def trace_invariant(A: DenseTensorMatrix, sigma):
    r"""
    Tr_sigma(A) = sum over indices of prod_s A_{a_s, b_s} with a^c_s = b^c_{sigma_c(s)}
    (the c-th column index of copy sigma_c(s) equals the c-th row index of s).
    """
    sigma = sigma if isinstance(sigma, PermTuple) else PermTuple(sigma)
    if sigma.D != A.D:
        raise ValueError("permutation tuple has D=%d, tensor has D=%d" % (sigma.D, A.D))
    n, D = sigma.n, sigma.D
    if n == 0:
        return Fraction(1) if A.exact else 1.0
    T = A.tensor()
    # label for the index (c, s) shared by a^c_s and b^c_{sigma_c(s)}
    label = {}
    for c in range(D):
        for s in range(1, n + 1):
            label[(c, s)] = len(label)
    operands = []
    for s in range(1, n + 1):
        rows = [label[(c, s)] for c in range(D)]
        inv = [sigma[c].inverse()(s) for c in range(D)]
        cols = [label[(c, inv[c])] for c in range(D)]
        operands += [T, rows + cols]
    if A.exact:
        return _exact_contract(A, operands, n)
    out = np.einsum(*operands, [], optimize="greedy")
    return out.item() if isinstance(out, np.ndarray) else out


def _exact_contract(A: DenseTensorMatrix, operands: list, n: int) -> Fraction:
    # clear denominators, then contract integers; int64 when no overflow is possible
    d = 1
    for x in A.entries.flat:
        d = d * x.denominator // gcd(d, x.denominator)
    ints = [[int(x * d) for x in row] for row in A.entries]
    big = max((abs(v) for row in ints for v in row), default=0)
    free = len({lab for lab in operands[1::2] for lab in lab})
    exact64 = big ** n * A.N ** free < 2 ** 62
    M = np.array(ints, dtype=np.int64 if exact64 else object).reshape(A.tensor().shape)
    ops = [M if i % 2 == 0 else op for i, op in enumerate(operands)]
    out = np.einsum(*ops, [], optimize="greedy")
    out = out.item() if isinstance(out, np.ndarray) else out
    return Fraction(int(out), d ** n)


# --- moments and cumulants -----------------------------------------------

def _check_pair(A: DenseTensorMatrix, B: DenseTensorMatrix, n: int, N: int):
    if (A.N, A.D) != (B.N, B.D):
        raise ValueError("A and B must have the same shape")
    if A.N != N:
        raise ValueError("tensor dimension %d does not match N=%d" % (A.N, N))
    if N < n:
        raise ValueError("need N >= n (n=%d, N=%d)" % (n, N))


def _tuples(n: int, D: int):
    perms = list(all_permutations(n))
    for combo in itertools.product(perms, repeat=D):
        yield PermTuple(combo, n)


def _class_traces(A: DenseTensorMatrix, ts: list, invert: bool) -> dict:
    # Tr_sigma is invariant under simultaneous conjugation of sigma: one contraction per class
    group = list(all_permutations(ts[0].n))
    cache: dict = {}
    out = {}
    for s in ts:
        key = min(tuple(p._img for p in s.conjugate(g)) for g in group)
        if key not in cache:
            cache[key] = trace_invariant(A, s.inverse() if invert else s)
        out[s] = cache[key]
    return out


def _class_reps(ts: list) -> list:
    """(representative, class size) for the simultaneous-conjugation classes of ts."""
    group = list(all_permutations(ts[0].n))
    seen = set()
    out = []
    for s in ts:
        if s in seen:
            continue
        orbit = {s.conjugate(g) for g in group}
        seen |= orbit
        out.append((s, len(orbit)))
    return out


def _pair_sum(A, B, n, weight):
    # the summand is invariant under conjugating sigma and tau together,
    # so sigma runs over class representatives weighted by class size
    ts = list(_tuples(n, A.D))
    trA = _class_traces(A, ts, False)
    trB = _class_traces(B, ts, True)
    total = 0
    for s, size in _class_reps(ts):
        if trA[s] == 0:
            continue
        inner = 0
        for t in ts:
            w = weight(s, t)
            if w:
                inner += trB[t] * w
        total += size * trA[s] * inner
    return total


def moments(A: DenseTensorMatrix, B: DenseTensorMatrix, n: int, N: int):
    """E[Tr(A U B U^*)^n] = sum_{sigma, tau} Tr_sigma(A) Tr_{tau^-1}(B) prod_c W(sigma_c tau_c^-1)."""
    _check_pair(A, B, n, N)

    def w(s, t):
        return prod((weingarten_exact(a * b.inverse(), N) for a, b in zip(s, t)), start=Fraction(1))

    return _pair_sum(A, B, n, w)


def cumulants(A: DenseTensorMatrix, B: DenseTensorMatrix, n: int, N: int):
    """n-th cumulant: the same sum with the cumulant Weingarten function W_C[sigma, tau]."""
    _check_pair(A, B, n, N)
    return _pair_sum(A, B, n, lambda s, t: W_C_exact(s, t, N))


def moments_from_cumulants(A: DenseTensorMatrix, B: DenseTensorMatrix, n: int, N: int):
    """
    Moment-cumulant assembly on the scalar X = Tr(A U B U^*): the n-th moment
    as a sum over set partitions of products of cumulants of the block sizes.
    """
    from .setpartitions import enumerate_partitions
    kappa = {m: cumulants(A, B, m, N) for m in range(1, n + 1)}
    total = 0
    for pi in enumerate_partitions(n):
        term = 1
        for blk in pi.blocks:
            term = term * kappa[len(blk)]
        total += term
    return total


# --- Haar sampling -------------------------------------------------------

def haar_unitary(N: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar unitaries via QR of a complex Ginibre matrix with R's diagonal made positive."""
    shape = (N, N) if size is None else (size, N, N)
    Z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R, axis1=-2, axis2=-1)
    ph = d / np.abs(d)
    return Q * ph[..., None, :]


def _kron_batch(mats: Sequence[np.ndarray]) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        b = out.shape[0]
        out = np.einsum("bij,bkl->bikjl", out, m).reshape(b, out.shape[1] * m.shape[1], out.shape[2] * m.shape[2])
    return out


@dataclass
class MonteCarloResult:
    estimate: complex
    standard_error: float
    samples: int


def haar_sample_moment(A: DenseTensorMatrix, B: DenseTensorMatrix, n: int, N: int,
                       samples: int, seed: int, chunk: int = 5000, jobs: int = 1) -> MonteCarloResult:
    """
    Monte Carlo mean of Tr(A U B U^*)^n with U = U^(1) x ... x U^(D).
    Chunk i draws from ``default_rng([seed, i])`` so the estimate does not
    depend on ``jobs``.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    a, b = A.as_complex(), B.as_complex()
    D = A.D
    bounds = [(i, min(chunk, samples - i * chunk)) for i in range((samples + chunk - 1) // chunk)]

    def run(arg):
        idx, size = arg
        rng = np.random.default_rng([seed, idx])
        U = _kron_batch([haar_unitary(N, rng, size) for _ in range(D)])
        UBU = U @ b @ np.conj(np.swapaxes(U, -1, -2))
        x = np.einsum("ij,bji->b", a, UBU)
        return x ** n

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(jobs) as ex:
            parts = list(ex.map(run, bounds))
    else:
        parts = [run(x) for x in bounds]
    vals = np.concatenate(parts)
    mean = vals.mean()
    # standard error of the mean of a complex variable: sqrt(E|x - mean|^2 / m)
    se = float(np.sqrt(np.mean(np.abs(vals - mean) ** 2) / (len(vals) - 1)))
    return MonteCarloResult(complex(mean), se, len(vals))


def random_hermitian(N: int, D: int, rng: np.random.Generator, rational: bool = False) -> DenseTensorMatrix:
    """A random self-adjoint tensor matrix; rational ones have small integer/2 entries."""
    M = N ** D
    if rational:
        arr = np.empty((M, M), dtype=object)
        for i in range(M):
            for j in range(i, M):
                v = Fraction(int(rng.integers(-4, 5)), 2)
                arr[i, j] = arr[j, i] = v
        return DenseTensorMatrix(arr, N, D)
    Z = rng.standard_normal((M, M)) + 1j * rng.standard_normal((M, M))
    return DenseTensorMatrix((Z + Z.conj().T) / 2, N, D)

r"""
Cumulant Weingarten functions and their coefficients p_C.

For D-tuples of permutations ``sigma``, ``tau`` with ``nu_c = sigma_c tau_c^{-1}``

    W_C[sigma, tau] = N^{-nD} sum_l (-1)^l p_C[sigma, tau; l] N^{-l}.

The non-negative integers ``p_C`` are computed along three independent
routes:

``p_C_alternating``
    alternating sum over k of ``m_C``, which counts D-tuples of proper
    constellations with faces ``nu_c`` acting transitively together with
    ``sigma`` and ``tau``;
``p_C_monotone``
    D weakly monotone transposition sequences, jointly transitive;
``p_C_partition_formula``
    sum over coarsenings ``pi_c >= Pi(nu_c)`` connected through
    ``Pi(sigma, tau)``, with block weights given by alternating counts of
    connected constellations, organised by excess and genus.

``ell`` is the first non-vanishing order and ``leading_p_C`` its closed
form.  ``W_C_series`` assembles the expansion either from p_C or from the
Möbius sum of block Weingarten products.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import _tables
from .constellations import gamma_alternating, gamma_l
from .permutations import Permutation, length, restrict, transitivity_partition
from .series import LaurentSeries
from .setpartitions import SetPartition, _join_labels, enumerate_coarser, enumerate_partitions, join_all, moebius, refines
from .weingarten import weingarten_exact, weingarten_series


class PermTuple:
    """A D-tuple of permutations of common degree (one per color)."""

    __slots__ = ("perms", "n")

    def __init__(self, perms: Iterable[Permutation], n: int | None = None):
        perms = tuple(perms)
        if not perms:
            raise ValueError("a PermTuple needs at least one color")
        if n is None:
            n = perms[0].n
        if any(p.n != n for p in perms):
            raise ValueError("all colors must have degree %d" % n)
        self.perms = perms
        self.n = n

    @classmethod
    def parse(cls, texts: Sequence[str], n: int | None = None) -> "PermTuple":
        if n is None:
            n = max(Permutation.parse(t).n for t in texts)
        return cls([Permutation.parse(t, n) for t in texts], n)

    @property
    def D(self) -> int:
        return len(self.perms)

    def __getitem__(self, c):
        return self.perms[c]

    def __iter__(self):
        return iter(self.perms)

    def __len__(self):
        return len(self.perms)

    def inverse(self) -> "PermTuple":
        return PermTuple([p.inverse() for p in self.perms], self.n)

    def conjugate(self, g: Permutation) -> "PermTuple":
        return PermTuple([p.conjugate(g) for p in self.perms], self.n)

    def __eq__(self, other):
        return isinstance(other, PermTuple) and self.perms == other.perms

    def __hash__(self):
        return hash(self.perms)

    def __repr__(self):
        return "PermTuple(%s)" % ", ".join(str(p) for p in self.perms)


def as_tuple(x) -> PermTuple:
    if isinstance(x, PermTuple):
        return x
    if isinstance(x, Permutation):
        return PermTuple([x])
    return PermTuple(x)


def _shapes(sigma, tau):
    sigma, tau = as_tuple(sigma), as_tuple(tau)
    if sigma.D != tau.D or sigma.n != tau.n:
        raise ValueError("sigma and tau must have the same number of colors and degree")
    return sigma, tau


def nus(sigma, tau) -> list:
    """nu_c = sigma_c tau_c^{-1} for every color."""
    sigma, tau = _shapes(sigma, tau)
    return [s * t.inverse() for s, t in zip(sigma, tau)]


def orbit_partition(sigma, tau) -> SetPartition:
    """Pi(sigma, tau): orbits of the group generated by all sigma_c and tau_c."""
    sigma, tau = _shapes(sigma, tau)
    return transitivity_partition(list(sigma) + list(tau), sigma.n)


def ell(sigma, tau) -> int:
    """Smallest l with p_C[sigma, tau; l] != 0: sum_c ||nu_c|| + 2(|Pi(sigma, tau)| - 1)."""
    return sum(length(v) for v in nus(sigma, tau)) + 2 * (len(orbit_partition(sigma, tau)) - 1)


def _key(sigma, tau):
    sigma, tau = _shapes(sigma, tau)
    return tuple(v._img for v in nus(sigma, tau)), orbit_partition(sigma, tau).labels


# --- route 1: alternating sum of proper constellation counts -------------

@lru_cache(maxsize=None)
def _m_C_table(nu_imgs: tuple, pi_lab: tuple, l: int) -> dict:
    """{k: m_C} at total length l; depends on sigma, tau only through nu and Pi(sigma, tau)."""
    n = len(pi_lab)
    states = {pi_lab: {(0, 0): 1}}
    for nu in nu_imgs:
        options = []
        for lc in range(l + 1):
            for lab, kc, cnt in _tables.proper_by_product(n, lc).get(nu, ()):
                options.append((lab, lc, kc, cnt))
        new = defaultdict(lambda: defaultdict(int))
        for P, lk in states.items():
            for lab, lc, kc, cnt in options:
                J = _join_labels(P, lab)
                tgt = new[J]
                for (L, K), c in lk.items():
                    if L + lc <= l:
                        tgt[(L + lc, K + kc)] += c * cnt
        states = new
    one = (0,) * n
    out = defaultdict(int)
    for (L, K), c in states.get(one, {}).items():
        if L == l:
            out[K] += c
    return dict(out)


def m_C(sigma, tau, l: int, k: int) -> int:
    """
    D-tuples of proper constellations (rho^c_1..rho^c_{k_c}) with product
    nu_c, sum k_c = k, total length l, acting transitively with sigma, tau.
    """
    if l < 0 or k < 0:
        return 0
    return _m_C_table(*_key(sigma, tau), l).get(k, 0)


def p_C_alternating(sigma, tau, l: int) -> int:
    if l < 0:
        return 0
    table = _m_C_table(*_key(sigma, tau), l)
    s = sum((-1) ** k * c for k, c in table.items())
    return (-1) ** l * s


# --- route 2: monotone transposition sequences ---------------------------

@lru_cache(maxsize=None)
def _monotone_fold(nu_imgs: tuple, pi_lab: tuple, l: int) -> int:
    n = len(pi_lab)
    states = {pi_lab: {0: 1}}
    for nu in nu_imgs:
        options = []
        for lc in range(l + 1):
            for lab, cnt in _tables.monotone_by_product(n, lc).get(nu, ()):
                options.append((lab, lc, cnt))
        new = defaultdict(lambda: defaultdict(int))
        for P, lens in states.items():
            for lab, lc, cnt in options:
                tgt = new[_join_labels(P, lab)]
                for L, c in lens.items():
                    if L + lc <= l:
                        tgt[L + lc] += c * cnt
        states = new
    return states.get((0,) * n, {}).get(l, 0)


def p_C_monotone(sigma, tau, l: int) -> int:
    """D weakly monotone sequences with sigma_c = mu^c_1..mu^c_{l_c} tau_c, sum l_c = l, jointly transitive."""
    if l < 0:
        return 0
    return _monotone_fold(*_key(sigma, tau), l)


# --- route 3: partition formula ------------------------------------------

def _coarsenings(nu: Permutation) -> list:
    return list(enumerate_coarser(transitivity_partition([nu])))


def _connected_choices(Pi: SetPartition, nu_list: list):
    """D-tuples (pi_1..pi_D), pi_c >= Pi(nu_c), whose join with Pi is 1_n."""
    n = Pi.n
    one = (0,) * n
    options = [_coarsenings(v) for v in nu_list]

    def rec(c, lab, chosen):
        if c == len(options):
            if lab == one:
                yield tuple(chosen)
            return
        for pc in options[c]:
            chosen.append(pc)
            yield from rec(c + 1, _join_labels(lab, pc.labels), chosen)
            chosen.pop()

    yield from rec(0, Pi.labels, [])


def excess(Pi: SetPartition, pis: Sequence[SetPartition], nu_list: Sequence[Permutation]) -> int:
    """Excess edges of the incidence graph: edges - vertices + components."""
    comps = len(join_all([Pi] + list(pis)))
    edges = sum(v.num_cycles() for v in nu_list)
    return edges - len(Pi) - sum(len(p) for p in pis) + comps


def _poly_mul(a: dict, b: dict, cap: int) -> dict:
    out = defaultdict(int)
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= cap and x * y:
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _block_genus_poly(parts: tuple, cap: int) -> dict:
    """{g: gamma_{l(g)}(nu_B)} with l(g) = |B| + #(nu_B) + 2g - 2, for g <= cap."""
    from .permutations import CycleType
    nu = CycleType(parts).representative()
    base = nu.n + nu.num_cycles() - 2
    return {g: gamma_l(nu, base + 2 * g) for g in range(cap + 1)}


def blocks_of(nu: Permutation, pi: SetPartition) -> list:
    """Restrictions nu|B for the blocks B of pi (pi must be coarser than the cycles of nu)."""
    return [restrict(nu, B) for B in pi.blocks]


@lru_cache(maxsize=None)
def _partition_formula(nu_imgs: tuple, pi_lab: tuple, l: int) -> int:
    nu_list = [Permutation._from0(v) for v in nu_imgs]
    Pi = SetPartition.from_labels(pi_lab)
    lmin = sum(length(v) for v in nu_list) + 2 * (len(Pi) - 1)
    if l < lmin or (l - lmin) % 2:
        return 0
    half = (l - lmin) // 2
    cycles = sum(v.num_cycles() for v in nu_list)
    total = 0
    for pis in _connected_choices(Pi, nu_list):
        L = cycles - sum(len(p) for p in pis) - len(Pi) + 1
        if L > half:
            continue
        budget = half - L
        poly = {0: 1}
        for v, p in zip(nu_list, pis):
            for B in blocks_of(v, p):
                poly = _poly_mul(poly, _block_genus_poly(B.cycle_type().parts, budget), budget)
        total += poly.get(budget, 0)
    return (-1) ** l * total


def p_C_partition_formula(sigma, tau, l: int) -> int:
    """
    p_C from the sum over connected coarsenings, grouped by excess L and
    block genera g_B; block weights gamma_{l(g_B)}(nu_c|B) with
    l(g) = |B| + #(nu_c|B) + 2g - 2.
    """
    if l < 0:
        return 0
    return _partition_formula(*_key(sigma, tau), l)


@lru_cache(maxsize=None)
def _partition_formula_lengths(nu_imgs: tuple, pi_lab: tuple, l: int) -> int:
    # the same sum before regrouping: block lengths l_B >= 0 with sum l
    nu_list = [Permutation._from0(v) for v in nu_imgs]
    Pi = SetPartition.from_labels(pi_lab)
    total = 0
    for pis in _connected_choices(Pi, nu_list):
        poly = {0: 1}
        for v, p in zip(nu_list, pis):
            for B in blocks_of(v, p):
                poly = _poly_mul(poly, {lb: gamma_l(B, lb) for lb in range(l + 1)}, l)
        total += poly.get(l, 0)
    return (-1) ** l * total


def p_C_partition_lengths(sigma, tau, l: int) -> int:
    """Partition formula summed over block lengths directly (no excess/genus regrouping)."""
    if l < 0:
        return 0
    return _partition_formula_lengths(*_key(sigma, tau), l)


def leading_p_C(sigma, tau) -> tuple:
    """
    ((-1)^ell p_C[sigma, tau; ell], ell) from the tree-shaped coarsenings
    (sum_c (|Pi(nu_c)| - |pi_c|) = |Pi(sigma, tau)| - 1) with closed-form
    block weights gamma(nu_c|B).
    """
    sigma, tau = _shapes(sigma, tau)
    nu_list = nus(sigma, tau)
    Pi = orbit_partition(sigma, tau)
    cycles = sum(v.num_cycles() for v in nu_list)
    total = 0
    for pis in _connected_choices(Pi, nu_list):
        if cycles - sum(len(p) for p in pis) != len(Pi) - 1:
            continue
        term = 1
        for v, p in zip(nu_list, pis):
            for B in blocks_of(v, p):
                term *= gamma_alternating(B)
        total += term
    return total, ell(sigma, tau)


ROUTES = {
    "alternating": p_C_alternating,
    "monotone": p_C_monotone,
    "partition": p_C_partition_formula,
}


def p_C(sigma, tau, l: int, route: str = "monotone") -> int:
    try:
        f = ROUTES[route]
    except KeyError:
        raise ValueError("unknown route %r" % route) from None
    return f(sigma, tau, l)


# --- incidence graph -----------------------------------------------------

class IncidenceGraph:
    r"""
    Bipartite graph with white vertices the blocks of Pi, colored vertices
    the blocks of each pi_c, and one c-colored edge per block of Pi_c joining
    the white and c-colored blocks that contain it.
    """

    def __init__(self, Pi: SetPartition, pis: Sequence[SetPartition], Pics: Sequence[SetPartition]):
        if len(pis) != len(Pics):
            raise ValueError("need one pi_c and one Pi_c per color")
        for c, (p, q) in enumerate(zip(pis, Pics)):
            if not refines(q, Pi) or not refines(q, p):
                raise ValueError("color %d: Pi_c must refine both Pi and pi_c" % (c + 1))
        self.Pi = Pi
        self.pis = tuple(pis)
        self.Pics = tuple(Pics)
        self.white_vertices = Pi.blocks
        self.colored_vertices = tuple(p.blocks for p in pis)
        # edges as (color, block of Pi_c, white index, colored index)
        self.colored_edges = tuple(
            (c, B, Pi.labels[B[0] - 1], p.labels[B[0] - 1])
            for c, (p, q) in enumerate(zip(pis, Pics))
            for B in q.blocks
        )

    @property
    def D(self) -> int:
        return len(self.pis)

    def num_vertices(self) -> int:
        return len(self.white_vertices) + sum(len(v) for v in self.colored_vertices)

    def num_edges(self) -> int:
        return len(self.colored_edges)

    def num_components(self) -> int:
        offsets = [len(self.white_vertices)]
        for v in self.colored_vertices:
            offsets.append(offsets[-1] + len(v))
        parent = list(range(offsets[-1]))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c, _, w, j in self.colored_edges:
            a, b = find(w), find(offsets[c] + j)
            if a != b:
                parent[a] = b
        return len({find(x) for x in range(offsets[-1])})

    def excess(self) -> int:
        return self.num_edges() - self.num_vertices() + self.num_components()

    def is_tree(self) -> bool:
        return self.num_components() == 1 and self.excess() == 0

    def to_dot(self, name: str = "G") -> str:
        palette = ["red", "blue", "darkgreen", "orange", "purple"]
        lines = ["graph %s {" % name]
        for i, B in enumerate(self.white_vertices):
            lines.append('  w%d [label="%s", shape=circle, color=black];' % (i, ",".join(map(str, B))))
        for c, blocks in enumerate(self.colored_vertices):
            col = palette[c % len(palette)]
            for j, B in enumerate(blocks):
                lines.append('  c%d_%d [label="%s", shape=circle, style=filled, color=%s];'
                             % (c + 1, j, ",".join(map(str, B)), col))
        for c, B, w, j in self.colored_edges:
            lines.append('  w%d -- c%d_%d [color=%s, label="%s"];'
                         % (w, c + 1, j, palette[c % len(palette)], ",".join(map(str, B))))
        lines.append("}")
        return "\n".join(lines)


def incidence_graph(Pi: SetPartition, pis: Sequence[SetPartition], Pics: Sequence[SetPartition]) -> IncidenceGraph:
    return IncidenceGraph(Pi, pis, Pics)


# --- series and exact values ---------------------------------------------

def W_C_series(sigma, tau, order: int | None = None, route: str = "monotone") -> LaurentSeries:
    r"""
    W_C[sigma, tau] in powers of 1/N, keeping l = 0..order (powers up to
    N^-(nD + order)).  Default order is 2n.

    ``route="moebius"`` assembles the series from the Möbius sum over
    partitions of block Weingarten series; any p_C route name builds it
    from the coefficients.
    """
    sigma, tau = _shapes(sigma, tau)
    n, D = sigma.n, sigma.D
    if order is None:
        order = 2 * n
    top = n * D + order
    if route == "moebius":
        Pi = orbit_partition(sigma, tau)
        nu_list = nus(sigma, tau)
        total = LaurentSeries.zero(top)
        for pi in enumerate_partitions(n):
            if not refines(Pi, pi):
                continue
            term = LaurentSeries(0, [1], top)
            for B in pi.blocks:
                for v in nu_list:
                    term = term * weingarten_series(restrict(v, B), order)
            total = total + term.truncate(top).scale(moebius(pi, SetPartition.coarsest(n)))
        return total
    f = ROUTES[route]
    coeffs = [(-1) ** l * f(sigma, tau, l) for l in range(order + 1)]
    return LaurentSeries(n * D, coeffs, top)


def W_C_exact(sigma, tau, N: int) -> Fraction:
    """Exact W_C[sigma, tau] at N >= n from the Möbius sum of exact Weingarten values."""
    sigma, tau = _shapes(sigma, tau)
    n = sigma.n
    if N < n:
        raise ValueError("need N >= n")
    return _W_C_exact(*_key(sigma, tau), N)


@lru_cache(maxsize=None)
def _W_C_exact(nu_imgs: tuple, pi_lab: tuple, N: int) -> Fraction:
    n = len(pi_lab)
    Pi = SetPartition.from_labels(pi_lab)
    nu_list = [Permutation._from0(v) for v in nu_imgs]
    one = SetPartition.coarsest(n)
    total = Fraction(0)
    for pi in enumerate_coarser(Pi):
        term = Fraction(moebius(pi, one))
        for B in pi.blocks:
            for v in nu_list:
                term *= weingarten_exact(restrict(v, B), N)
        total += term
    return total

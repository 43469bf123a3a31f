r"""
Nodal surfaces built from constellations, their arithmetic genus, foldings
of S(sigma, tau) and branched-covering counts of a bouquet of D spheres.

A nodal surface is a list of irreducible components (each with a genus)
plus nodes, each node being the set of components its points lie on.  Its
arithmetic genus is

    sum_i g_i + sum_j (|P_j| - 1) - p + C

with p components and C connected components (C = 1 for connected
surfaces).  The closed formulas for the surfaces attached to (sigma, tau)
are checked against this generic computation.

    >>> s = PermTuple.parse(["(13)", "(123)(45)"], 5)
    >>> t = PermTuple.parse(["(13)(45)", "()"], 5)
    >>> arithmetic_genus_S(s, t)
    2
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .constellations import Constellation, enumerate_factorizations, genus
from .cumulant import (IncidenceGraph, PermTuple, _connected_choices, _poly_mul, _shapes,
                       blocks_of, ell, nus, orbit_partition)
from .hurwitz import HurwitzQuery, _single_weight, bms_numbers, higher_order_hurwitz
from .permutations import (Permutation, all_permutations, enumerate_class, length, restrict,
                           transitivity_partition, transpositions)
from .setpartitions import SetPartition, join_all


# --- generic nodal surfaces ----------------------------------------------

class NodalSurface:
    """
    Irreducible components with genera, glued at nodes.  ``nodes`` holds, for
    each node, the component index of each of its points (a component may
    carry several points of one node).
    """

    def __init__(self, genera: Sequence[int], nodes: Sequence[Sequence[int]],
                 labels: Sequence[str] | None = None, node_kinds: Sequence[str] | None = None,
                 colors: Sequence[int] | None = None):
        self.genera = tuple(genera)
        self.nodes = tuple(tuple(p) for p in nodes)
        p = len(self.genera)
        for pts in self.nodes:
            if any(not 0 <= i < p for i in pts):
                raise ValueError("node refers to a missing component")
        self.labels = tuple(labels) if labels else tuple("X%d" % i for i in range(p))
        self.node_kinds = tuple(node_kinds) if node_kinds else ("node",) * len(self.nodes)
        self.colors = tuple(colors) if colors else (0,) * p

    @property
    def num_components(self) -> int:
        return len(self.genera)

    def num_connected(self) -> int:
        parent = list(range(self.num_components))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for pts in self.nodes:
            for a, b in zip(pts, pts[1:]):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        return len({find(x) for x in range(self.num_components)})

    def is_connected(self) -> bool:
        return self.num_connected() == 1

    def geometric_genus(self) -> int:
        return sum(self.genera)

    def arithmetic_genus(self) -> int:
        return (sum(self.genera) + sum(len(p) - 1 for p in self.nodes)
                - self.num_components + self.num_connected())

    def to_dot(self, name: str = "S") -> str:
        palette = ["black", "blue", "red", "orange", "darkgreen", "purple"]
        shapes = {"triangular": "triangle", "star": "star", "face": "point"}
        lines = ["graph %s {" % name]
        for i, (g, lab, c) in enumerate(zip(self.genera, self.labels, self.colors)):
            lines.append('  x%d [label="%s g=%d", shape=circle, color=%s];' % (i, lab, g, palette[c % len(palette)]))
        for j, (pts, kind) in enumerate(zip(self.nodes, self.node_kinds)):
            lines.append('  n%d [label="", shape=%s];' % (j, shapes.get(kind, "diamond")))
            for i in pts:
                lines.append("  n%d -- x%d [style=dotted];" % (j, i))
        lines.append("}")
        return "\n".join(lines)


def component_genera(c: Constellation) -> list:
    """[(orbit block, genus of the restriction to it)] for each connected component."""
    out = []
    for B in c.orbits().blocks:
        sub = Constellation([restrict(p, B) for p in c.perms], len(B))
        out.append((B, genus(sub)))
    return out


# --- nodal constellations ------------------------------------------------

class NodalConstellation:
    """
    D constellations on the same n points, glued at n nodes: node s joins
    the white vertex s of every color.

        >>> nc = NodalConstellation([Constellation([Permutation.parse("(12)", 2)] * 2)])
        >>> nc.arithmetic_genus()
        0
    """

    def __init__(self, etas: Sequence[Constellation]):
        etas = tuple(etas)
        if not etas:
            raise ValueError("need at least one color")
        n = etas[0].n
        if any(e.n != n for e in etas):
            raise ValueError("all colors must act on the same n points")
        self.etas = etas
        self.n = n

    @property
    def D(self) -> int:
        return len(self.etas)

    def orbits(self) -> SetPartition:
        return transitivity_partition([p for e in self.etas for p in e.perms], self.n)

    def is_connected(self) -> bool:
        return len(self.orbits()) == 1

    def arithmetic_genus(self) -> int:
        """sum_c (g(eta^c) - |Pi(eta^c)|) + n(D - 1) + |Pi(all)|."""
        s = sum(genus(e) - len(e.orbits()) for e in self.etas)
        return s + self.n * (self.D - 1) + len(self.orbits())

    def surface(self) -> NodalSurface:
        genera, labels, colors, comp_of = [], [], [], []
        for c, e in enumerate(self.etas):
            where = {}
            for B, g in component_genera(e):
                for s in B:
                    where[s] = len(genera)
                genera.append(g)
                labels.append("c%d:%s" % (c + 1, ",".join(map(str, B))))
                colors.append(c + 1)
            comp_of.append(where)
        nodes = [[comp_of[c][s] for c in range(self.D)] for s in range(1, self.n + 1)]
        return NodalSurface(genera, nodes, labels, ["triangular"] * self.n, colors)


def nodal_S(sigma, tau) -> NodalConstellation:
    """S(sigma, tau): the bipartite maps (sigma_c, tau_c^-1) glued at their white vertices."""
    sigma, tau = _shapes(sigma, tau)
    return NodalConstellation([Constellation([s, t.inverse()]) for s, t in zip(sigma, tau)])


def arithmetic_genus_S(sigma, tau) -> int:
    """G(sigma, tau)."""
    return nodal_S(sigma, tau).arithmetic_genus()


def ell_from_genus(sigma, tau) -> int:
    """sum_c [#(sigma_c) + #(tau_c)] + 2 G(sigma, tau) - 2 - 2n(D - 1)."""
    sigma, tau = _shapes(sigma, tau)
    cyc = sum(s.num_cycles() + t.num_cycles() for s, t in zip(sigma, tau))
    return cyc + 2 * arithmetic_genus_S(sigma, tau) - 2 - 2 * sigma.n * (sigma.D - 1)


# --- S(sigma, tau, eta) and foldings --------------------------------------

def _bipartite_components(sigma, tau):
    # per color: list of (block, genus) and point -> local index
    out = []
    for s, t in zip(sigma, tau):
        comps = component_genera(Constellation([s, t.inverse()]))
        where = {x: i for i, (B, _) in enumerate(comps) for x in B}
        out.append((comps, where))
    return out


def _base_surface(sigma, tau):
    """Components and triangular nodes of S(sigma, tau), plus point lookups."""
    genera, labels, colors, offsets = [], [], [], []
    bip = _bipartite_components(sigma, tau)
    for c, (comps, _) in enumerate(bip):
        offsets.append(len(genera))
        for B, g in comps:
            genera.append(g)
            labels.append("map%d:%s" % (c + 1, ",".join(map(str, B))))
            colors.append(c + 1)
    n = sigma.n
    nodes = [[offsets[c] + bip[c][1][s] for c in range(sigma.D)] for s in range(1, n + 1)]
    kinds = ["triangular"] * n
    return genera, labels, colors, nodes, kinds, [(offsets[c], bip[c][1]) for c in range(sigma.D)]


def surface_S_eta(sigma, tau, etas: Sequence[Constellation]) -> NodalSurface:
    """
    S(sigma, tau, eta): S(sigma, tau) plus the constellations eta^c, the face
    of the c-th bipartite map along each cycle of nu_c glued to the face of
    eta^c along the same cycle.
    """
    sigma, tau = _shapes(sigma, tau)
    if len(etas) != sigma.D:
        raise ValueError("need one constellation per color")
    genera, labels, colors, nodes, kinds, look = _base_surface(sigma, tau)
    for c, (e, v) in enumerate(zip(etas, nus(sigma, tau))):
        if e.product() != v:
            raise ValueError("color %d: eta product must equal sigma_c tau_c^-1" % (c + 1))
        start = len(genera)
        where = {}
        for i, (B, g) in enumerate(component_genera(e)):
            for x in B:
                where[x] = start + i
            genera.append(g)
            labels.append("eta%d:%s" % (c + 1, ",".join(map(str, B))))
            colors.append(c + 1)
        off, bwhere = look[c]
        for cyc in v.cycles():
            nodes.append([off + bwhere[cyc[0]], where[cyc[0]]])
            kinds.append("face")
    return NodalSurface(genera, nodes, labels, kinds, colors)


def arithmetic_genus_S_eta(sigma, tau, etas: Sequence[Constellation]) -> int:
    r"""
    Closed form: sum_c (g(sigma_c, tau_c^-1) + g(eta^c)) + nD + sum_c #(nu_c) - n
    - sum_c (|Pi(sigma_c, tau_c^-1)| + |Pi(eta^c)|) + C, with C the number of
    connected components.
    """
    sigma, tau = _shapes(sigma, tau)
    n, D = sigma.n, sigma.D
    total = n * D - n + sum(v.num_cycles() for v in nus(sigma, tau))
    perms = list(sigma) + list(tau)
    for s, t, e in zip(sigma, tau, etas):
        bip = Constellation([s, t.inverse()])
        total += genus(bip) + genus(e) - len(bip.orbits()) - len(e.orbits())
        perms += list(e.perms)
    return total + len(transitivity_partition(perms, n))


def folding_surface(sigma, tau, pis: Sequence[SetPartition]) -> NodalSurface:
    """
    S(sigma, tau; {pi_c}): for each block B of pi_c one node whose points sit
    in the faces of the c-th bipartite map along the cycles of nu_c inside B.
    """
    sigma, tau = _shapes(sigma, tau)
    genera, labels, colors, nodes, kinds, look = _base_surface(sigma, tau)
    for c, (v, pi) in enumerate(zip(nus(sigma, tau), pis)):
        off, bwhere = look[c]
        cyc_lab = transitivity_partition([v]).labels
        if not all(pi.labels[a] == pi.labels[b] for a in range(sigma.n) for b in range(sigma.n)
                   if cyc_lab[a] == cyc_lab[b]):
            raise ValueError("pi_%d must be coarser than the cycles of nu_%d" % (c + 1, c + 1))
        for B in pi.blocks:
            faces = [cyc for cyc in v.cycles() if cyc[0] in B]
            nodes.append([off + bwhere[cyc[0]] for cyc in faces])
            kinds.append("star")
    return NodalSurface(genera, nodes, labels, kinds, colors)


def folding_arithmetic_genus(sigma, tau, pis: Sequence[SetPartition]) -> int:
    return folding_surface(sigma, tau, pis).arithmetic_genus()


def folding_excess(sigma, tau, pis: Sequence[SetPartition]) -> int:
    """Excess L of the incidence graph G[Pi(sigma, tau), {pi_c}; {Pi(nu_c)}]."""
    sigma, tau = _shapes(sigma, tau)
    Pi = orbit_partition(sigma, tau)
    return IncidenceGraph(Pi, pis, [transitivity_partition([v]) for v in nus(sigma, tau)]).excess()


@dataclass(frozen=True)
class Folding:
    pis: tuple
    genus: int
    excess: int


@lru_cache(maxsize=4096)
def _foldings(sigma: PermTuple, tau: PermTuple) -> tuple:
    Pi = orbit_partition(sigma, tau)
    out = []
    for pis in _connected_choices(Pi, nus(sigma, tau)):
        out.append(Folding(pis, folding_arithmetic_genus(sigma, tau, pis), folding_excess(sigma, tau, pis)))
    return tuple(out)


def foldings(sigma, tau) -> tuple:
    """Connected foldings of S(sigma, tau), one per join-connected choice of {pi_c}."""
    return _foldings(*_shapes(sigma, tau))


def folding_decomposition(sigma, tau, l: int) -> int:
    r"""
    p_C[sigma, tau; l] summed over the arithmetic genus G of connected
    foldings, then over the foldings of that genus, then over genus
    assignments g_v of their colored nodes summing to
    (l - ell)/2 + G(sigma, tau) - G, with node weights
    H_{g_v}(c(nu_c|v)) / |C_{c(nu_c|v)}|.
    """
    sigma, tau = _shapes(sigma, tau)
    lo = ell(sigma, tau)
    if l < lo or (l - lo) % 2:
        return 0
    half = (l - lo) // 2
    G0 = arithmetic_genus_S(sigma, tau)
    by_genus = defaultdict(list)
    for f in foldings(sigma, tau):
        by_genus[f.genus].append(f)
    nu_list = nus(sigma, tau)
    total = 0
    for G in range(G0, G0 + half + 1):
        budget = half + G0 - G
        for f in by_genus.get(G, ()):
            poly = {0: 1}
            for v, pi in zip(nu_list, f.pis):
                for B in blocks_of(v, pi):
                    poly = _poly_mul(poly, {g: _single_weight(B, g) for g in range(budget + 1)}, budget)
            total += poly.get(budget, 0)
    return total


# --- enumeration of (sigma, tau, eta) ------------------------------------

@lru_cache(maxsize=None)
def _color_signatures(nu_img: tuple, lc: int) -> tuple:
    """
    Proper factorizations of nu with total length lc, enumerated one by one
    and grouped by (k, orbit labels, component genera): the data the nodal
    surface depends on.  Returns ((k, labels, genera, multiplicity), ...).
    """
    nu = Permutation._from0(nu_img)
    groups: dict = defaultdict(int)
    for k in range(0, lc + 1):
        for e in enumerate_factorizations(nu, k, proper=True, total_length=lc):
            comps = component_genera(e)
            lab = e.orbits().labels
            genera = tuple(g for _, g in comps)
            groups[(k, lab, genera)] += 1
    return tuple((k, lab, gen, m) for (k, lab, gen), m in sorted(groups.items()))


def _signature_surface(sigma, tau, sigs) -> tuple:
    # surface of S(sigma, tau, eta) built from per-color signatures
    genera, labels, colors, nodes, kinds, look = _base_surface(sigma, tau)
    for c, ((k, lab, gen, _), v) in enumerate(zip(sigs, nus(sigma, tau))):
        start = len(genera)
        genera.extend(gen)
        labels.extend("eta%d#%d" % (c + 1, i) for i in range(len(gen)))
        colors.extend([c + 1] * len(gen))
        off, bwhere = look[c]
        for cyc in v.cycles():
            nodes.append([off + bwhere[cyc[0]], start + lab[cyc[0] - 1]])
            kinds.append("face")
    return NodalSurface(genera, nodes, labels, kinds, colors)


def nodal_bookkeeping(sigma, tau, l: int) -> dict:
    r"""
    Enumerate every connected (sigma, tau, eta) with total length l and check
    the genus identities on each:

    * l == sum_c [#(sigma_c) + #(tau_c)] + 2 G(sigma, tau, eta) - 2 - 2n(D - 1);
    * G(sigma, tau, eta) - G(sigma, tau) == (l - ell)/2 == sum_c g(eta^c) + L.

    Tuples are grouped by the data the surface depends on, so every check on
    a group holds for each of its members.  Returns counts per k (to compare
    with m_C), the number of tuples and the first failure, if any.
    """
    sigma, tau = _shapes(sigma, tau)
    n, D = sigma.n, sigma.D
    nu_list = nus(sigma, tau)
    Pi = orbit_partition(sigma, tau)
    G0 = arithmetic_genus_S(sigma, tau)
    lo = ell(sigma, tau)
    cyc = sum(s.num_cycles() + t.num_cycles() for s, t in zip(sigma, tau))
    Pics = [transitivity_partition([v]) for v in nu_list]
    by_k: dict = defaultdict(int)
    tuples = 0
    failure = None
    for split in itertools.product(range(l + 1), repeat=D):
        if sum(split) != l:
            continue
        options = [_color_signatures(v._img, lc) for v, lc in zip(nu_list, split)]
        for sigs in itertools.product(*options):
            pis = [SetPartition.from_labels(s[1]) for s in sigs]
            if not join_all([Pi] + pis).is_coarsest():
                continue
            mult = 1
            for s in sigs:
                mult *= s[3]
            surf = _signature_surface(sigma, tau, sigs)
            G = surf.arithmetic_genus()
            L = IncidenceGraph(Pi, pis, Pics).excess()
            gsum = sum(sum(s[2]) for s in sigs)
            ok = (surf.is_connected()
                  and l == cyc + 2 * G - 2 - 2 * n * (D - 1)
                  and 2 * (G - G0) == l - lo
                  and G - G0 == gsum + L)
            if not ok and failure is None:
                failure = {"split": split, "k": [s[0] for s in sigs], "G": G, "G0": G0, "L": L,
                           "genus_sum": gsum, "l": l, "ell": lo}
            by_k[sum(s[0] for s in sigs)] += mult
            tuples += mult
    return {"by_k": dict(by_k), "tuples": tuples, "failure": failure}


# --- branched coverings of a bouquet of spheres --------------------------

def _check_query(q: HurwitzQuery):
    for c, (a, b) in enumerate(q.profiles):
        if a.is_trivial() or b.is_trivial():
            raise ValueError("color %d: covering counts need non-trivial profiles" % (c + 1))


def covering_count(q: HurwitzQuery, k: int | None = None, restricted_monotone: bool = False) -> Fraction:
    """
    BS^l_k / n! (connected coverings of the bouquet at arithmetic genus H,
    weighted by 1/|Aut|) or H^l / n! for the monotone simple-branching subset,
    where k must equal l.
    """
    _check_query(q)
    H, l = q.resolve()
    if restricted_monotone:
        if k is not None and k != l:
            raise ValueError("monotone coverings have k = l = %d, got k = %d" % (l, k))
        return Fraction(higher_order_hurwitz(q), factorial(q.n))
    if k is None or k < 0:
        raise ValueError("need a number k >= 0 of free branch points")
    return Fraction(bms_numbers(q, k), factorial(q.n))


def singular_point_count(q: HurwitzQuery, k: int) -> int:
    """Preimages of all branch points: nk - l + sum_c (#alpha_c + #beta_c)."""
    H, l = q.resolve()
    return q.n * k - l + sum(a.num_parts() + b.num_parts() for a, b in q.profiles)


def singular_point_count_closed(q: HurwitzQuery, k: int) -> int:
    """2 - 2H + n(k + 2D - 2), the same count in terms of the arithmetic genus."""
    H, _ = q.resolve()
    return 2 - 2 * H + q.n * (k + 2 * q.D - 2)


def _monotone_sequences(nu: Permutation, lc: int) -> list:
    # weakly monotone transposition sequences with product nu
    trs = [(t, max(i for i in range(1, nu.n + 1) if t(i) != i)) for t in transpositions(nu.n)]
    out = []

    def rec(prefix, seq, last):
        if len(seq) == lc:
            if prefix == nu:
                out.append(tuple(seq))
            return
        for t, m in trs:
            if m >= last:
                seq.append(t)
                rec(prefix * t, seq, m)
                seq.pop()

    rec(Permutation.identity(nu.n), [], 0)
    return out


def covering_systems(q: HurwitzQuery, k: int | None = None, restricted_monotone: bool = False):
    """
    All permutation systems encoding the coverings, one tuple per color of
    (sigma_c, eta^c_1..eta^c_{k_c}, tau_c) with sigma_c^-1 eta^c tau_c = id
    read as eta^c_1...eta^c_{k_c} = sigma_c tau_c^-1, jointly transitive.
    Literal enumeration, small n only.
    """
    _check_query(q)
    H, l = q.resolve()
    if restricted_monotone:
        k = l
    n, D = q.n, q.D
    cls_a = [list(enumerate_class(a)) for a, _ in q.profiles]
    cls_b = [list(enumerate_class(b)) for _, b in q.profiles]
    for sig in itertools.product(*cls_a):
        for tau in itertools.product(*cls_b):
            nu_list = [s * t.inverse() for s, t in zip(sig, tau)]
            for split in itertools.product(range(l + 1), repeat=D):
                if sum(split) != l:
                    continue
                if restricted_monotone:
                    per = [_monotone_sequences(v, lc) for v, lc in zip(nu_list, split)]
                else:
                    per = []
                    for v, lc in zip(nu_list, split):
                        fs = []
                        for kc in range(lc + 1):
                            fs.extend(e.perms for e in enumerate_factorizations(v, kc, proper=True, total_length=lc))
                        per.append(fs)
                for etas in itertools.product(*per):
                    if sum(len(e) for e in etas) != k:
                        continue
                    gens = list(sig) + list(tau) + [p for e in etas for p in e]
                    if len(transitivity_partition(gens, n)) != 1:
                        continue
                    yield tuple((s,) + tuple(e) + (t,) for s, e, t in zip(sig, etas, tau))


def covering_orbits(q: HurwitzQuery, k: int | None = None, restricted_monotone: bool = False) -> dict:
    """
    Group the systems into simultaneous-relabeling orbits.  Returns the
    number of systems, the number of orbits (isomorphism classes), the sum
    over orbits of 1/|stabilizer| and the singular-point counts seen.

    The monotone condition depends on the labeling, so for
    ``restricted_monotone`` an orbit may leave the enumerated set;
    ``closed`` reports whether every orbit stayed inside it.
    """
    systems = set(covering_systems(q, k, restricted_monotone))
    group = list(all_permutations(q.n))
    seen = set()
    orbits = 0
    weighted = Fraction(0)
    singular = set()
    closed = True
    for sys_ in systems:
        if sys_ in seen:
            continue
        orbit = {tuple(tuple(p.conjugate(g) for p in col) for col in sys_) for g in group}
        seen |= orbit
        closed = closed and orbit <= systems
        orbits += 1
        weighted += Fraction(len(orbit), len(group))
        singular.add(sum(p.num_cycles() for col in sys_ for p in col))
    return {"systems": len(systems), "orbits": orbits, "weighted": weighted, "singular_points": singular,
            "closed": closed}

"""
Exact Weingarten calculus for tensor HCIZ integrals: cumulant coefficients
counted by constellations and monotone transpositions, monotone Hurwitz
numbers, nodal-surface bookkeeping and a Haar-sampling check.
"""

from .permutations import CycleType, Permutation, transitivity_partition
from .setpartitions import SetPartition, join, moebius, refines
from .constellations import Constellation, gamma_alternating, gamma_l, gamma_tilde_planar, genus, moebius_nc
from .series import LaurentSeries
from .weingarten import m_count, p_coeff, weingarten_asymptotic, weingarten_exact, weingarten_series
from .cumulant import PermTuple, W_C_exact, W_C_series, ell, m_C, p_C
from .hurwitz import (HurwitzQuery, bms_numbers, double_from_single, double_hurwitz, higher_order_hurwitz,
                      single_hurwitz)
from .nodal import NodalConstellation, arithmetic_genus_S, covering_count, folding_decomposition

__version__ = "0.1.0"

__all__ = [
    "CycleType", "Permutation", "transitivity_partition", "SetPartition", "join", "moebius", "refines",
    "Constellation", "gamma_alternating", "gamma_l", "gamma_tilde_planar", "genus", "moebius_nc",
    "LaurentSeries", "m_count", "p_coeff", "weingarten_asymptotic", "weingarten_exact", "weingarten_series",
    "PermTuple", "W_C_exact", "W_C_series", "ell", "m_C", "p_C", "HurwitzQuery", "bms_numbers",
    "double_from_single", "double_hurwitz", "higher_order_hurwitz", "single_hurwitz",
    "NodalConstellation", "arithmetic_genus_S", "covering_count", "folding_decomposition",
]

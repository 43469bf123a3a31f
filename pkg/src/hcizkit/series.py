"""
Truncated Laurent series in 1/N with exact rational coefficients.

A series stores the coefficient of ``N^-(leading_exponent + j)`` at index
``j`` and is known exactly up to (and including) the power
``N^-truncation_order``.

    >>> s = LaurentSeries(2, [1, 0, 1], 4)       # N^-2 + N^-4 + O(N^-5)
    >>> (s * s).coefficient(6)
    Fraction(2, 1)
    >>> (s * s).truncation_order
    6
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class LaurentSeries:
    __slots__ = ("leading_exponent", "coefficients", "truncation_order")

    def __init__(self, leading_exponent: int, coefficients: Iterable, truncation_order: int):
        coeffs = [Fraction(c) for c in coefficients]
        # keep only what is known
        coeffs = coeffs[: max(0, truncation_order - leading_exponent + 1)]
        self.leading_exponent = int(leading_exponent)
        self.coefficients = coeffs
        self.truncation_order = int(truncation_order)

    @classmethod
    def from_dict(cls, terms: dict, truncation_order: int) -> "LaurentSeries":
        terms = {k: v for k, v in terms.items() if k <= truncation_order}
        nz = [k for k, v in terms.items() if v != 0]
        if not nz:
            return cls.zero(truncation_order)
        lo = min(nz)
        return cls(lo, [terms.get(k, 0) for k in range(lo, truncation_order + 1)], truncation_order)

    @classmethod
    def zero(cls, truncation_order: int) -> "LaurentSeries":
        return cls(truncation_order + 1, [], truncation_order)

    def coefficient(self, power: int) -> Fraction:
        """Coefficient of N^-power; raises if power is beyond the truncation."""
        if power > self.truncation_order:
            raise ValueError("N^-%d is beyond truncation order %d" % (power, self.truncation_order))
        j = power - self.leading_exponent
        if 0 <= j < len(self.coefficients):
            return self.coefficients[j]
        return Fraction(0)

    def terms(self) -> dict:
        return {self.leading_exponent + j: c for j, c in enumerate(self.coefficients) if c != 0}

    def normalized(self) -> "LaurentSeries":
        """Drop leading and trailing zero coefficients."""
        return LaurentSeries.from_dict(self.terms(), self.truncation_order)

    def truncate(self, order: int) -> "LaurentSeries":
        if order > self.truncation_order:
            raise ValueError("cannot extend a truncated series")
        return LaurentSeries.from_dict(self.terms(), order)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        t = min(self.truncation_order, other.truncation_order)
        terms = dict(self.terms())
        for k, v in other.terms().items():
            terms[k] = terms.get(k, 0) + v
        return LaurentSeries.from_dict(terms, t)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentSeries":
        return LaurentSeries(self.leading_exponent, [c * x for x in self.coefficients], self.truncation_order)

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        a, b = self.normalized(), other.normalized()
        # the product is known up to the first power either factor leaves undetermined
        t = min(a.truncation_order + b.leading_exponent, b.truncation_order + a.leading_exponent)
        terms: dict = {}
        for i, x in a.terms().items():
            for j, y in b.terms().items():
                if i + j <= t:
                    terms[i + j] = terms.get(i + j, 0) + x * y
        return LaurentSeries.from_dict(terms, t)

    __rmul__ = scale

    def evaluate(self, N) -> Fraction:
        """Value of the retained terms at N (exact for integer or rational N)."""
        N = Fraction(N)
        return sum((c / N ** (self.leading_exponent + j) for j, c in enumerate(self.coefficients)), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.truncation_order == other.truncation_order and self.terms() == other.terms()

    def to_json(self) -> dict:
        s = self.normalized()
        return {
            "leading_exponent": s.leading_exponent,
            "coefficients": [_frac_str(c) for c in s.coefficients],
            "truncation_order": s.truncation_order,
        }

    def __repr__(self):
        if not self.terms():
            return "O(N^-%d)" % (self.truncation_order + 1)
        parts = ["%s*N^-%d" % (_frac_str(v), k) for k, v in sorted(self.terms().items())]
        return " + ".join(parts) + " + O(N^-%d)" % (self.truncation_order + 1)


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)

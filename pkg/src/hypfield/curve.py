"""Curve-side computations: the defining polynomial, its discriminant, and
membership in the discriminant hypersurface."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exactmath import sylvester_resultant
from .polyring import Poly, la
from .relations import GenusContext


@dataclass(frozen=True)
class LambdaVector:
    genus: int
    values: Mapping[int, Fraction]  # s -> value, s in {4, 6, ..., 4g+2}

    def __post_init__(self):
        expected = set(range(4, 4 * self.genus + 3, 2))
        if set(self.values) != expected:
            raise ValueError(
                f"parameter indices {sorted(self.values)} != {sorted(expected)}"
            )

    @classmethod
    def from_sequence(cls, genus: int, seq) -> "LambdaVector":
        indices = list(range(4, 4 * genus + 3, 2))
        seq = list(seq)
        if len(seq) != len(indices):
            raise ValueError(f"expected {len(indices)} parameters, got {len(seq)}")
        return cls(genus, {s: Fraction(v) for s, v in zip(indices, seq)})


def curve_poly(lv: LambdaVector):
    """Monic degree-(2g+1) coefficient sequence, leading term first.

    The coefficient of x^(2g+1-m) is la_{2m} for m >= 2 and zero at x^(2g).
    """
    g = lv.genus
    coeffs = [Fraction(1), Fraction(0)]
    for m in range(2, 2 * g + 2):
        coeffs.append(Fraction(lv.values[2 * m]))
    return coeffs


def _derivative(coeffs):
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def discriminant(lv: LambdaVector) -> Fraction:
    """disc(f) = (-1)^(n(n-1)/2) res(f, f') for the monic curve polynomial."""
    f = curve_poly(lv)
    n = len(f) - 1
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * sylvester_resultant(f, _derivative(f))


def in_sigma(lv: LambdaVector) -> bool:
    """True iff the curve polynomial has a multiple root."""
    return discriminant(lv) == 0


def symbolic_discriminant(ctx: GenusContext) -> Poly:
    """The discriminant as a polynomial in the parameter symbols."""
    coeffs = [Poly.one(), Poly.zero()]
    for m in range(2, 2 * ctx.g + 2):
        coeffs.append(Poly.symbol(la(2 * m)))
    n = len(coeffs) - 1
    deriv = [Fraction(n - i) * c for i, c in enumerate(coeffs[:-1])]
    res = sylvester_resultant(coeffs, deriv)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res

"""Exact constructors for the three relation families.

Every relation is represented as a left-minus-right residual polynomial, so
"reduces to zero" is the single verification predicate used everywhere
downstream.  The two-index cutoff (symbols with an index >= 2g+1 vanish) and
the Kronecker-delta bookkeeping live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polyring import Poly, Symbol, XiSeries, b1, b2, b3, la, w


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class GenusContext:
    g: int

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("genus must be >= 1")

    @property
    def odd_indices(self) -> tuple:
        return tuple(range(1, 2 * self.g, 2))

    @property
    def lambda_indices(self) -> tuple:
        return tuple(range(4, 4 * self.g + 3, 2))

    @property
    def w_pairs(self) -> tuple:
        odd = [k for k in self.odd_indices if k >= 3]
        return tuple((k, l) for k in odd for l in odd if k <= l)


@dataclass(frozen=True)
class RelationId:
    family: str  # "BEL1" or "BEL2"
    indices: tuple

    def __str__(self):
        return f"{self.family}[{','.join(str(i) for i in self.indices)}]"


def _check_odd_index(ctx: GenusContext, i: int):
    if i % 2 == 0 or i < 1 or i > 2 * ctx.g - 1:
        raise IndexOutOfRange(f"index {i} not odd in 1..{2 * ctx.g - 1}")


def pp_symbol(ctx: GenusContext, k: int, l: int) -> Poly:
    """Two-index function as a polynomial: cutoff, symmetry and naming.

    Returns 0 when either index reaches 2g+1, the b1 generator when the
    smaller index is 1, and the canonical w symbol otherwise.
    """
    if k < 1 or l < 1 or k % 2 == 0 or l % 2 == 0:
        raise IndexOutOfRange(f"two-index arguments must be odd positive, got ({k},{l})")
    if k >= 2 * ctx.g + 1 or l >= 2 * ctx.g + 1:
        return Poly.zero()
    a, c = min(k, l), max(k, l)
    if a == 1:
        return Poly.symbol(b1(c))
    return Poly.symbol(w(a, c))


def bel1(ctx: GenusContext, i: int) -> Poly:
    """Residual of the first relation family at odd index i."""
    _check_odd_index(ctx, i)
    res = (
        Poly.symbol(b3(i))
        - 6 * Poly.symbol(b1(1)) * Poly.symbol(b1(i))
        + 2 * pp_symbol(ctx, 3, i)
        - 6 * pp_symbol(ctx, 1, i + 2)
    )
    if i == 1:
        res = res - 2 * Poly.symbol(la(4))
    return res


def bel2(ctx: GenusContext, i: int, j: int) -> Poly:
    """Residual of the second (quadratic) relation family at (i, j)."""
    _check_odd_index(ctx, i)
    _check_odd_index(ctx, j)
    p1i = Poly.symbol(b1(i))
    p1j = Poly.symbol(b1(j))
    rhs = (
        4 * Poly.symbol(b1(1)) * p1i * p1j
        + 4 * pp_symbol(ctx, 1, i + 2) * p1j
        + 4 * p1i * pp_symbol(ctx, 1, j + 2)
        - 2 * pp_symbol(ctx, 3, i) * p1j
        - 2 * p1i * pp_symbol(ctx, 3, j)
        - 2
        * (
            pp_symbol(ctx, i + 4, j)
            - 2 * pp_symbol(ctx, i + 2, j + 2)
            + pp_symbol(ctx, i, j + 4)
        )
    )
    delta_la4 = Poly.zero()
    if i == 1:
        delta_la4 = delta_la4 + p1j
    if j == 1:
        delta_la4 = delta_la4 + p1i
    rhs = rhs + 2 * Poly.symbol(la(4)) * delta_la4
    factor = 2 * (1 if i == j else 0) + (1 if i - 2 == j else 0) + (1 if i == j - 2 else 0)
    if factor:
        s = i + j + 4
        # the delta factor vanishes unless |i-j| <= 2, which keeps s <= 4g+2
        assert s in ctx.lambda_indices, (i, j, s)
        rhs = rhs + 2 * factor * Poly.symbol(la(s))
    return Poly.symbol(b2(i)) * Poly.symbol(b2(j)) - rhs


def generator_series(ctx: GenusContext, level: int) -> XiSeries:
    """The series with the level-1/2/3 generators at powers 1..g."""
    maker = {1: b1, 2: b2, 3: b3}[level]
    return XiSeries.from_terms(
        ctx.g, {i: Poly.symbol(maker(2 * i - 1)) for i in range(1, ctx.g + 1)}
    )


def parameter_series(ctx: GenusContext) -> XiSeries:
    """xi^-1 plus the curve parameters at powers 1..2g."""
    terms = {-1: Poly.one()}
    for i in range(1, 2 * ctx.g + 1):
        terms[i] = Poly.symbol(la(2 * i + 2))
    return XiSeries.from_terms(ctx.g, terms)


def l1_rhs(ctx: GenusContext) -> XiSeries:
    """The bracketed generating-series expression whose xi-coefficients carry
    the curve parameters: b2^2 + 2 b3 (1 - b1) + 4 (xi^-1 + 2 b1_1)(1 - b1)^2."""
    bs1 = generator_series(ctx, 1)
    bs2 = generator_series(ctx, 2)
    bs3 = generator_series(ctx, 3)
    one = XiSeries.from_terms(ctx.g, {0: Poly.one()})
    xim1 = XiSeries.from_terms(ctx.g, {-1: Poly.one()})
    one_minus_b1 = one - bs1
    pole_part = xim1 + XiSeries.from_terms(ctx.g, {0: 2 * Poly.symbol(b1(1))})
    return bs2 * bs2 + 2 * (bs3 * one_minus_b1) + 4 * (pole_part * (one_minus_b1 * one_minus_b1))


def l1_residual(ctx: GenusContext) -> XiSeries:
    """4 m(xi) minus the bracketed expression; vanishes coefficientwise when
    the parameter symbols take their derived values."""
    return 4 * parameter_series(ctx) - l1_rhs(ctx)

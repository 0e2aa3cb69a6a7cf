"""Exact rational arithmetic, dense rational matrices, rank and resultants.

Rational numbers are plain :class:`fractions.Fraction` values.  The stdlib
type already keeps every value reduced with a positive denominator and
serializes as ``num/den`` (just ``n`` when the denominator is 1), which is
exactly the canonical form used throughout this package.

Rank is computed by fraction-free (Bareiss) elimination on an integer
rescaling of the matrix, which keeps intermediate entries as minors of the
input instead of letting numerators and denominators blow up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence


class EmptyPolynomial(ValueError):
    """Resultant requested for a polynomial with no coefficients at all."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def format_rational(q: Fraction) -> str:
    """``num/den`` in lowest terms, ``n`` when the denominator is 1."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable dense matrix of Fractions, row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(as_fraction(x) for x in r)
        return cls(nrows, ncols, tuple(flat))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def rank(self) -> int:
        return rank_exact(self)


def _integer_rows(m: RationalMatrix) -> list:
    """Clear denominators row by row; row scaling does not change rank."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        mult = lcm(*(f.denominator for f in row)) if row else 1
        out.append([int(f * mult) for f in row])
    return out


def rank_exact(m: RationalMatrix) -> int:
    """Rank over Q by fraction-free Gaussian elimination. Exact, no tolerance."""
    a = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                # Bareiss step: the division by the previous pivot is exact.
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        rank += 1
    return rank


def _det_bareiss_int(a: list) -> int:
    """Determinant of a square integer matrix, fraction-free with row swaps."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_exact(m: RationalMatrix) -> Fraction:
    """Exact determinant of a square matrix of Fractions."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if m.rows == 0:
        return Fraction(1)
    a = []
    scale = Fraction(1)
    for i in range(m.rows):
        row = m.row(i)
        mult = lcm(*(f.denominator for f in row))
        scale *= mult
        a.append([int(f * mult) for f in row])
    return Fraction(_det_bareiss_int(a), 1) / scale


def det_generic(rows: list):
    """Determinant over any commutative ring (entries support +, -, *).

    Dynamic programming over column subsets; only viable for small matrices
    but places no divisibility requirement on the entries, so it works for
    polynomial entries where Bareiss does not apply directly.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    # state: bitmask of used columns -> signed minor of the first popcount rows
    states = {0: 1}
    for r in range(n):
        new = {}
        for mask, val in states.items():
            if not val:
                continue
            for c in range(n):
                bit = 1 << c
                if mask & bit:
                    continue
                e = rows[r][c]
                if not e:
                    continue
                # placing row r in column c adds one inversion per used
                # column above c
                inversions = (mask >> (c + 1)).bit_count()
                key = mask | bit
                contrib = val * e if inversions % 2 == 0 else -(val * e)
                if key in new:
                    new[key] = new[key] + contrib
                else:
                    new[key] = contrib
        states = new
    full = (1 << n) - 1
    return states.get(full, 0 * rows[0][0])


def sylvester_matrix(f: Sequence, h: Sequence) -> list:
    """Sylvester matrix of two polynomials given by descending coefficients."""
    if len(f) == 0 or len(h) == 0:
        raise EmptyPolynomial("polynomial with degree < 0")
    n = len(f) - 1
    m = len(h) - 1
    size = n + m
    rows = []
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(f):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(h):
            row[i + j] = c
        rows.append(row)
    return rows


def sylvester_resultant(f: Sequence, h: Sequence):
    """Determinant of the Sylvester matrix of f and h.

    Coefficients are listed from the leading term down to the constant.
    Entries may be Fractions or any ring elements supporting +, -, *.
    """
    if len(f) == 0 or len(h) == 0:
        raise EmptyPolynomial("polynomial with degree < 0")
    n = len(f) - 1
    m = len(h) - 1
    if n + m == 0:
        return Fraction(1)
    rows = sylvester_matrix(f, h)
    if all(isinstance(e, (Fraction, int)) for row in rows for e in row):
        mat = RationalMatrix.from_rows(rows)
        return det_exact(mat)
    return det_generic(rows)

"""Graded polynomial ring and truncated xi-series.

Ring laws are property-tested; the series product is checked against a
naive dict-based convolution oracle written independently here.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypfield.polyring import (
    MIXED,
    OffsetUnderflow,
    Poly,
    Symbol,
    XiSeries,
    b1,
    b2,
    b3,
    homogeneous_weight,
    la,
    mono_weight,
    w,
)

SYMS = [b1(1), b1(3), b2(1), b2(3), b3(1), b3(5), w(3, 3), w(3, 5), la(4), la(8)]

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


@st.composite
def monomials(draw):
    picks = draw(st.lists(st.sampled_from(SYMS), max_size=3))
    exps = {}
    for s in picks:
        exps[s] = exps.get(s, 0) + 1
    return tuple(sorted(exps.items(), key=lambda it: it[0].key))


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(monomials(), coeffs, max_size=4))
    return Poly(terms)


# --- symbols ----------------------------------------------------------------

@pytest.mark.parametrize(
    "bad",
    [
        lambda: b1(2),
        lambda: b2(0),
        lambda: b3(-1),
        lambda: w(2, 3),
        lambda: w(1, 3),
        lambda: Symbol("w", (5, 3)),
        lambda: la(3),
        lambda: la(2),
        lambda: Symbol("zz", (1,)),
    ],
)
def test_symbol_validation(bad):
    with pytest.raises(ValueError):
        bad()


@pytest.mark.parametrize(
    "sym,weight,name",
    [
        (b1(1), 2, "b1_1"),
        (b1(3), 4, "b1_3"),
        (b2(1), 3, "b2_1"),
        (b3(5), 8, "b3_5"),
        (w(3, 5), 8, "w_3_5"),
        (la(10), 10, "la_10"),
    ],
)
def test_symbol_weight_and_name(sym, weight, name):
    assert sym.weight == weight
    assert sym.name == name


def test_w_constructor_sorts_indices():
    assert w(5, 3) == w(3, 5)


# --- ring laws --------------------------------------------------------------

@given(polys(), polys(), polys())
@settings(max_examples=50, deadline=None)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + Poly.zero() == p
    assert p * Poly.one() == p
    assert p - p == Poly.zero()


@given(polys(), st.integers(0, 4))
@settings(max_examples=30, deadline=None)
def test_pow_matches_repeated_product(p, n):
    expected = Poly.one()
    for _ in range(n):
        expected = expected * p
    assert p ** n == expected


def test_pow_negative_rejected():
    with pytest.raises(ValueError):
        Poly.one() ** -1


@given(polys())
@settings(max_examples=30, deadline=None)
def test_scalar_coercion(p):
    assert 2 * p == p + p
    assert p + 0 == p
    assert 1 - p == Poly.one() - p


# --- substitution and evaluation -------------------------------------------

ENV = {
    b1(1): Poly.symbol(b2(1)) + Poly.const(Fraction(1, 2)),
    w(3, 5): Poly.symbol(b1(3)) * Poly.symbol(b3(1)),
    la(4): Poly.const(2),
}


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_substitute_is_ring_homomorphism(p, q):
    assert (p + q).substitute(ENV) == p.substitute(ENV) + q.substitute(ENV)
    assert (p * q).substitute(ENV) == p.substitute(ENV) * q.substitute(ENV)


@given(polys())
@settings(max_examples=40, deadline=None)
def test_substitute_commutes_with_evaluation(p):
    rng = random.Random(17)
    point = {s: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for s in SYMS}
    composed = dict(point)
    for sym, image in ENV.items():
        composed[sym] = image.evaluate(point)
    assert p.substitute(ENV).evaluate(point) == p.evaluate(composed)


def test_substitute_empty_env_is_identity():
    p = Poly.symbol(b1(1)) * 3 + 1
    assert p.substitute({}) is p


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_diff_product_rule(p, q):
    s = b1(1)
    assert (p * q).diff(s) == p.diff(s) * q + p * q.diff(s)


def test_diff_basics():
    x = b1(1)
    p = Poly.symbol(x) ** 3
    assert p.diff(x) == 3 * Poly.symbol(x) ** 2
    assert Poly.const(5).diff(x) == Poly.zero()
    assert Poly.symbol(b2(1)).diff(x) == Poly.zero()


# --- canonical text ---------------------------------------------------------

def test_str_canonical_examples():
    p = Fraction(1, 2) * Poly.symbol(b3(1)) - 3 * Poly.symbol(b1(1)) ** 2
    assert str(p) == "-3*b1_1^2 + 1/2*b3_1"
    assert str(Poly.zero()) == "0"
    assert str(Poly.const(Fraction(5, 3))) == "5/3"
    assert str(Poly.symbol(w(3, 5)) * Poly.symbol(b1(1))) == "b1_1*w_3_5"


def test_sorted_terms_graded_descending():
    p = Poly.symbol(b1(1)) + Poly.symbol(b1(1)) ** 3 + Poly.const(1)
    weights = [mono_weight(m) for m, _ in p.sorted_terms()]
    assert weights == sorted(weights, reverse=True)


# --- grading ----------------------------------------------------------------

def test_homogeneous_weight():
    assert homogeneous_weight(Poly.zero()) == 0
    assert homogeneous_weight(Poly.symbol(b1(1)) ** 2) == 4
    assert homogeneous_weight(Poly.symbol(b3(1)) - Poly.symbol(b1(1)) ** 2) == 4
    mixed = Poly.symbol(b1(1)) + Poly.one()
    assert homogeneous_weight(mixed) is MIXED


# --- xi-series --------------------------------------------------------------

def naive_product(g, s1, s2):
    """Independent convolution: dict of power -> Poly, then truncate/raise."""
    acc = {}
    for pa in range(-1, 2 * g + 1):
        for pb in range(-1, 2 * g + 1):
            term = s1[pa] * s2[pb]
            if term.is_zero():
                continue
            p = pa + pb
            if p < -1:
                raise OffsetUnderflow("underflow")
            if p <= 2 * g:
                acc[p] = acc.get(p, Poly.zero()) + term
    return XiSeries.from_terms(g, acc)


def random_series(g, rng):
    terms = {}
    for p in range(-1, 2 * g + 1):
        if rng.random() < 0.6:
            terms[p] = Poly.const(Fraction(rng.randint(-3, 3)))
    return XiSeries.from_terms(g, terms)


def test_series_product_matches_convolution_oracle():
    rng = random.Random(5)
    for g in (1, 2, 3):
        for _ in range(20):
            s1 = random_series(g, rng)
            s2 = random_series(g, rng)
            try:
                expected = naive_product(g, s1, s2)
            except OffsetUnderflow:
                with pytest.raises(OffsetUnderflow):
                    _ = s1 * s2
                continue
            assert s1 * s2 == expected


def test_series_truncation_above_top_power():
    g = 1
    s = XiSeries.from_terms(g, {2: Poly.one()})
    t = XiSeries.from_terms(g, {1: Poly.one()})
    assert (s * t).is_zero()


def test_series_underflow_raises():
    g = 1
    pole = XiSeries.from_terms(g, {-1: Poly.one()})
    with pytest.raises(OffsetUnderflow):
        _ = pole * pole


def test_series_add_scalar_and_index():
    g = 2
    s = XiSeries.from_terms(g, {-1: Poly.one(), 3: Poly.const(2)})
    assert s[-1] == Poly.one()
    assert s[0].is_zero()
    assert (s + s)[3] == Poly.const(4)
    assert (s * Fraction(1, 2))[3] == Poly.one()
    assert (-s)[-1] == Poly.const(-1)
    with pytest.raises(IndexError):
        _ = s[5]
    with pytest.raises(ValueError):
        XiSeries.from_terms(g, {5: Poly.one()})


def test_series_genus_mismatch():
    a = XiSeries.from_terms(1, {0: Poly.one()})
    b = XiSeries.from_terms(2, {0: Poly.one()})
    with pytest.raises(ValueError):
        _ = a + b

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from brute import hilbert_brute, is_square_at, residues
from obstructor.errors import DomainError
from obstructor.localarith import (
    HALF,
    REAL,
    ZERO,
    FactoredRational,
    Place,
    Z2Value,
    as_factored,
    factor,
    hilbert,
    hilbert_all,
    is_local_square,
    legendre,
    parse_rational,
    square_class_representatives,
    support,
    valuation,
)

nonzero = st.integers(-10 ** 6, 10 ** 6).filter(bool)
small = st.integers(-300, 300).filter(bool)
rationals = st.builds(Fraction, nonzero, st.integers(1, 10 ** 6))


def test_factor_examples():
    f = factor(221)
    assert f.sign == 1 and f.factors == ((13, 1), (17, 1))
    g = factor(-5, 8)
    assert g.sign == -1 and dict(g.factors) == {5: 1, 2: -3}
    assert g.value == Fraction(-5, 8)
    one = factor(1)
    assert one.sign == 1 and one.factors == ()


def test_factor_rejects_zero_and_huge():
    with pytest.raises(DomainError):
        factor(0)
    with pytest.raises(DomainError):
        factor(3, 0)
    with pytest.raises(DomainError):
        factor(2 ** 64)


@given(rationals)
def test_factored_value_roundtrip(x):
    assert as_factored(x).value == x


def test_unfactored_inputs_refused():
    with pytest.raises(TypeError):
        hilbert(2.0, 3, REAL)
    with pytest.raises(TypeError):
        as_factored(True)


def test_parse_rational():
    assert parse_rational("-5/8") == Fraction(-5, 8)
    assert parse_rational(" 13 ") == 13
    with pytest.raises(ValueError):
        parse_rational("1.5")
    with pytest.raises(DomainError):
        parse_rational("1/0")


def test_place_ordering_and_parse():
    assert sorted([Place(7), REAL, Place(2)]) == [REAL, Place(2), Place(7)]
    assert Place.parse("real") == REAL and str(Place.parse("13")) == "13"
    with pytest.raises(DomainError):
        Place(15)


def test_z2_arithmetic():
    assert HALF + HALF == ZERO and ZERO + HALF == HALF
    assert str(HALF) == "1/2" and Z2Value.parse("0") == ZERO
    assert HALF.as_fraction() == Fraction(1, 2)


def test_valuation():
    assert valuation(factor(-5, 8), Place(2)) == -3
    assert valuation(Fraction(50, 3), 5) == 2
    assert valuation(7, 3) == 0


def test_legendre_matches_residue_table():
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        for u in range(1, p):
            assert legendre(u, p) == (ZERO if u in residues(p) else HALF)
    with pytest.raises(DomainError):
        legendre(10, 5)


def test_symbol_examples():
    assert hilbert(5, 13, Place(5)) == HALF
    assert hilbert(-1, -1, REAL) == HALF
    assert hilbert(-1, -1, Place(2)) == HALF
    assert hilbert(2, 7, Place(7)) == ZERO
    assert hilbert_all(5, 13).nonzero_places() == [Place(5), Place(13)]


def test_local_squares():
    assert is_local_square(17, Place(2))
    assert is_local_square(17, Place(13))
    assert not is_local_square(5, Place(7))
    assert is_local_square(221, Place(5))
    assert not is_local_square(-1, REAL)
    assert is_local_square(Fraction(9, 4), Place(3))


@pytest.mark.parametrize("p", [None, 2, 3, 5, 7, 13, 17])
def test_local_square_against_residues(p):
    v = REAL if p is None else Place(p)
    for n in list(range(-200, 0)) + list(range(1, 200)):
        assert is_local_square(n, v) == is_square_at(n, p)


@pytest.mark.parametrize("p", [None, 2, 3, 5, 7, 11, 13])
def test_hilbert_against_norm_enumeration(p):
    v = REAL if p is None else Place(p)
    vals = [n for n in range(-30, 31) if n]
    for x in vals:
        for y in vals:
            assert hilbert(x, y, v).bit == hilbert_brute(x, y, p), (x, y, p)


@given(nonzero, nonzero)
def test_product_formula(x, y):
    assert hilbert_all(x, y).total() == ZERO


@given(rationals, rationals)
def test_product_formula_rationals(x, y):
    assert hilbert_all(x, y).total() == ZERO


@given(small, small, small)
def test_bilinear_and_symmetric(x1, x2, y):
    for v in support(x1, x2, y):
        assert hilbert(x1 * x2, y, v) == hilbert(x1, y, v) + hilbert(x2, y, v)
        assert hilbert(x1, y, v) == hilbert(y, x1, v)


@given(small, small, st.sampled_from([3, 5, 7, 11, 13, 101, 7919]))
def test_symbol_vanishes_off_support(x, y, p):
    assume(x % p and y % p)
    assert hilbert(x, y, Place(p)) == ZERO
    assert Place(p) not in support(x, y)


@pytest.mark.parametrize("p", [None, 2, 3, 5, 7, 13])
def test_square_iff_symbol_vanishes_on_class_basis(p):
    v = REAL if p is None else Place(p)
    reps = square_class_representatives(v)
    assert len(reps) == {None: 2, 2: 8}.get(p, 4)
    for x in range(-60, 61):
        if x:
            trivial = all(hilbert(x, r, v) == ZERO for r in reps)
            assert trivial == is_local_square(x, v)


def test_square_classes_are_distinct():
    for p in (None, 2, 3, 5, 7):
        v = REAL if p is None else Place(p)
        reps = square_class_representatives(v)
        for i, r in enumerate(reps):
            for s in reps[i + 1:]:
                assert not is_local_square(r * s.inverse(), v)


def test_factored_rational_validates():
    with pytest.raises(DomainError):
        FactoredRational(2)
    with pytest.raises(DomainError):
        FactoredRational(1, ((3, 1), (2, 1)))

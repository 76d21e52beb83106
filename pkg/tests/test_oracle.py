import logging
import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from brute import brute_is_prime, hilbert_brute
from obstructor.errors import DomainError, UsageError
from obstructor.localarith import REAL, ZERO, Place, factor, hilbert, hilbert_all, is_local_square
from obstructor.obstruction import analyze, evaluate, normalize, report_places
from obstructor.oracle import (
    decide_by_norm_classes,
    global_point_search,
    local_solvable,
    norm_representable_mod_p3,
    point_key,
    sample_local_points,
)

PRIMES_100 = [p for p in range(2, 101) if brute_is_prime(p)]
squarefree = [n for n in range(-30, 31) if n and factor(n).squarefree_part() == n]


# local solvability


def test_local_counterexample_instance():
    p = normalize(13, 17, 5)
    rng = random.Random(5)
    extra = rng.sample([q for q in range(19, 2000) if brute_is_prime(q)], 10)
    for v in report_places(p) + [Place(q) for q in extra]:
        assert local_solvable(p, v)


def test_local_witness_examples():
    w = local_solvable(normalize(3, 5, 7), REAL)
    assert (w.r1.value, w.r2.value) == (1, 1)
    # the full list of valid class pairs at 5, by norm enumeration: (1,1), (1,2), (2,1), (2,2)
    w = local_solvable(normalize(17, 13, 5), Place(5))
    assert (w.r1.value, w.r2.value) == (1, 1)
    assert hilbert_brute(5, 221, 5) == 0


@given(st.sampled_from(squarefree), st.sampled_from(squarefree), st.sampled_from(squarefree))
def test_everywhere_locally_solvable(a, b, c):
    p = normalize(a, b, c)
    for v in report_places(p) + [Place(31), Place(37)]:
        w = local_solvable(p, v)
        assert w, (a, b, c, v)
        assert hilbert(w.r1, p.fa, v) == ZERO
        assert hilbert(w.r2, p.fb, v) == ZERO
        assert hilbert(p.fc * w.r1 * w.r2, p.fab, v) == ZERO


# global point search


def lexfirst(a, b, c, height):
    """Naive d = 1 enumeration in the same pair order, written without any dictionary."""
    pairs = sorted(product(range(height + 1), repeat=2), key=lambda q: (max(q), q[1], q[0]))
    for X, Y in pairs:
        n1 = X * X - a * Y * Y
        if not n1 or c % n1:
            continue
        for Z, T in pairs:
            n2 = Z * Z - b * T * T
            if not n2 or (c // n1) % n2:
                continue
            for U, W in pairs:
                if n1 * n2 * (U * U - a * b * W * W) == c:
                    return (X, Y, Z, T, U, W)
    return None


def test_point_search_examples():
    g = global_point_search(normalize(17, 13, 13), 10)
    assert g.integers == (4, 1, 0, 1, 1, 0, 1)
    assert g.integers[:6] == lexfirst(17, 13, 13, 10)
    assert evaluate(normalize(17, 13, 13), g.point, normalized=False) == 13
    for a, b in ((13, 17), (-1, 3), (2, 5), (-7, -11)):
        assert global_point_search(normalize(a, b, 1), 4).integers == (1, 0, 1, 0, 1, 0, 1)
    assert global_point_search(normalize(13, 17, 5), 50) is None


def test_point_search_maps_back_to_original():
    p = normalize(17 * 4, 13 * 9, 13 * 25)
    g = global_point_search(p, 10)
    assert evaluate(p, g.point, normalized=False) == 13 * 25


def test_point_search_denominators():
    p = normalize(-15, -14, 6)
    assert lexfirst(-15, -14, 6, 12) is None  # nothing integral
    g = global_point_search(p, 12)
    assert g.integers == (3, 1, 1, 0, 4, 0, 2)
    assert g.normalized == (Fraction(3, 2), Fraction(1, 2), Fraction(1, 2), 0, 2, 0)
    assert evaluate(p, g.normalized) == 6


def test_point_search_cap(monkeypatch):
    monkeypatch.setenv("OBSTRUCTOR_MAX_HEIGHT", "30")
    with pytest.raises(UsageError):
        global_point_search(normalize(17, 13, 13), 31)
    monkeypatch.setenv("OBSTRUCTOR_MAX_HEIGHT", "nope")
    with pytest.raises(UsageError):
        global_point_search(normalize(17, 13, 13), 5)


def test_point_key_order():
    assert point_key((1, 0)) < point_key((0, 1)) < point_key((2, 0))


# norm classes


def test_norm_classes_examples():
    w = decide_by_norm_classes(normalize(17, 13, 13))
    assert (w.r1, w.r2, w.r3) == (1, 1, 13)
    for r, base in ((w.r1, 17), (w.r2, 13), (w.r3, 221)):
        assert all(hilbert_brute(r, base, q) == 0 for q in (None, 2, 13, 17))
    # the pair (1, 13) is another solution of the same system
    assert all(hilbert_brute(13, 13, q) == 0 for q in (None, 2, 13, 17))
    w1 = decide_by_norm_classes(normalize(5, 7, 1))
    assert (w1.r1, w1.r2, w1.r3) == (1, 1, 1)
    assert decide_by_norm_classes(normalize(13, 17, 5)) is None
    assert decide_by_norm_classes(normalize(13, 17, 5), PRIMES_100) is None
    with pytest.raises(DomainError):
        decide_by_norm_classes(normalize(13, 17, 5), [9])


@given(st.sampled_from(squarefree), st.sampled_from(squarefree), st.sampled_from(squarefree))
def test_norm_witness_is_valid(a, b, c):
    p = normalize(a, b, c)
    w = decide_by_norm_classes(p, [3, 5, 7])
    if w is not None:
        assert factor(w.r1 * w.r2 * w.r3 * p.nc).is_square()
        for r, base in ((w.r1, p.na), (w.r2, p.nb), (w.r3, p.nab)):
            assert not hilbert_all(r, base).nonzero_places()


def test_agreement_sample():
    rng = random.Random(11)
    seen = insoluble = 0
    while seen < 150:
        a, b, c = (rng.choice(squarefree) for _ in range(3))
        p = normalize(a, b, c)
        if p.degenerate:
            continue
        seen += 1
        rep = analyze(a, b, c)
        nw = decide_by_norm_classes(p, PRIMES_100)
        if rep.verdict:
            pt = None if nw else global_point_search(p, 60)
            assert nw or pt, (a, b, c)
        else:
            insoluble += 1
            assert nw is None and global_point_search(p, 40) is None
    assert insoluble > 0


# local sampling


def test_sampler_biquadratic_place_sees_both_values():
    for abc, q in (((2, 5, 3), 2), ((2, 3, 7), 3), ((3, 7, 1), 2)):
        p = normalize(*abc)
        v = Place(q)
        assert not any(is_local_square(x, v) for x in (p.na, p.nb, p.nab))
        res = sample_local_points(p, v, 200)
        assert res.observed() == {"0", "1/2"}
        for s in res.values:
            x, y, z, t, u, w = s.point
            lhs = (x * x - p.na * y * y) * (z * z - p.nb * t * t) * (u * u - p.nab * w * w) * s.scale
            assert lhs == p.nc and is_local_square(s.scale, v)


def test_sampler_b_square_place_all_zero():
    p = normalize(13, 17, 5)
    assert is_local_square(17, Place(2))
    res = sample_local_points(p, Place(2), 200)
    assert not res.exhausted and res.observed() == {"0"}


def test_sampler_identity_point_first():
    res = sample_local_points(normalize(13, 17, 1), Place(5), 5)
    first = res.values[0]
    assert first.point == tuple(Fraction(x) for x in (1, 0, 1, 0, 1, 0)) and first.scale == 1
    assert first.value == ZERO


def test_sampler_exhaustion(caplog):
    with caplog.at_level(logging.WARNING):
        res = sample_local_points(normalize(2, 5, 3), Place(2), 10 ** 6, precision=2)
    assert res.exhausted and res.values
    assert "exhausted" in caplog.text


# mod p³ norm check


@given(st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]),
       st.integers(-200, 200), st.integers(-200, 200))
def test_norm_mod_p3_matches_symbol(p, r, a):
    assume(r and a)
    r, a = factor(r).squarefree_part(), factor(a).squarefree_part()
    expected = hilbert(r, a, Place(p)) == ZERO
    assert norm_representable_mod_p3(r, a, p) == expected


def test_norm_mod_p3_rejects_two():
    with pytest.raises(DomainError):
        norm_representable_mod_p3(3, 5, 2)

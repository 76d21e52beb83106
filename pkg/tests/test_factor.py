import pytest
from hypothesis import given
from hypothesis import strategies as st

from brute import brute_is_prime, trial_factor
from obstructor.errors import DomainError, ResourceError
from obstructor.factor import factor_int, is_prime


def test_is_prime_small_range():
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if brute_is_prime(n)]


def test_is_prime_strong_pseudoprimes():
    # Carmichael numbers and a strong pseudoprime to several small bases
    for n in (561, 1105, 1729, 3215031751, 3825123056546413051):
        assert not is_prime(n)
    assert is_prime(2 ** 61 - 1)


@given(st.integers(1, 10 ** 7))
def test_factor_matches_trial_division(n):
    assert factor_int(n) == trial_factor(n)


def test_factor_semiprimes():
    p, q = 1000003, 998244353
    assert factor_int(p * q) == {p: 1, q: 1}
    assert factor_int(-(2 ** 61 - 1) * 9) == {3: 2, 2 ** 61 - 1: 1}


def test_factor_zero():
    with pytest.raises(DomainError):
        factor_int(0)


def test_budget_exhaustion_reports_partial():
    n = 12 * 1000003 * 998244353
    with pytest.raises(ResourceError) as exc:
        factor_int(n, budget=1)
    found, rest = exc.value.partial
    assert found == {2: 2, 3: 1}
    assert rest == 1000003 * 998244353

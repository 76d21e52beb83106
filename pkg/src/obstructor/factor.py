"""Deterministic integer factorization: trial division, Miller–Rabin, Brent's rho."""
from __future__ import annotations

from math import gcd, isqrt

from .errors import DomainError, ResourceError

TRIAL_LIMIT = 10_000
RHO_BUDGET = 2_000_000  # total rho iterations per factor() call

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)  # exact below 3.3e24


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return [p for p in range(limit + 1) if sieve[p]]


SMALL_PRIMES = _small_primes(TRIAL_LIMIT)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_trial(n: int) -> bool:
    """Primality by trial division; only for desk-scale n."""
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if p * p > n:
            return True
        if n % p == 0:
            return n == p
    return is_prime(n)


def _brent(n: int, c: int, budget: list[int]) -> int | None:
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = 2
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
        budget[0] -= r
        if budget[0] <= 0:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def factor_int(n: int, budget: int = RHO_BUDGET) -> dict[int, int]:
    """Prime factorization of |n| as {p: e}; raises ResourceError with the partial result."""
    if n == 0:
        raise DomainError("cannot factor zero")
    n = abs(n)
    out: dict[int, int] = {}
    for p in SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    left = [budget]
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = None
        for c in range(1, 50):
            d = _brent(m, c, left)
            if d is not None or left[0] <= 0:
                break
        if d is None:
            raise ResourceError(f"factorization of {m} exceeded the rho budget", partial=(dict(out), m))
        stack.extend((d, m // d))
    return dict(sorted(out.items()))

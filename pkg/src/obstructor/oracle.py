"""Brute-force verifiers that do not go through the obstruction criterion.

The point search and the mod p³ norm check never touch a Hilbert symbol;
the norm-class semi-decision and the local-solvability enumeration use
symbols only factor by factor, never the Brauer class itself.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import DomainError, UsageError
from .factor import is_prime
from .localarith import (
    REAL,
    FactoredRational,
    Place,
    factor,
    hilbert,
    hilbert_all,
    square_class_key,
    square_class_representatives,
)
from .obstruction import AlphaValue, VarietyParams, alpha_at_point, evaluate

log = logging.getLogger(__name__)

DEFAULT_MAX_HEIGHT = 500


def max_height() -> int:
    raw = os.environ.get("OBSTRUCTOR_MAX_HEIGHT")
    if raw is None:
        return DEFAULT_MAX_HEIGHT
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"OBSTRUCTOR_MAX_HEIGHT must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError("OBSTRUCTOR_MAX_HEIGHT must be positive")
    return cap


@dataclass(frozen=True)
class LocalWitness:
    place: Place
    r1: FactoredRational
    r2: FactoredRational

    def __bool__(self):
        return True


def local_solvable(params: VarietyParams, v: Place) -> LocalWitness | None:
    """Square classes r1, r2 at v with r1 a local norm from √a, r2 from √b and c·r1·r2 from √ab."""
    a, b, ab, c = params.fa, params.fb, params.fab, params.fc
    reps = square_class_representatives(v)
    for r1, r2 in product(reps, reps):
        if hilbert(r1, a, v) or hilbert(r2, b, v):
            continue
        if not hilbert(c * r1 * r2, ab, v):
            return LocalWitness(v, r1, r2)
    return None


@dataclass(frozen=True)
class GlobalPoint:
    integers: tuple[int, ...]  # (X, Y, Z, T, U, W, d)
    normalized: tuple[Fraction, ...]
    point: tuple[Fraction, ...]  # on the original variety


@lru_cache(maxsize=64)
def _norm_values(k: int, height: int) -> dict[int, tuple[int, int]]:
    """Each nonzero value of X² − kY² (0 ≤ X, Y ≤ height) with its least (X, Y) under point_key."""
    out: dict[int, tuple[int, int]] = {}
    for X, Y in sorted(product(range(height + 1), repeat=2), key=point_key):
        n = X * X - k * Y * Y
        if n and n not in out:
            out[n] = (X, Y)
    return out


def point_key(xy: tuple[int, int]) -> tuple[int, int, int]:
    """Height first, then |Y|, then |X|; (1, 0) precedes (0, 1)."""
    X, Y = xy
    return (max(abs(X), abs(Y)), abs(Y), abs(X))


def _divisors(n: int, bound: int) -> list[int]:
    """Signed divisors of n with absolute value at most bound."""
    n = abs(n)
    fac = factor(n).factors if n > 1 else ()
    divs = [1]
    for p, e in fac:
        divs = [d * p ** k for d in divs for k in range(e + 1) if d * p ** k <= bound]
    return sorted(divs + [-d for d in divs])


def global_point_search(params: VarietyParams, height: int) -> GlobalPoint | None:
    """Integers 0 ≤ X, Y, Z, T, U, W ≤ height and 1 ≤ d ≤ height with
    (X²−aY²)(Z²−bT²)(U²−abW²) = c·d⁶ for the normalized a, b, c.

    The smallest d wins; within it the pairs (X, Y), (Z, T), (U, W) are compared
    in that order, each by point_key.
    """
    cap = max_height()
    if height > cap:
        raise UsageError(f"height {height} exceeds the cap {cap} (OBSTRUCTOR_MAX_HEIGHT)")
    a, b, c = params.na, params.nb, params.nc
    Na = _norm_values(a, height)
    Nb = _norm_values(b, height)
    Nab = _norm_values(a * b, height)
    bound = max(abs(n) for n in (*Na, *Nb, *Nab))
    for d in range(1, height + 1):
        target = c * d ** 6
        divs = _divisors(target, bound)
        d1 = [n for n in divs if n in Na]
        d2 = [n for n in divs if n in Nb]
        best = None
        for n1 in d1:
            rest = target // n1
            for n2 in d2:
                if rest % n2:
                    continue
                n3 = rest // n2
                if n3 in Nab:
                    cand = (Na[n1], Nb[n2], Nab[n3])
                    if best is None or [point_key(q) for q in cand] < [point_key(q) for q in best]:
                        best = cand
        if best is not None:
            best = best[0] + best[1] + best[2]
            ints = best + (d,)
            norm = tuple(Fraction(x, d) for x in best)
            if evaluate(params, norm) != c:
                raise AssertionError("point search produced a non-solution")
            return GlobalPoint(ints, norm, params.to_original(norm))
    return None


@dataclass(frozen=True)
class NormWitness:
    """r1, r2, r3 are global norms from ℚ(√a), ℚ(√b), ℚ(√ab) with r1·r2·r3 ≡ c mod squares."""

    r1: int
    r2: int
    r3: int
    generators: tuple[int, ...] = field(default=(), compare=False)


def _solve_gf2(rows: list[tuple[int, int]], nvars: int) -> int | None:
    """Solve a GF(2) system given as (mask, rhs); free variables are set to 0."""
    pivots: list[tuple[int, int, int]] = []  # (column, mask, rhs)
    for mask, rhs in rows:
        for col, pm, pr in pivots:
            if mask >> col & 1:
                mask ^= pm
                rhs ^= pr
        if not mask:
            if rhs:
                return None
            continue
        col = mask.bit_length() - 1
        pivots = [(c2, m2 ^ mask, r2 ^ rhs) if m2 >> col & 1 else (c2, m2, r2) for c2, m2, r2 in pivots]
        pivots.append((col, mask, rhs))
    sol = 0
    # fully reduced: each pivot row mentions only its own pivot among pivot columns
    for col, mask, rhs in pivots:
        if rhs:
            sol |= 1 << col
    return sol


def decide_by_norm_classes(params: VarietyParams, extra_primes=()) -> NormWitness | None:
    """Look for r1, r2 supported on {-1} ∪ primes(abc) ∪ extra_primes with every factor
    a global norm (symbols vanish at all places). None means unknown, not insoluble."""
    a, b, ab, c = params.fa, params.fb, params.fab, params.fc
    primes = set(a.primes) | set(b.primes) | set(c.primes)
    for p in extra_primes:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        primes.add(p)
    gens = [-1] + sorted(primes)
    k = len(gens)
    places = [REAL] + [Place(p) for p in sorted(primes | {2})]
    fg = [factor(g) for g in gens]
    rows = []
    for v in places:
        # variables 0..k-1 are r1's exponents, k..2k-1 are r2's
        ma = sum(hilbert(g, a, v).bit << i for i, g in enumerate(fg))
        mb = sum(hilbert(g, b, v).bit << (k + i) for i, g in enumerate(fg))
        mab = sum(hilbert(g, ab, v).bit * ((1 << i) | (1 << (k + i))) for i, g in enumerate(fg))
        rows.append((ma, 0))
        rows.append((mb, 0))
        rows.append((mab, hilbert(c, ab, v).bit))
    sol = _solve_gf2(rows, 2 * k)
    if sol is None:
        return None
    r1 = r2 = 1
    for i, g in enumerate(gens):
        if sol >> i & 1:
            r1 *= g
        if sol >> (k + i) & 1:
            r2 *= g
    r3 = factor(params.nc * r1 * r2).squarefree_part()
    for r, base in ((r1, a), (r2, b), (r3, ab)):
        if hilbert_all(r, base).nonzero_places():
            raise AssertionError("norm-class solution fails the symbol re-check")
    return NormWitness(r1, r2, r3, tuple(gens))


@dataclass
class SampleResult:
    values: list[AlphaValue]
    exhausted: bool = False

    def observed(self) -> set[str]:
        return {str(s.value) for s in self.values}


def _small_pairs(k: int, bound: int):
    pairs = [(x, y) for x in range(-bound, bound + 1) for y in range(0, bound + 1)]
    pairs.sort(key=lambda p: point_key(p) + (-p[0],))
    for x, y in pairs:
        n = x * x - k * y * y
        if n:
            yield x, y, n


def sample_local_points(params: VarietyParams, v: Place, count: int, precision: int = 12) -> SampleResult:
    """Points of the normalized variety over ℚ_v, each as six rationals plus a local square λ.

    x²−ay² and z²−bt² are taken at small integer points; (u, w) is chosen so that
    u²−abw² lies in the local square class of c/((x²−ay²)(z²−bt²)), and λ absorbs
    the remaining square. ``precision`` bounds the integer coordinates searched.
    """
    if not local_solvable(params, v):
        raise DomainError(f"the variety has no points over the completion at {v}")
    a, b = params.na, params.nb
    third: dict[tuple[int, ...], tuple[int, int, int]] = {}
    for u, w, n3 in _small_pairs(a * b, precision):
        third.setdefault(square_class_key(n3, v), (u, w, n3))
    firsts = list(_small_pairs(a, precision))
    seconds = list(_small_pairs(b, precision))
    out: list[AlphaValue] = []
    # diagonal order over (first, second): for a fixed second factor the class of
    # the first is pinned by the third, so both have to move
    for s in range(len(firsts) + len(seconds) - 1):
        for i in range(max(0, s - len(seconds) + 1), min(s, len(firsts) - 1) + 1):
            x, y, n1 = firsts[i]
            z, t, n2 = seconds[s - i]
            target = Fraction(params.nc) / (n1 * n2)
            hit = third.get(square_class_key(target, v))
            if hit is None:
                continue
            u, w, n3 = hit
            lam = target / n3
            out.append(alpha_at_point(params, v, (x, y, z, t, u, w), scale=lam))
            if len(out) >= count:
                return SampleResult(out)
    log.warning("local sampler exhausted at %s after %d of %d points", v, len(out), count)
    return SampleResult(out, exhausted=True)


def norm_representable_mod_p3(r: int, a: int, p: int) -> bool:
    """x² − ay² ≡ r (mod p³) with x or y a unit, by exhaustive enumeration; p odd."""
    if p == 2 or not is_prime(p):
        raise DomainError("needs an odd prime")
    m = p ** 3
    xs = np.arange(m, dtype=np.int64)
    sq = xs * xs % m
    any_sq = np.zeros(m, dtype=bool)
    any_sq[sq] = True
    unit_sq = np.zeros(m, dtype=bool)
    unit_sq[sq[xs % p != 0]] = True
    vals = (r + a * sq) % m  # x² = r + a·y²
    unit_y = xs % p != 0
    return bool(np.any(np.where(unit_y, any_sq[vals], unit_sq[vals])))


__all__ = [
    "GlobalPoint",
    "LocalWitness",
    "NormWitness",
    "SampleResult",
    "decide_by_norm_classes",
    "global_point_search",
    "local_solvable",
    "max_height",
    "norm_representable_mod_p3",
    "sample_local_points",
]

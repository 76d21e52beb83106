"""Exact local arithmetic over ℚ: factored rationals, places, square classes, Hilbert symbols.

Symbols are valued additively in ℤ/2 ⊂ ℚ/ℤ, i.e. in {0, 1/2}.

Hilbert symbol formulas used (x = p^α·u, y = p^β·v with u, v p-adic units):

* real place: 1/2 iff x < 0 and y < 0;
* odd p: αβ·ε(p) + β·[u non-square mod p] + α·[v non-square mod p], ε(p) = (p-1)/2;
* p = 2: ε(u)ε(v) + α·ω(v) + β·ω(u), ε(u) = (u-1)/2, ω(u) = (u²-1)/8,

all read mod 2. ε and ω are homomorphisms ℤ_2^× → ℤ/2, so they are evaluated
prime by prime on the factorization of the unit part.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DomainError
from .factor import factor_int, is_prime_trial

MAX_INPUT = 2 ** 63


@dataclass(frozen=True)
class Place:
    """A place of ℚ: ``prime`` is None for the real place."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not is_prime_trial(self.prime):
            raise DomainError(f"{self.prime} is not prime")

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @classmethod
    def parse(cls, s: str) -> "Place":
        s = s.strip().lower()
        if s in ("real", "inf", "oo", "infinity"):
            return cls(None)
        return cls(int(s))

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def sort_key(self) -> tuple[int, int]:
        return (0, 0) if self.prime is None else (1, self.prime)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "real" if self.prime is None else str(self.prime)

    def __repr__(self) -> str:
        return f"Place({self})"


REAL = Place(None)


@dataclass(frozen=True)
class Z2Value:
    """An element of ℤ/2 ⊂ ℚ/ℤ, shown as 0 or 1/2."""

    bit: int = 0

    def __post_init__(self):
        object.__setattr__(self, "bit", self.bit & 1)

    def __add__(self, other: "Z2Value") -> "Z2Value":
        return Z2Value(self.bit ^ other.bit)

    __radd__ = __add__

    def __bool__(self) -> bool:
        return bool(self.bit)

    def __str__(self) -> str:
        return "1/2" if self.bit else "0"

    def __repr__(self) -> str:
        return f"Z2Value({self})"

    def as_fraction(self) -> Fraction:
        return Fraction(self.bit, 2)

    @classmethod
    def parse(cls, s: str) -> "Z2Value":
        if s == "0":
            return ZERO
        if s == "1/2":
            return HALF
        raise DomainError(f"not an element of Z/2 in Q/Z: {s!r}")


ZERO = Z2Value(0)
HALF = Z2Value(1)


def z2sum(values: Iterable[Z2Value]) -> Z2Value:
    out = ZERO
    for v in values:
        out = out + v
    return out


@dataclass(frozen=True)
class FactoredRational:
    """A nonzero rational as sign × ∏ p^e."""

    sign: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be ±1")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)) or any(e == 0 for _, e in self.factors):
            raise DomainError("factorization must list distinct primes with nonzero exponents")

    @classmethod
    def from_map(cls, sign: int, exps: Mapping[int, int]) -> "FactoredRational":
        return cls(sign, tuple(sorted((p, e) for p, e in exps.items() if e)))

    @property
    def value(self) -> Fraction:
        num, den = 1, 1
        for p, e in self.factors:
            if e > 0:
                num *= p ** e
            else:
                den *= p ** (-e)
        return Fraction(self.sign * num, den)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        exps = dict(self.factors)
        for p, e in other.factors:
            exps[p] = exps.get(p, 0) + e
        return FactoredRational.from_map(self.sign * other.sign, exps)

    def inverse(self) -> "FactoredRational":
        return FactoredRational(self.sign, tuple((p, -e) for p, e in self.factors))

    def __truediv__(self, other: "FactoredRational") -> "FactoredRational":
        return self * other.inverse()

    def __neg__(self) -> "FactoredRational":
        return FactoredRational(-self.sign, self.factors)

    def squarefree_part(self) -> int:
        """The squarefree integer in the same square class."""
        out = self.sign
        for p, e in self.factors:
            if e % 2:
                out *= p
        return out

    def is_square(self) -> bool:
        return self.sign == 1 and all(e % 2 == 0 for _, e in self.factors)

    def __str__(self) -> str:
        return str(self.value)


Rational = Union[int, Fraction, FactoredRational]


def factor(n: int, d: int = 1) -> FactoredRational:
    """Factor the rational n/d exactly."""
    if n == 0 or d == 0:
        raise DomainError("zero has no factorization")
    if abs(n) > MAX_INPUT or abs(d) > MAX_INPUT:
        raise DomainError("numerator and denominator are limited to 2^63 in absolute value")
    exps = dict(factor_int(n))
    for p, e in factor_int(d).items():
        exps[p] = exps.get(p, 0) - e
    sign = 1 if (n > 0) == (d > 0) else -1
    return FactoredRational.from_map(sign, exps)


def as_factored(x: Rational) -> FactoredRational:
    """Accept a FactoredRational or a raw integer (or Fraction); anything else is refused."""
    if isinstance(x, FactoredRational):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return factor(x)
    if isinstance(x, Fraction):
        return factor(x.numerator, x.denominator)
    raise TypeError(f"expected an integer or FactoredRational, got {type(x).__name__}")


def parse_rational(s: str) -> Fraction:
    """Parse 'n' or 'n/d' in decimal; no floating point."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        n, d = int(num), int(den)
    else:
        n, d = int(s), 1
    if d == 0:
        raise DomainError(f"zero denominator in {s!r}")
    return Fraction(n, d)


def valuation(x: Rational, p: Place | int) -> int:
    p = p.prime if isinstance(p, Place) else p
    if p is None:
        raise DomainError("valuation is defined at finite places only")
    return as_factored(x).exponent(p)


def legendre(u: int, p: int) -> Z2Value:
    """0 if u is a nonzero square mod the odd prime p, 1/2 otherwise (Euler's criterion)."""
    if p == 2:
        raise DomainError("legendre needs an odd prime")
    if u % p == 0:
        raise DomainError(f"{p} divides {u}")
    return ZERO if pow(u, (p - 1) // 2, p) == 1 else HALF


def _eps_int(u: int) -> int:
    return ((u - 1) // 2) & 1


def _omega_int(u: int) -> int:
    return ((u * u - 1) // 8) & 1


def _unit_legendre_bit(x: FactoredRational, p: int) -> int:
    """[unit part of x is a non-square mod p] for odd p."""
    bit = _eps_int(p) if x.sign < 0 else 0
    for q, e in x.factors:
        if q != p and e % 2:
            bit ^= legendre(q, p).bit
    return bit


def _unit_eps_omega(x: FactoredRational) -> tuple[int, int]:
    eps = 1 if x.sign < 0 else 0  # ε(-1) = 1, ω(-1) = 0
    om = 0
    for q, e in x.factors:
        if q != 2 and e % 2:
            eps ^= _eps_int(q)
            om ^= _omega_int(q)
    return eps, om


def square_class_key(x: Rational, v: Place) -> tuple[int, ...]:
    """A complete invariant of the class of x in ℚ_v^× / ℚ_v^{×2}."""
    x = as_factored(x)
    if v.is_real:
        return (x.sign,)
    p = v.prime
    val = x.exponent(p) & 1
    if p == 2:
        return (val,) + _unit_eps_omega(x)
    return (val, _unit_legendre_bit(x, p))


def is_local_square(x: Rational, v: Place) -> bool:
    key = square_class_key(x, v)
    if v.is_real:
        return key == (1,)
    return not any(key)


def _hilbert_real(x: FactoredRational, y: FactoredRational) -> Z2Value:
    return HALF if x.sign < 0 and y.sign < 0 else ZERO


def _hilbert_odd(x: FactoredRational, y: FactoredRational, p: int) -> Z2Value:
    a, b = x.exponent(p) & 1, y.exponent(p) & 1
    bit = (a & b & _eps_int(p)) ^ (b & _unit_legendre_bit(x, p)) ^ (a & _unit_legendre_bit(y, p))
    return Z2Value(bit)


def _hilbert_2adic(x: FactoredRational, y: FactoredRational) -> Z2Value:
    a, b = x.exponent(2) & 1, y.exponent(2) & 1
    eu, wu = _unit_eps_omega(x)
    ev, wv = _unit_eps_omega(y)
    return Z2Value((eu & ev) ^ (a & wv) ^ (b & wu))


def hilbert(x: Rational, y: Rational, v: Place) -> Z2Value:
    x, y = as_factored(x), as_factored(y)
    if v.is_real:
        return _hilbert_real(x, y)
    if v.prime == 2:
        return _hilbert_2adic(x, y)
    return _hilbert_odd(x, y, v.prime)


def support(*xs: Rational) -> list[Place]:
    """{real, 2} ∪ {odd p dividing some x}: outside it every symbol among the xs vanishes."""
    primes = {2}
    for x in xs:
        primes.update(as_factored(x).primes)
    return [REAL] + [Place(p) for p in sorted(primes)]


@dataclass(frozen=True)
class SymbolTable:
    """Hilbert symbols of a pair at every place of its support (all other places give 0)."""

    x: FactoredRational
    y: FactoredRational
    values: tuple[tuple[Place, Z2Value], ...]

    @property
    def support(self) -> tuple[Place, ...]:
        return tuple(v for v, _ in self.values)

    def __getitem__(self, v: Place) -> Z2Value:
        for w, s in self.values:
            if w == v:
                return s
        return ZERO

    def nonzero_places(self) -> list[Place]:
        return [v for v, s in self.values if s]

    def total(self) -> Z2Value:
        return z2sum(s for _, s in self.values)

    def as_dict(self) -> dict[Place, Z2Value]:
        return dict(self.values)


def hilbert_all(x: Rational, y: Rational) -> SymbolTable:
    x, y = as_factored(x), as_factored(y)
    return SymbolTable(x, y, tuple((v, hilbert(x, y, v)) for v in support(x, y)))


def square_class_representatives(v: Place) -> list[FactoredRational]:
    """One representative per class of ℚ_v^×/ℚ_v^{×2}: 2 real, 4 odd p, 8 at 2."""
    if v.is_real:
        return [factor(1), factor(-1)]
    p = v.prime
    if p == 2:
        return [factor(u) for u in (1, 3, 5, 7, 2, 6, 10, 14)]
    n = next(u for u in range(2, p) if legendre(u, p))
    return [factor(1), factor(n), factor(p), factor(n * p)]

"""Rational points on (x²−ay²)(z²−bt²)(u²−abw²) = c over ℚ via the Brauer class α = (x²−ay², b).

Decision order: degenerate (one of a, b, ab a global square: the variety is
rational, so it has points) → case C (some place where none of a, b, ab is a
local square: no obstruction, so a point exists) → case D (at every place one
of a, b, ab is a local square: points exist iff Σ_{v : a ∈ ℚ_v^{×2}} (c, b)_v = 0).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, EvaluationError, InconsistencyError, UsageError
from .factor import is_prime
from .localarith import (
    REAL,
    FactoredRational,
    Place,
    Z2Value,
    as_factored,
    factor,
    hilbert,
    is_local_square,
    z2sum,
)


def _to_fraction(x) -> Fraction:
    if isinstance(x, FactoredRational):
        return x.value
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


@dataclass(frozen=True)
class VarietyParams:
    """Original parameters and squarefree representatives with a ↦ a'·s_a², b ↦ b'·s_b², c ↦ c'·s_c²."""

    a: FactoredRational
    b: FactoredRational
    c: FactoredRational
    na: int
    nb: int
    nc: int
    scale_a: Fraction
    scale_b: Fraction
    scale_c: Fraction

    @property
    def nab(self) -> int:
        """a'b' as used in the normalized third factor u² − a'b'w²."""
        return self.na * self.nb

    @property
    def fa(self) -> FactoredRational:
        return factor(self.na)

    @property
    def fb(self) -> FactoredRational:
        return factor(self.nb)

    @property
    def fc(self) -> FactoredRational:
        return factor(self.nc)

    @property
    def fab(self) -> FactoredRational:
        return self.fa * self.fb

    @property
    def degenerate(self) -> bool:
        return self.na == 1 or self.nb == 1 or self.fab.is_square()

    def to_original(self, point: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Map a point of the normalized variety to the original one."""
        x, y, z, t, u, w = (Fraction(p) for p in point)
        sa, sb, sc = self.scale_a, self.scale_b, self.scale_c
        return (sc * x, sc * y / sa, z, t / sb, u, w / (sa * sb))

    def substitution(self) -> str:
        sa, sb, sc = self.scale_a, self.scale_b, self.scale_c

        def term(coef: Fraction, var: str) -> str:
            if coef == 1:
                return var
            if coef.denominator == 1:
                return f"{coef}{var}"
            num = "" if coef.numerator == 1 else str(coef.numerator)
            return f"{num}{var}/{coef.denominator}"

        images = [term(sc, "x"), term(sc / sa, "y"), "z", term(1 / sb, "t"), "u", term(1 / (sa * sb), "w")]
        return "(x, y, z, t, u, w) -> (" + ", ".join(images) + ")"


def _squarefree_with_scale(x: Fraction) -> tuple[int, Fraction]:
    f = as_factored(x)
    core = f.squarefree_part()
    s = Fraction(1)
    for p, e in f.factors:
        s *= Fraction(p) ** (e // 2)  # floor division also handles negative exponents
    if Fraction(core) * s * s != x:
        raise InconsistencyError("square-class reduction does not reconstruct the input")
    return core, s


def normalize(a, b, c) -> VarietyParams:
    """Reduce a, b, c to squarefree integers, recording the square factors removed."""
    fr = [_to_fraction(v) for v in (a, b, c)]
    if any(v == 0 for v in fr):
        raise DomainError("a, b and c must be nonzero")
    (na, sa), (nb, sb), (nc, sc) = (_squarefree_with_scale(v) for v in fr)
    return VarietyParams(
        a=as_factored(fr[0]), b=as_factored(fr[1]), c=as_factored(fr[2]),
        na=na, nb=nb, nc=nc, scale_a=sa, scale_b=sb, scale_c=sc,
    )


def evaluate(params: VarietyParams, point: Sequence[Fraction], normalized: bool = True) -> Fraction:
    x, y, z, t, u, w = (Fraction(p) for p in point)
    if normalized:
        a, b = params.na, params.nb
    else:
        a, b = params.a.value, params.b.value
    return (x * x - a * y * y) * (z * z - b * t * t) * (u * u - a * b * w * w)


@dataclass(frozen=True)
class SquareProfile:
    place: Place
    a_square: bool
    b_square: bool
    ab_square: bool

    def __post_init__(self):
        if self.a_square and self.b_square and not self.ab_square:
            raise InconsistencyError(f"inconsistent square profile at {self.place}")

    @property
    def biquadratic(self) -> bool:
        return not (self.a_square or self.b_square or self.ab_square)


def square_profile(params: VarietyParams, v: Place) -> SquareProfile:
    return SquareProfile(
        v,
        is_local_square(params.fa, v),
        is_local_square(params.fb, v),
        is_local_square(params.fab, v),
    )


def dichotomy_places(params: VarietyParams) -> list[Place]:
    # Outside {real, 2} ∪ {p | ab} both a and b are p-adic units; if neither is a
    # square mod p then their product is, so only this set can hold a witness.
    # (At the real place one of a, b, ab is always positive.)
    primes = sorted(set(params.fa.primes) | set(params.fb.primes) | {2})
    return [REAL] + [Place(p) for p in primes]


def sum_places(params: VarietyParams) -> list[Place]:
    # (c, b)_v vanishes wherever v is odd and divides neither b nor c.
    primes = sorted(set(params.fb.primes) | set(params.fc.primes) | {2})
    return [REAL] + [Place(p) for p in primes]


def report_places(params: VarietyParams) -> list[Place]:
    primes = {2} | set(params.fa.primes) | set(params.fb.primes) | set(params.fc.primes)
    return [REAL] + [Place(p) for p in sorted(primes)]


@dataclass(frozen=True)
class CaseDecision:
    case_d: bool
    witness: Place | None
    profiles: tuple[SquareProfile, ...]

    def __bool__(self) -> bool:
        return self.case_d


def case_d_holds(params: VarietyParams) -> CaseDecision:
    """Case D iff at every place one of a, b, ab is a local square; else the first witness place."""
    profiles = []
    for v in dichotomy_places(params):
        prof = square_profile(params, v)
        profiles.append(prof)
        if prof.biquadratic:
            return CaseDecision(False, v, tuple(profiles))
    return CaseDecision(True, None, tuple(profiles))


@dataclass(frozen=True)
class PlaceContribution:
    profile: SquareProfile
    symbol: Z2Value  # (c, b)_v

    @property
    def place(self) -> Place:
        return self.profile.place


@dataclass(frozen=True)
class ObstructionSum:
    """Σ_{a square} (c, b)_v and the complementary Σ_{a non-square} (c, b)_v; they agree by reciprocity."""

    total: Z2Value
    complement: Z2Value
    entries: tuple[PlaceContribution, ...]

    def contributions(self, a_square: bool) -> list[PlaceContribution]:
        return [e for e in self.entries if e.profile.a_square == a_square and e.symbol]


def obstruction_sum(params: VarietyParams) -> ObstructionSum:
    dec = case_d_holds(params)
    if not dec.case_d and not params.degenerate:
        raise UsageError(f"case C holds (witness place {dec.witness}); there is no obstruction to sum")
    entries = []
    for v in sum_places(params):
        entries.append(PlaceContribution(square_profile(params, v), hilbert(params.fc, params.fb, v)))
    total = z2sum(e.symbol for e in entries if e.profile.a_square)
    complement = z2sum(e.symbol for e in entries if not e.profile.a_square)
    if total != complement:
        raise InconsistencyError("reciprocity violated: the two obstruction sums differ")
    return ObstructionSum(total, complement, tuple(entries))


def _sqrt_name(n: int) -> str:
    return f"√{n}" if n >= 0 else f"√({n})"


def transfer_statement(na: int, nb: int, nc: int) -> str:
    return (
        f"N_{{Q({_sqrt_name(na)},{_sqrt_name(nb)})/Q}}(Ξ) = {nc * nc} has no rational solution "
        f"but has solutions everywhere locally"
    )


@dataclass
class ObstructionReport:
    params: VarietyParams
    degenerate: bool
    case: str | None  # "C", "D" or None when degenerate
    witness_place: Place | None
    places: list[PlaceContribution]
    sum: Z2Value | None
    verdict: bool
    transfer: str | None = None

    @property
    def complement_sum(self) -> Z2Value | None:
        if self.sum is None:
            return None
        return z2sum(e.symbol for e in self.places if not e.profile.a_square)

    def contributions(self, a_square: bool = True) -> list[PlaceContribution]:
        return [e for e in self.places if e.profile.a_square == a_square and e.symbol]

    def to_dict(self) -> dict:
        p = self.params
        out: dict = {
            "params": {"a": str(p.a.value), "b": str(p.b.value), "c": str(p.c.value)},
            "normalized": {
                "a": p.na, "b": p.nb, "c": p.nc,
                "scale": {"a": str(p.scale_a), "b": str(p.scale_b), "c": str(p.scale_c)},
            },
            "degenerate": self.degenerate,
            "case": self.case,
        }
        if self.witness_place is not None:
            out["witness_place"] = str(self.witness_place)
        out["places"] = [
            {
                "place": str(e.place),
                "a_sq": e.profile.a_square,
                "b_sq": e.profile.b_square,
                "ab_sq": e.profile.ab_square,
                "symbol": str(e.symbol),
            }
            for e in self.places
        ]
        out["sum"] = None if self.sum is None else str(self.sum)
        out["verdict"] = self.verdict
        if self.transfer is not None:
            out["transfer"] = self.transfer
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "ObstructionReport":
        pr = d["params"]
        nm = d["normalized"]
        sc = nm["scale"]
        params = VarietyParams(
            a=as_factored(Fraction(pr["a"])), b=as_factored(Fraction(pr["b"])), c=as_factored(Fraction(pr["c"])),
            na=nm["a"], nb=nm["b"], nc=nm["c"],
            scale_a=Fraction(sc["a"]), scale_b=Fraction(sc["b"]), scale_c=Fraction(sc["c"]),
        )
        places = [
            PlaceContribution(
                SquareProfile(Place.parse(e["place"]), e["a_sq"], e["b_sq"], e["ab_sq"]),
                Z2Value.parse(e["symbol"]),
            )
            for e in d["places"]
        ]
        wp = d.get("witness_place")
        return cls(
            params=params,
            degenerate=d["degenerate"],
            case=d["case"],
            witness_place=Place.parse(wp) if wp is not None else None,
            places=places,
            sum=None if d["sum"] is None else Z2Value.parse(d["sum"]),
            verdict=d["verdict"],
            transfer=d.get("transfer"),
        )

    @classmethod
    def from_json(cls, s: str) -> "ObstructionReport":
        return cls.from_dict(json.loads(s))

    def recheck(self) -> bool:
        """Re-derive the verdict from the stored profiles and symbols alone."""
        if self.degenerate:
            return self.verdict is True
        if self.case == "C":
            w = [e for e in self.places if e.place == self.witness_place]
            return self.verdict is True and bool(w) and w[0].profile.biquadratic
        total = z2sum(e.symbol for e in self.places if e.profile.a_square)
        # both halves must agree, so a single altered symbol is caught
        return total == self.sum == self.complement_sum and self.verdict == (not total)


def analyze(a, b, c) -> ObstructionReport:
    params = normalize(a, b, c)
    places = report_places(params)

    def table() -> list[PlaceContribution]:
        return [PlaceContribution(square_profile(params, v), hilbert(params.fc, params.fb, v)) for v in places]

    if params.degenerate:
        return ObstructionReport(params, True, None, None, table(), None, True)
    dec = case_d_holds(params)
    if not dec.case_d:
        return ObstructionReport(params, False, "C", dec.witness, table(), None, True)
    osum = obstruction_sum(params)
    entries = table()
    # report rows include every place of the sum scan; off-support rows carry symbol 0
    if z2sum(e.symbol for e in entries if e.profile.a_square) != osum.total:
        raise InconsistencyError("report table disagrees with the obstruction sum")
    verdict = not osum.total
    transfer = None if verdict else transfer_statement(params.na, params.nb, params.nc)
    return ObstructionReport(params, False, "D", None, entries, osum.total, verdict, transfer)


def transfer_to_norm_equation(report: ObstructionReport) -> str:
    if report.verdict:
        raise UsageError("the variety has rational points; there is no counterexample to transfer")
    p = report.params
    return transfer_statement(p.na, p.nb, p.nc)


@dataclass(frozen=True)
class AlphaValue:
    """α = (x²−ay², b) at a local point of the normalized variety.

    The point is (x, y, z, t, √λ·u, √λ·w) with all six listed coordinates
    rational and ``scale`` λ a square in ℚ_v; λ = 1 is a rational point.
    """

    place: Place
    point: tuple[Fraction, ...]
    value: Z2Value
    scale: Fraction = Fraction(1)


def alpha_at_point(params: VarietyParams, v: Place, point: Sequence, scale: Fraction = Fraction(1)) -> AlphaValue:
    pt = tuple(Fraction(p) for p in point)
    if len(pt) != 6:
        raise DomainError("a point has six coordinates (x, y, z, t, u, w)")
    x, y, z, t, u, w = pt
    a, b = params.na, params.nb
    n1 = x * x - a * y * y
    n2 = z * z - b * t * t
    n3 = u * u - a * b * w * w
    if not (n1 and n2 and n3):
        raise EvaluationError("a norm factor vanishes at this point; move the point")
    scale = Fraction(scale)
    if n1 * n2 * n3 * scale != params.nc:
        raise DomainError("the point does not satisfy the equation")
    if scale != 1 and not is_local_square(scale, v):
        raise DomainError(f"the scale {scale} is not a square at {v}")
    fn1 = as_factored(n1)
    val = hilbert(fn1, params.fb, v)
    # (N, ab)_v = (N, a)_v + (N, b)_v and (N, a)_v = 0 for N a norm from ℚ(√a)
    if hilbert(fn1, params.fab, v) != val:
        raise InconsistencyError("(x²−ay², b) and (x²−ay², ab) disagree")
    return AlphaValue(v, pt, val, scale)


def prime_range(cmax: int) -> list[int]:
    return [p for p in range(2, cmax + 1) if is_prime(p)]


def c_candidates(cmax: int, primes_only: bool = False) -> list[int]:
    if primes_only:
        return prime_range(cmax)
    return list(range(1, cmax + 1))


def search_counterexamples(a, b, c_values: Iterable[int] | int, primes_only: bool = False) -> list[ObstructionReport]:
    """All c (in the given order) for which the variety violates the Hasse principle."""
    params = normalize(a, b, 1)
    if params.degenerate:
        raise UsageError("one of a, b, ab is a square: the variety is rational for every c")
    dec = case_d_holds(params)
    if not dec.case_d:
        raise UsageError(
            f"case C: none of a, b, ab is a square at {dec.witness}, so every c is solvable"
        )
    if isinstance(c_values, int):
        c_values = c_candidates(c_values, primes_only)
    out = []
    for c in c_values:
        rep = analyze(a, b, c)
        if not rep.verdict:
            out.append(rep)
    return out


__all__ = [
    "AlphaValue",
    "CaseDecision",
    "ObstructionReport",
    "ObstructionSum",
    "PlaceContribution",
    "SquareProfile",
    "VarietyParams",
    "alpha_at_point",
    "analyze",
    "c_candidates",
    "case_d_holds",
    "evaluate",
    "normalize",
    "obstruction_sum",
    "search_counterexamples",
    "square_profile",
    "transfer_to_norm_equation",
]

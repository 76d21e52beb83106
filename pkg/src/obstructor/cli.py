"""Command line front end: ``obstructor analyze|search|cohomology|selftest``.

Exit codes: 0 solvable / ok, 3 insoluble (certified by the obstruction),
1 input error, 2 search asked for a pair that has no counterexamples,
4 internal inconsistency (an oracle contradicted the criterion).
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from math import isqrt
from pathlib import Path

from . import cohomology as coh
from . import glattice as gl
from .errors import DomainError, InconsistencyError, ObstructorError, ResourceError, UsageError
from .factor import is_prime
from .localarith import factor, hilbert, hilbert_all, parse_rational
from .obstruction import (
    ObstructionReport,
    analyze,
    c_candidates,
    normalize,
    report_places,
    search_counterexamples,
)
from .oracle import decide_by_norm_classes, global_point_search, local_solvable

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_COUNTEREXAMPLES = 2
EXIT_INSOLUBLE = 3
EXIT_INCONSISTENT = 4

PRIMES_TO_100 = [p for p in range(2, 101) if is_prime(p)]


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def format_report(rep: ObstructionReport) -> str:
    p = rep.params
    lines = [f"variety: (x^2 - ({p.a})y^2)(z^2 - ({p.b})t^2)(u^2 - ({p.a.value * p.b.value})w^2) = {p.c}"]
    if (p.na, p.nb, p.nc) != (p.a.value, p.b.value, p.c.value):
        lines.append(f"normalized: a = {p.na}, b = {p.nb}, c = {p.nc}; {p.substitution()}")
    lines.append(f"{'place':>8}  {'a sq':>5} {'b sq':>5} {'ab sq':>5}  (c,b)_v")
    for e in rep.places:
        pr = e.profile
        lines.append(
            f"{str(e.place):>8}  {_yn(pr.a_square):>5} {_yn(pr.b_square):>5} {_yn(pr.ab_square):>5}  {e.symbol}"
        )
    if rep.degenerate:
        lines.append("degenerate: one of a, b, ab is a square, the variety is rational")
    elif rep.case == "C":
        lines.append(f"case C: none of a, b, ab is a square at {rep.witness_place}")
    else:
        lines.append("case D: at every place one of a, b, ab is a square")
        lines.append(f"obstruction sum over places where a is a square: {rep.sum}")
    lines.append("verdict: " + ("rational points exist" if rep.verdict else "no rational points (Brauer-Manin obstruction)"))
    if rep.transfer:
        lines.append(rep.transfer)
    return "\n".join(lines)


def verify(rep: ObstructionReport, height: int) -> tuple[bool, list[str]]:
    """Run the oracles against a report; False means an oracle contradicted the verdict."""
    p = rep.params
    lines = []
    ok = True
    bad = [str(v) for v in report_places(p) if not local_solvable(p, v)]
    if bad:
        ok = False
        lines.append(f"local solvability FAILED at {', '.join(bad)}")
    else:
        lines.append(f"locally solvable at {', '.join(str(v) for v in report_places(p))}")
    nw = decide_by_norm_classes(p, PRIMES_TO_100)
    pt = global_point_search(p, height)
    if nw is not None:
        lines.append(f"norm classes: solvable with r1 = {nw.r1}, r2 = {nw.r2}, r3 = {nw.r3}")
    else:
        lines.append("norm classes: unknown")
    if pt is not None:
        lines.append("oracle point: (" + ", ".join(str(x) for x in pt.point) + ")")
    else:
        lines.append(f"oracle point: none up to height {height}")
    if not rep.verdict and (nw is not None or pt is not None):
        ok = False
        lines.append("CONTRADICTION: an oracle found a solution to an obstructed variety")
    elif rep.verdict and nw is None and pt is None:
        lines.append("unconfirmed-solvable: no oracle confirmation at this size")
    else:
        lines.append("oracles agree")
    return ok, lines


def cmd_analyze(args) -> int:
    a, b, c = (parse_rational(s) for s in (args.a, args.b, args.c))
    rep = analyze(a, b, c)
    if args.json:
        print(rep.to_json())
    else:
        print(format_report(rep))
    if args.verify:
        ok, lines = verify(rep, args.height)
        out = sys.stderr if args.json else sys.stdout
        for line in lines:
            print(line, file=out)
        if not ok:
            return EXIT_INCONSISTENT
    return EXIT_OK if rep.verdict else EXIT_INSOLUBLE


def cmd_search(args) -> int:
    a, b = parse_rational(args.a), parse_rational(args.b)
    cands = c_candidates(args.cmax, args.primes_only)
    try:
        found = search_counterexamples(a, b, cands)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_NO_COUNTEREXAMPLES
    for rep in found:
        if args.json:
            print(json.dumps(rep.to_dict(), ensure_ascii=False))
        else:
            print(f"c = {rep.params.c}: obstruction sum {rep.sum}; {rep.transfer}")
    if args.json:
        print(json.dumps({"count": len(found)}))
    else:
        print(f"{len(found)} counterexample(s) among {len(cands)} candidate(s)")
    return EXIT_OK


def parse_lattice(text: str) -> gl.GLattice:
    """Header ``group k4`` or ``cyclic N``, then one rank x rank integer matrix per generator."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DomainError("empty lattice file")
    head = lines[0].split()
    if head and head[0] == "group":
        head = head[1:]
    if head == ["k4"]:
        G = gl.klein_four()
        gens = [G.index("s_a"), G.index("s_b")]
    elif len(head) == 2 and head[0] == "cyclic" and head[1].isdigit():
        n = int(head[1])
        if n < 1 or n > gl.MAX_GROUP_ORDER:
            raise DomainError(f"cyclic order must be between 1 and {gl.MAX_GROUP_ORDER}")
        G = gl.cyclic_group(n)
        gens = [G.index("g")] if n > 1 else []
    else:
        raise DomainError(f"bad header {lines[0]!r}: expected 'group k4' or 'cyclic N'")
    try:
        nums = [int(tok) for ln in lines[1:] for tok in ln.split()]
    except ValueError as exc:
        raise DomainError(f"non-integer matrix entry: {exc}") from None
    if not gens:
        if nums:
            raise DomainError("the trivial group takes no matrices")
        raise DomainError("cannot infer the rank for the trivial group")
    per = len(nums) // len(gens)
    rank = isqrt(per)
    if rank * rank * len(gens) != len(nums) or rank == 0:
        raise DomainError(f"{len(nums)} entries do not form {len(gens)} square matrices")
    if rank > gl.MAX_RANK:
        raise DomainError(f"rank {rank} exceeds {gl.MAX_RANK}")
    images = {}
    for k, g in enumerate(gens):
        block = nums[k * per:(k + 1) * per]
        images[g] = [block[i * rank:(i + 1) * rank] for i in range(rank)]
    return gl.lattice_from_generators(G, images, rank, label="file")


def cohomology_summary(L: gl.GLattice, name: str) -> list[str]:
    cert = coh.is_coflasque(L)
    lines = [f"{name}: rank {L.rank}, group of order {L.group.order}"]
    for H, h1 in cert.h1:
        lines.append(f"  H^1({H}, {name}) = {h1}")
    lines.append(f"  coflasque: {_yn(cert.coflasque)}")
    lines.append(f"  H^2(G, {name}) = {coh.cohomology(L, 2)}")
    lines.append(f"  Sha2_omega({name}) = {coh.sha2_omega(L)}")
    return lines


def cmd_cohomology(args) -> int:
    if args.demo:
        B = gl.biquadratic_lattices()
        for line in cohomology_summary(B.that, "That") + cohomology_summary(B.qhat, "Qhat"):
            print(line)
        sha_t = coh.sha2_omega(B.that)
        sha_q = coh.sha2_omega(B.qhat)
        m = coh.sha2_omega_map(B.inclusion)
        print(
            f"Sha2_omega(That) = {sha_t}, Sha2_omega(Qhat) = {sha_q}, "
            f"induced map: {'isomorphism' if m.is_isomorphism() else 'not an isomorphism'}; "
            f"Qhat coflasque: {_yn(bool(coh.is_coflasque(B.qhat)))}"
        )
        return EXIT_OK
    text = Path(args.lattice).read_text() if args.lattice != "-" else sys.stdin.read()
    L = parse_lattice(text)
    for line in cohomology_summary(L, "M"):
        print(line)
    return EXIT_OK


# selftest suites, kept small enough to finish in well under a minute


def _rand_nonzero(rng: random.Random, bound: int) -> int:
    while True:
        x = rng.randint(-bound, bound)
        if x:
            return x


def suite_product_formula(rng: random.Random, n: int = 100) -> list[str]:
    fails = []
    for _ in range(n):
        x = factor(_rand_nonzero(rng, 10 ** 6))
        y = factor(_rand_nonzero(rng, 10 ** 6))
        if hilbert_all(x, y).total():
            fails.append(f"({x}, {y})")
    return fails


def suite_emory_suresh(rng: random.Random, n: int = 50) -> list[str]:
    fails = []
    for _ in range(n):
        a, b, c = (factor(_rand_nonzero(rng, 10 ** 4)) for _ in range(3))
        for v in report_places(normalize(a, b, c)):
            if hilbert(a, c, v) and hilbert(b, c, v) and hilbert(a * b, c, v):
                fails.append(f"({a}, {b}, {c}) at {v}")
    return fails


def suite_square_class(rng: random.Random, n: int = 30) -> list[str]:
    fails = []
    for _ in range(n):
        a, b, c = (_rand_nonzero(rng, 60) for _ in range(3))
        s, t, u = (rng.randint(1, 12) for _ in range(3))
        r1 = analyze(a, b, c)
        r2 = analyze(a * s * s, b * t * t, c * u * u)
        if (r1.verdict, r1.sum) != (r2.verdict, r2.sum):
            fails.append(f"({a}, {b}, {c}) scaled by ({s}, {t}, {u})")
    return fails


def squarefree_range(bound: int) -> list[int]:
    return [n for n in range(-bound, bound + 1) if n and factor(n).squarefree_part() == n]


def suite_oracle_agreement(bound: int = 7, height: int = 30) -> list[str]:
    fails = []
    vals = squarefree_range(bound)
    for a in vals:
        for b in vals:
            p0 = normalize(a, b, 1)
            if p0.degenerate:
                continue
            for c in vals:
                rep = analyze(a, b, c)
                p = rep.params
                if not all(local_solvable(p, v) for v in report_places(p)):
                    fails.append(f"({a}, {b}, {c}) not locally solvable")
                if not rep.verdict:
                    if decide_by_norm_classes(p, PRIMES_TO_100) or global_point_search(p, height):
                        fails.append(f"({a}, {b}, {c}) obstructed but an oracle found a solution")
    return fails


SUITES = {
    "product-formula": lambda rng: suite_product_formula(rng),
    "emory-suresh": lambda rng: suite_emory_suresh(rng),
    "square-class-invariance": lambda rng: suite_square_class(rng),
    "criterion-oracle-agreement": lambda rng: suite_oracle_agreement(),
}


def cmd_selftest(args) -> int:
    failed = []
    for name, suite in SUITES.items():
        rng = random.Random(args.seed)
        t0 = time.perf_counter()
        try:
            fails = suite(rng)
        except ObstructorError as exc:
            fails = [f"raised {type(exc).__name__}: {exc}"]
        dt = time.perf_counter() - t0
        status = "ok" if not fails else f"FAIL ({len(fails)})"
        print(f"{name}: {status} [{dt:.2f}s]")
        for f in fails[:5]:
            print(f"  {f}")
        if fails:
            failed.append(name)
    if failed:
        print("failing suites: " + ", ".join(failed))
        return 1
    print("all suites passed")
    return 0


class _Parser(argparse.ArgumentParser):
    # let "-3/4" through as a positional, like "-3"
    def __init__(self, *args, **kw):
        super().__init__(*args, **kw)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="obstructor", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide solvability of (x²−ay²)(z²−bt²)(u²−abw²) = c")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true", help="cross-check with the brute-force oracles")
    p.add_argument("--height", type=int, default=20)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", help="list c giving Hasse principle failures for fixed a, b")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--cmax", type=int, default=100)
    p.add_argument("--primes-only", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("cohomology", help="cohomology of a G-lattice")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--demo", choices=["biquadratic"])
    g.add_argument("--lattice", metavar="FILE")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("selftest", help="run reduced property suites")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, ResourceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Group cohomology of G-lattices in degrees 0–2 from the inhomogeneous bar complex.

C^i = Maps(G^i, M) is flattened as index(g_1..g_i)·rank + coordinate, with g_1
the most significant digit. Everything is exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import intlin
from .abelian import FinAbGroup, GroupHom, kernel_of, saturated_subquotient, subquotient
from .errors import DomainError, InconsistencyError, ResourceError, UsageError
from .glattice import GLattice, LatticeMap, Subgroup, cyclic_subgroups, subgroups

# entries of the largest differential d_i : C^i → C^{i+1} we are willing to build
MAX_DIFFERENTIAL_ENTRIES = 3_000_000


def _tuples(order: int, i: int):
    """All i-tuples of element indices in flattening order."""
    if i == 0:
        return [()]
    prev = _tuples(order, i - 1)
    return [t + (g,) for t in prev for g in range(order)]


def _index(t: Sequence[int], order: int) -> int:
    k = 0
    for g in t:
        k = k * order + g
    return k


def cochain_dim(L: GLattice, i: int) -> int:
    return L.rank * L.group.order ** i


def _check_caps(L: GLattice, i: int) -> None:
    entries = cochain_dim(L, i) * cochain_dim(L, i + 1)
    if entries > MAX_DIFFERENTIAL_ENTRIES:
        raise ResourceError(
            f"bar differential in degree {i} would have {entries} entries "
            f"(rank {L.rank}, |G| = {L.group.order}); cap is {MAX_DIFFERENTIAL_ENTRIES}"
        )


@lru_cache(maxsize=256)
def differential(L: GLattice, i: int) -> tuple[tuple[int, ...], ...]:
    """d_i : C^i → C^{i+1} as a tuple of columns (one per C^i coordinate)."""
    _check_caps(L, i)
    G = L.group
    n, q = L.rank, G.order
    rows = cochain_dim(L, i + 1)
    cols = [[0] * rows for _ in range(cochain_dim(L, i))]
    for out in _tuples(q, i + 1):
        o = _index(out, q) * n
        # g_1 · f(g_2, ..., g_{i+1})
        src = _index(out[1:], q) * n
        A = L.action[out[0]]
        for a in range(n):
            for b in range(n):
                if A[a][b]:
                    cols[src + b][o + a] += A[a][b]
        for j in range(1, i + 1):
            merged = out[: j - 1] + (G.mul(out[j - 1], out[j]),) + out[j + 1:]
            src = _index(merged, q) * n
            sgn = -1 if j % 2 else 1
            for a in range(n):
                cols[src + a][o + a] += sgn
        src = _index(out[:i], q) * n
        sgn = -1 if (i + 1) % 2 else 1
        for a in range(n):
            cols[src + a][o + a] += sgn
    return tuple(tuple(c) for c in cols)


def apply_differential(L: GLattice, i: int, f: Sequence[int]) -> list[int]:
    cols = differential(L, i)
    out = [0] * cochain_dim(L, i + 1)
    for c, col in zip(f, cols):
        if c:
            for k, x in enumerate(col):
                if x:
                    out[k] += c * x
    return out


@lru_cache(maxsize=256)
def cohomology(L: GLattice, i: int) -> FinAbGroup:
    """H^i(G, M) = ker d_i / im d_{i-1}, ambient space the cochains C^i.

    Degree 0 gives the fixed-point lattice M^G as a free group.
    """
    if i not in (0, 1, 2):
        raise UsageError("only degrees 0, 1, 2 are supported")
    ech = intlin.column_echelon(differential(L, i), cochain_dim(L, i + 1))
    rel = list(differential(L, i - 1)) if i > 0 else []
    rel = [list(c) for c in rel]
    return saturated_subquotient(cochain_dim(L, i), ech.kernel_basis(), ech.kernel_coords(), rel)


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    parent: FinAbGroup
    coordinates: tuple[int, ...]
    cocycle: tuple[int, ...]  # flattened map G^degree → M


def cohomology_class(L: GLattice, i: int, coordinates: Sequence[int]) -> CohomologyClass:
    H = cohomology(L, i)
    coords = H.reduce(coordinates)
    f = H.lift(coords)
    if any(apply_differential(L, i, f)):
        raise InconsistencyError("lifted representative is not a cocycle")
    return CohomologyClass(i, H, coords, tuple(f))


def class_of_cocycle(L: GLattice, i: int, f: Sequence[int]) -> CohomologyClass:
    if any(apply_differential(L, i, f)):
        raise DomainError("not a cocycle")
    H = cohomology(L, i)
    return CohomologyClass(i, H, H.project(f), tuple(f))


def restrict_cochain(L: GLattice, i: int, H: Subgroup, f: Sequence[int]) -> list[int]:
    n, q = L.rank, L.group.order
    out = []
    for t in _tuples(H.order, i):
        base = _index(tuple(H.embedding[k] for k in t), q) * n
        out.extend(f[base:base + n])
    return out


def restriction(L: GLattice, i: int, H: Subgroup) -> GroupHom:
    """res : H^i(G, M) → H^i(H, M), restricting cocycles along the embedding."""
    src = cohomology(L, i)
    LH = L.restrict(H)
    tgt = cohomology(LH, i)
    images = [tgt.project(restrict_cochain(L, i, H, src.generator(j))) for j in range(src.ngens)]
    return GroupHom.from_images(src, tgt, images)


def sha2_omega(L: GLattice) -> FinAbGroup:
    """ker[H²(G, M) → ∏_σ H²(⟨σ⟩, M)], as a subgroup of H²(G, M) (ambient: its canonical coordinates)."""
    H2 = cohomology(L, 2)
    rows: list[list[int]] = []
    moduli: list[int] = []
    for C in cyclic_subgroups(L.group):
        r = restriction(L, 2, C)
        rows.extend(r.matrix)
        moduli.extend(r.target.moduli)
    return kernel_of(rows, H2, moduli)


@dataclass
class ShaMap:
    """The map Ш²_ω(M) → Ш²_ω(N) induced by an equivariant map M → N."""

    hom: GroupHom
    h2_hom: GroupHom

    def is_isomorphism(self) -> bool:
        return self.hom.is_isomorphism()

    def __call__(self, x):
        return self.hom(x)


def h2_map(f: LatticeMap) -> GroupHom:
    """H²(G, M) → H²(G, N) induced by f."""
    src = cohomology(f.source, 2)
    tgt = cohomology(f.target, 2)
    images = []
    for j in range(src.ngens):
        images.append(tgt.project(_push_cochain(f, src.generator(j))))
    return GroupHom.from_images(src, tgt, images)


def _push_cochain(f: LatticeMap, c: Sequence[int]) -> list[int]:
    n, m = f.source.rank, f.target.rank
    out = []
    for k in range(0, len(c) // n if n else 0):
        out.extend(f.apply(c[k * n:(k + 1) * n]))
    if n == 0:
        out = [0] * (m * f.source.group.order ** 2)
    return out


def sha2_omega_map(f: LatticeMap) -> ShaMap:
    sha_s = sha2_omega(f.source)
    sha_t = sha2_omega(f.target)
    h2 = h2_map(f)
    images = []
    for j in range(sha_s.ngens):
        x = h2(sha_s.generator(j))
        if not sha_t.contains(list(x)):
            raise InconsistencyError("image of a Sha class left Sha; restriction maps are broken")
        images.append(sha_t.project(list(x)))
    return ShaMap(GroupHom.from_images(sha_s, sha_t, images), h2)


def _generator_of(L: GLattice, generator: int | None) -> int:
    G = L.group
    if generator is None:
        for g in range(G.order):
            if G.element_order(g) == G.order:
                return g
        raise UsageError("Tate cohomology here needs a cyclic group")
    if G.element_order(generator) != G.order:
        raise UsageError(f"{G.names[generator]} does not generate the group")
    return generator


def _norm_and_augmentation(L: GLattice, g: int):
    G = L.group
    n = L.rank
    N = [[0] * n for _ in range(n)]
    x = G.identity
    for _ in range(G.order):
        A = L.action[x]
        for a in range(n):
            for b in range(n):
                N[a][b] += A[a][b]
        x = G.mul(g, x)
    A = L.action[g]
    S = [[A[a][b] - int(a == b) for b in range(n)] for a in range(n)]
    return N, S


def tate_cyclic(L: GLattice, i: int, generator: int | None = None) -> FinAbGroup:
    """Ĥ^0 = M^C / N·M and Ĥ^{-1} = ker N / (σ-1)M for cyclic C = ⟨σ⟩; ambient is M."""
    if i not in (0, -1):
        raise UsageError("tate_cyclic computes degrees 0 and -1")
    g = _generator_of(L, generator)
    n = L.rank
    N, S = _norm_and_augmentation(L, g)
    kernel_of_, image_of = (S, N) if i == 0 else (N, S)
    basis = intlin.kernel(intlin.transpose(kernel_of_, n), n)
    rel = intlin.transpose(image_of, n)
    return subquotient(n, basis, rel)


def periodicity_map(L: GLattice, generator: int | None = None) -> GroupHom:
    """Ĥ^0(C, M) → H²(C, M), m ↦ the cocycle (σ^i, σ^j) ↦ m·[i + j ≥ |C|]."""
    G = L.group
    g = _generator_of(L, generator)
    q, n = G.order, L.rank
    expo = {G.power(g, k): k for k in range(q)}
    src = tate_cyclic(L, 0, g)
    tgt = cohomology(L, 2)
    images = []
    for j in range(src.ngens):
        m = src.generator(j)
        f = [0] * cochain_dim(L, 2)
        for x in range(q):
            for y in range(q):
                if expo[x] + expo[y] >= q:
                    base = (x * q + y) * n
                    f[base:base + n] = m
        if any(apply_differential(L, 2, f)):
            raise InconsistencyError("periodicity cocycle fails the cocycle identity")
        images.append(tgt.project(f))
    return GroupHom.from_images(src, tgt, images)


@dataclass(frozen=True)
class CoflasqueCertificate:
    coflasque: bool
    h1: tuple[tuple[Subgroup, FinAbGroup], ...]

    def __bool__(self) -> bool:
        return self.coflasque


def is_coflasque(L: GLattice) -> CoflasqueCertificate:
    """True iff H¹(H, M) = 0 for every subgroup H; lists each H¹."""
    rows = []
    for H in subgroups(L.group):
        rows.append((H, cohomology(L.restrict(H), 1)))
    return CoflasqueCertificate(all(h.is_trivial() for _, h in rows), tuple(rows))

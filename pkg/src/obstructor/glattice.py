"""Finite groups as multiplication tables, and integer lattices with a group action.

Includes the character lattices of the biquadratic norm-one torus T and of the
coflasque torus Q sitting over it, together with the inclusion T̂ ↪ Q̂.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from . import intlin
from .errors import DomainError, ResourceError

MAX_GROUP_ORDER = 16
MAX_RANK = 64

IntMatrix = tuple[tuple[int, ...], ...]


def freeze(A: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in A)


def _mat_identity(n: int) -> IntMatrix:
    return freeze(intlin.identity(n))


def _mat_mul(A: IntMatrix, B: IntMatrix, n: int) -> IntMatrix:
    return freeze(intlin.matmul(A, B, n)) if A else ()


@dataclass(frozen=True)
class FiniteGroup:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int = 0

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise DomainError("a group has at least one element")
        if n > MAX_GROUP_ORDER:
            raise ResourceError(f"group order {n} exceeds the cap {MAX_GROUP_ORDER}")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise DomainError("multiplication table must be square of size |G|")
        t = self.table
        for row in t:
            if sorted(row) != list(range(n)):
                raise DomainError("multiplication table rows must be permutations")
        e = self.identity
        if any(t[e][g] != g or t[g][e] != g for g in range(n)):
            raise DomainError("identity element does not act as identity")
        for g in range(n):
            if e not in t[g]:
                raise DomainError(f"element {self.names[g]} has no inverse")
            for h in range(n):
                gh = t[g][h]
                for k in range(n):
                    if t[gh][k] != t[g][t[h][k]]:
                        raise DomainError("multiplication is not associative")

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return self.table[g].index(self.identity)

    def power(self, g: int, k: int) -> int:
        out = self.identity
        base = g if k >= 0 else self.inverse(g)
        for _ in range(abs(k)):
            out = self.table[out][base]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def index(self, name: str) -> int:
        return self.names.index(name)

    def closure(self, gens: Sequence[int]) -> frozenset[int]:
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def is_cyclic(self) -> bool:
        return any(self.element_order(g) == self.order for g in range(self.order))

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[g][h] == t[h][g] for g in range(self.order) for h in range(self.order))

    def __str__(self) -> str:
        return "{" + ", ".join(self.names) + "}"


def klein_four() -> FiniteGroup:
    """(ℤ/2)² in the order (id, s_a, s_b, s_ab); s_a·s_b = s_ab."""
    names = ("id", "s_a", "s_b", "s_ab")
    # bit 0 = s_a component, bit 1 = s_b component
    table = tuple(tuple(g ^ h for h in range(4)) for g in range(4))
    return FiniteGroup(names, table, 0)


def cyclic_group(n: int) -> FiniteGroup:
    names = ("1", "g") + tuple(f"g^{k}" for k in range(2, n)) if n > 1 else ("1",)
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(names[:n], table, 0)


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup together with its inclusion into the parent group."""

    parent: FiniteGroup
    embedding: tuple[int, ...]  # sub-element index -> parent element index, identity first
    cyclic: bool
    generator: int | None = None  # parent index of a generator when cyclic

    @cached_property
    def group(self) -> FiniteGroup:
        pos = {g: i for i, g in enumerate(self.embedding)}
        t = self.parent.table
        table = tuple(tuple(pos[t[g][h]] for h in self.embedding) for g in self.embedding)
        return FiniteGroup(tuple(self.parent.names[g] for g in self.embedding), table, 0)

    @property
    def order(self) -> int:
        return len(self.embedding)

    @property
    def elements(self) -> frozenset[int]:
        return frozenset(self.embedding)

    def __str__(self) -> str:
        if self.order == 1:
            return "1"
        if self.order == self.parent.order:
            return "G"
        if self.cyclic and self.generator is not None:
            return f"<{self.parent.names[self.generator]}>"
        return "{" + ", ".join(self.parent.names[g] for g in self.embedding) + "}"


def _make_subgroup(G: FiniteGroup, elems: frozenset[int]) -> Subgroup:
    ordered = (G.identity,) + tuple(sorted(elems - {G.identity}))
    gen = None
    for g in ordered:
        if G.element_order(g) == len(elems):
            gen = g
            break
    return Subgroup(G, ordered, gen is not None, gen)


def subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups, ordered by (order, element indices)."""
    found: set[frozenset[int]] = set()
    layer = {G.closure([g]) for g in range(G.order)}
    found |= layer
    while layer:
        nxt = set()
        for H in layer:
            for g in range(G.order):
                if g not in H:
                    K = G.closure(sorted(H) + [g])
                    if K not in found:
                        nxt.add(K)
        found |= nxt
        layer = nxt
    return [_make_subgroup(G, H) for H in sorted(found, key=lambda s: (len(s), sorted(s)))]


def cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """The subgroups ⟨σ⟩ for σ ∈ G, duplicates removed, in element order."""
    seen: dict[frozenset[int], Subgroup] = {}
    for g in range(G.order):
        H = G.closure([g])
        if H not in seen:
            ordered = tuple(G.power(g, k) for k in range(len(H)))
            seen[H] = Subgroup(G, ordered, True, g)
    return list(seen.values())


def whole_group(G: FiniteGroup) -> Subgroup:
    return _make_subgroup(G, frozenset(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,), True, G.identity)


def subgroup_generated(G: FiniteGroup, names: Sequence[str]) -> Subgroup:
    return _make_subgroup(G, G.closure([G.index(n) for n in names]))


@dataclass(frozen=True)
class GLattice:
    """ℤ^rank with G acting through ``action[g]`` (a rank × rank integer matrix)."""

    group: FiniteGroup
    rank: int
    action: tuple[IntMatrix, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.rank < 0:
            raise DomainError("rank must be nonnegative")
        if self.rank > MAX_RANK:
            raise ResourceError(f"rank {self.rank} exceeds the cap {MAX_RANK}")
        G = self.group
        if len(self.action) != G.order:
            raise DomainError("one action matrix per group element is required")
        n = self.rank
        for g, A in enumerate(self.action):
            if len(A) != n or any(len(r) != n for r in A):
                raise DomainError(f"action matrix of {G.names[g]} is not {n}x{n}")
            if abs(intlin.det(A)) != 1:
                raise DomainError(f"action matrix of {G.names[g]} is not invertible over Z")
        if self.action[G.identity] != _mat_identity(n):
            raise DomainError("identity element must act trivially")
        for g in range(G.order):
            for h in range(G.order):
                if n and _mat_mul(self.action[g], self.action[h], n) != self.action[G.mul(g, h)]:
                    raise DomainError(
                        f"action is not a homomorphism at ({G.names[g]}, {G.names[h]})"
                    )

    def matrix(self, g: int) -> IntMatrix:
        return self.action[g]

    def restrict(self, H: Subgroup) -> "GLattice":
        return GLattice(H.group, self.rank, tuple(self.action[g] for g in H.embedding), self.label)

    def fixed_basis(self) -> list[list[int]]:
        """A basis of the fixed sublattice M^G."""
        n = self.rank
        rows = []
        for A in self.action:
            rows.extend([A[i][j] - int(i == j) for j in range(n)] for i in range(n))
        cols = intlin.transpose(rows, n)
        return intlin.kernel(cols, len(rows))

    def __str__(self) -> str:
        return self.label or f"GLattice(rank={self.rank}, |G|={self.group.order})"


def lattice_from_generators(G: FiniteGroup, images: Mapping[int, Sequence[Sequence[int]]], rank: int, label: str = "") -> GLattice:
    """Extend generator matrices to the whole group; raises if they violate the group relations."""
    gens = sorted(images)
    if G.closure(gens) != frozenset(range(G.order)):
        raise DomainError("the given elements do not generate the group")
    mats: dict[int, IntMatrix] = {G.identity: _mat_identity(rank)}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.mul(s, x)
            m = _mat_mul(freeze(images[s]), mats[x], rank) if rank else ()
            if y in mats:
                if mats[y] != m:
                    raise DomainError(
                        f"generator matrices violate a group relation at {G.names[y]}"
                    )
            else:
                mats[y] = m
                queue.append(y)
    return GLattice(G, rank, tuple(mats[g] for g in range(G.order)), label)


def trivial_lattice(G: FiniteGroup, rank: int = 1) -> GLattice:
    return GLattice(G, rank, tuple(_mat_identity(rank) for _ in range(G.order)), f"Z^{rank} (trivial)" if rank != 1 else "Z (trivial)")


def zero_lattice(G: FiniteGroup) -> GLattice:
    return GLattice(G, 0, tuple(() for _ in range(G.order)), "0")


def cosets(G: FiniteGroup, H: Subgroup) -> list[frozenset[int]]:
    """Left cosets gH, ordered by their smallest element."""
    out: list[frozenset[int]] = []
    seen: set[int] = set()
    for g in range(G.order):
        if g not in seen:
            c = frozenset(G.mul(g, h) for h in H.embedding)
            seen |= c
            out.append(c)
    return out


def permutation_module(G: FiniteGroup, H: Subgroup) -> GLattice:
    """ℤ[G/H] with basis the left cosets and G acting by left translation."""
    cs = cosets(G, H)
    where = {g: i for i, c in enumerate(cs) for g in c}
    n = len(cs)
    action = []
    for g in range(G.order):
        A = [[0] * n for _ in range(n)]
        for j, c in enumerate(cs):
            rep = min(c)
            A[where[G.mul(g, rep)]][j] = 1
        action.append(freeze(A))
    return GLattice(G, n, tuple(action), f"Z[G/{H}]")


def direct_sum(lattices: Sequence[GLattice], label: str = "") -> GLattice:
    G = lattices[0].group
    n = sum(L.rank for L in lattices)
    action = []
    for g in range(G.order):
        A = [[0] * n for _ in range(n)]
        off = 0
        for L in lattices:
            for i in range(L.rank):
                for j in range(L.rank):
                    A[off + i][off + j] = L.action[g][i][j]
            off += L.rank
        action.append(freeze(A))
    return GLattice(G, n, tuple(action), label)


@dataclass(frozen=True)
class LatticeMap:
    """An equivariant map; ``matrix`` has shape target.rank × source.rank."""

    source: GLattice
    target: GLattice
    matrix: IntMatrix

    def __post_init__(self):
        s, t = self.source, self.target
        if s.group != t.group:
            raise DomainError("source and target must carry the same group")
        if len(self.matrix) != t.rank or any(len(r) != s.rank for r in self.matrix):
            raise DomainError(f"map matrix must be {t.rank}x{s.rank}")
        for g in range(s.group.order):
            lhs = intlin.matmul(self.matrix, s.action[g], s.rank) if t.rank else []
            rhs = intlin.matmul(t.action[g], self.matrix, s.rank) if t.rank else []
            if lhs != rhs:
                raise DomainError(f"map is not equivariant at {s.group.names[g]}")

    def compose(self, first: "LatticeMap") -> "LatticeMap":
        """self ∘ first."""
        m = intlin.matmul(self.matrix, first.matrix, first.source.rank) if self.target.rank else []
        return LatticeMap(first.source, self.target, freeze(m))

    def apply(self, v: Sequence[int]) -> list[int]:
        return intlin.matvec(self.matrix, v)


def identity_map(L: GLattice) -> LatticeMap:
    return LatticeMap(L, L, _mat_identity(L.rank))


def scalar_map(L: GLattice, k: int) -> LatticeMap:
    return LatticeMap(L, L, freeze([[k * int(i == j) for j in range(L.rank)] for i in range(L.rank)]))


def zero_map(source: GLattice, target: GLattice) -> LatticeMap:
    return LatticeMap(source, target, freeze([[0] * source.rank for _ in range(target.rank)]))


@dataclass(frozen=True)
class Quotient:
    """L / S for a saturated invariant sublattice S, with the projection and a set-theoretic section."""

    lattice: GLattice
    projection: IntMatrix  # quotient.rank × L.rank
    section: IntMatrix  # L.rank × quotient.rank
    relation_invariants: tuple[int, ...]  # SNF of the sublattice generators; all 1 iff saturated


def quotient_lattice(L: GLattice, vectors: Sequence[Sequence[int]], label: str = "") -> Quotient:
    """Quotient by the invariant sublattice spanned by ``vectors``.

    A single generator with a ±1 entry is eliminated against the first such
    coordinate, so the quotient basis is the images of the remaining standard
    basis vectors. Otherwise the basis comes from a Smith normal form.
    """
    n = L.rank
    vecs = [list(v) for v in vectors]
    rel = intlin.smith(intlin.transpose(vecs, n), n, len(vecs)) if vecs else None
    invariants = tuple(d for d in rel.diag if d) if rel else ()
    if any(d != 1 for d in invariants):
        raise DomainError("sublattice is not saturated; the quotient has torsion")
    if len(vecs) == 1 and any(abs(x) == 1 for x in vecs[0]):
        v = vecs[0]
        j = next(i for i, x in enumerate(v) if abs(x) == 1)
        keep = [i for i in range(n) if i != j]
        # x ↦ x - (x_j / v_j)·v, coordinate j dropped
        proj = [[(int(i == k) - (v[j] * v[k] if i == j else 0)) for i in range(n)] for k in keep]
        sec = [[int(i == k) for k in keep] for i in range(n)]
    else:
        r = len(invariants)
        proj = rel.U[r:] if rel else intlin.identity(n)
        sec = [row[r:] for row in rel.Uinv] if rel else intlin.identity(n)
    m = len(proj)
    for g in range(L.group.order):
        for v in vecs:
            if any(intlin.matvec(proj, intlin.matvec(L.action[g], v))):
                raise DomainError("sublattice is not invariant under the group")
    action = []
    for g in range(L.group.order):
        A = intlin.matmul(intlin.matmul(proj, L.action[g], n), sec, m) if m else []
        action.append(freeze(A))
    Q = GLattice(L.group, m, tuple(action), label)
    return Quotient(Q, freeze(proj), freeze(sec), invariants)


def _norm_vector(n: int) -> list[int]:
    return [1] * n


@dataclass(frozen=True)
class BiquadraticLattices:
    """The character lattices of 1 → G_m² → Q → T → 1 for a biquadratic extension."""

    group: FiniteGroup
    regular: GLattice  # ℤ[G]
    that: GLattice  # T̂ = ℤ[G]/ℤ·N_G
    permutation_sum: GLattice  # ⊕_i ℤ[G/H_i], H_i the subgroups of order 2
    qhat: GLattice  # Q̂ = (⊕_i ℤ[G/H_i]) / ℤ·(Σ_i N_i)
    inclusion: LatticeMap  # T̂ ↪ Q̂
    phat: GLattice  # Q̂ / T̂ ≅ ℤ², trivial action
    projection: LatticeMap  # Q̂ → P̂
    that_projection: IntMatrix  # ℤ[G] → T̂
    qhat_projection: IntMatrix  # ⊕ℤ[G/H_i] → Q̂
    restriction: IntMatrix  # ℤ[G] → ⊕ℤ[G/H_i], g ↦ (gH_1, gH_2, gH_3)
    qhat_relation_invariants: tuple[int, ...]
    cokernel_invariants: tuple[int, ...]  # SNF of the inclusion matrix


def biquadratic_lattices() -> BiquadraticLattices:
    G = klein_four()
    regular = permutation_module(G, trivial_subgroup(G))
    tq = quotient_lattice(regular, [_norm_vector(4)], "T^")
    order_two = [H for H in subgroups(G) if H.order == 2]
    blocks = [permutation_module(G, H) for H in order_two]
    psum = direct_sum(blocks, "+Z[G/H_i]")
    qq = quotient_lattice(psum, [_norm_vector(psum.rank)], "Q^")

    # characters of R_{K/k}G_m restrict along R_{k_i/k}G_m ⊂ R_{K/k}G_m to the coset gH_i
    res = [[0] * G.order for _ in range(psum.rank)]
    off = 0
    for H, blk in zip(order_two, blocks):
        cs = cosets(G, H)
        for g in range(G.order):
            res[off + next(i for i, c in enumerate(cs) if g in c)][g] = 1
        off += blk.rank
    incl = intlin.matmul(intlin.matmul(qq.projection, res, G.order), tq.section, tq.lattice.rank)
    inclusion = LatticeMap(tq.lattice, qq.lattice, freeze(incl))

    incl_snf = intlin.smith(incl, qq.lattice.rank, tq.lattice.rank)
    image = intlin.transpose(incl, tq.lattice.rank)
    pq = quotient_lattice(qq.lattice, image, "P^")
    projection = LatticeMap(qq.lattice, pq.lattice, pq.projection)
    return BiquadraticLattices(
        group=G,
        regular=regular,
        that=tq.lattice,
        permutation_sum=psum,
        qhat=qq.lattice,
        inclusion=inclusion,
        phat=pq.lattice,
        projection=projection,
        that_projection=tq.projection,
        qhat_projection=qq.projection,
        restriction=freeze(res),
        qhat_relation_invariants=qq.relation_invariants,
        cokernel_invariants=tuple(incl_snf.diag),
    )


def biquadratic_That() -> GLattice:
    """T̂ for T = R¹_{K/k}G_m, K/k biquadratic: ℤ[G]/(norm), basis the images of s_a, s_b, s_ab."""
    return biquadratic_lattices().that


def biquadratic_Qhat() -> tuple[GLattice, LatticeMap]:
    """Q̂ (rank 5) and the equivariant inclusion T̂ ↪ Q̂."""
    b = biquadratic_lattices()
    return b.qhat, b.inclusion

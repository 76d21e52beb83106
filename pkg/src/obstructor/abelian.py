"""Finitely generated abelian groups in Smith normal form, given as subquotients of ℤ^N."""
from __future__ import annotations

from typing import Sequence

from . import intlin
from .errors import InconsistencyError


class FinAbGroup:
    """A subquotient S/R of an ambient lattice ℤ^N, in canonical form.

    Canonical coordinates put the torsion generators first (invariant factors
    ascending along the divisibility chain), then the free generators.
    ``lift`` sends canonical coordinates to an ambient vector; ``project``
    sends an ambient vector lying in S to reduced canonical coordinates.
    """

    def __init__(self, invariants, free_rank, ambient_dim, gens, w, div, p, parent=None):
        self.invariants: tuple[int, ...] = tuple(invariants)
        self.free_rank: int = free_rank
        self.ambient_dim: int = ambient_dim
        self._gens = [list(g) for g in gens]  # ambient columns of canonical generators
        self._w = w  # s × N: first step of the S-coordinate map
        self._div = div  # exact divisors applied after _w
        self._p = p  # ngens × s: S-coordinates to canonical coordinates
        self.parent = parent

    @property
    def ngens(self) -> int:
        return len(self.invariants) + self.free_rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus; 0 marks a free coordinate."""
        return self.invariants + (0,) * self.free_rank

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(v % d if d else v for v, d in zip(x, self.moduli))

    def lift(self, x: Sequence[int]) -> list[int]:
        out = [0] * self.ambient_dim
        for c, g in zip(x, self._gens):
            if c:
                for k, gk in enumerate(g):
                    if gk:
                        out[k] += c * gk
        return out

    def generator(self, j: int) -> list[int]:
        return list(self._gens[j])

    def contains(self, v: Sequence[int]) -> bool:
        try:
            self._subcoords(v)
        except ValueError:
            return False
        return True

    def _subcoords(self, v: Sequence[int]) -> list[int]:
        if self._w is None:
            if any(v):
                raise ValueError("vector does not lie in the zero subgroup")
            return []
        raw = intlin.matvec(self._w, v)
        z = []
        for r, d in zip(raw, self._div):
            q, rem = divmod(r, d)
            if rem:
                raise ValueError("vector does not lie in the subgroup")
            z.append(q)
        return z

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ambient_dim:
            raise ValueError(f"expected an ambient vector of length {self.ambient_dim}")
        return self.reduce(intlin.matvec(self._p, self._subcoords(v)))

    def describe(self) -> str:
        return render(self.invariants, self.free_rank)

    __str__ = describe

    def __repr__(self) -> str:
        return f"FinAbGroup({self.describe()})"

    def same_type(self, other: "FinAbGroup") -> bool:
        return self.invariants == other.invariants and self.free_rank == other.free_rank

    def ambient_to_root(self, x: Sequence[int]) -> list[int]:
        """Lift canonical coordinates through every enclosing parent group."""
        v = self.lift(x)
        g = self.parent
        while g is not None:
            v = g.lift(v)
            g = g.parent
        return v


def render(invariants: Sequence[int], free_rank: int) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts.extend(f"Z/{d}" for d in invariants)
    return " x ".join(parts) if parts else "0"


def _from_coords(ambient_dim, s, basis, w, div, post, relations, parent=None) -> FinAbGroup:
    """Assemble a group from S-coordinate data and relations given in S-coordinates.

    ``basis``: s ambient columns spanning S; ``w``/``div``/``post``: S-coordinates
    of v are post·((w·v) / div); ``relations``: columns in S-coordinates.
    """
    if s == 0:
        return FinAbGroup((), 0, ambient_dim, [], None, [], [], parent)
    rel_rows = intlin.transpose(relations, s) if relations else [[] for _ in range(s)]
    sm = intlin.smith(rel_rows, s, len(relations))
    diag = sm.diag + [0] * (s - len(sm.diag))
    torsion = [i for i in range(s) if diag[i] > 1]
    free = [i for i in range(s) if diag[i] == 0]
    sel = torsion + free
    gens = []
    for i in sel:
        g = [0] * ambient_dim
        for k in range(s):
            c = sm.Uinv[k][i]
            if c:
                for t, b in enumerate(basis[k]):
                    if b:
                        g[t] += c * b
        gens.append(g)
    p = intlin.matmul([sm.U[i] for i in sel], post, s)
    return FinAbGroup([diag[i] for i in torsion], len(free), ambient_dim, gens, w, div, p, parent)


def saturated_subquotient(ambient_dim, basis, coords, relations_ambient, parent=None) -> FinAbGroup:
    """S saturated with ambient ``basis`` columns and exact coordinate rows ``coords``."""
    s = len(basis)
    rel = [intlin.matvec(coords, r) for r in relations_ambient]
    return _from_coords(ambient_dim, s, basis, coords, [1] * s, intlin.identity(s), rel, parent)


def subquotient(ambient_dim, basis, relations_ambient, parent=None) -> FinAbGroup:
    """General S/R with S spanned by independent ambient columns ``basis`` and R ⊆ S."""
    s = len(basis)
    if s == 0:
        return FinAbGroup((), 0, ambient_dim, [], None, [], [], parent)
    sb_rows = intlin.transpose(basis, ambient_dim)
    sm = intlin.smith(sb_rows, ambient_dim, s)
    if sm.rank != s:
        raise ValueError("subgroup generators are not independent")
    w = sm.U[:s]
    div = sm.diag[:s]
    post = sm.V
    group_stub = FinAbGroup((), 0, ambient_dim, [], w, div, intlin.identity(s))
    rel = []
    for r in relations_ambient:
        try:
            z = group_stub._subcoords(r)
        except ValueError:
            raise InconsistencyError("relation outside the subgroup") from None
        rel.append(intlin.matvec(post, z))
    return _from_coords(ambient_dim, s, basis, w, div, post, rel, parent)


def free_group(rank: int) -> FinAbGroup:
    basis = [[int(i == j) for i in range(rank)] for j in range(rank)]
    return saturated_subquotient(rank, basis, intlin.identity(rank), [])


def cyclic(n: int) -> FinAbGroup:
    """ℤ/n (n ≥ 1) presented on ℤ^1."""
    return saturated_subquotient(1, [[1]], [[1]], [[n]] if n else [])


class GroupHom:
    """A homomorphism between canonical forms, given by an integer matrix on generators."""

    def __init__(self, source: FinAbGroup, target: FinAbGroup, matrix: Sequence[Sequence[int]]):
        self.source = source
        self.target = target
        cols = [target.reduce([matrix[i][j] for i in range(target.ngens)]) for j in range(source.ngens)]
        self.matrix: list[list[int]] = [[cols[j][i] for j in range(source.ngens)] for i in range(target.ngens)]
        for j, d in enumerate(source.moduli):
            if d and any(target.reduce([d * c for c in cols[j]])):
                raise InconsistencyError("matrix does not define a homomorphism")

    @classmethod
    def from_images(cls, source, target, images: Sequence[Sequence[int]]) -> "GroupHom":
        """Build from the target coordinates of each source generator."""
        m = [[images[j][i] for j in range(source.ngens)] for i in range(target.ngens)]
        return cls(source, target, m)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(intlin.matvec(self.matrix, x)) if self.target.ngens else ()

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.matrix)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self ∘ first."""
        images = [self(first.column(j)) for j in range(first.source.ngens)]
        return GroupHom.from_images(first.source, self.target, images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (
            self.source.same_type(other.source)
            and self.target.same_type(other.target)
            and self.matrix == other.matrix
        )

    def is_zero(self) -> bool:
        return all(not x for row in self.matrix for x in row)

    def kernel(self) -> FinAbGroup:
        return kernel_of(self.matrix, self.source, self.target.moduli)

    def cokernel(self) -> FinAbGroup:
        n = self.target.ngens
        rel = [list(self.column(j)) for j in range(self.source.ngens)]
        rel += [[d * int(i == k) for i in range(n)] for k, d in enumerate(self.target.moduli) if d]
        basis = [[int(i == k) for i in range(n)] for k in range(n)]
        return saturated_subquotient(n, basis, intlin.identity(n), rel, parent=self.target)

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()

    def is_surjective(self) -> bool:
        return self.cokernel().is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def __repr__(self) -> str:
        return f"GroupHom({self.source} -> {self.target}, {self.matrix})"


def kernel_of(matrix: Sequence[Sequence[int]], source: FinAbGroup, target_moduli: Sequence[int]) -> FinAbGroup:
    """Kernel of x ↦ matrix·x from ``source`` into ⊕ ℤ/e (e = 0 meaning ℤ).

    Pulls back to {x : matrix·x ∈ diag(e)ℤ^t}, then divides out the source relations.
    """
    ks = source.ngens
    kt = len(target_moduli)
    if ks == 0:
        return FinAbGroup((), 0, 0, [], None, [], [], parent=source)
    cols = [[matrix[i][j] for i in range(kt)] for j in range(ks)]
    cols += [[e * int(i == k) for i in range(kt)] for k, e in enumerate(target_moduli) if e]
    ker = intlin.kernel(cols, kt) if kt else [[int(i == j) for i in range(ks)] for j in range(ks)]
    xs = [v[:ks] for v in ker]
    basis = intlin.span_basis(xs, ks)
    rel = [[d * int(i == k) for i in range(ks)] for k, d in enumerate(source.moduli) if d]
    return subquotient(ks, basis, rel, parent=source)

"""Exact integer linear algebra: Smith normal form with transforms, column echelon kernels.

Matrices are lists of rows of Python ints. Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def shape(A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[int, int]:
    m = len(A)
    if m:
        return m, len(A[0])
    return 0, ncols or 0


def transpose(A: Sequence[Sequence[int]], ncols: int = 0) -> Matrix:
    if not A:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ncols: int = 0) -> Matrix:
    """Product A·B; ``ncols`` is used only when B has no rows."""
    if not B:
        return zeros(len(A), ncols)
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col) if a) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v) if a) for row in A]


def is_zero(A: Sequence[Sequence[int]]) -> bool:
    return all(not x for row in A for x in row)


def det(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass
class Smith:
    """U·A·V = D with U, V unimodular; ``diag`` holds the invariant factors (zeros last)."""

    diag: list[int]
    U: Matrix
    Uinv: Matrix
    V: Matrix
    Vinv: Matrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


def smith(A: Sequence[Sequence[int]], m: int | None = None, n: int | None = None) -> Smith:
    """Smith normal form with both transforms and their inverses."""
    if m is None:
        m = len(A)
    if n is None:
        n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity(m)
    UinvT = identity(m)  # transpose of U^-1, so its column ops become row ops
    VT = identity(n)  # transpose of V
    Vinv = identity(n)

    def row_add(i: int, t: int, q: int) -> None:
        # row_i -= q row_t
        D[i] = [x - q * y for x, y in zip(D[i], D[t])]
        U[i] = [x - q * y for x, y in zip(U[i], U[t])]
        UinvT[t] = [x + q * y for x, y in zip(UinvT[t], UinvT[i])]

    def row_swap(i: int, t: int) -> None:
        D[i], D[t] = D[t], D[i]
        U[i], U[t] = U[t], U[i]
        UinvT[i], UinvT[t] = UinvT[t], UinvT[i]

    def col_add(j: int, t: int, q: int) -> None:
        # col_j -= q col_t
        for row in D:
            if row[t]:
                row[j] -= q * row[t]
        VT[j] = [x - q * y for x, y in zip(VT[j], VT[t])]
        Vinv[t] = [x + q * y for x, y in zip(Vinv[t], Vinv[j])]

    def col_swap(j: int, t: int) -> None:
        for row in D:
            row[j], row[t] = row[t], row[j]
        VT[j], VT[t] = VT[t], VT[j]
        Vinv[j], Vinv[t] = Vinv[t], Vinv[j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        if i0 != t:
            row_swap(i0, t)
        if j0 != t:
            col_swap(j0, t)
        while True:
            moved = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(i, t, D[i][t] // D[t][t])
                    if D[i][t]:
                        row_swap(i, t)
                        moved = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(j, t, D[t][j] // D[t][t])
                    if D[t][j]:
                        col_swap(j, t)
                        moved = True
            if moved:
                continue
            p = D[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            UinvT[t] = [-x for x in UinvT[t]]
        t += 1
    diag = [D[i][i] for i in range(min(m, n))]
    return Smith(diag=diag, U=U, Uinv=transpose(UinvT, m), V=transpose(VT, n), Vinv=Vinv)


@dataclass
class Echelon:
    """Column reduction A·V = [H | 0] with H of full column rank.

    ``V`` columns and ``Vinv`` rows are ordered pivots first. The trailing
    ``n - rank`` columns of V form a basis of ker A, and for v in ker A the
    kernel coordinates are ``Vinv[rank:]·v``.
    """

    rank: int
    H: list[list[int]]  # pivot columns of A·V, as column vectors
    V: list[list[int]]  # columns of V
    Vinv: Matrix  # rows of V^-1

    def kernel_basis(self) -> list[list[int]]:
        return self.V[self.rank:]

    def kernel_coords(self) -> Matrix:
        return self.Vinv[self.rank:]


def column_echelon(columns: Sequence[Sequence[int]], m: int) -> Echelon:
    """Reduce a matrix given as a list of ``m``-long columns by unimodular column operations."""
    cols = [list(c) for c in columns]
    n = len(cols)
    V = [[int(i == j) for i in range(n)] for j in range(n)]  # V[j] is column j
    Vi = identity(n)
    active = list(range(n))
    pivots: list[int] = []
    for r in range(m):
        nz = [j for j in active if cols[j][r]]
        while len(nz) > 1:
            p = min(nz, key=lambda j: abs(cols[j][r]))
            cp, vp = cols[p], V[p]
            for j in nz:
                if j == p:
                    continue
                q = cols[j][r] // cp[r]
                cols[j] = [x - q * y for x, y in zip(cols[j], cp)]
                V[j] = [x - q * y for x, y in zip(V[j], vp)]
                Vi[p] = [x + q * y for x, y in zip(Vi[p], Vi[j])]
            nz = [j for j in nz if cols[j][r]]
        if nz:
            active.remove(nz[0])
            pivots.append(nz[0])
    order = pivots + active
    return Echelon(
        rank=len(pivots),
        H=[cols[j] for j in pivots],
        V=[V[j] for j in order],
        Vinv=[Vi[j] for j in order],
    )


def span_basis(columns: Sequence[Sequence[int]], m: int) -> list[list[int]]:
    """A basis (as columns) of the ℤ-span of the given columns."""
    return column_echelon(columns, m).H


def kernel(columns: Sequence[Sequence[int]], m: int) -> list[list[int]]:
    """A basis (as columns) of the integer kernel of the matrix with these columns."""
    return column_echelon(columns, m).kernel_basis()

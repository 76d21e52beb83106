from hypothesis import given
from hypothesis import strategies as st

from obstructor import intlin


def matrices(max_dim=5, bound=12):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    )


def test_smith_known_example():
    A = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    S = intlin.smith(A)
    assert S.diag == [1, 10, 30, 0]


@given(matrices())
def test_smith_decomposition(A):
    m, n = len(A), len(A[0])
    S = intlin.smith(A)
    D = intlin.matmul(intlin.matmul(S.U, A), S.V)
    for i in range(m):
        for j in range(n):
            assert D[i][j] == (S.diag[i] if i == j and i < len(S.diag) else 0)
    nz = [d for d in S.diag if d]
    assert all(d > 0 for d in nz)
    assert all(nz[k + 1] % nz[k] == 0 for k in range(len(nz) - 1))
    assert nz == S.diag[: len(nz)]
    assert intlin.matmul(S.U, S.Uinv) == intlin.identity(m)
    assert intlin.matmul(S.V, S.Vinv) == intlin.identity(n)
    assert abs(intlin.det(S.U)) == 1 and abs(intlin.det(S.V)) == 1


@given(matrices())
def test_kernel_is_saturated_kernel(A):
    m, n = len(A), len(A[0])
    cols = intlin.transpose(A)
    K = intlin.kernel(cols, m)
    for v in K:
        assert not any(intlin.matvec(A, v))
    assert len(K) == n - intlin.smith(A).rank
    if K:
        # saturated: invariant factors of the basis are all 1
        assert set(intlin.smith(K).diag) <= {1}


def test_det_bareiss():
    assert intlin.det([[2, 1], [7, 4]]) == 1
    assert intlin.det([[0, 1, 0], [1, 0, 0], [0, 0, 1]]) == -1
    assert intlin.det([[1, 2], [2, 4]]) == 0


def test_large_entries_stay_exact():
    A = [[2 ** 70, 3], [5, 2 ** 65 + 1]]
    S = intlin.smith(A)
    assert S.diag[0] * S.diag[1] == abs(intlin.det(A))

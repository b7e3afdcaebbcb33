import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from commamodel import linalg as la
from commamodel.linalg import Matrix
from strategies import matrices, primes

M = Matrix


def test_rank_small_cases():
    assert la.rank(M.identity(2, 2)) == 2
    assert la.rank(M.zeros(2, 3, 2)) == 0
    assert la.rank(M(2, [[1, 1], [1, 1]])) == 1


def test_solve_identity_returns_rhs():
    B = M(3, [[1, 2], [0, 1]])
    assert la.solve(M.identity(3, 2), B) == B


def test_solve_underdetermined_by_substitution():
    A, B = M(2, [[1, 1]]), M(2, [[1]])
    X = la.solve(A, B)
    assert X is not None and A @ X == B
    # exactly two of the four candidates solve it
    sols = [v for v in itertools.product(range(2), repeat=2) if (v[0] + v[1]) % 2 == 1]
    assert tuple(X.to_list()[i][0] for i in range(2)) in sols


def test_solve_inconsistent():
    assert la.solve(M.zeros(2, 1, 1), M(2, [[1]])) is None


def test_kernel_examples():
    assert la.kernel_basis(M.identity(3, 2)).cols == 0
    K = la.kernel_basis(M.zeros(2, 1, 2))
    assert K.cols == 2 and la.rank(K) == 2
    K = la.kernel_basis(M(2, [[1, 1]]))
    assert K.to_list() == [[1], [1]]


def test_kron_and_direct_sum():
    B = M(3, [[1, 2], [0, 1]])
    assert la.kron(M.identity(3, 1), B) == B
    assert la.direct_sum(M.identity(2, 1), M.identity(2, 2)) == M.identity(2, 3)
    # left factor outer: rows indexed by (a, b) -> a * 2 + b
    assert la.kron(M(2, [[1, 0]]), M(2, [[1], [1]])).to_list() == [[1, 0], [1, 0]]


def test_rejects_non_prime():
    with pytest.raises(ValueError):
        M(4, [[1]])


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        M(2, [[1]]) @ M(3, [[1]])


@given(matrices())
def test_rank_matches_sympy(A):
    assert la.rank(A) == oracles.rank(A.to_list(), A.p, A.shape)


@given(matrices())
def test_kernel_is_kernel(A):
    K = la.kernel_basis(A)
    assert K.rows == A.cols
    assert (A @ K).is_zero()
    assert K.cols == A.cols - oracles.rank(A.to_list(), A.p, A.shape)
    assert la.rank(K) == K.cols


@given(st.data())
def test_solve_agrees_with_oracle(data):
    p = data.draw(primes)
    A = data.draw(matrices(p=p, max_side=4))
    b = [data.draw(st.integers(0, p - 1)) for _ in range(A.rows)]
    B = M(p, [[x] for x in b]) if A.rows else M.zeros(p, 0, 1)
    X = la.solve(A, B)
    assert (X is not None) == oracles.solvable(A.to_list(), b, p)
    if X is not None:
        assert A @ X == B


@given(matrices())
def test_cokernel_map(A):
    Q = la.cokernel_map(A)
    assert (Q @ A).is_zero()
    assert Q.rows == A.rows - la.rank(A)
    assert la.is_surjective(Q)


@given(st.data())
def test_inverse(data):
    p = data.draw(primes)
    n = data.draw(st.integers(1, 4))
    A = M(p, [[data.draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(n)])
    if la.rank(A) < n:
        with pytest.raises(ValueError):
            la.inverse(A)
    else:
        assert la.inverse(A) @ A == M.identity(p, n)


@given(matrices(), matrices())
def test_kron_mixed_product(A, B):
    if A.p != B.p:
        return
    # (A ⊗ B)(Aᵀ ⊗ Bᵀ) = AAᵀ ⊗ BBᵀ
    assert la.kron(A, B) @ la.kron(A.T, B.T) == la.kron(A @ A.T, B @ B.T)

"""Exact dense linear algebra over a prime field F_p.

Matrices are immutable wrappers around int64 numpy arrays whose entries are
kept in ``[0, p)``.  Every routine here is exact; there is no floating point.

Index convention used by every tensor-related routine in the package:
``kron(A, B)`` puts the *left* factor outermost, so basis vector ``e_a ⊗ e_b``
of ``V ⊗ W`` sits at position ``a * dim(W) + b`` (row-major).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"not a prime: {p!r}")
    return int(p)


class Matrix:
    """A rows × cols matrix over F_p."""

    __slots__ = ("p", "_a", "_hash")

    def __init__(self, p: int, data, *, _trusted: bool = False):
        if _trusted:
            a = data
        else:
            p = check_prime(p)
            a = np.array(data, dtype=np.int64)
            if a.ndim == 1 and a.size == 0:
                a = a.reshape(0, 0)
            if a.ndim != 2:
                raise ValueError("matrix data must be two-dimensional")
            a = a % p
        a.flags.writeable = False
        self.p = p
        self._a = a
        self._hash = None

    # constructors
    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> Matrix:
        return cls(p, np.zeros((rows, cols), dtype=np.int64), _trusted=True)

    @classmethod
    def identity(cls, p: int, n: int) -> Matrix:
        return cls(p, np.eye(n, dtype=np.int64), _trusted=True)

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(p, 0, cols or 0)
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix rows")
        return cls(p, rows)

    @classmethod
    def _wrap(cls, p: int, a: np.ndarray) -> Matrix:
        return cls(p, np.ascontiguousarray(a % p, dtype=np.int64), _trusted=True)

    # basic accessors
    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a.ravel())

    def to_list(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def __getitem__(self, idx):
        return int(self._a[idx])

    def __repr__(self) -> str:
        return f"Matrix(p={self.p}, {self.to_list()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.shape, self._a.tobytes()))
        return self._hash

    # arithmetic
    def _same_field(self, other: Matrix) -> None:
        if self.p != other.p:
            raise ValueError(f"prime mismatch: {self.p} vs {other.p}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch in product: {self.shape} @ {other.shape}")
        return Matrix._wrap(self.p, self._a @ other._a)

    def __add__(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch in sum: {self.shape} + {other.shape}")
        return Matrix._wrap(self.p, self._a + other._a)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch in difference: {self.shape} - {other.shape}")
        return Matrix._wrap(self.p, self._a - other._a)

    def __neg__(self) -> Matrix:
        return Matrix._wrap(self.p, -self._a)

    def __rmul__(self, c: int) -> Matrix:
        return Matrix._wrap(self.p, int(c) * self._a)

    @property
    def T(self) -> Matrix:
        return Matrix._wrap(self.p, self._a.T)

    def is_zero(self) -> bool:
        return not self._a.any()

    def block(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        return Matrix._wrap(self.p, self._a[r0:r1, c0:c1])


def _inv(x: int, p: int) -> int:
    return pow(int(x), p - 2, p)


def rref(A: Matrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    p = A.p
    m = A.array.copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        if m[r, c] != 1:
            m[r] = (m[r] * _inv(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(A: Matrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    return len(rref(A)[1])


def solve(A: Matrix, B: Matrix) -> Matrix | None:
    """Some X with A·X = B, or None when the system is inconsistent."""
    A._same_field(B)
    if A.rows != B.rows:
        raise ValueError(f"row mismatch: A has {A.rows} rows, B has {B.rows}")
    n, k = A.cols, B.cols
    if A.rows == 0:
        return Matrix.zeros(A.p, n, k)
    aug = Matrix(A.p, np.hstack([A.array, B.array]), _trusted=True)
    R, pivots = rref(aug)
    if pivots and pivots[-1] >= n:
        return None
    X = np.zeros((n, k), dtype=np.int64)
    for i, c in enumerate(pivots):
        X[c] = R[i, n:]
    return Matrix._wrap(A.p, X)


def kernel_basis(A: Matrix) -> Matrix:
    """Columns form a basis of ker(A)."""
    p, n = A.p, A.cols
    if A.rows == 0:
        return Matrix.identity(p, n)
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in set(pivots)]
    K = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        K[f, j] = 1
        for i, c in enumerate(pivots):
            K[c, j] = -R[i, f]
    return Matrix._wrap(p, K)


def image_basis(A: Matrix) -> Matrix:
    """Columns of A at the pivot positions: a basis of the column space."""
    if A.rows == 0 or A.cols == 0:
        return Matrix.zeros(A.p, A.rows, 0)
    _, pivots = rref(A)
    return Matrix._wrap(A.p, A.array[:, pivots])


def cokernel_map(A: Matrix) -> Matrix:
    """A surjection Q with ker Q = im A (rows span the annihilator of im A)."""
    return kernel_basis(A.T).T


def left_inverse(A: Matrix) -> Matrix:
    """L with L·A = I; A must be injective."""
    X = solve(A.T, Matrix.identity(A.p, A.cols))
    if X is None:
        raise ValueError("matrix is not injective")
    return X.T


def right_inverse(A: Matrix) -> Matrix:
    """R with A·R = I; A must be surjective."""
    X = solve(A, Matrix.identity(A.p, A.rows))
    if X is None:
        raise ValueError("matrix is not surjective")
    return X


def inverse(A: Matrix) -> Matrix:
    if A.rows != A.cols or rank(A) != A.rows:
        raise ValueError("matrix is not invertible")
    return right_inverse(A)


def is_injective(A: Matrix) -> bool:
    return rank(A) == A.cols


def is_surjective(A: Matrix) -> bool:
    return rank(A) == A.rows


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product, left factor outer."""
    A._same_field(B)
    return Matrix._wrap(A.p, np.kron(A.array, B.array))


def direct_sum(*ms: Matrix) -> Matrix:
    """Block-diagonal sum."""
    if not ms:
        raise ValueError("direct_sum needs at least one matrix")
    p = ms[0].p
    for m in ms:
        ms[0]._same_field(m)
    out = np.zeros((sum(m.rows for m in ms), sum(m.cols for m in ms)), dtype=np.int64)
    r = c = 0
    for m in ms:
        out[r:r + m.rows, c:c + m.cols] = m.array
        r += m.rows
        c += m.cols
    return Matrix._wrap(p, out)


def hstack(ms: Iterable[Matrix], p: int, rows: int) -> Matrix:
    ms = list(ms)
    if not ms:
        return Matrix.zeros(p, rows, 0)
    return Matrix._wrap(p, np.hstack([m.array for m in ms]))


def vstack(ms: Iterable[Matrix], p: int, cols: int) -> Matrix:
    ms = list(ms)
    if not ms:
        return Matrix.zeros(p, 0, cols)
    return Matrix._wrap(p, np.vstack([m.array for m in ms]))


def vec(A: Matrix) -> np.ndarray:
    """Row-major flattening; vec(X·U·Y) = kron(X, Yᵀ)·vec(U)."""
    return A.array.reshape(-1)


def unvec(p: int, v: np.ndarray, rows: int, cols: int) -> Matrix:
    return Matrix._wrap(p, np.asarray(v, dtype=np.int64).reshape(rows, cols))

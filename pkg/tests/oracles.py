"""Independent reference computations.

Nothing here touches commamodel.linalg: ranks come from sympy's GF(p)
domain matrices, and chain-level facts are recomputed from plain lists.
"""

from __future__ import annotations

import itertools

from sympy import GF
from sympy.polys.matrices import DomainMatrix


def _dm(rows, p, shape=None):
    rows = [list(r) for r in rows]
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    K = GF(p)
    return DomainMatrix([[K(int(x) % p) for x in r] for r in rows], shape, K)


def rank(rows, p, shape=None) -> int:
    shape = shape or (len(rows), len(rows[0]) if rows else 0)
    if 0 in shape:
        return 0
    return _dm(rows, p, shape).rank()


def matmul(A, B, p, cols=None):
    """A·B mod p; ``cols`` gives the width when B has no rows."""
    n = len(B)
    m = len(B[0]) if B else (cols or 0)
    return [[sum(a[k] * B[k][j] for k in range(n)) % p for j in range(m)] for a in A]


def solvable(A, b, p) -> bool:
    """Does A x = b have a solution (b a column given as a list)?"""
    if not A or not A[0]:
        return all(x % p == 0 for x in b)
    aug = [list(r) + [v] for r, v in zip(A, b)]
    return rank(A, p) == rank(aug, p)


# ---------------------------------------------------------------- complexes


def as_lists(X):
    """(p, {n: dim}, {n: rows of d_n}) read off through the public accessors."""
    dims = {n: X.dim(n) for n in X.degrees()}
    d = {n: X.d(n).to_list() for n in X.degrees() if X.dim(n) and X.dim(n - 1)}
    return X.p, dims, d


def homology_dims(X) -> dict[int, int]:
    """dim H_n = dim X_n - rank d_n - rank d_{n+1}."""
    p, dims, d = as_lists(X)
    out = {}
    for n, k in dims.items():
        r_out = rank(d[n], p, (dims.get(n - 1, 0), k)) if n in d else 0
        r_in = rank(d[n + 1], p, (k, dims.get(n + 1, 0))) if n + 1 in d else 0
        out[n] = k - r_out - r_in
    return out


def map_lists(f):
    return {n: f.comp(n).to_list() for n in f.degrees()}


def cone_homology_dims(f) -> dict[int, int]:
    """Homology of the mapping cone; f is a quasi-iso iff every entry is 0.

    Cone_n = X_{n-1} ⊕ Y_n, d(x, y) = (-dx, f x + dy).
    """
    X, Y, p = f.source, f.target, f.p
    degs = sorted(set(X.degrees()) | {n + 1 for n in X.degrees()} | set(Y.degrees()))
    if not degs:
        return {}

    def cdim(n):
        return X.dim(n - 1) + Y.dim(n)

    def cd(n):
        a, b = X.dim(n - 1), Y.dim(n)
        a2, b2 = X.dim(n - 2), Y.dim(n - 1)
        M = [[0] * (a + b) for _ in range(a2 + b2)]
        dx = X.d(n - 1).to_list()
        dy = Y.d(n).to_list()
        fx = f.comp(n - 1).to_list()
        for i in range(a2):
            for j in range(a):
                M[i][j] = (-dx[i][j]) % p
        for i in range(b2):
            for j in range(a):
                M[a2 + i][j] = fx[i][j] % p
            for j in range(b):
                M[a2 + i][a + j] = dy[i][j] % p
        return M

    out = {}
    for n in degs:
        k = cdim(n)
        r_out = rank(cd(n), p, (cdim(n - 1), k)) if k and cdim(n - 1) else 0
        r_in = rank(cd(n + 1), p, (k, cdim(n + 1))) if k and cdim(n + 1) else 0
        out[n] = k - r_out - r_in
    return out


def is_quasi_iso(f) -> bool:
    return all(v == 0 for v in cone_homology_dims(f).values())


def is_injective(f) -> bool:
    return all(rank(f.comp(n).to_list(), f.p, f.comp(n).shape) == f.source.dim(n) for n in f.source.degrees())


def is_surjective(f) -> bool:
    return all(rank(f.comp(n).to_list(), f.p, f.comp(n).shape) == f.target.dim(n) for n in f.target.degrees())


def flags(f) -> tuple[bool, bool, bool]:
    return is_injective(f), is_surjective(f), is_quasi_iso(f)


def is_chain_map(f) -> bool:
    X, Y, p = f.source, f.target, f.p
    for n in set(X.degrees()) | set(Y.degrees()):
        if not (X.dim(n) and Y.dim(n - 1)):
            continue
        lhs = matmul(f.comp(n - 1).to_list(), X.d(n).to_list(), p, X.dim(n))
        rhs = matmul(Y.d(n).to_list(), f.comp(n).to_list(), p, X.dim(n))
        if lhs != rhs:
            return False
    return True


def count_chain_maps(X, Y, limit: int = 4096) -> int:
    """Brute-force |Hom(X, Y)| by enumerating every tuple of component matrices."""
    p = X.p
    degs = [n for n in X.degrees() if Y.dim(n)]
    slots = [(n, Y.dim(n), X.dim(n)) for n in degs]
    total = sum(r * c for _, r, c in slots)
    if p ** total > limit:
        raise ValueError("hom-set too large to enumerate")
    count = 0
    for vals in itertools.product(range(p), repeat=total):
        comps, k = {}, 0
        for n, r, c in slots:
            comps[n] = [list(vals[k + i * c:k + (i + 1) * c]) for i in range(r)]
            k += r * c
        ok = True
        for n in set(X.degrees()) | set(Y.degrees()):
            if not (X.dim(n) and Y.dim(n - 1)):
                continue
            zero = [[0] * X.dim(n) for _ in range(Y.dim(n - 1))]
            a, b = comps.get(n - 1), comps.get(n)
            lhs = matmul(a, X.d(n).to_list(), p, X.dim(n)) if a is not None else zero
            rhs = matmul(Y.d(n).to_list(), b, p, X.dim(n)) if b is not None else zero
            if lhs != rhs:
                ok = False
                break
        count += ok
    return count

"""Tensor products and internal homs of chain complexes, with Koszul signs.

Conventions (all basis orderings follow ``linalg.kron``: left factor outer):

* ``(X⊗Y)_n = ⊕_i X_i ⊗ Y_{n-i}``, blocks ordered by increasing i;
  ``d(x⊗y) = dx⊗y + (-1)^i x⊗dy``.
* ``Hom(X,Y)_n = ∏_i Hom(X_i, Y_{i+n})``, blocks ordered by increasing i, each
  block a (dim Y_{i+n}) × (dim X_i) matrix flattened row-major;
  ``d(f) = d_Y∘f - (-1)^n f∘d_X``.
* The tensor–hom transpose of f: X⊗P → Y is f̄(x)(p) = f(x⊗p), with no sign.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import linalg as la
from .chain import ChainComplex, ChainMap, Shape, finite_colimit, identity
from .linalg import Matrix


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@lru_cache(maxsize=4096)
def tensor_layout(X: ChainComplex, Y: ChainComplex, n: int) -> tuple[tuple[int, int, int, int], ...]:
    """Blocks of (X⊗Y)_n as (i, j, offset, size)."""
    out, off = [], 0
    for i in X.degrees():
        j = n - i
        size = X.dim(i) * Y.dim(j)
        if size:
            out.append((i, j, off, size))
            off += size
    return tuple(out)


def _tensor_window(X: ChainComplex, Y: ChainComplex) -> range:
    if X.is_zero() or Y.is_zero():
        return range(0)
    return range(X.lo + Y.lo, X.hi + Y.hi + 1)


@lru_cache(maxsize=2048)
def tensor_chain(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    if X.p != Y.p:
        raise ValueError(f"prime mismatch: {X.p} vs {Y.p}")
    p = X.p
    win = _tensor_window(X, Y)
    dims = {n: sum(b[3] for b in tensor_layout(X, Y, n)) for n in win}
    d = {}
    for n in win:
        if n - 1 not in dims:
            continue
        M = np.zeros((dims[n - 1], dims[n]), dtype=np.int64)
        tgt = {(i, j): off for i, j, off, _ in tensor_layout(X, Y, n - 1)}
        for i, j, off, size in tensor_layout(X, Y, n):
            if (i - 1, j) in tgt:
                t = tgt[(i - 1, j)]
                blk = la.kron(X.d(i), Matrix.identity(p, Y.dim(j))).array
                M[t:t + blk.shape[0], off:off + size] += blk
            if (i, j - 1) in tgt:
                t = tgt[(i, j - 1)]
                blk = _sign(i) * la.kron(Matrix.identity(p, X.dim(i)), Y.d(j)).array
                M[t:t + blk.shape[0], off:off + size] += blk
        d[n] = Matrix._wrap(p, M)
    return ChainComplex.build(p, win.start if win else 0, [dims[n] for n in win], d)


def tensor_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """f⊗g on basis tensors: x⊗y ↦ f(x)⊗g(y)."""
    S = tensor_chain(f.source, g.source)
    T = tensor_chain(f.target, g.target)
    p = f.p
    comps = {}
    for n in S.degrees():
        if not T.dim(n):
            continue
        M = np.zeros((T.dim(n), S.dim(n)), dtype=np.int64)
        tgt = {i: (off, size) for i, _, off, size in tensor_layout(f.target, g.target, n)}
        for i, j, off, size in tensor_layout(f.source, g.source, n):
            if i in tgt:
                t, ts = tgt[i]
                M[t:t + ts, off:off + size] = la.kron(f.comp(i), g.comp(j)).array
        comps[n] = Matrix._wrap(p, M)
    return ChainMap.build(S, T, comps, check=False)


@lru_cache(maxsize=4096)
def hom_layout(X: ChainComplex, Y: ChainComplex, n: int) -> tuple[tuple[int, int, int, int], ...]:
    """Blocks of Hom(X,Y)_n as (i, i+n, offset, size)."""
    out, off = [], 0
    for i in X.degrees():
        size = X.dim(i) * Y.dim(i + n)
        if size:
            out.append((i, i + n, off, size))
            off += size
    return tuple(out)


def _hom_window(X: ChainComplex, Y: ChainComplex) -> range:
    if X.is_zero() or Y.is_zero():
        return range(0)
    return range(Y.lo - X.hi, Y.hi - X.lo + 1)


@lru_cache(maxsize=2048)
def hom_chain(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    if X.p != Y.p:
        raise ValueError(f"prime mismatch: {X.p} vs {Y.p}")
    p = X.p
    win = _hom_window(X, Y)
    dims = {n: sum(b[3] for b in hom_layout(X, Y, n)) for n in win}
    d = {}
    for n in win:
        if n - 1 not in dims:
            continue
        M = np.zeros((dims[n - 1], dims[n]), dtype=np.int64)
        tgt = {i: off for i, _, off, _ in hom_layout(X, Y, n - 1)}
        for i, k, off, size in hom_layout(X, Y, n):
            # d_Y ∘ f_i lands in block i of degree n-1
            if i in tgt:
                t = tgt[i]
                blk = la.kron(Y.d(k), Matrix.identity(p, X.dim(i))).array
                M[t:t + blk.shape[0], off:off + size] += blk
            # -(-1)^n f_i ∘ d_X lands in block i+1 of degree n-1
            if i + 1 in tgt:
                t = tgt[i + 1]
                blk = -_sign(n) * la.kron(Matrix.identity(p, Y.dim(k)), X.d(i + 1).T).array
                M[t:t + blk.shape[0], off:off + size] += blk
        d[n] = Matrix._wrap(p, M)
    return ChainComplex.build(p, win.start if win else 0, [dims[n] for n in win], d)


def hom_post(X: ChainComplex, g: ChainMap) -> ChainMap:
    """Hom(X, g): f ↦ g∘f."""
    S, T = hom_chain(X, g.source), hom_chain(X, g.target)
    comps = {}
    for n in S.degrees():
        if not T.dim(n):
            continue
        M = np.zeros((T.dim(n), S.dim(n)), dtype=np.int64)
        tgt = {i: (off, size) for i, _, off, size in hom_layout(X, g.target, n)}
        for i, k, off, size in hom_layout(X, g.source, n):
            if i in tgt:
                t, ts = tgt[i]
                M[t:t + ts, off:off + size] = la.kron(g.comp(k), Matrix.identity(g.p, X.dim(i))).array
        comps[n] = Matrix._wrap(g.p, M)
    return ChainMap.build(S, T, comps, check=False)


def hom_pre(f: ChainMap, Y: ChainComplex) -> ChainMap:
    """Hom(f, Y): h ↦ h∘f, from Hom(target f, Y) to Hom(source f, Y)."""
    S, T = hom_chain(f.target, Y), hom_chain(f.source, Y)
    comps = {}
    for n in S.degrees():
        if not T.dim(n):
            continue
        M = np.zeros((T.dim(n), S.dim(n)), dtype=np.int64)
        tgt = {i: (off, size) for i, _, off, size in hom_layout(f.source, Y, n)}
        for i, k, off, size in hom_layout(f.target, Y, n):
            if i in tgt:
                t, ts = tgt[i]
                M[t:t + ts, off:off + size] = la.kron(Matrix.identity(f.p, Y.dim(k)), f.comp(i).T).array
        comps[n] = Matrix._wrap(f.p, M)
    return ChainMap.build(S, T, comps, check=False)


def transpose(f: ChainMap, X: ChainComplex, P: ChainComplex) -> ChainMap:
    """f: X⊗P → Y  ↦  f̄: X → Hom(P, Y) with f̄(x)(q) = f(x⊗q)."""
    if f.source != tensor_chain(X, P):
        raise ValueError("source is not X⊗P")
    Y = f.target
    H = hom_chain(P, Y)
    comps = {}
    for n in X.degrees():
        if not H.dim(n) or not X.dim(n):
            continue
        M = np.zeros((H.dim(n), X.dim(n)), dtype=np.int64)
        for j, k, hoff, hsize in hom_layout(P, Y, n):
            off = {i: o for i, _, o, _ in tensor_layout(X, P, k)}[n]
            Fm = f.comp(k).array[:, off:off + X.dim(n) * P.dim(j)]
            Fm = Fm.reshape(Y.dim(k), X.dim(n), P.dim(j)).transpose(0, 2, 1)
            M[hoff:hoff + hsize] = Fm.reshape(hsize, X.dim(n))
        comps[n] = Matrix._wrap(f.p, M)
    return ChainMap.build(X, H, comps)


def untranspose(g: ChainMap, P: ChainComplex, Y: ChainComplex) -> ChainMap:
    """g: X → Hom(P, Y)  ↦  X⊗P → Y, inverse to ``transpose``."""
    if g.target != hom_chain(P, Y):
        raise ValueError("target is not Hom(P, Y)")
    X = g.source
    S = tensor_chain(X, P)
    comps = {}
    for m in S.degrees():
        if not Y.dim(m):
            continue
        M = np.zeros((Y.dim(m), S.dim(m)), dtype=np.int64)
        for i, j, off, size in tensor_layout(X, P, m):
            hl = {jj: (ho, hs) for jj, _, ho, hs in hom_layout(P, Y, i)}
            if j not in hl:
                continue
            hoff, hsize = hl[j]
            G = g.comp(i).array[hoff:hoff + hsize]
            G = G.reshape(Y.dim(m), P.dim(j), X.dim(i)).transpose(0, 2, 1)
            M[:, off:off + size] = G.reshape(Y.dim(m), size)
        comps[m] = Matrix._wrap(g.p, M)
    return ChainMap.build(S, Y, comps)


def evaluation(P: ChainComplex, Y: ChainComplex) -> ChainMap:
    """ev: Hom(P, Y)⊗P → Y, f⊗q ↦ f(q)."""
    return untranspose(identity(hom_chain(P, Y)), P, Y)


def coevaluation(X: ChainComplex, P: ChainComplex) -> ChainMap:
    """X → Hom(P, X⊗P), x ↦ (q ↦ x⊗q)."""
    return transpose(identity(tensor_chain(X, P)), X, P)


def braiding(X: ChainComplex, Y: ChainComplex) -> ChainMap:
    """x⊗y ↦ (-1)^{|x||y|} y⊗x."""
    S, T = tensor_chain(X, Y), tensor_chain(Y, X)
    p = X.p
    comps = {}
    for n in S.degrees():
        M = np.zeros((T.dim(n), S.dim(n)), dtype=np.int64)
        tgt = {j: off for j, _, off, _ in tensor_layout(Y, X, n)}
        for i, j, off, size in tensor_layout(X, Y, n):
            t = tgt[j]
            s = _sign(i * j)
            a, b = X.dim(i), Y.dim(j)
            for u in range(a):
                for v in range(b):
                    M[t + v * a + u, off + u * b + v] = s
        comps[n] = Matrix._wrap(p, M)
    return ChainMap.build(S, T, comps)


def associator(X: ChainComplex, Y: ChainComplex, Z: ChainComplex) -> ChainMap:
    """(x⊗y)⊗z ↦ x⊗(y⊗z); a pure reindexing."""
    XY, YZ = tensor_chain(X, Y), tensor_chain(Y, Z)
    S, T = tensor_chain(XY, Z), tensor_chain(X, YZ)
    p = X.p
    comps = {}
    for n in S.degrees():
        M = np.zeros((T.dim(n), S.dim(n)), dtype=np.int64)
        t_outer = {i: off for i, _, off, _ in tensor_layout(X, YZ, n)}
        for m, k, off, _ in tensor_layout(XY, Z, n):
            inner_xy = tensor_layout(X, Y, m)
            for i, j, off_xy, _ in inner_xy:
                # inside (XY)_m, block (i, j) at offset off_xy
                yz_layout = {jj: o for jj, _, o, _ in tensor_layout(Y, Z, j + k)}
                t_base = t_outer[i]
                yz_dim = YZ.dim(j + k)
                yz_off = yz_layout[j]
                a, b, c = X.dim(i), Y.dim(j), Z.dim(k)
                for u in range(a):
                    for v in range(b):
                        for w in range(c):
                            src = off + (off_xy + u * b + v) * c + w
                            dst = t_base + u * yz_dim + yz_off + v * c + w
                            M[dst, src] = 1
        comps[n] = Matrix._wrap(p, M)
    return ChainMap.build(S, T, comps)


def box_product(f: ChainMap, g: ChainMap):
    """Pushout product f□g: X1⊗Y0 ∪_{X0⊗Y0} X0⊗Y1 → X1⊗Y1; returns (cocone, corner)."""
    X0, X1, Y0, Y1 = f.source, f.target, g.source, g.target
    a = tensor_maps(f, identity(Y0))     # X0⊗Y0 → X1⊗Y0
    b = tensor_maps(identity(X0), g)     # X0⊗Y0 → X0⊗Y1
    cocone = finite_colimit(Shape.Pushout, (a, b))
    corner = cocone.mediate(tensor_maps(identity(X1), g), tensor_maps(f, identity(Y1)))
    return cocone, corner

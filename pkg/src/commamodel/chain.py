"""Bounded chain complexes of finite-dimensional F_p-vector spaces.

This is the concrete model category backing both sides of every comma
category in the package: cofibrations are degreewise injections, fibrations
degreewise surjections, weak equivalences quasi-isomorphisms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from . import linalg as la
from .linalg import Matrix


class FactorKind(enum.Enum):
    CofThenTrivFib = "cof-trivfib"
    TrivCofThenFib = "trivcof-fib"

    @property
    def dual(self) -> FactorKind:
        if self is FactorKind.CofThenTrivFib:
            return FactorKind.TrivCofThenFib
        return FactorKind.CofThenTrivFib


@dataclass(frozen=True)
class ClassFlags:
    is_cof: bool
    is_fib: bool
    is_we: bool

    @property
    def is_trivial_cof(self) -> bool:
        return self.is_cof and self.is_we

    @property
    def is_trivial_fib(self) -> bool:
        return self.is_fib and self.is_we

    def swapped(self) -> ClassFlags:
        return ClassFlags(self.is_fib, self.is_cof, self.is_we)

    def as_dict(self) -> dict[str, bool]:
        return {"cof": self.is_cof, "fib": self.is_fib, "we": self.is_we}


def _as_matrix(p: int, m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(p, m)


@dataclass(frozen=True)
class ChainComplex:
    """Degrees ``lo .. lo + len(dims) - 1``; ``diffs[k]`` is d at degree ``lo + k + 1``.

    Instances are normalized so that the extreme degrees are nonzero; the zero
    complex has ``lo = 0`` and no degrees.
    """

    p: int
    lo: int
    dims: tuple[int, ...]
    diffs: tuple[Matrix, ...]

    @classmethod
    def build(cls, p: int, lo: int, dims: Sequence[int], d: Mapping[int, object] | None = None,
              check: bool = True) -> ChainComplex:
        p = la.check_prime(p)
        dims = [int(x) for x in dims]
        if any(x < 0 for x in dims):
            raise ValueError("negative dimension")
        d = dict(d or {})
        hi = lo + len(dims) - 1

        def dim(n):
            return dims[n - lo] if lo <= n <= hi else 0

        mats = {}
        for n, m in d.items():
            n = int(n)
            m = _as_matrix(p, m)
            if m.shape != (dim(n - 1), dim(n)):
                if m.rows * m.cols == 0 and not (lo < n <= hi):
                    continue
                raise ValueError(f"d_{n} has shape {m.shape}, expected {(dim(n - 1), dim(n))}")
            mats[n] = m
        # trim zero ends
        nz = [k for k, x in enumerate(dims) if x > 0]
        if not nz:
            return cls(p, 0, (), ())
        a, b = nz[0], nz[-1]
        new_lo = lo + a
        new_dims = tuple(dims[a:b + 1])
        diffs = []
        for n in range(new_lo + 1, new_lo + len(new_dims)):
            m = mats.get(n)
            if m is None:
                m = Matrix.zeros(p, dim(n - 1), dim(n))
            diffs.append(m)
        X = cls(p, new_lo, new_dims, tuple(diffs))
        if check:
            for n in range(X.lo + 1, X.hi):
                if not (X.d(n) @ X.d(n + 1)).is_zero():
                    raise ValueError(f"d_{n} ∘ d_{n + 1} ≠ 0")
        return X

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, n: int) -> int:
        return self.dims[n - self.lo] if self.lo <= n <= self.hi else 0

    def d(self, n: int) -> Matrix:
        if self.lo < n <= self.hi:
            return self.diffs[n - self.lo - 1]
        return Matrix.zeros(self.p, self.dim(n - 1), self.dim(n))

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not self.dims

    def __repr__(self) -> str:
        if self.is_zero():
            return f"ChainComplex(p={self.p}, 0)"
        return f"ChainComplex(p={self.p}, lo={self.lo}, dims={list(self.dims)})"


def zero_complex(p: int) -> ChainComplex:
    return ChainComplex.build(p, 0, [])


def sphere(p: int, n: int = 0) -> ChainComplex:
    """F_p concentrated in degree n."""
    return ChainComplex.build(p, n, [1])


def disk(p: int, n: int = 1) -> ChainComplex:
    """F_p in degrees n and n-1 joined by the identity."""
    return ChainComplex.build(p, n - 1, [1, 1], {n: [[1]]})


def _span(*cs: ChainComplex) -> range:
    live = [c for c in cs if not c.is_zero()]
    if not live:
        return range(0)
    return range(min(c.lo for c in live), max(c.hi for c in live) + 1)


@dataclass(frozen=True)
class ChainMap:
    """Degree-0 chain map; ``comps[k]`` is the component at degree ``lo + k``."""

    source: ChainComplex
    target: ChainComplex
    lo: int
    comps: tuple[Matrix, ...]

    @classmethod
    def build(cls, source: ChainComplex, target: ChainComplex, comps: Mapping[int, object] | None = None,
              check: bool = True) -> ChainMap:
        if source.p != target.p:
            raise ValueError(f"prime mismatch: {source.p} vs {target.p}")
        p = source.p
        comps = {int(n): _as_matrix(p, m) for n, m in (comps or {}).items()}
        lo = max(source.lo, target.lo)
        hi = min(source.hi, target.hi)
        if source.is_zero() or target.is_zero():
            lo, hi = 0, -1
        for n, m in comps.items():
            want = (target.dim(n), source.dim(n))
            if m.shape != want:
                raise ValueError(f"component {n} has shape {m.shape}, expected {want}")
        out = []
        for n in range(lo, hi + 1):
            m = comps.get(n)
            out.append(m if m is not None else Matrix.zeros(p, target.dim(n), source.dim(n)))
        f = cls(source, target, lo, tuple(out))
        if check:
            for n in _span(source, target):
                if not (f.comp(n - 1) @ source.d(n) == target.d(n) @ f.comp(n)):
                    raise ValueError(f"not a chain map: square at degree {n} fails")
        return f

    @property
    def p(self) -> int:
        return self.source.p

    def comp(self, n: int) -> Matrix:
        k = n - self.lo
        if 0 <= k < len(self.comps):
            return self.comps[k]
        return Matrix.zeros(self.p, self.target.dim(n), self.source.dim(n))

    def components(self) -> dict[int, Matrix]:
        return {self.lo + k: m for k, m in enumerate(self.comps)}

    def degrees(self) -> range:
        return _span(self.source, self.target)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps)

    def __matmul__(self, other: ChainMap) -> ChainMap:
        """Composition ``self ∘ other``."""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        comps = {n: self.comp(n) @ other.comp(n) for n in _span(other.source, self.target)
                 if other.source.dim(n) and self.target.dim(n)}
        return ChainMap.build(other.source, self.target, comps, check=False)

    def _pointwise(self, other: ChainMap, op) -> ChainMap:
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("maps have different endpoints")
        return ChainMap(self.source, self.target, self.lo,
                        tuple(op(a, b) for a, b in zip(self.comps, other.comps)))

    def __add__(self, other: ChainMap) -> ChainMap:
        return self._pointwise(other, lambda a, b: a + b)

    def __sub__(self, other: ChainMap) -> ChainMap:
        return self._pointwise(other, lambda a, b: a - b)

    def __neg__(self) -> ChainMap:
        return ChainMap(self.source, self.target, self.lo, tuple(-a for a in self.comps))

    def __rmul__(self, c: int) -> ChainMap:
        return ChainMap(self.source, self.target, self.lo, tuple(c * a for a in self.comps))

    def __repr__(self) -> str:
        parts = ", ".join(f"{n}: {m.to_list()}" for n, m in self.components().items())
        return f"ChainMap({self.source!r} -> {self.target!r}, {{{parts}}})"


def identity(X: ChainComplex) -> ChainMap:
    return ChainMap.build(X, X, {n: Matrix.identity(X.p, X.dim(n)) for n in X.degrees()}, check=False)


def zero_map(X: ChainComplex, Y: ChainComplex) -> ChainMap:
    return ChainMap.build(X, Y, {}, check=False)


def from_zero(Y: ChainComplex) -> ChainMap:
    return zero_map(zero_complex(Y.p), Y)


def to_zero(X: ChainComplex) -> ChainMap:
    return zero_map(X, zero_complex(X.p))


def scalar_map(X: ChainComplex, c: int) -> ChainMap:
    return c * identity(X)


# ---------------------------------------------------------------- homology


@dataclass(frozen=True)
class Homology:
    dims: dict[int, int]
    reps: dict[int, Matrix]  # columns: cycle representatives of a basis of H_n
    boundaries: dict[int, Matrix]  # columns: a basis of B_n


def homology(X: ChainComplex) -> Homology:
    dims, reps, bds = {}, {}, {}
    for n in X.degrees():
        Z = la.kernel_basis(X.d(n))
        B = la.image_basis(X.d(n + 1))
        both = la.hstack([B, Z], X.p, X.dim(n))
        _, piv = la.rref(both) if both.cols else (None, [])
        keep = [c - B.cols for c in piv if c >= B.cols]
        R = Matrix._wrap(X.p, Z.array[:, keep])
        dims[n] = len(keep)
        reps[n] = R
        bds[n] = B
    return Homology(dims, reps, bds)


def induced_on_homology(f: ChainMap) -> dict[int, Matrix]:
    """Matrix of H_n(f) in the chosen representative bases, per degree."""
    HX, HY = homology(f.source), homology(f.target)
    out = {}
    for n in f.degrees():
        hx, hy = HX.dims.get(n, 0), HY.dims.get(n, 0)
        if hx == 0 or hy == 0:
            out[n] = Matrix.zeros(f.p, hy, hx)
            continue
        basis = la.hstack([HY.reps[n], HY.boundaries[n]], f.p, f.target.dim(n))
        coords = la.solve(basis, f.comp(n) @ HX.reps[n])
        assert coords is not None, "image of a cycle is a cycle"
        out[n] = coords.block(0, hy, 0, hx)
    return out


def is_quasi_iso(f: ChainMap) -> bool:
    HX, HY = homology(f.source), homology(f.target)
    for n, m in induced_on_homology(f).items():
        hx, hy = HX.dims.get(n, 0), HY.dims.get(n, 0)
        if la.rank(m) != hx or la.rank(m) != hy:
            return False
    return True


def classify_map(f: ChainMap) -> ClassFlags:
    cof = all(la.is_injective(f.comp(n)) for n in f.source.degrees())
    fib = all(la.is_surjective(f.comp(n)) for n in f.target.degrees())
    return ClassFlags(cof, fib, is_quasi_iso(f))


def is_iso(f: ChainMap) -> bool:
    return all(f.source.dim(n) == f.target.dim(n) and la.rank(f.comp(n)) == f.source.dim(n)
               for n in f.degrees())


def inverse_map(f: ChainMap) -> ChainMap:
    if not is_iso(f):
        raise ValueError("map is not invertible")
    return ChainMap.build(f.target, f.source,
                          {n: la.inverse(f.comp(n)) for n in f.degrees() if f.source.dim(n)}, check=False)


# ----------------------------------------------------------- factorization


def _blocks(p: int, rows: Sequence[int], cols: Sequence[int], entries: Mapping[tuple[int, int], Matrix]) -> Matrix:
    out = np.zeros((sum(rows), sum(cols)), dtype=np.int64)
    ro = np.concatenate([[0], np.cumsum(rows)]).astype(int)
    co = np.concatenate([[0], np.cumsum(cols)]).astype(int)
    for (i, j), m in entries.items():
        if m.rows and m.cols:
            out[ro[i]:ro[i + 1], co[j]:co[j + 1]] = m.array
    return Matrix._wrap(p, out)


def mapping_cylinder(f: ChainMap) -> tuple[ChainMap, ChainMap]:
    """Cyl(f)_n = X_n ⊕ X_{n-1} ⊕ Y_n with d(x, x', y) = (dx + x', -dx', dy - f x').

    Returns the injection X → Cyl(f) and the surjective quasi-isomorphism Cyl(f) → Y.
    """
    X, Y, p = f.source, f.target, f.p
    span = _span(X, Y)
    if not span:
        return f, identity(Y)
    lo, hi = span.start, max(span.stop - 1, X.hi + 1 if not X.is_zero() else span.stop - 1)

    def dims(n):
        return [X.dim(n), X.dim(n - 1), Y.dim(n)]

    I = Matrix.identity
    d = {}
    for n in range(lo + 1, hi + 1):
        d[n] = _blocks(p, dims(n - 1), dims(n), {
            (0, 0): X.d(n), (0, 1): I(p, X.dim(n - 1)),
            (1, 1): -X.d(n - 1),
            (2, 1): -f.comp(n - 1), (2, 2): Y.d(n)})
    C = ChainComplex.build(p, lo, [sum(dims(n)) for n in range(lo, hi + 1)], d)
    l = {n: _blocks(p, dims(n), [X.dim(n)], {(0, 0): I(p, X.dim(n))}) for n in range(lo, hi + 1)}
    r = {n: _blocks(p, [Y.dim(n)], dims(n), {(0, 0): f.comp(n), (0, 2): I(p, Y.dim(n))}) for n in range(lo, hi + 1)}
    return _restricted_map(X, C, l, lo), _restricted_map(C, Y, r, lo)


def mapping_cocylinder(f: ChainMap) -> tuple[ChainMap, ChainMap]:
    """The pullback X ×_Y Y^I written in coordinates (x, b, h) ∈ X_n ⊕ Y_n ⊕ Y_{n+1}.

    d(x, b, h) = (dx, db, f x - b - dh).  Returns the trivial cofibration
    x ↦ (x, f x, 0) and the fibration (x, b, h) ↦ b.
    """
    X, Y, p = f.source, f.target, f.p
    span = _span(X, Y)
    if not span:
        return identity(X), f
    lo = min(span.start, Y.lo - 1 if not Y.is_zero() else span.start)
    hi = span.stop - 1

    def dims(n):
        return [X.dim(n), Y.dim(n), Y.dim(n + 1)]

    I = Matrix.identity
    d = {}
    for n in range(lo + 1, hi + 1):
        d[n] = _blocks(p, dims(n - 1), dims(n), {
            (0, 0): X.d(n),
            (1, 1): Y.d(n),
            (2, 0): f.comp(n), (2, 1): -I(p, Y.dim(n)), (2, 2): -Y.d(n + 1)})
    P = ChainComplex.build(p, lo, [sum(dims(n)) for n in range(lo, hi + 1)], d)
    l = {n: _blocks(p, dims(n), [X.dim(n)], {(0, 0): I(p, X.dim(n)), (1, 0): f.comp(n)}) for n in range(lo, hi + 1)}
    r = {n: _blocks(p, [Y.dim(n)], dims(n), {(0, 1): I(p, Y.dim(n))}) for n in range(lo, hi + 1)}
    return _restricted_map(X, P, l, lo), _restricted_map(P, Y, r, lo)


def path_object(Y: ChainComplex) -> tuple[ChainComplex, ChainMap, ChainMap, ChainMap]:
    """Y^I with (Y^I)_n = Y_n ⊕ Y_n ⊕ Y_{n+1}; returns (Y^I, const, ev0, ev1)."""
    p = Y.p
    if Y.is_zero():
        z = identity(Y)
        return Y, z, z, z
    lo, hi = Y.lo - 1, Y.hi

    def dims(n):
        return [Y.dim(n), Y.dim(n), Y.dim(n + 1)]

    I = Matrix.identity
    d = {n: _blocks(p, dims(n - 1), dims(n), {
        (0, 0): Y.d(n), (1, 1): Y.d(n),
        (2, 0): I(p, Y.dim(n)), (2, 1): -I(p, Y.dim(n)), (2, 2): -Y.d(n + 1)}) for n in range(lo + 1, hi + 1)}
    P = ChainComplex.build(p, lo, [sum(dims(n)) for n in range(lo, hi + 1)], d)
    c = {n: _blocks(p, dims(n), [Y.dim(n)], {(0, 0): I(p, Y.dim(n)), (1, 0): I(p, Y.dim(n))}) for n in range(lo, hi + 1)}
    e0 = {n: _blocks(p, [Y.dim(n)], dims(n), {(0, 0): I(p, Y.dim(n))}) for n in range(lo, hi + 1)}
    e1 = {n: _blocks(p, [Y.dim(n)], dims(n), {(0, 1): I(p, Y.dim(n))}) for n in range(lo, hi + 1)}
    return P, _restricted_map(Y, P, c, lo), _restricted_map(P, Y, e0, lo), _restricted_map(P, Y, e1, lo)


def _restricted_map(S: ChainComplex, T: ChainComplex, comps: Mapping[int, Matrix], lo: int) -> ChainMap:
    # Component matrices were built on a padded window; keep the live ones.
    live = {n: m for n, m in comps.items() if S.dim(n) and T.dim(n)}
    return ChainMap.build(S, T, live, check=False)


def factorize_chain(f: ChainMap, kind: FactorKind) -> tuple[ChainMap, ChainMap]:
    if kind is FactorKind.CofThenTrivFib:
        return mapping_cylinder(f)
    return mapping_cocylinder(f)


# ----------------------------------------------------------------- lifting


@dataclass(frozen=True)
class _Block:
    n: int
    S0: Matrix  # particular part
    K: Matrix   # X_n × k
    C: Matrix   # c × B_n
    offset: int
    full: bool

    @property
    def size(self) -> int:
        return self.K.cols * self.C.rows


def lift_space(i: ChainMap, p: ChainMap, top: ChainMap, bottom: ChainMap,
               with_basis: bool = True) -> tuple[ChainMap, list[ChainMap]] | None:
    """All s: B → X with s∘i = top, p∘s = bottom, as (particular, homogeneous basis).

    One linear system over F_p.  Degrees where i is injective and p surjective
    are parametrized as s_n = S0 + K U C (K spans ker p_n, C annihilates im i_n),
    which satisfies both triangles identically; elsewhere the triangle
    equations are imposed explicitly on all entries of s_n.
    """
    A, B = i.source, i.target
    X, Y = p.source, p.target
    if top.source != A or top.target != X or bottom.source != B or bottom.target != Y:
        raise ValueError("square endpoints do not match")
    if p @ top != bottom @ i:
        raise ValueError("lifting square does not commute")
    P = i.p
    span = _span(A, B, X, Y)
    blocks: dict[int, _Block] = {}
    off = 0
    for n in span:
        if X.dim(n) == 0 or B.dim(n) == 0:
            # s_n = 0 is forced; the triangles must already hold
            if not top.comp(n).is_zero() or not bottom.comp(n).is_zero():
                return None
            continue
        i_n, p_n = i.comp(n), p.comp(n)
        if la.is_injective(i_n) and la.is_surjective(p_n):
            ip, pp = la.left_inverse(i_n), la.right_inverse(p_n)
            t, b = top.comp(n), bottom.comp(n)
            S0 = t @ ip + pp @ b - pp @ p_n @ t @ ip
            blk = _Block(n, S0, la.kernel_basis(p_n), la.cokernel_map(i_n), off, False)
        else:
            blk = _Block(n, Matrix.zeros(P, X.dim(n), B.dim(n)), Matrix.identity(P, X.dim(n)),
                         Matrix.identity(P, B.dim(n)), off, True)
        blocks[n] = blk
        off += blk.size
    N = off
    rows: list[np.ndarray] = []
    rhs: list[np.ndarray] = []

    def coeff(blk: _Block, left: Matrix, right: Matrix) -> np.ndarray:
        # coefficient of vec(U) in vec(left · (K U C) · right)
        return np.kron((left @ blk.K).array, (blk.C @ right).array.T)

    for n in span:
        # d^X_n s_n - s_{n-1} d^B_n = 0
        r, c = X.dim(n - 1), B.dim(n)
        if r == 0 or c == 0:
            continue
        M = np.zeros((r * c, N), dtype=np.int64)
        const = Matrix.zeros(P, r, c)
        cur, prev = blocks.get(n), blocks.get(n - 1)
        if cur is not None and cur.size:
            M[:, cur.offset:cur.offset + cur.size] += coeff(cur, X.d(n), Matrix.identity(P, c))
        if cur is not None:
            const = const - X.d(n) @ cur.S0
        if prev is not None and prev.size:
            M[:, prev.offset:prev.offset + prev.size] -= coeff(prev, Matrix.identity(P, r), B.d(n))
        if prev is not None:
            const = const + prev.S0 @ B.d(n)
        rows.append(M)
        rhs.append(la.vec(const))
    for blk in blocks.values():
        if not blk.full:
            continue
        n = blk.n
        pn, in_ = p.comp(n), i.comp(n)
        if pn.rows:
            M = np.zeros((pn.rows * B.dim(n), N), dtype=np.int64)
            M[:, blk.offset:blk.offset + blk.size] = coeff(blk, pn, Matrix.identity(P, B.dim(n)))
            rows.append(M)
            rhs.append(la.vec(bottom.comp(n)))
        if in_.cols:
            M = np.zeros((X.dim(n) * in_.cols, N), dtype=np.int64)
            M[:, blk.offset:blk.offset + blk.size] = coeff(blk, Matrix.identity(P, X.dim(n)), in_)
            rows.append(M)
            rhs.append(la.vec(top.comp(n)))
    if rows:
        Mall = Matrix._wrap(P, np.vstack(rows))
        R = Matrix._wrap(P, np.concatenate(rhs).reshape(-1, 1))
    else:
        Mall = Matrix.zeros(P, 0, N)
        R = Matrix.zeros(P, 0, 1)
    sol = la.solve(Mall, R)
    if sol is None:
        return None

    def assemble(u: np.ndarray, with_particular: bool) -> ChainMap:
        comps = {}
        for blk in blocks.values():
            U = la.unvec(P, u[blk.offset:blk.offset + blk.size], blk.K.cols, blk.C.rows)
            s = blk.K @ U @ blk.C
            comps[blk.n] = s + blk.S0 if with_particular else s
        return ChainMap.build(B, X, comps)

    s = assemble(sol.array[:, 0], True)
    basis: list[ChainMap] = []
    if with_basis and N:
        Kn = la.kernel_basis(Mall)
        basis = [assemble(Kn.array[:, j], False) for j in range(Kn.cols)]
    return s, basis


def solve_lift_chain(i: ChainMap, p: ChainMap, top: ChainMap, bottom: ChainMap) -> ChainMap | None:
    """A diagonal s with s∘i = top and p∘s = bottom, or None."""
    out = lift_space(i, p, top, bottom, with_basis=False)
    return None if out is None else out[0]


def hom_basis(X: ChainComplex, Y: ChainComplex) -> list[ChainMap]:
    """A basis of the F_p-space of chain maps X → Y."""
    z = zero_complex(X.p)
    out = lift_space(from_zero(X), to_zero(Y), zero_map(z, Y), zero_map(X, z))
    assert out is not None
    return out[1]


def combine(coeffs: Sequence[int], basis: Sequence[ChainMap], X: ChainComplex, Y: ChainComplex) -> ChainMap:
    f = zero_map(X, Y)
    for c, b in zip(coeffs, basis):
        if c % X.p:
            f = f + c * b
    return f


# -------------------------------------------------------- limits, colimits


class Shape(enum.Enum):
    Terminal = "terminal"
    Product = "product"
    Pullback = "pullback"
    Equalizer = "equalizer"
    Initial = "initial"
    Coproduct = "coproduct"
    Pushout = "pushout"
    Coequalizer = "coequalizer"

    @property
    def is_limit(self) -> bool:
        return self in (Shape.Terminal, Shape.Product, Shape.Pullback, Shape.Equalizer)

    @property
    def dual(self) -> Shape:
        return _DUAL_SHAPE[self]


_DUAL_SHAPE = {
    Shape.Terminal: Shape.Initial, Shape.Initial: Shape.Terminal,
    Shape.Product: Shape.Coproduct, Shape.Coproduct: Shape.Product,
    Shape.Pullback: Shape.Pushout, Shape.Pushout: Shape.Pullback,
    Shape.Equalizer: Shape.Coequalizer, Shape.Coequalizer: Shape.Equalizer,
}


@dataclass(frozen=True)
class Cone:
    """A limit cone (or colimit cocone): apex plus legs, with a mediating-map constructor.

    For a cone, ``mediate(*maps)`` takes maps W → (leg targets) and returns the
    unique W → apex; for a cocone it takes maps (leg sources) → W and returns
    apex → W.
    """

    shape: Shape
    apex: object
    legs: tuple
    mediator: Callable = None

    def mediate(self, *maps):
        return self.mediator(*maps)


def _check_shape(shape: Shape, data) -> None:
    if shape in (Shape.Terminal, Shape.Initial):
        if len(data):
            raise ValueError(f"{shape.value} takes no data")
    elif shape in (Shape.Product, Shape.Coproduct):
        pass
    else:
        if len(data) != 2:
            raise ValueError(f"{shape.value} needs two maps")
        f, g = data
        if shape is Shape.Pullback and f.target != g.target:
            raise ValueError("pullback needs a cospan")
        if shape is Shape.Pushout and f.source != g.source:
            raise ValueError("pushout needs a span")
        if shape in (Shape.Equalizer, Shape.Coequalizer) and (f.source, f.target) != (g.source, g.target):
            raise ValueError("(co)equalizer needs parallel maps")


def direct_sum(*Xs: ChainComplex, p: int | None = None) -> tuple[ChainComplex, list[ChainMap], list[ChainMap]]:
    """Biproduct with its injections and projections."""
    if not Xs:
        Z = zero_complex(p)
        return Z, [], []
    p = Xs[0].p
    span = _span(*Xs)
    d = {n: la.direct_sum(*[X.d(n) for X in Xs]) for n in span}
    S = ChainComplex.build(p, span.start if span else 0, [sum(X.dim(n) for X in Xs) for n in span], d)
    inj, proj = [], []
    for k, X in enumerate(Xs):
        ic, pc = {}, {}
        for n in span:
            sizes = [Y.dim(n) for Y in Xs]
            ic[n] = _blocks(p, sizes, [X.dim(n)], {(k, 0): Matrix.identity(p, X.dim(n))})
            pc[n] = _blocks(p, [X.dim(n)], sizes, {(0, k): Matrix.identity(p, X.dim(n))})
        inj.append(_restricted_map(X, S, ic, 0))
        proj.append(_restricted_map(S, X, pc, 0))
    return S, inj, proj


def _subcomplex(ambient: ChainComplex, K: Mapping[int, Matrix]) -> tuple[ChainComplex, ChainMap]:
    """The subcomplex spanned degreewise by the (independent) columns of K."""
    p = ambient.p
    span = ambient.degrees()
    d = {}
    for n in span:
        if n - 1 in K and n in K and K[n].cols and K[n - 1].cols:
            m = la.solve(K[n - 1], ambient.d(n) @ K[n])
            if m is None:
                raise ValueError("columns do not span a subcomplex")
            d[n] = m
    lo = span.start if span else 0
    S = ChainComplex.build(p, lo, [K[n].cols if n in K else 0 for n in span], d)
    inc = _restricted_map(S, ambient, {n: K[n] for n in span if n in K}, 0)
    return S, inc


def _quotient(ambient: ChainComplex, Q: Mapping[int, Matrix]) -> tuple[ChainComplex, ChainMap]:
    """The quotient complex whose projection is given degreewise by the surjections Q."""
    p = ambient.p
    span = ambient.degrees()
    d = {}
    for n in span:
        if (n - 1) in Q and Q[n].rows and Q[n - 1].rows:
            d[n] = Q[n - 1] @ ambient.d(n) @ la.right_inverse(Q[n])
    lo = span.start if span else 0
    S = ChainComplex.build(p, lo, [Q[n].rows for n in span], d)
    proj = _restricted_map(ambient, S, dict(Q), 0)
    return S, proj


def finite_limit(shape: Shape, data: Sequence) -> Cone:
    """Degreewise limits; the cone's mediator builds the unique factorization."""
    data = tuple(data)
    _check_shape(shape, data)
    if shape is Shape.Terminal:
        raise ValueError("use chain_terminal(p); terminal needs the prime")
    if shape is Shape.Product:
        S, _, proj = direct_sum(*data)

        def med(*maps):
            if len(maps) != len(data):
                raise ValueError("wrong number of maps")
            W = maps[0].source if maps else None
            return _sum_into(S, data, maps, W)
        return Cone(shape, S, tuple(proj), med)
    f, g = data
    if shape is Shape.Pullback:
        X, Y = f.source, g.source
        S, inj, proj = direct_sum(X, Y)
        diff = f @ proj[0] - g @ proj[1]
        K = {n: la.kernel_basis(diff.comp(n)) for n in S.degrees()}
        P, inc = _subcomplex(S, K)
        legs = (proj[0] @ inc, proj[1] @ inc)

        def med(a, b):
            if f @ a != g @ b:
                raise ValueError("competing cone does not commute")
            W = a.source
            comps = {}
            for n in _span(W, P):
                if W.dim(n) and P.dim(n):
                    rhs = la.vstack([a.comp(n), b.comp(n)], W.p, W.dim(n))
                    comps[n] = la.solve(inc.comp(n), rhs)
            return ChainMap.build(W, P, comps)
        return Cone(shape, P, legs, med)
    # equalizer
    X = f.source
    K = {n: la.kernel_basis((f - g).comp(n)) for n in X.degrees()}
    E, inc = _subcomplex(X, K)

    def med_eq(a):
        if f @ a != g @ a:
            raise ValueError("map does not equalize")
        W = a.source
        comps = {n: la.solve(inc.comp(n), a.comp(n)) for n in _span(W, E) if W.dim(n) and E.dim(n)}
        return ChainMap.build(W, E, comps)
    return Cone(shape, E, (inc,), med_eq)


def _sum_into(S: ChainComplex, parts: Sequence[ChainComplex], maps: Sequence[ChainMap], W) -> ChainMap:
    if W is None:
        raise ValueError("empty product needs chain_terminal")
    comps = {}
    for n in _span(W, S):
        if W.dim(n) and S.dim(n):
            comps[n] = la.vstack([m.comp(n) for m in maps], W.p, W.dim(n))
    return ChainMap.build(W, S, comps)


def finite_colimit(shape: Shape, data: Sequence) -> Cone:
    data = tuple(data)
    _check_shape(shape, data)
    if shape is Shape.Initial:
        raise ValueError("use chain_initial(p); initial needs the prime")
    if shape is Shape.Coproduct:
        S, inj, _ = direct_sum(*data)

        def med(*maps):
            if len(maps) != len(data):
                raise ValueError("wrong number of maps")
            W = maps[0].target
            comps = {n: la.hstack([m.comp(n) for m in maps], W.p, W.dim(n))
                     for n in _span(W, S) if W.dim(n) and S.dim(n)}
            return ChainMap.build(S, W, comps)
        return Cone(shape, S, tuple(inj), med)
    f, g = data
    if shape is Shape.Pushout:
        X, Y = f.target, g.target
        S, inj, proj = direct_sum(X, Y)
        diff = inj[0] @ f - inj[1] @ g
        Q = {n: la.cokernel_map(diff.comp(n)) for n in S.degrees()}
        P, q = _quotient(S, Q)
        legs = (q @ inj[0], q @ inj[1])

        def med(a, b):
            if a @ f != b @ g:
                raise ValueError("competing cocone does not commute")
            W = a.target
            comps = {}
            for n in _span(W, P):
                if W.dim(n) and P.dim(n):
                    row = la.hstack([a.comp(n), b.comp(n)], W.p, W.dim(n))
                    comps[n] = row @ la.right_inverse(q.comp(n))
            return ChainMap.build(P, W, comps)
        return Cone(shape, P, legs, med)
    Y = f.target
    Q = {n: la.cokernel_map((f - g).comp(n)) for n in Y.degrees()}
    C, q = _quotient(Y, Q)

    def med_co(a):
        if a @ f != a @ g:
            raise ValueError("map does not coequalize")
        W = a.target
        comps = {n: a.comp(n) @ la.right_inverse(q.comp(n)) for n in _span(W, C) if W.dim(n) and C.dim(n)}
        return ChainMap.build(C, W, comps)
    return Cone(shape, C, (q,), med_co)


def chain_terminal(p: int) -> Cone:
    Z = zero_complex(p)
    return Cone(Shape.Terminal, Z, (), lambda W: to_zero(W))


def chain_initial(p: int) -> Cone:
    Z = zero_complex(p)
    return Cone(Shape.Initial, Z, (), lambda W: from_zero(W))


def solve_through(legs: Sequence[ChainMap], rhs: Sequence[ChainMap], source: ChainComplex) -> ChainMap:
    """The map x: source → L with legs[k] ∘ x = rhs[k], for jointly injective legs."""
    if not legs:
        raise ValueError("no legs")
    L = legs[0].source
    p = L.p
    comps = {}
    for n in _span(source, L):
        if not (source.dim(n) and L.dim(n)):
            continue
        A = la.vstack([g.comp(n) for g in legs], p, L.dim(n))
        B = la.vstack([r.comp(n) for r in rhs], p, source.dim(n))
        x = la.solve(A, B)
        if x is None:
            raise ValueError("no factorization through the given legs")
        comps[n] = x
    return ChainMap.build(source, L, comps)


def solve_from(colegs: Sequence[ChainMap], rhs: Sequence[ChainMap], target: ChainComplex) -> ChainMap:
    """The map x: C → target with x ∘ colegs[k] = rhs[k], for jointly surjective colegs."""
    if not colegs:
        raise ValueError("no colegs")
    C = colegs[0].target
    p = C.p
    comps = {}
    for n in _span(target, C):
        if not (target.dim(n) and C.dim(n)):
            continue
        A = la.hstack([g.comp(n) for g in colegs], p, C.dim(n))
        B = la.hstack([r.comp(n) for r in rhs], p, target.dim(n))
        x = la.solve(A.T, B.T)
        if x is None:
            raise ValueError("no factorization through the given colegs")
        comps[n] = x.T
    return ChainMap.build(C, target, comps)

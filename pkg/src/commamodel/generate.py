"""Seeded generators for complexes, maps, comma data and lifting problems.

All randomness comes from ``random.Random(seed)`` used only through its
integer API (randrange, choice), which is MT19937 and reproducible across
platforms.  No floating point is involved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg as la
from .chain import ChainComplex, ChainMap, FactorKind, combine, direct_sum, hom_basis, mapping_cylinder
from .comma import CommaCategory, CommaMorphism, CommaObject, StructureId
from .factor import LiftingProblem, factorize_comma

CTF = FactorKind.CofThenTrivFib
TCF = FactorKind.TrivCofThenFib


@dataclass(frozen=True)
class Bounds:
    max_dim: int = 2
    window: int = 3
    lo_range: tuple[int, int] = (-1, 1)


class Generator:
    def __init__(self, seed: int, p: int, bounds: Bounds = Bounds()):
        self.seed = seed
        self.p = la.check_prime(p)
        self.bounds = bounds
        self.rng = random.Random(seed)

    def _matrix(self, rows: int, cols: int) -> la.Matrix:
        r = self.rng
        return la.Matrix(self.p, [[r.randrange(self.p) for _ in range(cols)] for _ in range(rows)]
                         ) if rows and cols else la.Matrix.zeros(self.p, rows, cols)

    # chain level
    def complex(self, max_dim: int | None = None, window: int | None = None) -> ChainComplex:
        """Random complex: d_n is a random map into ker d_{n-1}, so d∘d = 0 by construction."""
        b = self.bounds
        max_dim = b.max_dim if max_dim is None else max_dim
        window = b.window if window is None else window
        r = self.rng
        lo = r.randrange(b.lo_range[0], b.lo_range[1] + 1)
        length = r.randrange(window + 1)
        dims = [r.randrange(max_dim + 1) for _ in range(length)]
        d = {}
        prev = None
        for k in range(1, length):
            n = lo + k
            if prev is None or prev.rows == 0:
                K = la.Matrix.identity(self.p, dims[k - 1])
            else:
                K = la.kernel_basis(prev)
            dn = K @ self._matrix(K.cols, dims[k])
            d[n] = dn
            prev = dn
        return ChainComplex.build(self.p, lo, dims, d)

    def chain_map(self, X: ChainComplex, Y: ChainComplex) -> ChainMap:
        basis = hom_basis(X, Y)
        return combine([self.rng.randrange(self.p) for _ in basis], basis, X, Y)

    def any_chain_map(self) -> ChainMap:
        """A random map: arbitrary, injective, surjective or a cylinder leg, chosen uniformly."""
        r = self.rng
        X = self.complex()
        mode = r.randrange(4)
        if mode == 0:
            return self.chain_map(X, self.complex())
        Y = self.complex()
        S, inj, proj = direct_sum(X, Y)
        if mode == 1:
            return inj[0] + inj[1] @ self.chain_map(X, Y)
        if mode == 2:
            return proj[0] + self.chain_map(X, X) @ proj[0] if r.randrange(2) else proj[0]
        f = self.chain_map(X, Y)
        l, rr = mapping_cylinder(f)
        return r.choice([l, rr])

    def invertible(self, n: int) -> la.Matrix:
        """A uniformly random element of GL_n(F_p), by rejection."""
        while True:
            g = self._matrix(n, n) if n else la.Matrix.identity(self.p, 0)
            if la.rank(g) == n:
                return g

    def chain_iso(self, X: ChainComplex) -> ChainMap:
        """X → X' with X' the conjugate of X by random invertible matrices g_n."""
        g = {n: self.invertible(X.dim(n)) for n in X.degrees()}
        d = {n: g[n - 1] @ X.d(n) @ la.inverse(g[n]) for n in X.degrees() if n - 1 in g}
        Y = ChainComplex.build(self.p, X.lo, list(X.dims), d)
        return ChainMap.build(X, Y, g)

    # comma level
    def comma_object(self, C: CommaCategory) -> CommaObject:
        F0, F1 = self.complex(), self.complex()
        return CommaObject(F0, F1, self.chain_map_in(C.M, F0, C.U(F1)))

    def chain_map_in(self, backend, X, Y):
        basis = backend.hom_basis(X, Y)
        return backend.combine([self.rng.randrange(self.p) for _ in basis], basis, X, Y)

    def comma_morphism(self, C: CommaCategory, F: CommaObject | None = None,
                       G: CommaObject | None = None, modes: tuple[int, ...] = (0, 1, 2, 3)) -> CommaMorphism:
        """Random morphism; the mix of shapes keeps the classifier's branches exercised.

        Modes: 0 random hom, 1 functor image of a chain map, 2 a factor of a
        random morphism (objects grow), 3 a composite.
        """
        r = self.rng
        F = F or self.comma_object(C)
        mode = r.choice(modes) if G is None else 0
        if mode == 0:
            G = G or self.comma_object(C)
            return C.random_hom(F, G, r)
        if mode == 1:
            # through a functor image of a random chain map
            f = self.any_chain_map()
            return r.choice([C.iota, C.Fplus, C.L1, C.R0])(f)
        if mode == 2:
            # a factor of a random morphism
            s = C.random_hom(F, self.comma_object(C), r)
            l, rr = factorize_comma(C, s, r.choice(list(StructureId)), r.choice(list(FactorKind)))
            return r.choice([l, rr])
        # a composite of two random morphisms
        G = self.comma_object(C)
        H = self.comma_object(C)
        return C.random_hom(G, H, r) @ C.random_hom(F, G, r)

    def in_class(self, C: CommaCategory, structure: StructureId, cls: str, attempts: int = 20) -> CommaMorphism:
        """A member of cof / fib / we / triv_cof / triv_fib, built from factorizations and re-verified."""
        for _ in range(attempts):
            s = self.comma_morphism(C)
            if cls in ("cof", "triv_fib"):
                l, r = factorize_comma(C, s, structure, CTF)
                cand = l if cls == "cof" else r
            elif cls in ("triv_cof", "fib"):
                l, r = factorize_comma(C, s, structure, TCF)
                cand = l if cls == "triv_cof" else r
            elif cls == "we":
                l, _ = factorize_comma(C, s, structure, TCF)
                _, r = factorize_comma(C, s, structure, CTF)
                cand = self.rng.choice([l, r])
            else:
                raise ValueError(f"unknown class: {cls!r}")
            flags = C.classify(cand, structure)
            ok = {"cof": flags.is_cof, "fib": flags.is_fib, "we": flags.is_we,
                  "triv_cof": flags.is_trivial_cof, "triv_fib": flags.is_trivial_fib}[cls]
            if ok:
                return cand
        raise RuntimeError(f"could not generate a {cls} in {structure.name} within {attempts} attempts")

    def lifting_problem(self, C: CommaCategory, structure: StructureId,
                        kind: FactorKind = TCF) -> LiftingProblem:
        """σ = l from factoring τ: F → G; β = r' from factoring τ'∘τ; the square closes by construction.

        With kind = TCF, σ is a trivial cofibration and β a fibration in the
        structure; with kind = CTF, σ is a cofibration and β a trivial fibration.
        """
        tau = self.comma_morphism(C, modes=(0, 1, 3))
        l, r = factorize_comma(C, tau, structure, kind)
        Z = self.comma_object(C)
        tau2 = C.random_hom(tau.target, Z, self.rng)
        l2, r2 = factorize_comma(C, tau2 @ tau, structure, kind)
        return LiftingProblem(sigma=l, beta=r2, top=l2, bottom=tau2 @ r)


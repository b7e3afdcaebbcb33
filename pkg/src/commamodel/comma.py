"""The comma category M↓U of a Quillen adjunction F ⊣ U: M ⇄ A.

Objects are triples [F⁰, F¹, π: F⁰ → U(F¹)], morphisms are pairs [σ⁰, σ¹]
making the square π_G σ⁰ = U(σ¹) π_F commute.  Everything here is written
against the backend interface, so the same code runs on the opposite
presentation used for the right-hand model structures.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg as la
from .adjunction import Adjunction, is_object
from .backend import OpMap
from .chain import ClassFlags, Cone, Shape


class StructureId(enum.Enum):
    Inj = "inj"
    Proj = "proj"
    LInj = "linj"
    LProj = "lproj"
    RInj = "rinj"
    RProj = "rproj"
    Strong0 = "strong0"
    Strong1 = "strong1"

    @property
    def dual(self) -> StructureId:
        """The structure on the opposite comma category matching this one."""
        return _DUAL_STRUCTURE[self]

    @property
    def is_right(self) -> bool:
        return self in (StructureId.RInj, StructureId.RProj, StructureId.Strong1)

    @classmethod
    def parse(cls, name: str) -> StructureId:
        key = name.strip().lower().replace("-", "").replace("_", "")
        for s in cls:
            if s.value == key or s.name.lower() == key:
                return s
        raise ValueError(f"unknown model structure: {name!r}")


_DUAL_STRUCTURE = {
    StructureId.Inj: StructureId.Proj, StructureId.Proj: StructureId.Inj,
    StructureId.LInj: StructureId.RProj, StructureId.RProj: StructureId.LInj,
    StructureId.LProj: StructureId.RInj, StructureId.RInj: StructureId.LProj,
    StructureId.Strong0: StructureId.Strong1, StructureId.Strong1: StructureId.Strong0,
}


@dataclass(frozen=True)
class CommaObject:
    F0: object
    F1: object
    pi: object

    @property
    def p(self) -> int:
        return self.F0.p

    def __repr__(self) -> str:
        return f"[{self.F0!r}, {self.F1!r}, π]"


@dataclass(frozen=True)
class CommaMorphism:
    source: CommaObject
    target: CommaObject
    sigma0: object
    sigma1: object

    def __matmul__(self, other: CommaMorphism) -> CommaMorphism:
        if other.target != self.source:
            raise ValueError("comma morphisms are not composable")
        return CommaMorphism(other.source, self.target, self.sigma0 @ other.sigma0, self.sigma1 @ other.sigma1)

    def __add__(self, other: CommaMorphism) -> CommaMorphism:
        return CommaMorphism(self.source, self.target, self.sigma0 + other.sigma0, self.sigma1 + other.sigma1)

    def __sub__(self, other: CommaMorphism) -> CommaMorphism:
        return CommaMorphism(self.source, self.target, self.sigma0 - other.sigma0, self.sigma1 - other.sigma1)

    def __neg__(self) -> CommaMorphism:
        return CommaMorphism(self.source, self.target, -self.sigma0, -self.sigma1)

    def __rmul__(self, c: int) -> CommaMorphism:
        return CommaMorphism(self.source, self.target, c * self.sigma0, c * self.sigma1)

    def is_zero(self) -> bool:
        return self.sigma0.is_zero() and self.sigma1.is_zero()

    def __repr__(self) -> str:
        return f"[{self.sigma0!r}, {self.sigma1!r}]"


def flatten(f) -> np.ndarray:
    """Entries of a backend morphism as one vector (layout fixed by its endpoints)."""
    while isinstance(f, OpMap):
        f = f.base
    if not f.comps:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate([m.array.ravel() for m in f.comps])


class CommaCategory:
    """M↓U for one adjunction instance."""

    def __init__(self, adj: Adjunction):
        self.adj = adj
        self.M = adj.M
        self.A = adj.A
        self.p = adj.p

    def __repr__(self) -> str:
        return f"CommaCategory({self.adj.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CommaCategory) and other.adj == self.adj

    def __hash__(self) -> int:
        return hash(("comma", self.adj))

    def U(self, x):
        return self.adj.U(x)

    def F(self, x):
        return self.adj.F(x)

    # ---------------------------------------------------------- construction
    def obj(self, F0, F1, pi) -> CommaObject:
        if pi.source != F0 or pi.target != self.adj.U_obj(F1):
            raise ValueError("π must run F⁰ → U(F¹)")
        return CommaObject(F0, F1, pi)

    def mor(self, source: CommaObject, target: CommaObject, sigma0, sigma1) -> CommaMorphism:
        if (sigma0.source, sigma0.target) != (source.F0, target.F0):
            raise ValueError("σ⁰ has the wrong endpoints")
        if (sigma1.source, sigma1.target) != (source.F1, target.F1):
            raise ValueError("σ¹ has the wrong endpoints")
        if target.pi @ sigma0 != self.adj.U_map(sigma1) @ source.pi:
            raise ValueError("square π_G σ⁰ = U(σ¹) π_F does not commute")
        return CommaMorphism(source, target, sigma0, sigma1)

    def commutes(self, s: CommaMorphism) -> bool:
        return s.target.pi @ s.sigma0 == self.adj.U_map(s.sigma1) @ s.source.pi

    def transposed_commutes(self, s: CommaMorphism) -> bool:
        """The adjoint square φ⁻¹(π_G) F(σ⁰) = σ¹ φ⁻¹(π_F)."""
        adj = self.adj
        left = adj.phi_inv(s.target.pi, s.target.F1) @ adj.F_map(s.sigma0)
        right = s.sigma1 @ adj.phi_inv(s.source.pi, s.source.F1)
        return left == right

    def identity(self, X: CommaObject) -> CommaMorphism:
        return CommaMorphism(X, X, self.M.identity(X.F0), self.A.identity(X.F1))

    def zero_map(self, X: CommaObject, Y: CommaObject) -> CommaMorphism:
        return CommaMorphism(X, Y, self.M.zero_map(X.F0, Y.F0), self.A.zero_map(X.F1, Y.F1))

    def is_iso(self, s: CommaMorphism) -> bool:
        return self.M.is_iso(s.sigma0) and self.A.is_iso(s.sigma1)

    def inverse(self, s: CommaMorphism) -> CommaMorphism:
        return CommaMorphism(s.target, s.source, self.M.inverse(s.sigma0), self.A.inverse(s.sigma1))

    # --------------------------------------------------- canonical functors
    def iota(self, x):
        if is_object(x):
            return CommaObject(self.U(x), x, self.M.identity(self.U(x)))
        return CommaMorphism(self.iota(x.source), self.iota(x.target), self.U(x), x)

    def L1(self, x):
        if is_object(x):
            z = self.M.colimit(Shape.Initial, ()).apex
            return CommaObject(z, x, self.M.zero_map(z, self.U(x)))
        return CommaMorphism(self.L1(x.source), self.L1(x.target), self.M.identity(self.L1(x.source).F0), x)

    def R0(self, x):
        if is_object(x):
            t = self.A.limit(Shape.Terminal, ()).apex
            return CommaObject(x, t, self.M.zero_map(x, self.U(t)))
        return CommaMorphism(self.R0(x.source), self.R0(x.target), x, self.A.identity(self.R0(x.source).F1))

    def Fplus(self, x):
        if is_object(x):
            return CommaObject(x, self.F(x), self.adj.unit(x))
        return CommaMorphism(self.Fplus(x.source), self.Fplus(x.target), x, self.F(x))

    def Pi0(self, x):
        return x.F0 if isinstance(x, CommaObject) else x.sigma0

    def Pi1(self, x):
        return x.F1 if isinstance(x, CommaObject) else x.sigma1

    def PiArr(self, x):
        """π_F for objects; the arrow-category square (σ⁰, U σ¹) for morphisms."""
        if isinstance(x, CommaObject):
            return x.pi
        return (x.sigma0, self.U(x.sigma1))

    def functor(self, name: str):
        table = {"iota": self.iota, "L1": self.L1, "R0": self.R0, "Fplus": self.Fplus,
                 "Pi0": self.Pi0, "Pi1": self.Pi1, "PiArr": self.PiArr}
        if name not in table:
            raise ValueError(f"unknown canonical functor: {name!r}")
        return table[name]

    # ------------------------------------------------------ limits, colimits
    def terminal(self) -> Cone:
        c0 = self.M.limit(Shape.Terminal, ())
        c1 = self.A.limit(Shape.Terminal, ())
        T = CommaObject(c0.apex, c1.apex, self.M.zero_map(c0.apex, self.U(c1.apex)))

        def med(W):
            return CommaMorphism(W, T, c0.mediate(W.F0), c1.mediate(W.F1))
        return Cone(Shape.Terminal, T, (), med)

    def initial(self) -> Cone:
        c0 = self.M.colimit(Shape.Initial, ())
        c1 = self.A.colimit(Shape.Initial, ())
        I = CommaObject(c0.apex, c1.apex, self.M.zero_map(c0.apex, self.U(c1.apex)))

        def med(W):
            return CommaMorphism(I, W, c0.mediate(W.F0), c1.mediate(W.F1))
        return Cone(Shape.Initial, I, (), med)

    def limit(self, shape: Shape, data) -> Cone:
        """Level-wise limit; π is induced because U preserves limits."""
        data = tuple(data)
        if shape is Shape.Terminal or (shape is Shape.Product and not data):
            if data:
                raise ValueError("terminal takes no data")
            return self.terminal()
        if not shape.is_limit:
            raise ValueError(f"{shape.value} is not a limit shape")
        if shape is Shape.Product:
            objs = data
            c0 = self.M.limit(shape, [X.F0 for X in data])
            c1 = self.A.limit(shape, [X.F1 for X in data])
        else:
            f, g = data
            if shape is Shape.Pullback:
                if f.target != g.target:
                    raise ValueError("pullback needs a cospan")
                objs = (f.source, g.source)
            else:
                if (f.source, f.target) != (g.source, g.target):
                    raise ValueError("equalizer needs parallel maps")
                objs = (f.source,)
            c0 = self.M.limit(shape, (f.sigma0, g.sigma0))
            c1 = self.A.limit(shape, (f.sigma1, g.sigma1))
        pi = self.M.solve_through([self.U(l) for l in c1.legs],
                                  [X.pi @ l for X, l in zip(objs, c0.legs)], c0.apex)
        L = CommaObject(c0.apex, c1.apex, pi)
        legs = tuple(CommaMorphism(L, X, l0, l1) for X, l0, l1 in zip(objs, c0.legs, c1.legs))

        def med(*maps):
            W = maps[0].source
            return CommaMorphism(W, L, c0.mediate(*[m.sigma0 for m in maps]),
                                 c1.mediate(*[m.sigma1 for m in maps]))
        return Cone(shape, L, legs, med)

    def colimit(self, shape: Shape, data) -> Cone:
        """Level-wise colimit; π is the transpose of the canonical F(colim F⁰) → colim F¹."""
        data = tuple(data)
        if shape is Shape.Initial or (shape is Shape.Coproduct and not data):
            if data:
                raise ValueError("initial takes no data")
            return self.initial()
        if shape.is_limit:
            raise ValueError(f"{shape.value} is not a colimit shape")
        if shape is Shape.Coproduct:
            objs = data
            c0 = self.M.colimit(shape, [X.F0 for X in data])
            c1 = self.A.colimit(shape, [X.F1 for X in data])
        else:
            f, g = data
            if shape is Shape.Pushout:
                if f.source != g.source:
                    raise ValueError("pushout needs a span")
                objs = (f.target, g.target)
            else:
                if (f.source, f.target) != (g.source, g.target):
                    raise ValueError("coequalizer needs parallel maps")
                objs = (f.target,)
            c0 = self.M.colimit(shape, (f.sigma0, g.sigma0))
            c1 = self.A.colimit(shape, (f.sigma1, g.sigma1))
        adj = self.adj
        can = self.A.solve_from([self.F(l) for l in c0.legs],
                                [l1 @ adj.phi_inv(X.pi, X.F1) for X, l1 in zip(objs, c1.legs)],
                                c1.apex)
        C = CommaObject(c0.apex, c1.apex, adj.phi(can, c0.apex))
        legs = tuple(CommaMorphism(X, C, l0, l1) for X, l0, l1 in zip(objs, c0.legs, c1.legs))

        def med(*maps):
            W = maps[0].target
            return CommaMorphism(C, W, c0.mediate(*[m.sigma0 for m in maps]),
                                 c1.mediate(*[m.sigma1 for m in maps]))
        return Cone(shape, C, legs, med)

    def terminal_map(self, X: CommaObject) -> CommaMorphism:
        return self.terminal().mediate(X)

    def initial_map(self, X: CommaObject) -> CommaMorphism:
        return self.initial().mediate(X)

    # --------------------------------------------------------------- corners
    def pullback_corner(self, s: CommaMorphism):
        """(cone, δ) with cone the pullback U(F¹) ×_{U(G¹)} G⁰ and δ: F⁰ → apex.

        Cone legs are ordered (to U(F¹), to G⁰).
        """
        cone = self.M.limit(Shape.Pullback, (self.U(s.sigma1), s.target.pi))
        return cone, cone.mediate(s.source.pi, s.sigma0)

    def pushout_corner(self, s: CommaMorphism):
        """(cocone, ζ) with cocone F¹ ∪^{F(F⁰)} F(G⁰) and ζ: apex → G¹.

        Cocone legs are ordered (from F¹, from F(G⁰)).
        """
        adj = self.adj
        cone = self.A.colimit(Shape.Pushout, (adj.phi_inv(s.source.pi, s.source.F1), self.F(s.sigma0)))
        return cone, cone.mediate(s.sigma1, adj.phi_inv(s.target.pi, s.target.F1))

    # -------------------------------------------------------- classification
    def classify(self, s: CommaMorphism, structure: StructureId) -> ClassFlags:
        M, A = self.M, self.A
        c0, c1 = M.classify(s.sigma0), A.classify(s.sigma1)
        S = StructureId

        def delta():
            return M.classify(self.pullback_corner(s)[1])

        def zeta():
            return A.classify(self.pushout_corner(s)[1])

        if structure is S.Inj:
            cof = c0.is_cof and c1.is_cof
            we = c0.is_we and c1.is_we
            fib = c1.is_fib and delta().is_fib
        elif structure is S.Proj:
            cof = c0.is_cof and zeta().is_cof
            we = c0.is_we and c1.is_we
            fib = c0.is_fib and c1.is_fib
        elif structure is S.LInj:
            cof = c0.is_cof and c1.is_cof
            we = c1.is_we
            fib = c1.is_fib and delta().is_trivial_fib
        elif structure is S.LProj:
            cof = c0.is_cof and zeta().is_cof
            we = c1.is_we
            fib = c0.is_fib and c1.is_fib and delta().is_we
        elif structure is S.RInj:
            cof = c0.is_cof and c1.is_cof and zeta().is_we
            we = c0.is_we
            fib = c1.is_fib and delta().is_fib
        elif structure is S.RProj:
            cof = c0.is_cof and zeta().is_trivial_cof
            we = c0.is_we
            fib = c0.is_fib and c1.is_fib
        elif structure is S.Strong0:
            cof = c0.is_cof and A.is_iso(self.pushout_corner(s)[1])
            we = c0.is_we
            fib = c0.is_fib
        elif structure is S.Strong1:
            cof = c1.is_cof
            we = c1.is_we
            fib = c1.is_fib and M.is_iso(self.pullback_corner(s)[1])
        else:  # pragma: no cover
            raise ValueError(structure)
        return ClassFlags(cof, fib, we)

    def is_fibrant(self, X: CommaObject, structure: StructureId) -> bool:
        return self.classify(self.terminal_map(X), structure).is_fib

    def is_cofibrant(self, X: CommaObject, structure: StructureId) -> bool:
        return self.classify(self.initial_map(X), structure).is_cof

    def is_quillen_segal(self, X: CommaObject) -> bool:
        return self.M.classify(X.pi).is_we

    def iso_lift(self, X: CommaObject, u):
        """Transport X along an M-iso u out of X⁰: returns (G_u, [u, id])."""
        if u.source != X.F0:
            raise ValueError("u must start at Π⁰(F)")
        if not self.M.is_iso(u):
            raise ValueError("u is not invertible")
        G = CommaObject(u.target, X.F1, X.pi @ self.M.inverse(u))
        return G, CommaMorphism(X, G, u, self.A.identity(X.F1))

    # ------------------------------------------------------------ hom-spaces
    def hom_basis(self, X: CommaObject, Y: CommaObject) -> list[CommaMorphism]:
        """Basis of the F_p-space Hom(X, Y): pairs cut out by the square equation."""
        b0 = self.M.hom_basis(X.F0, Y.F0)
        b1 = self.A.hom_basis(X.F1, Y.F1)
        cols = [flatten(Y.pi @ f) for f in b0] + [flatten(-(self.U(g) @ X.pi)) for g in b1]
        n = len(cols)
        if n == 0:
            return []
        size = len(cols[0])
        if size == 0:
            K = la.Matrix.identity(self.p, n)
        else:
            K = la.kernel_basis(la.Matrix(self.p, np.stack(cols, axis=1)))
        out = []
        for j in range(K.cols):
            v = K.array[:, j]
            out.append(CommaMorphism(X, Y, self.M.combine(v[:len(b0)], b0, X.F0, Y.F0),
                                     self.A.combine(v[len(b0):], b1, X.F1, Y.F1)))
        return out

    def combine(self, coeffs, basis, X: CommaObject, Y: CommaObject) -> CommaMorphism:
        s = self.zero_map(X, Y)
        for c, b in zip(coeffs, basis):
            if int(c) % self.p:
                s = s + int(c) * b
        return s

    def hom_dim(self, X: CommaObject, Y: CommaObject) -> int:
        return len(self.hom_basis(X, Y))

    def hom_elements(self, X: CommaObject, Y: CommaObject, basis=None):
        """Every element of Hom(X, Y), in lexicographic coefficient order."""
        basis = self.hom_basis(X, Y) if basis is None else basis
        for coeffs in itertools.product(range(self.p), repeat=len(basis)):
            yield self.combine(coeffs, basis, X, Y)

    def random_hom(self, X: CommaObject, Y: CommaObject, rng: random.Random, basis=None) -> CommaMorphism:
        basis = self.hom_basis(X, Y) if basis is None else basis
        return self.combine([rng.randrange(self.p) for _ in basis], basis, X, Y)

    # ---------------------------------------------------------------- duality
    @cached_property
    def dual(self) -> CommaCategory:
        """The comma category of the opposite adjunction (opposite to this one)."""
        return CommaCategory(self.adj.op())

    def to_dual(self, x):
        """[F⁰, F¹, π] ↦ [F¹, F⁰, φ⁻¹(π)^op]; morphisms reverse."""
        if isinstance(x, CommaObject):
            return CommaObject(x.F1, x.F0, OpMap(self.adj.phi_inv(x.pi, x.F1)))
        return CommaMorphism(self.to_dual(x.target), self.to_dual(x.source), OpMap(x.sigma1), OpMap(x.sigma0))

    def from_dual(self, x):
        """Inverse of ``to_dual``."""
        if isinstance(x, CommaObject):
            return CommaObject(x.F1, x.F0, self.adj.phi(x.pi.base, x.F1))
        return CommaMorphism(self.from_dual(x.target), self.from_dual(x.source), x.sigma1.base, x.sigma0.base)


# ------------------------------------------------------------------- E(H, K)


@dataclass(frozen=True)
class AdjunctionSquare:
    """Right adjoints with U' ∘ H = K ∘ U, from M↓U (``source``) to M'↓U' (``target``).

    ``H`` is an adjunction whose right adjoint runs A → A', ``K`` one whose
    right adjoint runs M → M'.
    """

    source: Adjunction
    target: Adjunction
    H: Adjunction
    K: Adjunction

    def check(self, samples) -> list[str]:
        bad = []
        for y in samples:
            if self.target.U_obj(self.H.U_obj(y)) != self.K.U_obj(self.source.U_obj(y)):
                bad.append(f"U'H ≠ KU at {y!r}")
        return bad


def ehk(sq: AdjunctionSquare, x):
    """E(H,K): [F⁰, F¹, π] ↦ [K F⁰, H F¹, K π], component-wise on morphisms."""
    K, H = sq.K, sq.H
    if isinstance(x, CommaObject):
        return CommaObject(K.U_obj(x.F0), H.U_obj(x.F1), K.U_map(x.pi))
    return CommaMorphism(ehk(sq, x.source), ehk(sq, x.target), K.U_map(x.sigma0), H.U_map(x.sigma1))


def ehk_left(sq: AdjunctionSquare, x):
    """Left adjoint of E(H,K): [X⁰, X¹, π] ↦ [K_* X⁰, H_* X¹, ε ∘ K_*(U'(η_{X¹}) ∘ π)]."""
    K, H, Ut = sq.K, sq.H, sq.target
    if isinstance(x, CommaObject):
        Y1 = H.F_obj(x.F1)
        alpha = Ut.U_map(H.unit(x.F1)) @ x.pi
        pi = K.counit(sq.source.U_obj(Y1)) @ K.F_map(alpha)
        return CommaObject(K.F_obj(x.F0), Y1, pi)
    return CommaMorphism(ehk_left(sq, x.source), ehk_left(sq, x.target), K.F_map(x.sigma0), H.F_map(x.sigma1))


def ehk_unit(sq: AdjunctionSquare, X: CommaObject) -> CommaMorphism:
    """X → E(H,K)(E_*(X)), component-wise units of K and H."""
    return CommaMorphism(X, ehk(sq, ehk_left(sq, X)), sq.K.unit(X.F0), sq.H.unit(X.F1))


def ehk_transpose(sq: AdjunctionSquare, s: CommaMorphism, X: CommaObject) -> CommaMorphism:
    """Hom(E_* X, F) → Hom(X, E F): s ↦ E(s) ∘ unit."""
    return ehk(sq, s) @ ehk_unit(sq, X)


# ---------------------------------------------------------------- adjunctions


ENUMERATION_LIMIT = 2 ** 16


@dataclass
class AdjunctionReport:
    pair: str
    checked: int = 0
    exhaustive: int = 0
    sampled: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class _Pair:
    """L ⊣ R with θ: Hom(L a, b) → Hom(a, R b) and its inverse.

    ``cat_a`` is where a lives (domain of L), ``cat_b`` where b lives.
    """

    name: str
    cat_a: str
    cat_b: str
    L: object
    R: object
    theta: object
    theta_inv: object


def _pair(C: CommaCategory, name: str) -> _Pair:
    U = C.U
    if name == "Pi1-iota":
        return _Pair(name, "comma", "A", C.Pi1, C.iota,
                     lambda g, a, b: CommaMorphism(a, C.iota(b), U(g) @ a.pi, g),
                     lambda s, a, b: s.sigma1)
    if name == "L1-Pi1":
        return _Pair(name, "A", "comma", C.L1, C.Pi1,
                     lambda s, a, b: s.sigma1,
                     lambda g, a, b: CommaMorphism(C.L1(a), b, C.initial_map(b).sigma0, g))
    if name == "Pi0-R0":
        return _Pair(name, "comma", "M", C.Pi0, C.R0,
                     lambda h, a, b: CommaMorphism(a, C.R0(b), h, C.terminal_map(a).sigma1),
                     lambda s, a, b: s.sigma0)
    if name == "Fplus-Pi0":
        return _Pair(name, "M", "comma", C.Fplus, C.Pi0,
                     lambda s, a, b: s.sigma0,
                     lambda h, a, b: CommaMorphism(C.Fplus(a), b, h, C.adj.phi_inv(b.pi @ h, b.F1)))
    raise ValueError(f"unknown adjunction pair: {name!r}")


PAIRS = ("Pi1-iota", "L1-Pi1", "Pi0-R0", "Fplus-Pi0")


def _space(C: CommaCategory, tag: str):
    return C if tag == "comma" else C.M if tag == "M" else C.A


def _elements(C, tag, X, Y, limit, n_sampled, rng):
    """(elements, exhaustive?) of Hom(X, Y) in the category ``tag``."""
    sp = _space(C, tag)
    basis = sp.hom_basis(X, Y)
    if C.p ** len(basis) <= limit:
        return [sp.combine(c, basis, X, Y) for c in itertools.product(range(C.p), repeat=len(basis))], True
    return [sp.combine([rng.randrange(C.p) for _ in basis], basis, X, Y) for _ in range(n_sampled)], False


def _valid(C: CommaCategory, g) -> bool:
    return C.commutes(g) if isinstance(g, CommaMorphism) else True


def verify_adjunction(C: CommaCategory, pair: str, samples, rng: random.Random | None = None,
                      limit: int = ENUMERATION_LIMIT, n_sampled: int = 20) -> AdjunctionReport:
    """Check θ: Hom(L a, b) ≅ Hom(a, R b) on each sampled (a, b).

    Exhaustive (bijection plus both roundtrips) when the hom-sets have at
    most ``limit`` elements, otherwise roundtrips on ``n_sampled`` random
    elements.  Naturality is checked against random endomorphisms of a and b.
    """
    rng = rng or random.Random(0)
    P = _pair(C, pair)
    rep = AdjunctionReport(pair)
    for a, b in samples:
        rep.checked += 1
        La, Rb = P.L(a), P.R(b)
        tag_l = P.cat_b
        lefts, ex_l = _elements(C, tag_l, La, b, limit, n_sampled, rng)
        rights, ex_r = _elements(C, P.cat_a, a, Rb, limit, n_sampled, rng)
        if ex_l and ex_r:
            rep.exhaustive += 1
            if len(lefts) != len(rights):
                rep.failures.append(f"{pair}: |Hom(La,b)| = {len(lefts)} ≠ |Hom(a,Rb)| = {len(rights)}")
                continue
        else:
            rep.sampled += 1
        images = set()
        for f in lefts:
            g = P.theta(f, a, b)
            if not _valid(C, g):
                rep.failures.append(f"{pair}: θ(f) is not a morphism")
                break
            if P.theta_inv(g, a, b) != f:
                rep.failures.append(f"{pair}: θ⁻¹θ ≠ id")
                break
            images.add(g)
        else:
            if ex_l and ex_r and len(images) != len(rights):
                rep.failures.append(f"{pair}: θ is not a bijection")
        for g in rights:
            f = P.theta_inv(g, a, b)
            if not _valid(C, f) or P.theta(f, a, b) != g:
                rep.failures.append(f"{pair}: θθ⁻¹ ≠ id")
                break
        h = _random_endo(C, P.cat_a, a, rng)
        k = _random_endo(C, P.cat_b, b, rng)
        for f in lefts[:8]:
            if P.theta(k @ f @ P.L(h), a, b) != P.R(k) @ P.theta(f, a, b) @ h:
                rep.failures.append(f"{pair}: θ is not natural")
                break
    return rep


def _random_endo(C, tag, x, rng):
    sp = _space(C, tag)
    basis = sp.hom_basis(x, x)
    return sp.combine([rng.randrange(C.p) for _ in basis], basis, x, x)


def check_functor_identities(C: CommaCategory, A_objs, M_objs) -> list[str]:
    """Π⁰∘ι = U, Π¹∘ι = Id, Π⁰∘R⁰ = Id, Π¹∘L¹ = Id on sampled objects."""
    bad = []
    for P in A_objs:
        if C.Pi0(C.iota(P)) != C.U(P):
            bad.append(f"Π⁰ι ≠ U at {P!r}")
        if C.Pi1(C.iota(P)) != P:
            bad.append(f"Π¹ι ≠ Id at {P!r}")
        if C.Pi1(C.L1(P)) != P:
            bad.append(f"Π¹L¹ ≠ Id at {P!r}")
    for m in M_objs:
        if C.Pi0(C.R0(m)) != m:
            bad.append(f"Π⁰R⁰ ≠ Id at {m!r}")
    return bad

"""Backend presentations of a model category.

A backend bundles the operations the comma-category algorithms need:
classification, factorization, lifting, finite (co)limits and hom-spaces.
Morphisms are plain values supporting ``g @ f`` (composition g∘f), ``+``,
``-``, scalar ``*`` and carrying ``.source`` / ``.target``.

``ChainBackend`` is the shipped instance.  ``op_adapter`` turns any backend
into a presentation of its opposite category, which is how the right-hand
model structures are reduced to the left-hand algorithms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import chain as ch
from .chain import ChainComplex, ChainMap, ClassFlags, Cone, FactorKind, Shape


class ChainBackend:
    """Chain complexes over F_p with the projective/injective model structure."""

    is_opposite = False

    def __init__(self, p: int):
        self.p = p
        self.name = f"Ch(F_{p})"

    def __repr__(self) -> str:
        return f"ChainBackend({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ChainBackend) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("chain", self.p))

    # objects and morphisms
    def zero(self) -> ChainComplex:
        return ch.zero_complex(self.p)

    def identity(self, X: ChainComplex) -> ChainMap:
        return ch.identity(X)

    def zero_map(self, X: ChainComplex, Y: ChainComplex) -> ChainMap:
        return ch.zero_map(X, Y)

    def is_iso(self, f: ChainMap) -> bool:
        return ch.is_iso(f)

    def inverse(self, f: ChainMap) -> ChainMap:
        return ch.inverse_map(f)

    # model structure
    def classify(self, f: ChainMap) -> ClassFlags:
        return ch.classify_map(f)

    def factorize(self, f: ChainMap, kind: FactorKind) -> tuple[ChainMap, ChainMap]:
        return ch.factorize_chain(f, kind)

    def lift(self, i, p, top, bottom):
        return ch.solve_lift_chain(i, p, top, bottom)

    def lift_space(self, i, p, top, bottom, with_basis: bool = True):
        return ch.lift_space(i, p, top, bottom, with_basis)

    # limits
    def limit(self, shape: Shape, data: Sequence) -> Cone:
        if shape is Shape.Terminal or (shape is Shape.Product and not data):
            return ch.chain_terminal(self.p)
        return ch.finite_limit(shape, data)

    def colimit(self, shape: Shape, data: Sequence) -> Cone:
        if shape is Shape.Initial or (shape is Shape.Coproduct and not data):
            return ch.chain_initial(self.p)
        return ch.finite_colimit(shape, data)

    def solve_through(self, legs, rhs, source):
        return ch.solve_through(legs, rhs, source)

    def solve_from(self, colegs, rhs, target):
        return ch.solve_from(colegs, rhs, target)

    # hom-spaces
    def hom_basis(self, X: ChainComplex, Y: ChainComplex) -> list[ChainMap]:
        return ch.hom_basis(X, Y)

    def combine(self, coeffs, basis, X, Y) -> ChainMap:
        return ch.combine(coeffs, basis, X, Y)


@dataclass(frozen=True)
class OpMap:
    """A morphism of the opposite category: ``base`` runs target → source."""

    base: object

    @property
    def source(self):
        return self.base.target

    @property
    def target(self):
        return self.base.source

    @property
    def p(self) -> int:
        return self.base.p

    def __matmul__(self, other: OpMap) -> OpMap:
        return OpMap(other.base @ self.base)

    def __add__(self, other: OpMap) -> OpMap:
        return OpMap(self.base + other.base)

    def __sub__(self, other: OpMap) -> OpMap:
        return OpMap(self.base - other.base)

    def __neg__(self) -> OpMap:
        return OpMap(-self.base)

    def __rmul__(self, c: int) -> OpMap:
        return OpMap(c * self.base)

    def is_zero(self) -> bool:
        return self.base.is_zero()


def _op_cone(cone: Cone, shape: Shape) -> Cone:
    legs = tuple(OpMap(g) for g in cone.legs)

    def med(*maps):
        return OpMap(cone.mediate(*[m.base for m in maps]))
    return Cone(shape, cone.apex, legs, med)


def _unwrap(data):
    return tuple(x.base if isinstance(x, OpMap) else x for x in data)


class OpBackend:
    """The opposite model category: cofibrations and fibrations trade places."""

    is_opposite = True

    def __init__(self, base):
        self.base = base
        self.p = base.p
        self.name = f"{base.name}^op"

    def __repr__(self) -> str:
        return f"OpBackend({self.base!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, OpBackend) and other.base == self.base

    def __hash__(self) -> int:
        return hash(("op", self.base))

    def zero(self):
        return self.base.zero()

    def identity(self, X):
        return OpMap(self.base.identity(X))

    def zero_map(self, X, Y):
        return OpMap(self.base.zero_map(Y, X))

    def is_iso(self, f: OpMap) -> bool:
        return self.base.is_iso(f.base)

    def inverse(self, f: OpMap) -> OpMap:
        return OpMap(self.base.inverse(f.base))

    def classify(self, f: OpMap) -> ClassFlags:
        return self.base.classify(f.base).swapped()

    def factorize(self, f: OpMap, kind: FactorKind) -> tuple[OpMap, OpMap]:
        l, r = self.base.factorize(f.base, kind.dual)
        return OpMap(r), OpMap(l)

    def lift(self, i, p, top, bottom):
        s = self.base.lift(p.base, i.base, bottom.base, top.base)
        return None if s is None else OpMap(s)

    def lift_space(self, i, p, top, bottom, with_basis: bool = True):
        out = self.base.lift_space(p.base, i.base, bottom.base, top.base, with_basis)
        if out is None:
            return None
        s, basis = out
        return OpMap(s), [OpMap(b) for b in basis]

    def limit(self, shape: Shape, data: Sequence) -> Cone:
        return _op_cone(self.base.colimit(shape.dual, _unwrap(data)), shape)

    def colimit(self, shape: Shape, data: Sequence) -> Cone:
        return _op_cone(self.base.limit(shape.dual, _unwrap(data)), shape)

    def solve_through(self, legs, rhs, source):
        return OpMap(self.base.solve_from([g.base for g in legs], [r.base for r in rhs], source))

    def solve_from(self, colegs, rhs, target):
        return OpMap(self.base.solve_through([g.base for g in colegs], [r.base for r in rhs], target))

    def hom_basis(self, X, Y) -> list[OpMap]:
        return [OpMap(b) for b in self.base.hom_basis(Y, X)]

    def combine(self, coeffs, basis, X, Y) -> OpMap:
        return OpMap(self.base.combine(coeffs, [b.base for b in basis], Y, X))


def op_adapter(backend):
    """The opposite presentation; applying it twice gives back the original."""
    if isinstance(backend, OpBackend):
        return backend.base
    return OpBackend(backend)

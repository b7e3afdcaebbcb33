"""Quillen adjunctions F ⊣ U: M ⇄ A as executable data.

An instance carries U and F on objects and morphisms, the transpose
φ: Hom_A(F x, y) → Hom_M(x, U y) with its inverse, and the unit and counit.
The transposes take the "hidden" object as an extra argument because it
cannot always be read off the morphism (F x = x⊗P forgets x).
"""

from __future__ import annotations

from .backend import ChainBackend, OpMap, op_adapter
from .chain import ChainComplex, identity, zero_complex
from . import tensor as tn


def is_object(x) -> bool:
    return isinstance(x, ChainComplex)


class Adjunction:
    """Base class: subclasses define the eight primitive operations."""

    name = "adjunction"
    M = None  # backend of U's target / F's source
    A = None  # backend of U's source / F's target

    def U(self, x):
        return self.U_obj(x) if is_object(x) else self.U_map(x)

    def F(self, x):
        return self.F_obj(x) if is_object(x) else self.F_map(x)

    def op(self) -> Adjunction:
        return OppositeAdjunction(self)

    def __repr__(self) -> str:
        return f"<{self.name}>"


class IdentityAdjunction(Adjunction):
    """Id ⊣ Id on chain complexes; its comma category is the arrow category."""

    lax = True

    def __init__(self, p: int):
        self.p = p
        self.M = self.A = ChainBackend(p)
        self.name = f"identity(p={p})"

    def U_obj(self, y):
        return y

    def U_map(self, g):
        return g

    def F_obj(self, x):
        return x

    def F_map(self, f):
        return f

    def phi(self, g, x):
        return g

    def phi_inv(self, h, y):
        return h

    def unit(self, x):
        return identity(x)

    def counit(self, y):
        return identity(y)

    def __eq__(self, other):
        return isinstance(other, IdentityAdjunction) and other.p == self.p

    def __hash__(self):
        return hash(("id-adj", self.p))


class HomTensorAdjunction(Adjunction):
    """F = −⊗P left adjoint to U = Hom(P, −), both on chain complexes over F_p."""

    lax = False

    def __init__(self, P: ChainComplex):
        self.P = P
        self.p = P.p
        self.M = self.A = ChainBackend(P.p)
        self.name = f"hom-tensor(P dims={list(P.dims)}, lo={P.lo}, p={P.p})"

    def U_obj(self, y):
        return tn.hom_chain(self.P, y)

    def U_map(self, g):
        return tn.hom_post(self.P, g)

    def F_obj(self, x):
        return tn.tensor_chain(x, self.P)

    def F_map(self, f):
        return tn.tensor_maps(f, identity(self.P))

    def phi(self, g, x):
        return tn.transpose(g, x, self.P)

    def phi_inv(self, h, y):
        return tn.untranspose(h, self.P, y)

    def unit(self, x):
        return tn.coevaluation(x, self.P)

    def counit(self, y):
        return tn.evaluation(self.P, y)

    def __eq__(self, other):
        return isinstance(other, HomTensorAdjunction) and other.P == self.P

    def __hash__(self):
        return hash(("hom-tensor", self.P))


class OppositeAdjunction(Adjunction):
    """U^op ⊣ F^op: A^op ⇄ M^op, presented with F^op as the right adjoint.

    Its comma category M_d↓U_d (M_d = A^op, U_d = F^op) is opposite to the
    original comma category via [F⁰, F¹, π] ↦ [F¹, F⁰, φ⁻¹(π)].
    """

    def __init__(self, base: Adjunction):
        self.base = base
        self.M = op_adapter(base.A)
        self.A = op_adapter(base.M)
        self.p = base.p
        self.name = f"op({base.name})"
        self.lax = False

    def op(self) -> Adjunction:
        return self.base

    def U_obj(self, y):
        return self.base.F_obj(y)

    def U_map(self, g):
        return OpMap(self.base.F_map(g.base))

    def F_obj(self, x):
        return self.base.U_obj(x)

    def F_map(self, f):
        return OpMap(self.base.U_map(f.base))

    def phi(self, g, x):
        # g: F_d x → y in M^op is g.base: y → U x in M
        return OpMap(self.base.phi_inv(g.base, x))

    def phi_inv(self, h, y):
        # h: x → U_d y in A^op is h.base: F y → x in A
        return OpMap(self.base.phi(h.base, y))

    def unit(self, x):
        return OpMap(self.base.counit(x))

    def counit(self, y):
        return OpMap(self.base.unit(y))

    def __eq__(self, other):
        return isinstance(other, OppositeAdjunction) and other.base == self.base

    def __hash__(self):
        return hash(("op-adj", self.base))


def make_adjunction(name: str, p: int, P: ChainComplex | None = None) -> Adjunction:
    """CLI-facing selector: ``identity`` or ``hom-tensor`` (P defaults to the disk D1)."""
    if name == "identity":
        return IdentityAdjunction(p)
    if name in ("hom-tensor", "hom"):
        from .chain import disk
        return HomTensorAdjunction(P if P is not None else disk(p, 1))
    raise ValueError(f"unknown adjunction instance: {name!r}")


def check_triangle_identities(adj: Adjunction, xs, ys) -> list[str]:
    """ε_{F x} ∘ F(η_x) = id and U(ε_y) ∘ η_{U y} = id on the samples."""
    bad = []
    for x in xs:
        if adj.counit(adj.F_obj(x)) @ adj.F_map(adj.unit(x)) != adj.A.identity(adj.F_obj(x)):
            bad.append(f"first triangle fails at {x!r}")
    for y in ys:
        if adj.U_map(adj.counit(y)) @ adj.unit(adj.U_obj(y)) != adj.M.identity(adj.U_obj(y)):
            bad.append(f"second triangle fails at {y!r}")
    return bad


__all__ = ["Adjunction", "IdentityAdjunction", "HomTensorAdjunction", "OppositeAdjunction",
           "make_adjunction", "check_triangle_identities", "is_object", "zero_complex"]

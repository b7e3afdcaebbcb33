"""Pointwise tensor product, internal homs and pushout products on M↓U.

Only the identity adjunction carries a lax monoidal structure here (ψ and
ψ_I are identities), so M↓U is the arrow category of chain complexes with
the pointwise tensor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import tensor as tn
from .adjunction import IdentityAdjunction
from .chain import ChainMap, Shape, identity, sphere
from .comma import CommaCategory, CommaMorphism, CommaObject, StructureId


class UnsupportedInstance(ValueError):
    pass


def _require_lax(C: CommaCategory) -> None:
    if not getattr(C.adj, "lax", False):
        raise UnsupportedInstance(f"{C.adj.name} has no lax monoidal structure")


def _relabel(X, Y) -> ChainMap:
    """The identity matrices viewed as a map X → Y between equal-shaped complexes."""
    if X != Y:
        raise ValueError("complexes differ; no canonical identification")
    return identity(X)


# ----------------------------------------------------------------- tensor


def unit_comma(C: CommaCategory) -> CommaObject:
    _require_lax(C)
    I = sphere(C.p, 0)
    return CommaObject(I, I, identity(I))


def tensor_comma(C: CommaCategory, F: CommaObject, G: CommaObject) -> CommaObject:
    """[F⁰⊗G⁰, F¹⊗G¹, ψ ∘ (π_F ⊗ π_G)] with ψ = id."""
    _require_lax(C)
    return CommaObject(tn.tensor_chain(F.F0, G.F0), tn.tensor_chain(F.F1, G.F1), tn.tensor_maps(F.pi, G.pi))


def tensor_mor(C: CommaCategory, s: CommaMorphism, t: CommaMorphism) -> CommaMorphism:
    return CommaMorphism(tensor_comma(C, s.source, t.source), tensor_comma(C, s.target, t.target),
                         tn.tensor_maps(s.sigma0, t.sigma0), tn.tensor_maps(s.sigma1, t.sigma1))


def left_unitor(C: CommaCategory, F: CommaObject) -> CommaMorphism:
    """I ⊗ F → F; S0⊗X and X share their presentation, so both components are identities."""
    IF = tensor_comma(C, unit_comma(C), F)
    return CommaMorphism(IF, F, _relabel(IF.F0, F.F0), _relabel(IF.F1, F.F1))


def right_unitor(C: CommaCategory, F: CommaObject) -> CommaMorphism:
    FI = tensor_comma(C, F, unit_comma(C))
    return CommaMorphism(FI, F, _relabel(FI.F0, F.F0), _relabel(FI.F1, F.F1))


def associator_comma(C: CommaCategory, F: CommaObject, G: CommaObject, H: CommaObject) -> CommaMorphism:
    S = tensor_comma(C, tensor_comma(C, F, G), H)
    T = tensor_comma(C, F, tensor_comma(C, G, H))
    return CommaMorphism(S, T, tn.associator(F.F0, G.F0, H.F0), tn.associator(F.F1, G.F1, H.F1))


def braiding_comma(C: CommaCategory, F: CommaObject, G: CommaObject) -> CommaMorphism:
    return CommaMorphism(tensor_comma(C, F, G), tensor_comma(C, G, F),
                         tn.braiding(F.F0, G.F0), tn.braiding(F.F1, G.F1))


# ------------------------------------------------------------ internal hom


@dataclass(frozen=True)
class InternalHom:
    obj: CommaObject
    legs: tuple  # (to Hom(F⁰,G⁰), to Hom(F¹,G¹))
    mediate: object


def hom_r(C: CommaCategory, F: CommaObject, G: CommaObject) -> InternalHom:
    """[Hom(F⁰,G⁰) ×_{Hom(F⁰,G¹)} Hom(F¹,G¹), Hom(F¹,G¹), p¹].

    The legs of the pullback are Hom(F⁰, π_G) and Hom(π_F, G¹); with ψ = id
    the map δ̄ of the general construction is the identity of Hom(F¹, G¹).
    """
    _require_lax(C)
    a = tn.hom_post(F.F0, G.pi)         # Hom(F⁰,G⁰) → Hom(F⁰,G¹)
    b = tn.hom_pre(F.pi, G.F1)          # Hom(F¹,G¹) → Hom(F⁰,G¹)
    cone = C.M.limit(Shape.Pullback, (a, b))
    p0, p1 = cone.legs
    H1 = tn.hom_chain(F.F1, G.F1)
    return InternalHom(CommaObject(cone.apex, H1, p1), (p0, p1), cone.mediate)


def hom_l(C: CommaCategory, F: CommaObject, G: CommaObject) -> InternalHom:
    """Left internal hom; the chain tensor is symmetric, so this is hom_r (transposes differ by the braiding)."""
    return hom_r(C, F, G)


def hom_tensor_transpose(C: CommaCategory, s: CommaMorphism, E: CommaObject, F: CommaObject) -> CommaMorphism:
    """σ: E⊗F → G  ↦  E → hom_r(F, G)."""
    G = s.target
    if s.source != tensor_comma(C, E, F):
        raise ValueError("source is not E⊗F")
    H = hom_r(C, F, G)
    bar0 = tn.transpose(s.sigma0, E.F0, F.F0)
    bar1 = tn.transpose(s.sigma1, E.F1, F.F1)
    theta = H.mediate(bar0, bar1 @ E.pi)
    return CommaMorphism(E, H.obj, theta, bar1)


def hom_tensor_untranspose(C: CommaCategory, t: CommaMorphism, F: CommaObject, G: CommaObject) -> CommaMorphism:
    """E → hom_r(F, G)  ↦  E⊗F → G."""
    H = hom_r(C, F, G)
    if t.target != H.obj:
        raise ValueError("target is not hom_r(F, G)")
    E = t.source
    s0 = tn.untranspose(H.legs[0] @ t.sigma0, F.F0, G.F0)
    s1 = tn.untranspose(t.sigma1, F.F1, G.F1)
    return CommaMorphism(tensor_comma(C, E, F), G, s0, s1)


def hom_l_transpose(C: CommaCategory, s: CommaMorphism, E: CommaObject, F: CommaObject) -> CommaMorphism:
    """σ: F⊗E → G  ↦  E → hom_l(F, G), through the braiding."""
    return hom_tensor_transpose(C, s @ braiding_comma(C, E, F), E, F)


# ---------------------------------------------------------- pushout product


@dataclass(frozen=True)
class PushoutProduct:
    corner: CommaMorphism
    cocone: object


def pushout_product(C: CommaCategory, s: CommaMorphism, t: CommaMorphism) -> PushoutProduct:
    """Component formula [σ⁰ □ θ⁰, σ¹ □ θ¹], with π on the pushout from the comma colimit."""
    _require_lax(C)
    c0, k0 = tn.box_product(s.sigma0, t.sigma0)
    c1, k1 = tn.box_product(s.sigma1, t.sigma1)
    direct = _direct_cocone(C, s, t)
    P = direct.apex
    if (P.F0, P.F1) != (c0.apex, c1.apex):
        raise AssertionError("component pushouts differ from the comma pushout")
    return PushoutProduct(CommaMorphism(P, tensor_comma(C, s.target, t.target), k0, k1), direct)


def _direct_cocone(C: CommaCategory, s: CommaMorphism, t: CommaMorphism):
    a = tensor_mor(C, s, C.identity(t.source))
    b = tensor_mor(C, C.identity(s.source), t)
    return C.colimit(Shape.Pushout, (a, b))


def pushout_product_direct(C: CommaCategory, s: CommaMorphism, t: CommaMorphism) -> CommaMorphism:
    """The corner out of the comma-level pushout, computed by the comma colimit."""
    cone = _direct_cocone(C, s, t)
    return cone.mediate(tensor_mor(C, C.identity(s.target), t), tensor_mor(C, s, C.identity(t.target)))


# ----------------------------------------------------------------- suites


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)


def monoidal_functor_checks(C: CommaCategory, A_pairs, comma_pairs) -> SuiteReport:
    """ι laxity, strength of Π⁰ and Π¹, and F⁺ colaxity on samples."""
    rep = SuiteReport("monoidal-functors")
    for a, b in A_pairs:
        rep.checked += 1
        lhs = tensor_comma(C, C.iota(a), C.iota(b))
        rhs = C.iota(tn.tensor_chain(a, b))
        lax = CommaMorphism(lhs, rhs, identity(lhs.F0), identity(lhs.F1))
        if lhs.F0 != rhs.F0 or lhs.F1 != rhs.F1 or not C.commutes(lax):
            rep.fail(f"ι laxity at ({a!r}, {b!r})")
        fp = tensor_comma(C, C.Fplus(a), C.Fplus(b))
        fq = C.Fplus(tn.tensor_chain(a, b))
        if fp != fq:
            rep.fail(f"F⁺ colaxity is not an isomorphism at ({a!r}, {b!r})")
    for F, G in comma_pairs:
        rep.checked += 1
        T = tensor_comma(C, F, G)
        if C.Pi0(T) != tn.tensor_chain(F.F0, G.F0) or C.Pi1(T) != tn.tensor_chain(F.F1, G.F1):
            rep.fail("Π⁰/Π¹ not strong")
    return rep


def coherence_checks(C: CommaCategory, triples) -> SuiteReport:
    """Pentagon and triangle as equalities of composite matrices."""
    rep = SuiteReport("coherence")
    I = unit_comma(C)
    for F, G, H in triples:
        rep.checked += 1
        a = associator_comma(C, F, G, H)
        if not (C.commutes(a) and C.is_iso(a)):
            rep.fail("associator not a comma iso")
        # triangle: (id ⊗ λ) ∘ α = ρ ⊗ id on (F ⊗ I) ⊗ G
        a_fig = associator_comma(C, F, I, G)
        lhs = tensor_mor(C, C.identity(F), left_unitor(C, G)) @ a_fig
        rhs = tensor_mor(C, right_unitor(C, F), C.identity(G))
        if lhs != rhs:
            rep.fail("triangle identity fails")
        for X in (F, G, H):
            if not (C.commutes(left_unitor(C, X)) and C.commutes(right_unitor(C, X))):
                rep.fail("unitor not a comma morphism")
    for F, G, H in triples:
        K = G
        lhs = (associator_comma(C, F, G, tensor_comma(C, H, K))
               @ associator_comma(C, tensor_comma(C, F, G), H, K))
        rhs = (tensor_mor(C, C.identity(F), associator_comma(C, G, H, K))
               @ associator_comma(C, F, tensor_comma(C, G, H), K)
               @ tensor_mor(C, associator_comma(C, F, G, H), C.identity(K)))
        if lhs != rhs:
            rep.fail("pentagon fails")
    return rep


def hom_tensor_bijection(C: CommaCategory, triples, limit: int = 2 ** 12) -> SuiteReport:
    """Exhaustive Hom(E⊗F, G) ≅ Hom(E, hom_r(F, G)) on tiny instances."""
    rep = SuiteReport("hom-tensor")
    for E, F, G in triples:
        EF = tensor_comma(C, E, F)
        H = hom_r(C, F, G).obj
        b1, b2 = C.hom_basis(EF, G), C.hom_basis(E, H)
        if len(b1) != len(b2):
            rep.fail(f"hom dimensions differ: {len(b1)} vs {len(b2)}")
            continue
        if C.p ** len(b1) > limit:
            continue
        rep.checked += 1
        images = set()
        for s in C.hom_elements(EF, G, b1):
            t = hom_tensor_transpose(C, s, E, F)
            if not C.commutes(t):
                rep.fail("transpose is not a morphism")
                break
            if hom_tensor_untranspose(C, t, F, G) != s:
                rep.fail("untranspose ∘ transpose ≠ id")
                break
            images.add(t)
        if len(images) != C.p ** len(b2):
            rep.fail("transpose is not a bijection")
        for t in C.hom_elements(E, H, b2):
            if hom_tensor_transpose(C, hom_tensor_untranspose(C, t, F, G), E, F) != t:
                rep.fail("transpose ∘ untranspose ≠ id")
                break
    return rep


def pushout_product_suite(C: CommaCategory, pairs, structures=(StructureId.Inj, StructureId.LInj)) -> SuiteReport:
    """Component formula vs direct corner; pushout-product axiom; Π⁰/Π¹ compatibility."""
    rep = SuiteReport("pushout-product")
    for s, t in pairs:
        rep.checked += 1
        pp = pushout_product(C, s, t).corner
        if pp != pushout_product_direct(C, s, t):
            rep.fail("component formula ≠ direct comma corner")
            continue
        if not C.commutes(pp):
            rep.fail("pushout product is not a comma morphism")
        if tn.box_product(C.Pi0(s), C.Pi0(t))[1] != pp.sigma0 or tn.box_product(C.Pi1(s), C.Pi1(t))[1] != pp.sigma1:
            rep.fail("Π⁰/Π¹ do not preserve the pushout product")
        for st in structures:
            cs, ct, cp = C.classify(s, st), C.classify(t, st), C.classify(pp, st)
            if cs.is_cof and ct.is_cof:
                if not cp.is_cof:
                    rep.fail(f"{st.name}: cof □ cof is not a cofibration")
                if (cs.is_we or ct.is_we) and not cp.is_we:
                    rep.fail(f"{st.name}: trivial side does not give a trivial pushout product")
    return rep


def unit_axiom_suite(C: CommaCategory, objects, structures=(StructureId.Inj, StructureId.LInj)) -> SuiteReport:
    """The unit is cofibrant, so the replacement is the identity and I^c ⊗ F → I ⊗ F is an iso."""
    rep = SuiteReport("unit-axiom")
    I = unit_comma(C)
    for st in structures:
        if not C.is_cofibrant(I, st):
            rep.fail(f"unit not cofibrant in {st.name}")
    for F in objects:
        rep.checked += 1
        m = tensor_mor(C, C.identity(I), C.identity(F))
        for st in structures:
            if C.is_cofibrant(F, st) and not C.classify(m, st).is_we:
                rep.fail(f"unit axiom fails in {st.name}")
    return rep


def sign_regression(p: int, complexes) -> SuiteReport:
    """d∘d = 0 on tensors and internal homs, for every pair of samples."""
    rep = SuiteReport(f"signs-F{p}")
    for X, Y in itertools.product(complexes, repeat=2):
        rep.checked += 1
        for Z in (tn.tensor_chain(X, Y), tn.hom_chain(X, Y)):
            for n in Z.degrees():
                if Z.dim(n) and Z.dim(n - 2) and not (Z.d(n - 1) @ Z.d(n)).is_zero():
                    rep.fail(f"d∘d ≠ 0 in degree {n}")
    return rep


def arrow_category(p: int) -> CommaCategory:
    return CommaCategory(IdentityAdjunction(p))

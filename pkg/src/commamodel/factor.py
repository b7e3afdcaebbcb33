"""Factorization and lifting in the eight model structures on M↓U.

Left structures follow explicit constructions (pull back along π_G, push out
along φ⁻¹(π_F), factor the induced corner).  Right structures run the left
algorithm on the opposite comma category and translate back.  Lifting has
two structural solvers (LInj, Strong0) and a complete linear solver that works
for any additive backend.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .chain import FactorKind, Shape
from .comma import CommaCategory, CommaMorphism, CommaObject, StructureId, flatten

S = StructureId
CTF = FactorKind.CofThenTrivFib
TCF = FactorKind.TrivCofThenFib


@dataclass
class Factorization:
    l: CommaMorphism
    r: CommaMorphism
    structure: StructureId
    kind: FactorKind
    route: str
    trace: dict = field(default_factory=dict)

    @property
    def middle(self) -> CommaObject:
        return self.l.target


# ------------------------------------------------------------------ skeletons


def _pullback_route(C: CommaCategory, s: CommaMorphism, kind_A: FactorKind, kind_M: FactorKind, trace: dict):
    """Factor σ¹, pull back along π_G, factor the corner δ: F⁰ → Q⁰."""
    M, A, U = C.M, C.A, C.U
    a1, b1 = A.factorize(s.sigma1, kind_A)
    E1 = a1.target
    cone = M.limit(Shape.Pullback, (U(b1), s.target.pi))
    qU, qG = cone.legs
    delta = cone.mediate(U(a1) @ s.source.pi, s.sigma0)
    a0, b0 = M.factorize(delta, kind_M)
    E = CommaObject(a0.target, E1, qU @ b0)
    trace.update({"E1": E1, "Q0": cone.apex, "delta": delta, "m0": a0.target})
    return CommaMorphism(s.source, E, a0, a1), CommaMorphism(E, s.target, qG @ b0, b1)


def _pushout_route(C: CommaCategory, s: CommaMorphism, kind_M: FactorKind, kind_A: FactorKind | None, trace: dict):
    """Factor σ⁰, push out along φ⁻¹(π_F), then factor ζ: R¹ → G¹ (or keep R¹ when kind_A is None)."""
    M, A, adj = C.M, C.A, C.adj
    a0, b0 = M.factorize(s.sigma0, kind_M)
    E0 = a0.target
    cone = A.colimit(Shape.Pushout, (adj.phi_inv(s.source.pi, s.source.F1), C.F(a0)))
    i2, i1 = cone.legs
    zeta = cone.mediate(s.sigma1, adj.phi_inv(s.target.pi, s.target.F1) @ C.F(b0))
    trace.update({"m0": E0, "R1": cone.apex, "zeta": zeta})
    if kind_A is None:
        c, d = A.identity(cone.apex), zeta
    else:
        c, d = A.factorize(zeta, kind_A)
        trace["E1"] = c.target
    E = CommaObject(E0, c.target, adj.phi(c @ i1, E0))
    return CommaMorphism(s.source, E, a0, c @ i2), CommaMorphism(E, s.target, b0, d)


def _lproj_tcf(C: CommaCategory, s: CommaMorphism, trace: dict):
    """Trivial cofibration then fibration in the left projective structure."""
    M, A, U, adj = C.M, C.A, C.U, C.adj
    F, G = s.source, s.target
    l1, r1 = A.factorize(s.sigma1, TCF)
    E1 = l1.target
    pb = M.limit(Shape.Pullback, (U(r1), G.pi))
    p2, p1 = pb.legs
    delta = pb.mediate(U(l1) @ F.pi, s.sigma0)
    a_d, b_d = M.factorize(delta, CTF)
    m0 = a_d.target
    po = A.colimit(Shape.Pushout, (adj.phi_inv(F.pi, F.F1), C.F(a_d)))
    i2, i1 = po.legs
    R1_to_E1 = po.mediate(l1, adj.phi_inv(p2 @ b_d, E1))
    c, w = A.factorize(R1_to_E1, CTF)
    E1p = c.target
    pi_E = adj.phi(c @ i1, m0)
    E = CommaObject(m0, E1p, pi_E)
    i = CommaMorphism(F, E, a_d, c @ i2)
    j = CommaMorphism(E, G, p1 @ b_d, r1 @ w)
    pb2 = M.limit(Shape.Pullback, (U(w), p2))
    tau = pb2.mediate(pi_E, b_d)
    trace.update({"E1": E1, "Q0": pb.apex, "delta": delta, "m0": m0, "R1": po.apex,
                  "E1'": E1p, "Q0'": pb2.apex, "tau": tau})
    return i, j


# --------------------------------------------------------------------- public


def factorize_traced(C: CommaCategory, s: CommaMorphism, structure: StructureId, kind: FactorKind) -> Factorization:
    trace: dict = {}
    if structure.is_right:
        D = C.dual
        inner = factorize_traced(D, C.to_dual(s), structure.dual, kind.dual)
        l, r = C.from_dual(inner.r), C.from_dual(inner.l)
        return Factorization(l, r, structure, kind, f"dual:{inner.route}", {"dual": inner.trace})
    if structure is S.Inj:
        l, r = _pullback_route(C, s, kind, kind, trace)
        route = "pullback"
    elif structure is S.Proj:
        l, r = _pushout_route(C, s, kind, kind, trace)
        route = "pushout"
    elif structure is S.LInj:
        l, r = _pullback_route(C, s, kind, CTF, trace)
        route = "pullback" if kind is CTF else "pullback-linj"
    elif structure is S.LProj:
        if kind is CTF:
            l, r = _pushout_route(C, s, CTF, CTF, trace)
            route = "pushout"
        else:
            l, r = _lproj_tcf(C, s, trace)
            route = "lproj-tcf"
    elif structure is S.Strong0:
        l, r = _pushout_route(C, s, kind, None, trace)
        route = "strong0"
    else:  # pragma: no cover
        raise ValueError(structure)
    return Factorization(l, r, structure, kind, route, trace)


def factorize_comma(C: CommaCategory, s: CommaMorphism, structure: StructureId,
                    kind: FactorKind) -> tuple[CommaMorphism, CommaMorphism]:
    """σ = r ∘ l with (l, r) in the classes (cof, triv fib) or (triv cof, fib) of the structure."""
    f = factorize_traced(C, s, structure, kind)
    return f.l, f.r


def factorize_right_direct(C: CommaCategory, s: CommaMorphism, structure: StructureId,
                           kind: FactorKind) -> tuple[CommaMorphism, CommaMorphism] | None:
    """Right-structure factorizations built straight from the definitions.

    Used to cross-check the dual route.  Returns None where no direct
    construction is shipped (RInj with CofThenTrivFib).
    """
    trace: dict = {}
    if structure is S.RProj:
        if kind is CTF:
            return _pushout_route(C, s, CTF, TCF, trace)
        return _pushout_route(C, s, TCF, TCF, trace)
    if structure is S.RInj:
        if kind is TCF:
            return _pullback_route(C, s, TCF, TCF, trace)
        return None
    if structure is S.Strong1:
        M, A, U = C.M, C.A, C.U
        a1, b1 = A.factorize(s.sigma1, kind)
        cone = M.limit(Shape.Pullback, (U(b1), s.target.pi))
        qU, qG = cone.legs
        delta = cone.mediate(U(a1) @ s.source.pi, s.sigma0)
        E = CommaObject(cone.apex, a1.target, qU)
        return CommaMorphism(s.source, E, delta, a1), CommaMorphism(E, s.target, qG, b1)
    raise ValueError(f"{structure.name} is not a right structure")


def advertised(kind: FactorKind) -> tuple[str, str]:
    """Names of the classes (for l, for r) promised by a factorization kind."""
    return ("cof", "trivial fib") if kind is CTF else ("trivial cof", "fib")


def check_factorization(C: CommaCategory, s: CommaMorphism, l: CommaMorphism, r: CommaMorphism,
                        structure: StructureId, kind: FactorKind) -> list[str]:
    """Independent verification: validity, r∘l = σ and the advertised classes."""
    bad = []
    for name, m in (("l", l), ("r", r)):
        if not C.commutes(m):
            bad.append(f"{name} is not a comma morphism")
    if bad:
        return bad
    if r @ l != s:
        bad.append("r ∘ l ≠ σ")
    cl, cr = C.classify(l, structure), C.classify(r, structure)
    if kind is CTF:
        if not cl.is_cof:
            bad.append("l is not a cofibration")
        if not cr.is_trivial_fib:
            bad.append("r is not a trivial fibration")
    else:
        if not cl.is_trivial_cof:
            bad.append("l is not a trivial cofibration")
        if not cr.is_fib:
            bad.append("r is not a fibration")
    return bad


# -------------------------------------------------------------------- lifting


@dataclass(frozen=True)
class LiftingProblem:
    """A square β ∘ top = bottom ∘ σ with σ: F → G, β: P → Q."""

    sigma: CommaMorphism
    beta: CommaMorphism
    top: CommaMorphism
    bottom: CommaMorphism

    def commutes(self) -> bool:
        return self.beta @ self.top == self.bottom @ self.sigma

    def is_solution(self, s: CommaMorphism) -> bool:
        return s @ self.sigma == self.top and self.beta @ s == self.bottom

    def dual(self, C: CommaCategory) -> LiftingProblem:
        d = C.to_dual
        return LiftingProblem(d(self.beta), d(self.sigma), d(self.bottom), d(self.top))


def _check_problem(C: CommaCategory, prob: LiftingProblem) -> None:
    if prob.top.source != prob.sigma.source or prob.top.target != prob.beta.source:
        raise ValueError("top must run from dom σ to dom β")
    if prob.bottom.source != prob.sigma.target or prob.bottom.target != prob.beta.target:
        raise ValueError("bottom must run from cod σ to cod β")
    if not prob.commutes():
        raise ValueError("lifting square does not commute")


def lift_linj(C: CommaCategory, prob: LiftingProblem) -> CommaMorphism | None:
    """Lift σ¹ against β¹ in A, then σ⁰ against the corner δ_β in M."""
    M, A, U = C.M, C.A, C.U
    sg, be, top, bot = prob.sigma, prob.beta, prob.top, prob.bottom
    s1 = A.lift(sg.sigma1, be.sigma1, top.sigma1, bot.sigma1)
    if s1 is None:
        return None
    cone, delta = C.pullback_corner(be)
    lower = cone.mediate(U(s1) @ sg.target.pi, bot.sigma0)
    s0 = M.lift(sg.sigma0, delta, top.sigma0, lower)
    if s0 is None:
        return None
    return CommaMorphism(sg.target, be.source, s0, s1)


def lift_strong0(C: CommaCategory, prob: LiftingProblem) -> CommaMorphism | None:
    """Lift σ⁰ in M, then extend over G¹ ≅ F¹ ∪^{F F⁰} F G⁰ by the pushout property."""
    M, A, adj = C.M, C.A, C.adj
    sg, be, top, bot = prob.sigma, prob.beta, prob.top, prob.bottom
    cone, zeta = C.pushout_corner(sg)
    if not A.is_iso(zeta):
        return None
    s0 = M.lift(sg.sigma0, be.sigma0, top.sigma0, bot.sigma0)
    if s0 is None:
        return None
    P = be.source
    s1 = cone.mediate(top.sigma1, adj.phi_inv(P.pi, P.F1) @ C.F(s0)) @ A.inverse(zeta)
    return CommaMorphism(sg.target, P, s0, s1)


def lift_linear(C: CommaCategory, prob: LiftingProblem) -> CommaMorphism | None:
    """Complete solver: both component lift spaces, cut down by the comma square."""
    M, A, U = C.M, C.A, C.U
    sg, be, top, bot = prob.sigma, prob.beta, prob.top, prob.bottom
    sp0 = M.lift_space(sg.sigma0, be.sigma0, top.sigma0, bot.sigma0)
    if sp0 is None:
        return None
    sp1 = A.lift_space(sg.sigma1, be.sigma1, top.sigma1, bot.sigma1)
    if sp1 is None:
        return None
    (x0, B0), (x1, B1) = sp0, sp1
    G, P = sg.target, be.source

    def defect(f0, f1):
        return flatten(P.pi @ f0) - flatten(U(f1) @ G.pi)

    base = defect(x0, x1)
    cols = [flatten(P.pi @ b) for b in B0] + [-flatten(U(b) @ G.pi) for b in B1]
    p = C.p
    if base.size == 0 or not base.any():
        return CommaMorphism(G, P, x0, x1)
    if not cols:
        return None
    coeffs = la.solve(la.Matrix(p, np.stack(cols, axis=1)), la.Matrix(p, (-base).reshape(-1, 1)))
    if coeffs is None:
        return None
    c = [int(v) for v in coeffs.array[:, 0]]
    s0 = x0
    for k, b in enumerate(B0):
        if c[k]:
            s0 = s0 + c[k] * b
    s1 = x1
    for k, b in enumerate(B1):
        if c[len(B0) + k]:
            s1 = s1 + c[len(B0) + k] * b
    return CommaMorphism(G, P, s0, s1)


def lift_comma(C: CommaCategory, prob: LiftingProblem, structure: StructureId,
               method: str = "auto") -> CommaMorphism | None:
    """A diagonal filler, or None when none exists.

    ``method`` is "structural", "linear" or "auto" (structural solver when its
    hypotheses hold, linear otherwise).  Every returned lift is verified.
    """
    _check_problem(C, prob)
    s = None
    if method in ("auto", "structural"):
        s = _structural(C, prob, structure)
        if s is None and method == "structural":
            return None
    if s is None:
        s = lift_linear(C, prob)
    if s is not None and not (C.commutes(s) and prob.is_solution(s)):
        raise AssertionError("lift solver produced an invalid filler")
    return s


def _structural(C: CommaCategory, prob: LiftingProblem, structure: StructureId):
    if structure is S.LInj:
        cs, cb = C.classify(prob.sigma, S.LInj), C.classify(prob.beta, S.LInj)
        # both lifting axioms reduce to a lift in A then one against δ_β in M
        if (cs.is_trivial_cof and cb.is_fib) or (cs.is_cof and cb.is_trivial_fib):
            return lift_linj(C, prob)
        return None
    if structure is S.Strong0:
        if C.classify(prob.sigma, S.Strong0).is_cof:
            return lift_strong0(C, prob)
        return None
    if structure in (S.RProj, S.Strong1):
        d = _structural(C.dual, prob.dual(C), structure.dual)
        return None if d is None else C.from_dual(d)
    return None


# ------------------------------------------------------- class equalities


@dataclass
class ClassReport:
    checked: int = 0
    failures: list = field(default_factory=list)
    strict_witnesses: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def check_class_equalities(C: CommaCategory, samples) -> ClassReport:
    """The class identities relating left and level-wise structures, on every sample."""
    rep = ClassReport()
    for s in samples:
        rep.checked += 1
        c0, c1 = C.M.classify(s.sigma0), C.A.classify(s.sigma1)
        inj, linj, lproj = C.classify(s, S.Inj), C.classify(s, S.LInj), C.classify(s, S.LProj)
        level_tfib = c0.is_trivial_fib and c1.is_trivial_fib
        if (lproj.is_fib and lproj.is_we) != level_tfib:
            rep.failures.append(("lfib∩lwe(LProj) = level trivial fib", s))
        if linj.is_cof != inj.is_cof:
            rep.failures.append(("lcof(LInj) = cof(Inj)", s))
        if (linj.is_fib and linj.is_we) != (inj.is_fib and inj.is_we):
            rep.failures.append(("lfib∩lwe(LInj) = fib∩we(Inj)", s))
        if inj.is_we and not linj.is_we:
            rep.failures.append(("we(Inj) ⊆ lwe(LInj)", s))
        if linj.is_we and not inj.is_we:
            rep.strict_witnesses += 1
    return rep

"""Abelian structure of M↓U and Grothendieck topologies on comma sites.

The abelian checks are exact linear algebra.  Sites are finite
meet-semilattices with a coverage given by basis families; every site
check is an exhaustive loop.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable

import numpy as np

from . import linalg as la
from .chain import Shape, disk, sphere
from .comma import CommaCategory, CommaMorphism, CommaObject, flatten
from .monoidal import SuiteReport


# ==================================================================== abelian


def _levelwise_injective(f) -> bool:
    return all(la.is_injective(f.comp(n)) for n in f.source.degrees())


def _levelwise_surjective(f) -> bool:
    return all(la.is_surjective(f.comp(n)) for n in f.target.degrees())


def generators(C: CommaCategory, lo: int, hi: int) -> list[CommaObject]:
    """F⁺(D_n) and L¹(D_n): Hom out of them reads off degree-n elements of F⁰ and F¹."""
    out = []
    for n in range(lo, hi + 1):
        D = disk(C.p, n)
        out += [C.Fplus(D), C.L1(D)]
    return out


def cogenerators(C: CommaCategory, lo: int, hi: int) -> list[CommaObject]:
    """R⁰(D_n) and ι(D_n): Hom into them reads off degree-n functionals on F⁰ and F¹."""
    out = []
    for n in range(lo, hi + 2):
        D = disk(C.p, n)
        out += [C.R0(D), C.iota(D)]
    return out


def _independent(p: int, maps) -> bool:
    if not maps:
        return True
    rows = np.stack([np.concatenate([flatten(m.sigma0), flatten(m.sigma1)]) for m in maps])
    return rows.shape[1] > 0 and la.rank(la.Matrix(p, rows)) == len(maps)


def is_mono_by_cancellation(C: CommaCategory, s: CommaMorphism, gens) -> bool:
    """σ∘(−): Hom(X, F) → Hom(X, G) injective for every generator X."""
    for X in gens:
        basis = C.hom_basis(X, s.source)
        if not _independent(C.p, [s @ b for b in basis]):
            return False
    return True


def is_epi_by_cancellation(C: CommaCategory, s: CommaMorphism, cogens) -> bool:
    """(−)∘σ: Hom(G, Y) → Hom(F, Y) injective for every cogenerator Y."""
    for Y in cogens:
        basis = C.hom_basis(s.target, Y)
        if not _independent(C.p, [b @ s for b in basis]):
            return False
    return True


def zero_check(C: CommaCategory) -> list[str]:
    T, I = C.terminal().apex, C.initial().apex
    bad = []
    if T != I:
        bad.append("terminal ≠ initial")
    if T.F0.total_dim or T.F1.total_dim or not T.pi.is_zero():
        bad.append("zero object is not [0, 0, id]")
    return bad


def biproduct_check(C: CommaCategory, F: CommaObject, G: CommaObject) -> list[str]:
    """The canonical F ⊕ G → F × G is an iso with components the level-wise comparisons."""
    cop = C.colimit(Shape.Coproduct, (F, G))
    prod = C.limit(Shape.Product, (F, G))
    can = cop.mediate(prod.mediate(C.identity(F), C.zero_map(F, G)),
                      prod.mediate(C.zero_map(G, F), C.identity(G)))
    bad = []
    if not (C.commutes(can) and C.is_iso(can)):
        bad.append("canonical coproduct → product is not an iso")
    for k, sp in ((0, C.M), (1, C.A)):
        Xs = (F.F0, G.F0) if k == 0 else (F.F1, G.F1)
        c, pr = sp.colimit(Shape.Coproduct, Xs), sp.limit(Shape.Product, Xs)
        alpha = c.mediate(pr.mediate(sp.identity(Xs[0]), sp.zero_map(Xs[0], Xs[1])),
                          pr.mediate(sp.zero_map(Xs[1], Xs[0]), sp.identity(Xs[1])))
        if (can.sigma0 if k == 0 else can.sigma1) != alpha:
            bad.append(f"component {k} is not the level-wise comparison α")
    return bad


def cokernel(C: CommaCategory, s: CommaMorphism):
    return C.colimit(Shape.Coequalizer, (s, C.zero_map(s.source, s.target)))


def kernel(C: CommaCategory, s: CommaMorphism):
    return C.limit(Shape.Equalizer, (s, C.zero_map(s.source, s.target)))


def mono_is_kernel(C: CommaCategory, s: CommaMorphism) -> list[str]:
    q = cokernel(C, s).legs[0]
    K = kernel(C, q)
    m = K.mediate(s)
    bad = []
    if not C.is_iso(m) or K.legs[0] @ m != s:
        bad.append("mono is not the kernel of its cokernel")
    return bad


def epi_is_cokernel(C: CommaCategory, s: CommaMorphism) -> list[str]:
    k = kernel(C, s).legs[0]
    Q = cokernel(C, k)
    m = Q.mediate(s)
    bad = []
    if not C.is_iso(m) or m @ Q.legs[0] != s:
        bad.append("epi is not the cokernel of its kernel")
    return bad


def equalizer_creation(C: CommaCategory, f: CommaMorphism, g: CommaMorphism, k: CommaMorphism) -> list[str]:
    """For the cone e∘k over (f, g): comma equalizer iff both level-wise cones are."""
    E = C.limit(Shape.Equalizer, (f, g))
    e = E.legs[0]
    cone = e @ k
    comma_eq = C.is_iso(E.mediate(cone))
    E0 = C.M.limit(Shape.Equalizer, (f.sigma0, g.sigma0))
    E1 = C.A.limit(Shape.Equalizer, (f.sigma1, g.sigma1))
    level_eq = C.M.is_iso(E0.mediate(cone.sigma0)) and C.A.is_iso(E1.mediate(cone.sigma1))
    bad = []
    if comma_eq != level_eq:
        bad.append("equalizer not created by the projections")
    if not (C.M.is_iso(E0.mediate(e.sigma0)) and C.A.is_iso(E1.mediate(e.sigma1))):
        bad.append("projections of the comma equalizer are not equalizers")
    return bad


def _span(s: CommaMorphism) -> tuple[int, int]:
    cs = [s.source.F0, s.source.F1, s.target.F0, s.target.F1]
    return min(X.lo for X in cs), max(X.hi for X in cs)


def abelian_case_inputs(C: CommaCategory, gen) -> dict:
    F, G = gen.comma_object(C), gen.comma_object(C)
    s = gen.comma_morphism(C, modes=(0, 1, 3))
    t = C.random_hom(s.source, s.target, gen.rng)
    E = C.limit(Shape.Equalizer, (s, t)).apex
    k = gen.comma_morphism(C, F=gen.comma_object(C), G=E)
    return {"F": F, "G": G, "sigma": s, "tau": t, "k": k}


def abelian_case_check(C: CommaCategory, x: dict) -> list[str]:
    """Biproduct, mono/epi ⇔ level-wise, ker/coker roundtrips and equalizers for one case."""
    s, t = x["sigma"], x["tau"]
    bad = biproduct_check(C, x["F"], x["G"])
    mono_lw = _levelwise_injective(s.sigma0) and _levelwise_injective(s.sigma1)
    epi_lw = _levelwise_surjective(s.sigma0) and _levelwise_surjective(s.sigma1)
    lo, hi = _span(s)
    if is_mono_by_cancellation(C, s, generators(C, lo, hi)) != mono_lw:
        bad.append("mono by cancellation ≠ level-wise mono")
    if is_epi_by_cancellation(C, s, cogenerators(C, lo, hi)) != epi_lw:
        bad.append("epi by cancellation ≠ level-wise epi")
    # the kernel inclusion and the coimage projection are a mono and an epi in every case
    K = kernel(C, s)
    Q = cokernel(C, K.legs[0])
    bad += mono_is_kernel(C, K.legs[0])
    bad += epi_is_cokernel(C, Q.legs[0])
    if mono_lw:
        bad += mono_is_kernel(C, s)
    if epi_lw:
        bad += epi_is_cokernel(C, s)
    for kk in (x["k"], C.identity(x["k"].target)):
        bad += equalizer_creation(C, s, t, kk)
    return bad


def abelian_suite(C: CommaCategory, gen, n: int = 100) -> SuiteReport:
    """Zero object plus ``n`` sampled cases of :func:`abelian_case_check`."""
    if not getattr(C.adj, "additive", True):
        raise ValueError(f"{C.adj.name} is not additive")
    rep = SuiteReport("abelian")
    rep.failures += zero_check(C)
    for _ in range(n):
        rep.checked += 1
        rep.failures += abelian_case_check(C, abelian_case_inputs(C, gen))
    return rep


def inclusion_example(p: int):
    """σ = [0, S0 ↪ D1]: [0, S0, 0] → [0, D1, 0] in the arrow category."""
    from .adjunction import IdentityAdjunction
    from .chain import ChainMap, zero_complex
    C = CommaCategory(IdentityAdjunction(p))
    Z, S0, D1 = zero_complex(p), sphere(p, 0), disk(p, 1)
    inc = ChainMap.build(S0, D1, {0: [[1]]})
    F = CommaObject(Z, S0, C.M.zero_map(Z, S0))
    G = CommaObject(Z, D1, C.M.zero_map(Z, D1))
    return C, C.mor(F, G, C.M.identity(Z), inc)


# ====================================================================== sites


Obj = Hashable


@dataclass(frozen=True)
class FiniteSite:
    """A finite meet-semilattice with a coverage of basis families."""

    objects: tuple
    leq_pairs: frozenset
    coverage: dict = field(hash=False, compare=False)

    def leq(self, a: Obj, b: Obj) -> bool:
        return a == b or (a, b) in self.leq_pairs

    def below(self, a: Obj) -> list:
        return [x for x in self.objects if self.leq(x, a)]

    def meet(self, a: Obj, b: Obj) -> Obj:
        lower = [x for x in self.objects if self.leq(x, a) and self.leq(x, b)]
        tops = [x for x in lower if all(self.leq(y, x) for y in lower)]
        if len(tops) != 1:
            raise ValueError(f"no meet for {a!r} and {b!r}")
        return tops[0]

    @property
    def top(self) -> Obj:
        tops = [x for x in self.objects if all(self.leq(y, x) for y in self.objects)]
        if len(tops) != 1:
            raise ValueError("no top element")
        return tops[0]

    def covers(self, a: Obj) -> set:
        return self.coverage.get(a, set())

    def is_cover(self, a: Obj, S) -> bool:
        return frozenset(S) in self.covers(a)

    def to_json(self) -> dict:
        name = {x: str(x) for x in self.objects}
        return {"objects": [name[x] for x in self.objects],
                "order": sorted([name[a], name[b]] for a, b in self.leq_pairs),
                "coverage": {name[a]: sorted(sorted(name[x] for x in S) for S in self.covers(a))
                             for a in self.objects}}

    @classmethod
    def from_json(cls, data: dict) -> FiniteSite:
        objs = tuple(data["objects"])
        order = frozenset((a, b) for a, b in data["order"])
        cov = {a: {frozenset(S) for S in fams} for a, fams in data["coverage"].items()}
        return cls(objs, order, cov)


def poset(objects, leq: Callable[[Obj, Obj], bool]) -> frozenset:
    return frozenset((a, b) for a in objects for b in objects if a != b and leq(a, b))


def sierpinski(union_coverage: bool = True) -> FiniteSite:
    """Opens of the Sierpiński space: ∅ < {a} < X, with covers = families whose union is the open."""
    objs = ("0", "a", "X")
    rank = {"0": 0, "a": 1, "X": 2}
    order = poset(objs, lambda u, v: rank[u] <= rank[v])
    return FiniteSite(objs, order, _union_coverage(objs, order, rank))


def point_space() -> FiniteSite:
    """Opens of the one-point space: ∅ < {*}."""
    objs = ("0", "*")
    rank = {"0": 0, "*": 1}
    order = poset(objs, lambda u, v: rank[u] <= rank[v])
    return FiniteSite(objs, order, _union_coverage(objs, order, rank))


def _union_coverage(objs, order, rank) -> dict:
    """For a chain of opens, a family covers U iff its join is U (the empty join is ∅)."""
    site = FiniteSite(objs, order, {})
    bottom = min(objs, key=rank.get)
    cov = {}
    for U in objs:
        below = site.below(U)
        fams = set()
        for k in range(len(below) + 1):
            for S in itertools.combinations(below, k):
                join = max(S, key=rank.get) if S else bottom
                if join == U:
                    fams.add(frozenset(S))
        cov[U] = fams
    return cov


@dataclass(frozen=True)
class SiteMorphism:
    """A monotone U: A → M preserving meets, top and covers, with an optional left adjoint."""

    source: FiniteSite  # A
    target: FiniteSite  # M
    U: dict
    left: dict | None = None

    def __call__(self, a: Obj) -> Obj:
        return self.U[a]


def identity_morphism(site: FiniteSite) -> SiteMorphism:
    return SiteMorphism(site, site, {x: x for x in site.objects}, {x: x for x in site.objects})


def point_preimage() -> SiteMorphism:
    """Preimage along the map from Sierpiński space to the point: ∅ ↦ ∅, {*} ↦ X."""
    return SiteMorphism(point_space(), sierpinski(), {"0": "0", "*": "X"}, {"0": "0", "a": "*", "X": "*"})


def verify_site_morphism(u: SiteMorphism) -> list[str]:
    A, M = u.source, u.target
    bad = []
    for a, b in itertools.product(A.objects, repeat=2):
        if A.leq(a, b) and not M.leq(u(a), u(b)):
            bad.append(f"not monotone at {a!r} ≤ {b!r}")
        if u(A.meet(a, b)) != M.meet(u(a), u(b)):
            bad.append(f"meet of {a!r}, {b!r} not preserved")
    if u(A.top) != M.top:
        bad.append("top not preserved")
    for a in A.objects:
        for S in A.covers(a):
            if not M.is_cover(u(a), {u(x) for x in S}):
                bad.append(f"cover {sorted(map(str, S))} of {a!r} not preserved")
    if u.left is not None:
        for m, a in itertools.product(M.objects, A.objects):
            if A.leq(u.left[m], a) != M.leq(m, u(a)):
                bad.append(f"left adjoint fails at ({m!r}, {a!r})")
    return bad


@dataclass(frozen=True)
class CommaSite:
    site: FiniteSite
    Pi0: dict
    Pi1: dict
    iota: dict
    usite: SiteMorphism


def comma_site(u: SiteMorphism) -> CommaSite:
    """Objects (m, a) with m ≤ U(a); a family covers (m, a) iff both projections are covers."""
    A, M = u.source, u.target
    objs = tuple((m, a) for a in A.objects for m in M.objects if M.leq(m, u(a)))
    order = poset(objs, lambda x, y: M.leq(x[0], y[0]) and A.leq(x[1], y[1]))
    base = FiniteSite(objs, order, {})
    cov = {}
    for G in objs:
        below = base.below(G)
        fams = set()
        for k in range(len(below) + 1):
            for S in itertools.combinations(below, k):
                if M.is_cover(G[0], {x[0] for x in S}) and A.is_cover(G[1], {x[1] for x in S}):
                    fams.add(frozenset(S))
        cov[G] = fams
    site = FiniteSite(objs, order, cov)
    return CommaSite(site, {x: x[0] for x in objs}, {x: x[1] for x in objs},
                     {a: (u(a), a) for a in A.objects}, u)


def verify_site_axioms(site: FiniteSite) -> SuiteReport:
    """Isomorphism, stability and transitivity of the basis, exhaustively."""
    rep = SuiteReport("site-axioms")
    objs = site.objects
    for a, b in itertools.product(objs, repeat=2):
        try:
            site.meet(a, b)
        except ValueError as e:
            rep.fail(str(e))
    for a in objs:
        for S in site.covers(a):
            if any(not site.leq(x, a) for x in S):
                rep.fail(f"cover of {a!r} has a member not below it")
    for a in objs:
        rep.checked += 1
        if not site.is_cover(a, {a}):
            rep.fail(f"identity family does not cover {a!r}")
    for a in objs:
        for S in site.covers(a):
            for b in site.below(a):
                rep.checked += 1
                pulled = {site.meet(b, x) for x in S}
                if not site.is_cover(b, pulled):
                    rep.fail(f"stability fails: S={sorted(map(str, S))} of {a!r} pulled back to {b!r}")
    for a in objs:
        for S in site.covers(a):
            # all unions ⋃ T_x with T_x ∈ Cov(x), accumulated as a set of families
            unions = {frozenset()}
            for x in S:
                unions = {R | T for R in unions for T in site.covers(x)}
            for R in unions:
                rep.checked += 1
                if not site.is_cover(a, R):
                    rep.fail(f"transitivity fails over {sorted(map(str, S))} of {a!r}")
                    break
    return rep


def verify_comma_functors(cs: CommaSite) -> SuiteReport:
    """ι: A → comma and Π⁰: comma → M preserve meets, top and covers."""
    rep = SuiteReport("comma-site-functors")
    u, S = cs.usite, cs.site
    A, M = u.source, u.target
    rep.checked += 1
    for name, F, dom, cod in (("ι", cs.iota, A, S), ("Π⁰", cs.Pi0, S, M), ("Π¹", cs.Pi1, S, A)):
        mor = SiteMorphism(dom, cod, F)
        for msg in verify_site_morphism(mor):
            rep.fail(f"{name}: {msg}")
    return rep


def corrupt_stability(site: FiniteSite) -> tuple[FiniteSite, tuple]:
    """Drop one pulled-back cover so that stability must fail; returns the site and the victim."""
    for a in site.objects:
        for S in sorted(site.covers(a), key=lambda f: sorted(map(str, f))):
            for b in site.below(a):
                pulled = frozenset(site.meet(b, x) for x in S)
                if b != a and pulled != frozenset({b}) and site.is_cover(b, pulled):
                    cov = {k: set(v) for k, v in site.coverage.items()}
                    cov[b].discard(pulled)
                    return FiniteSite(site.objects, site.leq_pairs, cov), (S, a, b)
    raise ValueError("no removable pulled-back cover")


def site_suite() -> list[tuple[str, SuiteReport]]:
    """Every site check, including the negative control (which must fail)."""
    out = []
    sp = sierpinski()
    out.append(("sierpinski", verify_site_axioms(sp)))
    for name, u in (("identity", identity_morphism(sp)), ("point-preimage", point_preimage())):
        mor = SuiteReport(f"{name}: site morphism")
        mor.checked = 1
        mor.failures += verify_site_morphism(u)
        out.append((f"{name}: site morphism", mor))
        cs = comma_site(u)
        out.append((f"{name}: comma axioms", verify_site_axioms(cs.site)))
        out.append((f"{name}: ι, Π⁰, Π¹", verify_comma_functors(cs)))
    bad_site, (S, a, b) = corrupt_stability(sp)
    neg = verify_site_axioms(bad_site)
    control = SuiteReport("negative control")
    control.checked = 1
    if neg.ok:
        control.fail("corrupted coverage passed the stability check")
    out.append(("negative control", control))
    return out

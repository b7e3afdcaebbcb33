"""Seeded verification suites behind ``check`` and ``demo``.

Each sampled suite is a pair (make, check): ``make`` draws the inputs of one
case from a generator seeded by (run seed, case index), ``check`` returns
the failure messages for those inputs.  A failure records the case seed and
the serialized inputs, so it can be replayed either way.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import linalg as la
from . import monoidal as mon
from . import serialize as ser
from .adjunction import check_triangle_identities, make_adjunction
from .chain import (ChainComplex, ChainMap, ClassFlags, FactorKind, classify_map, direct_sum,
                    factorize_chain, solve_lift_chain)
from .comma import (PAIRS, CommaCategory, CommaMorphism, StructureId, check_functor_identities,
                    verify_adjunction)
from .exact import abelian_case_check, abelian_case_inputs, site_suite
from .factor import (LiftingProblem, check_class_equalities, check_factorization,
                     factorize_right_direct, factorize_traced, lift_comma)
from .generate import Bounds, Generator
from .homotopy import LEFT_VARIANTS, RIGHT_VARIANTS, fibrant_pool, verify_main_theorem

S = StructureId
CTF = FactorKind.CofThenTrivFib
TCF = FactorKind.TrivCofThenFib

_MIX = 0x9E3779B97F4A7C15


def case_seed(seed: int, case: int) -> int:
    """Per-case seed; a pure function of (seed, case) so single cases replay in isolation."""
    return (seed * _MIX + case * 0xBF58476D1CE4E5B9 + 1) % (1 << 64)


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    cases: int = 50
    p: int = 2
    max_dim: int = 2
    window: int = 3
    adjunction: str = "identity"
    structure: str | None = None
    hom_object: str = "disk:1"

    @property
    def bounds(self) -> Bounds:
        return Bounds(max_dim=self.max_dim, window=self.window)

    def adjunction_instance(self):
        return make_adjunction(self.adjunction, self.p, parse_hom_object(self.hom_object, self.p))

    def comma(self) -> CommaCategory:
        return CommaCategory(self.adjunction_instance())

    def generator(self, case: int) -> Generator:
        return Generator(case_seed(self.seed, case), self.p, self.bounds)

    def structures(self, default=tuple(S)) -> tuple[StructureId, ...]:
        return (S.parse(self.structure),) if self.structure else tuple(default)


def parse_hom_object(text: str, p: int):
    """``disk:n`` or ``sphere:n``: the complex P of the Hom(P, −) ⊣ −⊗P instance."""
    from .chain import disk, sphere
    try:
        shape, n = text.split(":")
        return {"disk": disk, "sphere": sphere}[shape](p, int(n))
    except (ValueError, KeyError) as e:
        raise ValueError(f"hom object must look like disk:1 or sphere:0, got {text!r}") from e


@dataclass
class CaseFailure:
    case: int
    seed: int
    messages: list
    inputs: dict

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self, timing: bool = False) -> dict:
        out = {"suite": self.name, "status": "pass" if self.ok else "fail", "checked": self.checked,
               "failures": [f.as_dict() if isinstance(f, CaseFailure) else f for f in self.failures],
               "details": self.details}
        if timing:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


@dataclass(frozen=True)
class SampledSuite:
    name: str
    make: Callable  # (C, gen, config) -> dict of inputs
    check: Callable  # (C, inputs, config) -> list[str]
    lax_only: bool = False


def _serialize_inputs(inputs: dict) -> dict:
    out = {}
    for k, v in inputs.items():
        try:
            out[k] = ser.to_json(v)
        except TypeError:
            out[k] = repr(v)
    return out


def run_case(suite: SampledSuite, config: RunConfig, case: int, C: CommaCategory | None = None):
    C = C or config.comma()
    inputs = suite.make(C, config.generator(case), config)
    return inputs, suite.check(C, inputs, config)


def run_sampled(suite: SampledSuite, config: RunConfig) -> SuiteResult:
    C = config.comma()
    if suite.lax_only and not getattr(C.adj, "lax", False):
        raise mon.UnsupportedInstance(f"suite {suite.name} needs a lax monoidal instance")
    res = SuiteResult(suite.name)
    t = time.perf_counter()
    for case in range(config.cases):
        inputs, msgs = run_case(suite, config, case, C)
        res.checked += 1
        if msgs:
            res.failures.append(CaseFailure(case, case_seed(config.seed, case), msgs, _serialize_inputs(inputs)))
    res.elapsed = time.perf_counter() - t
    return res


def replay_from_inputs(suite: SampledSuite, config: RunConfig, payload: dict) -> list[str]:
    C = config.comma()
    inputs = {k: ser.from_json(v, C) for k, v in payload.items()}
    return suite.check(C, inputs, config)


# ------------------------------------------------------------ backend axioms


def _axioms_make(C, gen: Generator, config):
    f = gen.any_chain_map()
    g = gen.chain_map(f.target, gen.complex())
    h = gen.any_chain_map()
    return {"f": f, "g": g, "h": h}


def backend_axiom_failures(f: ChainMap, g: ChainMap, h: ChainMap) -> list[str]:
    bad = []
    for kind in (CTF, TCF):
        l, r = factorize_chain(f, kind)
        if r @ l != f:
            bad.append(f"{kind.value}: r∘l ≠ f")
        cl, cr = classify_map(l), classify_map(r)
        ok = (cl.is_cof and cr.is_trivial_fib) if kind is CTF else (cl.is_trivial_cof and cr.is_fib)
        if not ok:
            bad.append(f"{kind.value}: factors not in the advertised classes")
    # 3-for-2 on the composable pair (f, g)
    w = [classify_map(x).is_we for x in (f, g, g @ f)]
    if sum(w) == 2:
        bad.append("3-for-2 fails for (f, g)")
    # f is a retract of f ⊕ h; every class is closed under retracts
    big, i, r = _sum_retract(f, h)
    fb, ff = classify_map(big), classify_map(f)
    for name in ("is_cof", "is_fib", "is_we"):
        if getattr(fb, name) and not getattr(ff, name):
            bad.append(f"retract closure fails for {name[3:]}")
    # lifting: cof against trivial fibration, trivial cof against fibration
    for kind in (CTF, TCF):
        l, r = factorize_chain(f, kind)
        l2, r2 = factorize_chain(g @ f, kind)
        top, bottom = l2, g @ r
        s = solve_lift_chain(l, r2, top, bottom)
        if s is None or s @ l != top or r2 @ s != bottom:
            bad.append(f"lifting axiom fails ({kind.value})")
    return bad


def _sum_retract(f: ChainMap, h: ChainMap):
    S0, inj0, proj0 = direct_sum(f.source, h.source)
    S1, inj1, proj1 = direct_sum(f.target, h.target)
    big = inj1[0] @ f @ proj0[0] + inj1[1] @ h @ proj0[1]
    if not (proj1[0] @ big @ inj0[0] == f):
        raise AssertionError("retract diagram does not compose")
    return big, (inj0[0], inj1[0]), (proj0[0], proj1[0])


AXIOMS = SampledSuite("axioms", _axioms_make, lambda C, x, cfg: backend_axiom_failures(x["f"], x["g"], x["h"]))


# ---------------------------------------------------- comma classification


def _degree_window(*cs: ChainComplex) -> range:
    nz = [X for X in cs if X.dims]
    if not nz:
        return range(0)
    return range(min(X.lo for X in nz), max(X.hi for X in nz) + 1)


def pullback_corner_formula(C: CommaCategory, s: CommaMorphism) -> ChainMap:
    """δ: F⁰ → U(F¹) ×_{U(G¹)} G⁰ with the pullback cut out as ker [U(σ¹) | −π_G] degree-wise."""
    p = C.p
    UF1, G0, F0 = C.U(s.source.F1), s.target.F0, s.source.F0
    Us1, piG, piF = C.U(s.sigma1), s.target.pi, s.source.pi
    degs = _degree_window(UF1, G0, F0)
    K, dims = {}, []
    for n in degs:
        h = la.hstack([Us1.comp(n), -piG.comp(n)], p, Us1.target.dim(n))
        K[n] = la.kernel_basis(h)
        dims.append(K[n].cols)
    lo = degs.start if degs else 0
    d = {}
    for n in degs:
        if n - 1 in K:
            dS = la.direct_sum(UF1.d(n), G0.d(n))
            d[n] = la.solve(K[n - 1], dS @ K[n])
    Q = ChainComplex.build(p, lo, dims, d)
    comps = {}
    for n in degs:
        stacked = la.vstack([piF.comp(n), s.sigma0.comp(n)], p, F0.dim(n))
        comps[n] = la.solve(K[n], stacked)
    return ChainMap.build(F0, Q, comps)


def pushout_corner_formula(C: CommaCategory, s: CommaMorphism) -> ChainMap:
    """ζ: F¹ ∪ F(G⁰) → G¹ with the pushout cut out as a cokernel of [φ⁻¹π_F ; −F(σ⁰)] degree-wise."""
    p, adj = C.p, C.adj
    F1, FG0, G1 = s.source.F1, C.F(s.target.F0), s.target.F1
    a = adj.phi_inv(s.source.pi, F1)
    b = C.F(s.sigma0)
    c = adj.phi_inv(s.target.pi, G1)
    degs = _degree_window(F1, FG0, G1, a.source)
    Q, dims = {}, []
    for n in degs:
        k = la.vstack([a.comp(n), -b.comp(n)], p, a.source.dim(n))
        Q[n] = la.cokernel_map(k) if k.rows else la.Matrix.zeros(p, 0, 0)
        dims.append(Q[n].rows)
    lo = degs.start if degs else 0
    d = {}
    for n in degs:
        if n - 1 in Q:
            dS = la.direct_sum(F1.d(n), FG0.d(n))
            # d_R Q_n = Q_{n-1} d_S, solved as Q_nᵀ d_Rᵀ = (Q_{n-1} d_S)ᵀ
            d[n] = la.solve(Q[n].T, (Q[n - 1] @ dS).T).T
    R = ChainComplex.build(p, lo, dims, d)
    comps = {}
    for n in degs:
        B = la.hstack([s.sigma1.comp(n), c.comp(n)], p, G1.dim(n))
        comps[n] = la.solve(Q[n].T, B.T).T
    return ChainMap.build(R, G1, comps)


def classify_by_formula(C: CommaCategory, s: CommaMorphism, structure: StructureId) -> ClassFlags:
    """The class table evaluated on formula corners instead of limit-cone corners."""
    c0, c1 = classify_map(s.sigma0), classify_map(s.sigma1)
    dl = classify_map(pullback_corner_formula(C, s))
    zt = classify_map(pushout_corner_formula(C, s))
    d_iso = dl.is_cof and dl.is_fib
    z_iso = zt.is_cof and zt.is_fib
    table = {
        S.Inj: (c0.is_cof and c1.is_cof, c1.is_fib and dl.is_fib, c0.is_we and c1.is_we),
        S.Proj: (c0.is_cof and zt.is_cof, c0.is_fib and c1.is_fib, c0.is_we and c1.is_we),
        S.LInj: (c0.is_cof and c1.is_cof, c1.is_fib and dl.is_trivial_fib, c1.is_we),
        S.LProj: (c0.is_cof and zt.is_cof, c0.is_fib and c1.is_fib and dl.is_we, c1.is_we),
        S.RInj: (c0.is_cof and c1.is_cof and zt.is_we, c1.is_fib and dl.is_fib, c0.is_we),
        S.RProj: (c0.is_cof and zt.is_trivial_cof, c0.is_fib and c1.is_fib, c0.is_we),
        S.Strong0: (c0.is_cof and z_iso, c0.is_fib, c0.is_we),
        S.Strong1: (c1.is_cof, c1.is_fib and d_iso, c1.is_we),
    }
    cof, fib, we = table[structure]
    return ClassFlags(cof, fib, we)


def classification_failures(C: CommaCategory, s: CommaMorphism, structures=tuple(S)) -> list[str]:
    bad = []
    D = C.dual
    ds = C.to_dual(s)
    for st in structures:
        direct = C.classify(s, st)
        if direct != classify_by_formula(C, s, st):
            bad.append(f"{st.name}: cone corners and formula corners disagree")
        if direct != D.classify(ds, st.dual).swapped():
            bad.append(f"{st.name}: direct and dual classification disagree")
    return bad


CLASSIFY = SampledSuite(
    "classify",
    lambda C, gen, cfg: {"sigma": gen.comma_morphism(C)},
    lambda C, x, cfg: classification_failures(C, x["sigma"], cfg.structures()))


# ----------------------------------------------------------- factorization


def factorization_failures(C: CommaCategory, s: CommaMorphism, structures=tuple(S)) -> list[str]:
    bad = []
    for st in structures:
        for kind in (CTF, TCF):
            fac = factorize_traced(C, s, st, kind)
            bad += [f"{st.name}/{kind.value}: {m}" for m in check_factorization(C, s, fac.l, fac.r, st, kind)]
            if st is S.LProj and kind is TCF and not C.M.classify(fac.trace["tau"]).is_we:
                bad.append("LProj/TCF: corner map τ is not a weak equivalence")
            if st.is_right:
                direct = factorize_right_direct(C, s, st, kind)
                if direct is not None:
                    bad += [f"{st.name}/{kind.value} direct: {m}"
                            for m in check_factorization(C, s, *direct, st, kind)]
    return bad


FACTORIZE = SampledSuite(
    "factorize",
    lambda C, gen, cfg: {"sigma": gen.comma_morphism(C, modes=(0, 1, 3))},
    lambda C, x, cfg: factorization_failures(C, x["sigma"], cfg.structures()))


# ----------------------------------------------------------------- lifting


def _lifting_make(C, gen: Generator, cfg):
    st = S.parse(cfg.structure) if cfg.structure else S.LInj
    kind = TCF if st is S.LInj else gen.rng.choice([CTF, TCF])
    prob = gen.lifting_problem(C, st, kind)
    return {"sigma": prob.sigma, "beta": prob.beta, "top": prob.top, "bottom": prob.bottom}


def lifting_failures(C: CommaCategory, x: dict, structure: StructureId, method: str = "auto") -> list[str]:
    prob = LiftingProblem(x["sigma"], x["beta"], x["top"], x["bottom"])
    try:
        s = lift_comma(C, prob, structure, method)
    except AssertionError as e:
        return [str(e)]
    if s is None:
        return [f"{structure.name}: no lift found by the {method} solver"]
    if not prob.is_solution(s):
        return ["lift does not satisfy both triangles"]
    return []


def _lifting_check(C, x, cfg):
    st = S.parse(cfg.structure) if cfg.structure else S.LInj
    method = "structural" if st in (S.LInj, S.Strong0, S.RProj, S.Strong1) else "linear"
    return lifting_failures(C, x, st, method)


LIFT = SampledSuite("lift", _lifting_make, _lifting_check)


# --------------------------------------------------------- class equalities


def _class_eq_check(C, x, cfg):
    rep = check_class_equalities(C, [x["sigma"]])
    return [name for name, _ in rep.failures]


CLASS_EQUALITIES = SampledSuite(
    "class-equalities",
    lambda C, gen, cfg: {"sigma": gen.comma_morphism(C)},
    _class_eq_check)


# ------------------------------------------------------------- adjunctions


def _adj_make(C, gen: Generator, cfg):
    return {"P": gen.complex(), "X": gen.comma_object(C), "m": gen.complex()}


def adjunction_failures(C: CommaCategory, P, X, m, seed: int = 0) -> list[str]:
    import random
    rng = random.Random(seed)
    samples = {"Pi1-iota": (X, P), "L1-Pi1": (P, X), "Pi0-R0": (X, m), "Fplus-Pi0": (m, X)}
    bad = []
    for pair in PAIRS:
        bad += verify_adjunction(C, pair, [samples[pair]], rng).failures
    bad += check_functor_identities(C, [P], [m])
    bad += check_triangle_identities(C.adj, [m], [P])
    return bad


ADJUNCTIONS = SampledSuite(
    "adjunctions", _adj_make,
    lambda C, x, cfg: adjunction_failures(C, x["P"], x["X"], x["m"]))


# ---------------------------------------------------------------- monoidal


def _monoidal_make(C, gen: Generator, cfg):
    from .factor import factorize_comma
    st = gen.rng.choice([S.Inj, S.LInj])
    cof = []
    for _ in range(2):
        s = gen.comma_morphism(C, modes=(0, 1, 3))
        cof.append(factorize_comma(C, s, st, gen.rng.choice([CTF, TCF]))[0])
    small = Generator(gen.rng.randrange(1 << 32), C.p, Bounds(max_dim=1, window=2))
    return {"s": cof[0], "t": cof[1], "u": gen.comma_morphism(C, modes=(0, 1, 3)),
            "v": gen.comma_morphism(C, modes=(0, 1, 3)),
            "E": small.comma_object(C), "F": small.comma_object(C), "G": small.comma_object(C)}


def monoidal_failures(C: CommaCategory, x: dict) -> list[str]:
    E, F, G = x["E"], x["F"], x["G"]
    reps = [mon.pushout_product_suite(C, [(x["s"], x["t"]), (x["u"], x["v"]), (x["s"], x["v"])]),
            mon.coherence_checks(C, [(E, F, G)]),
            mon.hom_tensor_bijection(C, [(E, F, G)]),
            mon.monoidal_functor_checks(C, [(E.F0, F.F1)], [(E, F)]),
            mon.unit_axiom_suite(C, [E, F, x["s"].target]),
            mon.sign_regression(C.p, [E.F0, F.F1, G.F0])]
    return [f"{r.name}: {m}" for r in reps for m in r.failures]


MONOIDAL = SampledSuite("monoidal", _monoidal_make, lambda C, x, cfg: monoidal_failures(C, x), lax_only=True)


# ---------------------------------------------------------------- abelian


ABELIAN = SampledSuite("abelian", lambda C, gen, cfg: abelian_case_inputs(C, gen),
                       lambda C, x, cfg: abelian_case_check(C, x))


# ------------------------------------------------------ unsampled suites


def run_sites(config: RunConfig) -> SuiteResult:
    t = time.perf_counter()
    res = SuiteResult("sites")
    for name, rep in site_suite():
        res.checked += rep.checked
        res.details[name] = {"ok": rep.ok, "checked": rep.checked}
        res.failures += [f"{name}: {m}" for m in rep.failures]
    res.elapsed = time.perf_counter() - t
    return res


def run_main_theorem(config: RunConfig, variants=None) -> SuiteResult:
    t = time.perf_counter()
    adj = config.adjunction_instance()
    variants = variants or config.structures(LEFT_VARIANTS + RIGHT_VARIANTS)
    res = SuiteResult("main-theorem")
    for v in variants:
        rep = verify_main_theorem(adj, v, seed=config.seed, bounds=config.bounds)
        res.checked += 1
        res.details[v.name] = rep.as_dict()
        if not rep.ok:
            res.failures.append({"variant": v.name, "seed": config.seed,
                                 "checks": {k: c for k, c in rep.checks.items() if not c["ok"]}})
    res.elapsed = time.perf_counter() - t
    return res


def quillen_segal_failures(C: CommaCategory, gen: Generator, n: int) -> tuple[int, list[str]]:
    """LInj-fibrant objects have π a trivial fibration; LProj-fibrant ones have π a we."""
    bad, count = [], 0
    for st, need in ((S.LInj, "tfib"), (S.LProj, "we")):
        for F in fibrant_pool(C, st, gen, n):
            count += 1
            if not C.is_fibrant(F, st):
                bad.append(f"{st.name}: constructed object is not fibrant")
            c = C.M.classify(F.pi)
            if not (c.is_trivial_fib if need == "tfib" else c.is_we):
                bad.append(f"{st.name}: fibrant object with π not a {need}")
    return count, bad


def run_quillen_segal(config: RunConfig) -> SuiteResult:
    t = time.perf_counter()
    C = config.comma()
    count, bad = quillen_segal_failures(C, Generator(config.seed, config.p, config.bounds), config.cases)
    res = SuiteResult("quillen-segal", count, [{"seed": config.seed, "message": m} for m in bad])
    res.elapsed = time.perf_counter() - t
    return res


SAMPLED = {s.name: s for s in (AXIOMS, CLASSIFY, FACTORIZE, LIFT, CLASS_EQUALITIES, ADJUNCTIONS, MONOIDAL, ABELIAN)}
UNSAMPLED = {"sites": run_sites, "main-theorem": run_main_theorem, "quillen-segal": run_quillen_segal}
SUITES = tuple(SAMPLED) + tuple(UNSAMPLED)


def run_suite(name: str, config: RunConfig) -> SuiteResult:
    if name in SAMPLED:
        return run_sampled(SAMPLED[name], config)
    if name in UNSAMPLED:
        return UNSAMPLED[name](config)
    raise ValueError(f"unknown suite: {name!r} (choose from {', '.join(SUITES)})")

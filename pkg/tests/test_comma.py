import itertools
import random

import pytest
from hypothesis import given

import oracles
from commamodel import chain as ch
from commamodel.adjunction import HomTensorAdjunction, IdentityAdjunction
from commamodel.chain import ChainMap, Shape, disk, identity, sphere
from commamodel.checks import classification_failures, classify_by_formula
from commamodel.comma import (PAIRS, AdjunctionSquare, CommaCategory, CommaObject, StructureId, check_functor_identities,
                              ehk, ehk_left, ehk_transpose, verify_adjunction)
from commamodel.generate import Bounds, Generator
from strategies import primes, seeds

S = StructureId
P = 2
C = CommaCategory(IdentityAdjunction(P))
S0, S1, D1 = sphere(P, 0), sphere(P, 1), disk(P, 1)
q = ChainMap.build(D1, S1, {1: [[1]]})
Fq = C.obj(D1, S1, q)


def flagset(c):
    return {k for k, v in c.as_dict().items() if v}


def instances():
    yield CommaCategory(IdentityAdjunction(2))
    yield CommaCategory(IdentityAdjunction(3))
    yield CommaCategory(HomTensorAdjunction(disk(2, 1)))
    yield CommaCategory(HomTensorAdjunction(sphere(3, 1)))


INSTANCES = list(instances())


# ---------------------------------------------------------------- functors


def test_functor_examples():
    assert C.iota(S0) == CommaObject(S0, S0, identity(S0))
    z = C.L1(S0)
    assert z.F0.is_zero() and z.F1 == S0 and z.pi.is_zero()
    assert C.Fplus(S0) == CommaObject(S0, S0, identity(S0))
    assert C.Pi0(Fq) == D1
    assert C.Pi0(C.iota(S0)) == S0
    assert check_functor_identities(C, [S0, S1, D1], [S0, D1]) == []


def test_terminal_and_limits():
    T = C.terminal().apex
    assert T.F0.is_zero() and T.F1.is_zero()
    prod = C.limit(Shape.Product, (C.iota(S0), C.iota(S1))).apex
    assert prod.F0.dims == (1, 1) and prod.F1.dims == (1, 1)
    assert ch.is_iso(prod.pi) and prod.pi == identity(prod.F0)
    zero_in = C.iota(ch.from_zero(S0))
    po = C.colimit(Shape.Pushout, (zero_in, zero_in)).apex
    assert po.F0.dims == (2,) and po.F1.dims == (2,) and po.pi == identity(po.F0)


def test_adjunction_examples():
    rep = verify_adjunction(C, "Pi1-iota", [(C.iota(S0), S0)])
    assert rep.ok and rep.exhaustive == 1
    assert len(list(C.hom_elements(C.iota(S0), C.iota(S0)))) == 2
    rep = verify_adjunction(C, "L1-Pi1", [(S1, Fq)])
    assert rep.ok
    assert len(list(C.hom_elements(C.L1(S1), Fq))) == 2


# ---------------------------------------------------------- classification


def test_identity_in_every_structure():
    s = C.identity(C.iota(S0))
    for st in S:
        assert flagset(C.classify(s, st)) == {"cof", "fib", "we"}


def test_q_id_example():
    s = C.mor(Fq, C.iota(S1), q, identity(S1))
    assert C.classify(s, S.Inj).is_fib          # corner is q, a fibration
    assert not C.classify(s, S.LInj).is_fib     # q is not a trivial fibration
    assert C.classify(s, S.LProj).is_we         # σ¹ = id
    assert not C.classify(s, S.RInj).is_we      # σ⁰ = q
    assert not C.classify(s, S.Inj).is_we and C.classify(s, S.LInj).is_we


def test_iota_of_cone_inclusion():
    s = C.iota(ch.from_zero(D1))
    assert {"cof", "we"} <= flagset(C.classify(s, S.LInj))


def test_quillen_segal_examples():
    assert C.is_quillen_segal(C.iota(D1))
    assert not C.is_quillen_segal(Fq)
    assert C.is_fibrant(Fq, S.Inj)
    assert not C.is_fibrant(Fq, S.LInj)
    # the trivial-fibration leg of a factorization of q is a we
    m, r = ch.factorize_chain(q, ch.FactorKind.CofThenTrivFib)
    assert C.is_quillen_segal(C.obj(m.target, S1, r))


def test_classify_dual_roundtrip():
    s = C.mor(Fq, C.iota(S1), q, identity(S1))
    assert C.from_dual(C.to_dual(s)) == s
    for st in S:
        assert C.dual.classify(C.to_dual(s), st.dual).swapped() == C.classify(s, st)


# ---------------------------------------------------------------- iso lift


def test_iso_lift_examples():
    X = C.iota(S0)
    G, s = C.iso_lift(X, identity(S0))
    assert G == X and s == C.identity(X)
    C3 = CommaCategory(IdentityAdjunction(3))
    X3 = C3.iota(sphere(3, 0))
    two = ch.scalar_map(sphere(3, 0), 2)
    G, s = C3.iso_lift(X3, two)
    assert G.pi == two and s.sigma0 == two and s.sigma1 == identity(sphere(3, 0))
    with pytest.raises(ValueError):
        C.iso_lift(X, ch.zero_map(S0, S0))


@given(seeds)
def test_iso_lift_projects(seed):
    for Ci in INSTANCES:
        g = Generator(seed, Ci.p, Bounds(max_dim=2, window=2))
        F = g.comma_object(Ci)
        u = g.chain_iso(F.F0)
        G, s = Ci.iso_lift(F, u)
        assert Ci.Pi0(s) == u and Ci.is_iso(s) and Ci.commutes(s)


# ---------------------------------------------------------------- E(H, K)


def test_ehk_identity_square():
    idj = IdentityAdjunction(P)
    sq = AdjunctionSquare(idj, idj, idj, idj)
    s = C.mor(Fq, C.iota(S1), q, identity(S1))
    assert ehk(sq, Fq) == Fq and ehk(sq, s) == s
    assert ehk_left(sq, Fq) == Fq


@given(seeds)
def test_ehk_hom_square(seed):
    # Hom(P, −) on the A side, identity on M: U'H = Hom(P, −) = KU
    Pc = disk(P, 1)
    src, idj = HomTensorAdjunction(Pc), IdentityAdjunction(P)
    sq = AdjunctionSquare(src, idj, src, idj)
    Cs, Ct = CommaCategory(src), CommaCategory(idj)
    g = Generator(seed, P, Bounds(max_dim=1, window=2))
    F = g.comma_object(Cs)
    X = g.comma_object(Ct)
    s = g.comma_morphism(Cs, modes=(0,))
    assert Ct.commutes(ehk(sq, s))
    left = list(Cs.hom_elements(ehk_left(sq, X), F)) if Cs.hom_dim(ehk_left(sq, X), F) <= 10 else None
    if left is None:
        return
    right = list(Ct.hom_elements(X, ehk(sq, F)))
    assert len(left) == len(right)
    assert len({ehk_transpose(sq, t, X) for t in left}) == len(right)


# ------------------------------------------------------------- properties


@given(seeds)
def test_classification_paths_agree(seed):
    for Ci in INSTANCES:
        g = Generator(seed, Ci.p, Bounds(max_dim=2, window=2))
        s = g.comma_morphism(Ci)
        assert Ci.commutes(s)
        assert classification_failures(Ci, s) == []


@given(seeds, primes)
def test_level_classes_match_oracle(seed, p):
    Ci = CommaCategory(IdentityAdjunction(p))
    s = Generator(seed, p).comma_morphism(Ci)
    i0, s0, w0 = oracles.flags(s.sigma0)
    i1, s1, w1 = oracles.flags(s.sigma1)
    inj = Ci.classify(s, S.Inj)
    assert (inj.is_cof, inj.is_we) == (i0 and i1, w0 and w1)
    assert Ci.classify(s, S.LInj).is_we == w1
    assert Ci.classify(s, S.RInj).is_we == w0
    assert Ci.classify(s, S.Proj).is_fib == (s0 and s1)


@given(seeds)
def test_formula_route(seed):
    Ci = INSTANCES[seed % len(INSTANCES)]
    s = Generator(seed, Ci.p).comma_morphism(Ci)
    for st in S:
        assert classify_by_formula(Ci, s, st) == Ci.classify(s, st)


@given(seeds)
def test_hom_basis_is_exact(seed):
    Ci = INSTANCES[seed % 2]
    g = Generator(seed, Ci.p, Bounds(max_dim=1, window=2))
    X, Y = g.comma_object(Ci), g.comma_object(Ci)
    basis = Ci.hom_basis(X, Y)
    for b in basis:
        assert Ci.commutes(b)
    # brute force over pairs of chain maps
    try:
        n0 = oracles.count_chain_maps(X.F0, Y.F0, 256)
        n1 = oracles.count_chain_maps(X.F1, Y.F1, 256)
    except ValueError:
        return
    pairs = 0
    for f0 in ch_all(X.F0, Y.F0):
        for f1 in ch_all(X.F1, Y.F1):
            pairs += Y.pi @ f0 == Ci.U(f1) @ X.pi
    assert n0 * n1 >= pairs == Ci.p ** len(basis)


def ch_all(X, Y):
    b = ch.hom_basis(X, Y)
    for cs in itertools.product(range(X.p), repeat=len(b)):
        yield ch.combine(cs, b, X, Y)


@given(seeds)
def test_adjunctions_exhaustive(seed):
    for Ci in INSTANCES[:3]:
        g = Generator(seed, Ci.p, Bounds(max_dim=2, window=2))
        Pm, X, m = g.complex(), g.comma_object(Ci), g.complex()
        samples = {"Pi1-iota": (X, Pm), "L1-Pi1": (Pm, X), "Pi0-R0": (X, m), "Fplus-Pi0": (m, X)}
        for pair in PAIRS:
            rep = verify_adjunction(Ci, pair, [samples[pair]], random.Random(seed))
            assert rep.ok, rep.failures
        assert check_functor_identities(Ci, [Pm], [m]) == []

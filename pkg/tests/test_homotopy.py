import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commamodel import chain as ch
from commamodel.adjunction import HomTensorAdjunction, IdentityAdjunction
from commamodel.chain import disk
from commamodel.checks import quillen_segal_failures
from commamodel.comma import CommaCategory, StructureId
from commamodel.generate import Bounds, Generator
from commamodel.homotopy import (LEFT_VARIANTS, RIGHT_VARIANTS, TwoMorphism, fibrant_pool, harness, htpy_lift,
                                 identity_functor, is_right_homotopy, verify_main_theorem, verify_weak_retraction,
                                 verify_weak_section, vertical, whisker_left)
from strategies import seeds

S = StructureId
C = CommaCategory(IdentityAdjunction(2))
SMALL = Bounds(max_dim=2, window=2)


def pool(st_, n=8, seed=0, Ci=C):
    return fibrant_pool(Ci, st_, Generator(seed, Ci.p, SMALL), n)


def test_identity_transformation_is_homotopy():
    h = harness(C, S.LInj)
    Id = identity_functor(h.X)
    tau = TwoMorphism(Id, Id, C.identity)
    assert is_right_homotopy(tau, pool(S.LInj)) == (True, None)


def test_eta_iota_on_linj_fibrant():
    h = harness(C, S.LInj)
    fib = pool(S.LInj)
    assert is_right_homotopy(h.eta_iota, fib)[0]
    for F in fib:
        assert C.M.classify(F.pi).is_trivial_fib


def test_eta_r0_on_rinj_fibrant():
    h = harness(C, S.RInj)
    assert is_right_homotopy(h.eta_R0, pool(S.RInj))[0]


def test_non_fibrant_sample_rejected():
    h = harness(C, S.LInj)
    S1 = ch.sphere(2, 1)
    D1 = disk(2, 1)
    Fq = C.obj(D1, S1, ch.ChainMap.build(D1, S1, {1: [[1]]}))
    with pytest.raises(ValueError):
        is_right_homotopy(h.eta_iota, [Fq])


def test_retraction_and_section():
    g = Generator(4, 2, SMALL)
    objs = [g.complex() for _ in range(5)]
    maps = [g.any_chain_map() for _ in range(5)]
    h = harness(C, S.LInj)
    rep = verify_weak_retraction(h.iota, h.Pi1, h.eta_iota, objs, maps, pool(S.LInj), relative=True)
    assert rep.ok, rep.checks
    h = harness(C, S.RInj)
    rep = verify_weak_section(h.Pi0, h.R0, h.eta_R0, objs, maps, pool(S.RInj), corelative=True)
    assert rep.ok, rep.checks


def test_degenerate_retraction():
    h = harness(C, S.LInj)
    Id = identity_functor(h.X)
    tau = TwoMorphism(Id, Id, C.identity)
    objs = pool(S.LInj, 4)
    rep = verify_weak_retraction(Id, Id, tau, objs, [C.identity(X) for X in objs], objs)
    assert rep.ok


def test_identity_square_lift():
    h = harness(C, S.LInj)
    Id = identity_functor(h.X)
    tau = TwoMorphism(Id, Id, C.identity)
    objs = pool(S.LInj, 4)
    out = htpy_lift(Id, Id, Id, Id, retraction=(Id, tau), samples_C=objs, samples_D=objs, fibrant_D=objs)
    assert out.report.ok
    assert all(out.T(X) == X and out.h(X) == C.identity(X) for X in objs)


def test_case_two_with_section():
    # G = Id_A, K = Π⁰ with section R⁰; Φ⁰ = ι, Φ¹ = U
    h = harness(C, S.RInj)
    IdA = identity_functor(h.A)
    U = h.iota.then(h.Pi0)
    g = Generator(9, 2, SMALL)
    objs = [g.complex() for _ in range(4)]
    out = htpy_lift(IdA, h.Pi0, h.iota, U, section=(h.R0, h.eta_R0),
                    samples_C=objs, samples_D=objs, fibrant_C=objs)
    assert out.report.ok, out.report.checks
    assert all(h.Pi0(out.T(x)) == U(x) for x in objs)


def test_whiskering_and_vertical():
    h = harness(C, S.LInj)
    fib = pool(S.LInj, 4)
    w = whisker_left(h.Pi1, h.eta_iota)
    for F in fib:
        assert w(F) == C.A.identity(F.F1)
    v = vertical(h.eta_iota, TwoMorphism(h.eta_iota.source, h.eta_iota.source, C.identity))
    assert all(v(F) == h.eta_iota(F) for F in fib)


@pytest.mark.parametrize("variant", LEFT_VARIANTS + RIGHT_VARIANTS, ids=lambda v: v.name)
@pytest.mark.parametrize("adj", [IdentityAdjunction(2), HomTensorAdjunction(disk(2, 1))], ids=["identity", "hom-D1"])
def test_main_theorem_variants(adj, variant):
    rep = verify_main_theorem(adj, variant, seed=3, bounds=SMALL)
    failed = {k: v for k, v in rep.checks.items() if not v["ok"]}
    assert rep.ok, failed
    assert "3-for-2 and retracts" in rep.checks


def test_rejects_non_localized_variant():
    with pytest.raises(ValueError):
        verify_main_theorem(IdentityAdjunction(2), S.Inj)


@settings(max_examples=10)
@given(seeds, st.sampled_from([2, 3]))
def test_quillen_segal_on_constructed_fibrants(seed, p):
    Ci = CommaCategory(IdentityAdjunction(p))
    count, bad = quillen_segal_failures(Ci, Generator(seed, p, SMALL), 5)
    assert count == 10 and bad == []


@settings(max_examples=10)
@given(seeds)
def test_fibrant_pool_is_fibrant(seed):
    for st_ in LEFT_VARIANTS + RIGHT_VARIANTS:
        for F in pool(st_, 3, seed):
            assert C.is_fibrant(F, st_)

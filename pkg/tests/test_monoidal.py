import pytest
from hypothesis import given

from commamodel import chain as ch
from commamodel import monoidal as mon
from commamodel.adjunction import HomTensorAdjunction
from commamodel.chain import ChainMap, FactorKind, disk, identity, sphere
from commamodel.checks import RunConfig, monoidal_failures
from commamodel.checks import _monoidal_make as make_monoidal_inputs
from commamodel.comma import CommaCategory, StructureId
from commamodel.factor import factorize_comma
from commamodel.generate import Bounds, Generator
from strategies import primes, seeds

S = StructureId
P = 2
C = mon.arrow_category(P)
S0, S1, D1 = sphere(P, 0), sphere(P, 1), disk(P, 1)
q = ChainMap.build(D1, S1, {1: [[1]]})
Fq = C.obj(D1, S1, q)
I = C.iota(S0)


def test_unit_and_unit_tensor():
    assert mon.unit_comma(C) == I
    assert mon.tensor_comma(C, I, I) == I


def test_unit_law_on_q_object():
    X = mon.tensor_comma(C, Fq, I)
    assert X == Fq
    r = mon.right_unitor(C, Fq)
    assert C.is_iso(r) and C.commutes(r)


def test_iota_laxity_is_identity():
    # ι(a)⊗ι(b) = ι(a⊗b) on the nose, so the laxity map is [id, id]
    assert mon.tensor_comma(C, C.iota(S0), C.iota(S0)) == C.iota(S0)
    rep = mon.monoidal_functor_checks(C, [(S0, S0), (S1, D1)], [(I, Fq)])
    assert rep.ok, rep.failures


def test_internal_hom_examples():
    H = mon.hom_r(C, I, I)
    assert H.obj == I
    H = mon.hom_r(C, C.iota(S1), C.iota(S0))
    assert (H.obj.F1.lo, H.obj.F1.dims) == (-1, (1,))
    assert (H.obj.F0.lo, H.obj.F0.dims) == (-1, (1,))
    # unit law: hom_r(I, G) ≅ G
    H = mon.hom_r(C, I, Fq)
    assert H.obj.F1 == Fq.F1 and H.obj.F0.dims == Fq.F0.dims


def test_transpose_unitor():
    s = mon.left_unitor(C, Fq)
    t = mon.hom_tensor_transpose(C, s, I, Fq)
    assert mon.hom_tensor_untranspose(C, t, Fq, Fq) == s


def test_small_bijection_counts():
    lhs = list(C.hom_elements(mon.tensor_comma(C, I, I), I))
    rhs = list(C.hom_elements(I, mon.hom_r(C, I, I).obj))
    assert len(lhs) == len(rhs) == 2
    rep = mon.hom_tensor_bijection(C, [(I, I, I), (Fq, I, Fq)])
    assert rep.ok, rep.failures


def test_pushout_products_of_zero_inclusions():
    z = C.iota(ch.from_zero(S0))
    pp = mon.pushout_product(C, z, z)
    assert pp.corner.source.F0.is_zero() and pp.corner.target == I
    assert C.classify(pp.corner, S.Inj).is_cof
    assert mon.pushout_product_direct(C, z, z) == pp.corner


def test_box_with_unit_inclusion_is_sigma():
    theta = C.iota(ch.from_zero(S0))
    s = C.iota(ch.from_zero(D1))
    pp = mon.pushout_product(C, s, theta)
    # the pushout collapses to dom σ ⊗ I = dom σ; the corner is σ up to the unitor
    assert pp.corner.target == s.target and pp.corner.source == s.source
    assert pp.corner == s


def test_unit_axiom_isomorphism():
    assert C.is_cofibrant(I, S.Inj)
    rep = mon.unit_axiom_suite(C, [I, Fq])
    assert rep.ok


def test_hom_tensor_instance_is_not_lax():
    Ch = CommaCategory(HomTensorAdjunction(disk(2, 1)))
    with pytest.raises(mon.UnsupportedInstance):
        mon.unit_comma(Ch)


def test_coherence():
    rep = mon.coherence_checks(C, [(I, Fq, C.iota(S1)), (Fq, Fq, I)])
    assert rep.ok, rep.failures


@given(seeds, primes)
def test_monoidal_suite(seed, p):
    cfg = RunConfig(seed=seed, p=p)
    Cp = cfg.comma()
    x = make_monoidal_inputs(Cp, Generator(seed, p), cfg)
    assert monoidal_failures(Cp, x) == []


@given(seeds, primes)
def test_component_formula_equals_direct(seed, p):
    Cp = mon.arrow_category(p)
    g = Generator(seed, p, Bounds(max_dim=2, window=2))
    s, t = g.comma_morphism(Cp, modes=(0, 1)), g.comma_morphism(Cp, modes=(0, 1))
    assert mon.pushout_product(Cp, s, t).corner == mon.pushout_product_direct(Cp, s, t)


@given(seeds, primes)
def test_pushout_product_of_cofibrations(seed, p):
    Cp = mon.arrow_category(p)
    g = Generator(seed, p, Bounds(max_dim=2, window=2))
    cof = [factorize_comma(Cp, g.comma_morphism(Cp, modes=(0, 1)), S.Inj, FactorKind.CofThenTrivFib)[0]
           for _ in range(2)]
    corner = mon.pushout_product(Cp, *cof).corner
    assert Cp.classify(corner, S.Inj).is_cof


@given(seeds, primes)
def test_signs(seed, p):
    g = Generator(seed, p, Bounds(max_dim=2, window=3))
    assert mon.sign_regression(p, [g.complex() for _ in range(3)]).ok


def test_identity_tensor_is_identity():
    s = mon.tensor_mor(C, C.identity(Fq), C.identity(I))
    assert s == C.identity(Fq)
    assert identity(S0) == mon.left_unitor(C, I).sigma0

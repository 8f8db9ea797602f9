import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from starlab import axioms as AX
from starlab.classify import RingClass, is_ring_class
from starlab.lattice import equivalent

from conftest import SMALL_SPECS, el, ring


def test_a4_on_prime_fields():
    assert AX.check_axiom(ring("Z(7)"), "A4").status == AX.HOLDS
    # -1 is a square mod 5, so 1 + x*x hits zero
    assert not AX.check_axiom(ring("Z(5)"), "A4")


def test_a4_fails_on_gaussian_integers_mod_3():
    r = ring("Quot(Z(3),x^2+1,-x)")
    e = AX.check_axiom(r, "A4")
    assert e.status == AX.FAILS and e.witness == el(r, "<1,1>")
    w = e.witness
    assert not r.unit_mask[r.add(r.one, r.mul(r.star(w), w))]


def test_a5():
    r = ring("Quot(Z(3),x^2+1,-x)")
    e = AX.check_axiom(r, "A5")
    assert e.status == AX.HOLDS and e.witness == el(r, "<0,1>")
    m = AX.check_axiom(ring("M(2,Z(3))"), "A5")
    assert not m and m.witness["also_skew"] and not m.witness["also_central"]


def test_ep_fails_on_m2f3():
    m = ring("M(2,Z(3))")
    e = AX.check_axiom(m, "A2-EP")
    assert e.status == AX.FAILS and e.witness == el(m, "[[1,1],[1,2]]")
    assert AX.check_axiom(ring("Z(6)"), "A2-EP")


def test_unknown_axiom():
    with pytest.raises(ValueError):
        AX.check_axiom(ring("Z(2)"), "A9")


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_a1_and_finite_axioms(spec):
    rep = AX.check_axioms(ring(spec))
    assert rep["A1"].ok
    assert rep["A3"].status == AX.VACUOUS
    assert rep["A6"].ok and rep["A7"].ok


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_a4_and_a5_never_together(spec):
    rep = AX.check_axioms(ring(spec), ("A4", "A5"))
    assert not rep.holds("A4", "A5")


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_ep_implies_lprp(spec):
    r = ring(spec)
    if is_ring_class(r, RingClass.RICKART_STAR) and AX.check_axiom(r, "A2-EP"):
        assert AX.check_axiom(r, "LPRP")


def test_lprp_and_gc_on_m2f3():
    m = ring("M(2,Z(3))")
    lprp = AX.check_axiom(m, "LPRP")
    assert not lprp
    x = lprp.witness
    assert equivalent(m, int(AX.lp_table(m)[x]), int(AX.rp_table(m)[x])) is None
    assert not AX.check_axiom(m, "GC")
    assert AX.check_axiom(ring("Z(6)"), "GC")


def test_lprp_not_applicable():
    e = AX.check_axiom(ring("Z(4)"), "LPRP")
    assert e.status == AX.VACUOUS and "NotApplicable" in e.note


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_positive_cone(spec):
    r = ring(spec)
    cone = AX.positive_cone(r)
    for x in range(r.order):
        assert AX.is_positive(r, r.mul(r.star(x), x))
    s = cone.elements
    assert set(np.asarray(r.add(s[:, None], s[None, :])).ravel().tolist()) <= set(s.tolist())


@pytest.mark.parametrize("spec", ["Z(6)", "M(2,Z(2))", "M(2,Z(3))", "GR(D(3),Z(2))"])
def test_commutants(spec):
    r = ring(spec)
    assert len(AX.commutant(r, [r.one])) == r.order
    center = AX.commutant(r, range(r.order))
    assert np.array_equal(center.mask, r.center_mask)
    for s in ([1], [r.order - 1], [1, r.order // 2]):
        c = AX.commutant(r, s)
        bc = AX.bicommutant(r, s)
        assert all(x in bc for x in s)
        assert np.array_equal(AX.commutant(r, bc.elements).mask, c.mask)


def test_empty_commutant_rejected():
    with pytest.raises(ValueError):
        AX.commutant(ring("Z(2)"), [])


def test_types_of_m2f3():
    m = ring("M(2,Z(3))")
    td = AX.type_decompose(m)
    assert td.c_I == m.one and td.c_II == 0 and td.c_III == 0
    assert td.homogeneous_orders == [2] and td.I_f
    assert AX.homogeneous_partition(m, 3) is None
    with pytest.raises(ValueError):
        AX.homogeneous_partition(m, 0)


def test_types_of_product():
    td = AX.type_decompose(ring("P(M(2,Z(3)),Z(3))"))
    assert sorted(td.homogeneous_orders) == [1, 2] and td.I_f


def test_types_need_baer():
    with pytest.raises(AX.NotBaerStar):
        AX.type_decompose(ring("M(2,Z(2))"))


def test_structure_iso():
    m = ring("M(2,Z(3))")
    iso = AX.structure_iso_In(m, n=2)
    assert iso.check.ok and iso.base.order == 3 and iso.matrix.order == 81
    assert AX.structure_iso_In(m, n=3) is None


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_type_pieces_sum_to_one(spec):
    r = ring(spec)
    if not is_ring_class(r, RingClass.BAER_STAR):
        return
    td = AX.type_decompose(r)
    total = r.add(r.add(td.c_I, td.c_II), td.c_III)
    assert total == r.one
    for p in td.pieces:
        if p.type == "I":
            assert p.n is not None and p.base_order ** (p.n * p.n) == len(np.unique(r.row(p.central)))


@settings(max_examples=30)
@given(st.sampled_from(["Z(6)", "M(2,Z(3))", "GF(3,2)@frob(1)", "P(Z(2),Z(3))"]), st.data())
def test_bicommutant_contains_set(spec, data):
    r = ring(spec)
    S = data.draw(st.lists(st.integers(0, r.order - 1), min_size=1, max_size=3))
    bc = AX.bicommutant(r, S)
    for s in S:
        assert s in bc
    assert len(AX.bicommutant(r, bc.elements)) == len(bc)

import time

import pytest
from hypothesis import given, strategies as st

from starlab import clean as CL
from starlab.classify import RingClass, is_ring_class
from starlab.lattice import is_abelian_ring
from starlab.rings import corner_ring

from conftest import SMALL_SPECS, el, ring


def test_z6_star_clean_witness():
    z6 = ring("Z(6)")
    w = CL.decomposition_witness(z6, 2, CL.STAR_CLEAN)
    assert w.ok and (w.unit_part, w.idempotent_part) == (1, 1)
    # the alternative decomposition 2 = 5 + 3 is also valid
    alt = CL.verify_witness(z6, CL.CleanWitness(2, 5, 3, CL.STAR_CLEAN))
    assert alt.ok


def test_m2f2_star_clean_witness():
    m = ring("M(2,Z(2))")
    a = el(m, "[[1,1],[1,1]]")
    w = CL.decomposition_witness(m, a, CL.STAR_CLEAN)
    assert w.ok and m.projection_mask[w.idempotent_part]
    alt = CL.verify_witness(m, CL.CleanWitness(a, el(m, "[[0,1],[1,1]]"), el(m, "[[1,0],[0,0]]"), CL.STAR_CLEAN))
    assert alt.ok


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_one_decomposes_trivially(spec):
    r = ring(spec)
    w = CL.decomposition_witness(r, r.one, CL.CLEAN)
    assert w.ok and w.idempotent_part == 0 and w.unit_part == r.one


def test_clean_verdicts():
    assert CL.is_clean_variant(ring("M(2,Z(2))"), CL.STAR_CLEAN)
    assert CL.is_clean_variant(ring("Z(4)"), CL.CLEAN)
    assert CL.is_clean_variant(ring("Z(6)"), CL.ALMOST_STAR_CLEAN)
    v = CL.is_clean_variant(ring("P(GF(3,1),GF(3,1))@swap(1,0)"), CL.STAR_CLEAN)
    assert not v and v.witness is not None


def test_regularity():
    z6, z4, m = ring("Z(6)"), ring("Z(4)"), ring("M(2,Z(2))")
    for kind in ("regular", "unitRegular", "starRegular"):
        assert CL.decide_regularity(z6, kind)
        assert not CL.decide_regularity(z4, kind)
    assert CL.decide_regularity(z4, "regular").witness == 2
    assert CL.decide_regularity(m, "regular") and CL.decide_regularity(m, "unitRegular")
    assert not CL.decide_regularity(m, "starRegular")


def test_ck_examples():
    z6 = ring("Z(6)")
    rep = CL.ck_equivalence_check(z6)
    assert rep.unit_regular and rep.all_ck_witnesses and rep.agree
    w = CL.decomposition_witness(z6, 2, CL.CK)
    assert w.ok and w.idempotent_part == 3
    rep = CL.ck_equivalence_check(ring("Z(4)"))
    assert not rep.unit_regular and not rep.all_ck_witnesses and rep.agree
    w = CL.decomposition_witness(z6, 0, CL.CK)
    assert w.ok and z6.unit_mask[z6.neg(w.idempotent_part)]


def test_lift_trivial_projections():
    z6 = ring("Z(6)")
    for a in range(6):
        top = corner_ring(z6, z6.one)
        w1 = CL.decomposition_witness(top, top.index(a), CL.STAR_CLEAN)
        assert CL.lift_corner_witnesses(z6, z6.one, w1, None, a).ok
        bot = corner_ring(z6, z6.one)
        w2 = CL.decomposition_witness(bot, bot.index(a), CL.STAR_CLEAN)
        assert CL.lift_corner_witnesses(z6, 0, None, w2, a).ok


def test_lift_m2f2():
    m = ring("M(2,Z(2))")
    w = CL.lift_corner_witnesses(m, el(m, "[[1,0],[0,0]]"), None, None, el(m, "[[0,1],[0,0]]"))
    assert w.ok
    assert w.idempotent_part in m.projections.tolist()


@pytest.mark.parametrize("spec", ["M(2,Z(2))", "M(2,Z(3))", "Z(6)", "P(M(2,Z(2)),Z(3))"])
def test_lift_every_element(spec):
    r = ring(spec)
    for p in r.projections.tolist():
        for a in range(r.order):
            assert CL.lift_corner_witnesses(r, p, None, None, a).ok


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_mode_monotonicity(spec):
    r = ring(spec)
    v = {name: CL.is_clean_variant(r, m).value for name, m in CL.MODES.items()}
    assert not v["star-clean"] or v["clean"]
    assert not v["clean"] or v["almost-clean"]
    assert not v["star-clean"] or v["almost-star-clean"]
    assert not v["strongly-star-clean"] or v["star-clean"]
    assert not v["clean-ck"] or v["clean"]


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_camillo_khurana(spec):
    assert CL.ck_equivalence_check(ring(spec)).agree
    assert CL.ck_equivalence_check(ring(spec), star_variant=True).agree


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_cleanreg(spec):
    r = ring(spec)
    if CL.decide_regularity(r, "starRegular") and is_abelian_ring(r):
        assert CL.is_clean_variant(r, CL.STRONGLY_CK_STAR)


@pytest.mark.parametrize("spec", [s for s in SMALL_SPECS])
def test_abelian_rickart_lemma(spec):
    r = ring(spec)
    if not (is_abelian_ring(r) and is_ring_class(r, RingClass.RICKART_STAR)):
        return
    assert r.idempotents.tolist() == r.projections.tolist()
    vals = {CL.is_clean_variant(r, m).value for m in (CL.CLEAN, CL.STAR_CLEAN, CL.STRONGLY_CLEAN)}
    assert len(vals) == 1
    for m in (CL.ALMOST_CLEAN, CL.ALMOST_STAR_CLEAN, CL.ALMOST_STRONGLY_STAR_CLEAN):
        assert CL.is_clean_variant(r, m)


def test_matrix_over_z6_star_clean():
    t = time.perf_counter()
    assert CL.is_clean_variant(ring("M(2,Z(6))"), CL.STAR_CLEAN)
    assert time.perf_counter() - t < 10


@given(st.sampled_from(SMALL_SPECS), st.data(), st.sampled_from(sorted(CL.MODES)))
def test_witnesses_reverify(spec, data, mode):
    r = ring(spec)
    a = data.draw(st.integers(0, r.order - 1))
    w = CL.decomposition_witness(r, a, CL.MODES[mode])
    if w is not None:
        again = CL.verify_witness(r, CL.CleanWitness(w.element, w.unit_part, w.idempotent_part, w.mode))
        assert again.ok and r.add(w.unit_part, w.idempotent_part) == a

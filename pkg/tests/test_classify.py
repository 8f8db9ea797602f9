import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from starlab.classify import (NoSuchProjection, RingClass, Side, annihilator, classify_element,
                              involution_is_proper, is_ring_class, left_ann_mask, lp, right_ann_mask, rp)

from conftest import SMALL_SPECS, el, ring


def test_classify_z6_three():
    c = classify_element(ring("Z(6)"), 3)
    assert c.is_idempotent and c.is_projection and c.is_central
    assert c.is_left_zero_divisor and not c.is_unit


def test_classify_swap_matrix():
    m = ring("M(2,Z(2))")
    c = classify_element(m, el(m, "[[0,1],[1,0]]"))
    assert c.is_unitary and c.is_unit and c.is_self_adjoint and not c.is_idempotent


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_one_is_unit_projection_central(spec):
    r = ring(spec)
    c = classify_element(r, r.one)
    assert c.is_unit and c.is_projection and c.is_central


def test_improper_involutions():
    m = ring("M(2,Z(2))")
    v = involution_is_proper(m)
    assert not v and v.witness == el(m, "[[1,1],[1,1]]")
    s = ring("P(GF(3,1),GF(3,1))@swap(1,0)")
    v = involution_is_proper(s)
    assert not v and v.witness == el(s, "(1,0)")
    assert involution_is_proper(ring("M(2,Z(3))"))


def test_annihilators():
    z6 = ring("Z(6)")
    a = annihilator(z6, Side.RIGHT, [2])
    assert a.elements.tolist() == [0, 3]
    assert a.idempotent_generator == 3 and a.projection_generator == 3
    z4 = ring("Z(4)")
    a = annihilator(z4, Side.RIGHT, [2])
    assert a.elements.tolist() == [0, 2] and a.idempotent_generator is None
    a = annihilator(z6, Side.RIGHT, [1])
    assert a.elements.tolist() == [0] and a.idempotent_generator == 0


def test_right_projections():
    z6 = ring("Z(6)")
    assert rp(z6, 2) == 4
    assert rp(z6, 1) == lp(z6, 1) == 1
    with pytest.raises(NoSuchProjection):
        rp(ring("Z(4)"), 2)


def test_ring_classes():
    z6 = ring("Z(6)")
    for cls in RingClass:
        assert is_ring_class(z6, cls), cls
    v = is_ring_class(ring("Z(4)"), RingClass.RIGHT_RICKART)
    assert not v and v.witness == 2
    assert not is_ring_class(ring("M(2,Z(2))"), RingClass.RICKART_STAR)


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_left_annihilator_is_star_of_right(spec):
    r = ring(spec)
    for x in range(r.order):
        left = np.flatnonzero(left_ann_mask(r, x))
        right_of_star = np.flatnonzero(right_ann_mask(r, r.star(x)))
        assert sorted(r.star(left).tolist() if len(left) else []) == right_of_star.tolist()


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_class_implications(spec):
    r = ring(spec)
    if is_ring_class(r, RingClass.BAER_STAR):
        assert is_ring_class(r, RingClass.RICKART_STAR)
    if is_ring_class(r, RingClass.RICKART_STAR):
        assert involution_is_proper(r)


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_regular_elements_are_units(spec):
    r = ring(spec)
    assert np.array_equal(r.regular_element_mask, r.unit_mask)


@pytest.mark.parametrize("spec", ["Z(6)", "Z(12)", "M(2,Z(3))", "P(Z(2),Z(3))", "GR(C(2),Z(3))"])
def test_rp_properties(spec):
    r = ring(spec)
    for x in range(r.order):
        try:
            p = rp(r, x)
        except NoSuchProjection:
            continue
        assert r.mul(x, p) == x and r.projection_mask[p]
        assert np.array_equal(right_ann_mask(r, x), right_ann_mask(r, p))


@given(st.sampled_from(["Z(12)", "M(2,Z(2))", "GR(C(3),Z(2))", "P(Z(2),Z(3))"]), st.data())
def test_annihilator_of_set_is_intersection(spec, data):
    r = ring(spec)
    S = data.draw(st.lists(st.integers(0, r.order - 1), min_size=1, max_size=4))
    both = annihilator(r, Side.RIGHT, S).elements.tolist()
    inter = set(range(r.order))
    for s in S:
        inter &= set(annihilator(r, Side.RIGHT, [s]).elements.tolist())
    assert both == sorted(inter)


def test_pairs_exhaustive_small():
    r = ring("M(2,Z(2))")
    for a, b in itertools.combinations(range(r.order), 2):
        got = set(annihilator(r, Side.RIGHT, [a, b]).elements.tolist())
        want = {x for x in range(r.order) if r.mul(a, x) == 0 and r.mul(b, x) == 0}
        assert got == want

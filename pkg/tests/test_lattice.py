import numpy as np
import pytest

from starlab.lattice import (central_projections, dominates, equivalence_witnesses, equivalent,
                             peirce_central_decompose, projection_predicates, projections)
from starlab.rings import corner_ring, direct_product

from conftest import SMALL_SPECS, el, ring

LATTICE_SPECS = ["Z(6)", "Z(12)", "M(2,Z(2))", "M(2,Z(3))", "P(M(2,Z(2)),Z(3))", "GR(C(2),Z(3))",
                 "P(GF(3,1),GF(3,1))@swap(1,0)", "GF(3,2)@frob(1)"]


def test_projection_sets():
    m = ring("M(2,Z(2))")
    want = {0, m.one, el(m, "[[1,0],[0,0]]"), el(m, "[[0,0],[0,1]]")}
    assert set(projections(m).projections) == want
    assert projections(ring("Z(6)")).projections == [0, 1, 3, 4]


@pytest.mark.parametrize("spec", LATTICE_SPECS)
def test_zero_bottom_one_top(spec):
    r = ring(spec)
    lat = projections(r)
    for p in lat.projections:
        assert lat.le(0, p) and lat.le(p, r.one)


def test_equivalence_examples():
    m = ring("M(2,Z(3))")
    e11, e22, e21 = el(m, "[[1,0],[0,0]]"), el(m, "[[0,0],[0,1]]"), el(m, "[[0,0],[1,0]]")
    x = equivalent(m, e11, e22)
    assert x is not None and m.mul(m.star(x), x) == e11 and m.mul(x, m.star(x)) == e22
    assert m.mul(m.star(e21), e21) == e11
    for p in m.projections.tolist():
        assert equivalent(m, p, p) is not None
    assert equivalent(ring("Z(6)"), 3, 4) is None


def test_dominance():
    z6 = ring("Z(6)")
    for q in z6.projections.tolist():
        assert dominates(z6, 0, q)
    assert not dominates(z6, 4, 3)
    m = ring("M(2,Z(3))")
    assert dominates(m, el(m, "[[1,0],[0,0]]"), m.one)


def test_predicates():
    m = ring("M(2,Z(3))")
    pr = projection_predicates(m, el(m, "[[1,0],[0,0]]"))
    assert pr.abelian and pr.finite and pr.faithful
    for spec in LATTICE_SPECS:
        r = ring(spec)
        assert projection_predicates(r, r.one).faithful


@pytest.mark.parametrize("spec", LATTICE_SPECS)
def test_every_projection_is_finite(spec):
    r = ring(spec)
    assert projections(r).finite == projections(r).projections


@pytest.mark.parametrize("spec", LATTICE_SPECS)
def test_order_relation(spec):
    r = ring(spec)
    P = r.projections.tolist()
    for p in P:
        for q in P:
            pq, qp = r.mul(p, q), r.mul(q, p)
            assert (pq == p) == (qp == p)
            if pq == p and r.mul(q, p) == q:
                assert p == q


@pytest.mark.parametrize("spec", LATTICE_SPECS)
def test_equivalence_witnesses(spec):
    r = ring(spec)
    wit = equivalence_witnesses(r)
    size = {p: len(np.unique(r.row(p))) for p in r.projections.tolist()}
    for (p, q), x in wit.items():
        assert size[p] == size[q]
        assert (q, p) in wit
        for (q2, s), y in wit.items():
            if q2 == q:
                yx = r.mul(y, x)
                assert r.mul(r.star(yx), yx) == p and r.mul(yx, r.star(yx)) == s


def test_peirce_z6():
    z6 = ring("Z(6)")
    dec = peirce_central_decompose(z6)
    assert dec.family == [3, 4] and dec.orders == [2, 3] and dec.check.ok


def test_peirce_simple_ring_is_trivial():
    m = ring("M(2,Z(3))")
    dec = peirce_central_decompose(m)
    assert dec.family == [m.one] and dec.check.ok


def test_peirce_recovers_factors():
    r = direct_product([ring("M(2,Z(2))"), ring("Z(3)")])
    dec = peirce_central_decompose(r)
    assert sorted(dec.orders) == [3, 16] and dec.check.ok


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_peirce_map_is_iso_everywhere(spec):
    dec = peirce_central_decompose(ring(spec))
    assert dec.check.ok
    for c in dec.corners:
        assert sorted(central_projections(c)) == sorted({0, c.one})


def test_corner_of_equivalent_projections_same_order():
    m = ring("M(2,Z(3))")
    assert corner_ring(m, el(m, "[[1,0],[0,0]]")).order == corner_ring(m, el(m, "[[0,0],[0,1]]")).order

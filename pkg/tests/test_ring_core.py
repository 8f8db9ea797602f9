import numpy as np
import pytest
from hypothesis import given, strategies as st

from starlab import expr as E
from starlab import groups as G
from starlab.rings import (InvalidExpr, NotAProjection, TableRing, TooLarge, build_ring, check_star_isomorphism,
                           corner_ring, direct_product, enumerate_elements, generated_subring, group_ring,
                           matrix_ring, verify_star_ring_axioms)

from conftest import SMALL_SPECS, el, ring


def test_orders():
    assert ring("Z(6)").order == 6
    assert ring("M(2,GF(2,1))").order == 16
    assert ring("Quot(Z(3),x^2+1,-x)").order == 9
    assert ring("GR(C(4),Z(3))").order == 3 ** 4


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_star_ring_axioms_hold(spec):
    rep = verify_star_ring_axioms(ring(spec))
    assert rep.exhaustive and rep.passed, rep.first_failure()


def test_quot_conjugation():
    r = ring("Quot(Z(3),x^2+1,-x)")
    i = el(r, "<0,1>")
    assert r.mul(i, i) == r.neg(r.one)
    assert r.star(i) == r.neg(i)


def test_invalid_quot_image_rejected():
    with pytest.raises(InvalidExpr):
        build_ring(E.QuotAdjoin(E.Zmod(3), (1, 0, 1), (1,)))  # x -> 1


def test_corrupted_table_is_caught():
    z = ring("Z(3)")
    add = np.array([[(a + b) % 3 for b in range(3)] for a in range(3)])
    mul = np.array([[(a * b) % 3 for b in range(3)] for a in range(3)])
    mul[2, 2] = 2  # 2*2 should be 1
    bad = TableRing(add, mul, np.arange(3), z.one)
    rep = verify_star_ring_axioms(bad)
    assert not rep.passed
    assert rep.first_failure().witness is not None


def test_matrix_ring_star_is_transpose():
    m = ring("M(2,Z(3))")
    x = m.from_entries([[1, 2], [0, 1]])
    assert m.entries(m.star(x)) == [[1, 0], [2, 1]]
    assert matrix_ring(ring("Z(6)"), 2).order == 1296


def test_matrix_star_antimultiplicative_exhaustive():
    m = ring("M(2,Z(2))")
    e = m.elements
    A, B = e[:, None], e[None, :]
    assert (m.star(m.mul(A, B)) == m.mul(m.star(B), m.star(A))).all()


def test_product_z2_z3_is_z6():
    p = direct_product([ring("Z(2)"), ring("Z(3)")])
    z6 = ring("Z(6)")
    # CRT: k -> (k mod 2, k mod 3)
    f = [p.from_components([k % 2, k % 3]) for k in range(6)]
    assert check_star_isomorphism(z6, p, f).ok


def test_swap_product_is_star_ring():
    r = ring("P(GF(3,1),GF(3,1))@swap(1,0)")
    assert verify_star_ring_axioms(r).passed
    x = r.from_components([1, 0])
    assert r.components(r.star(x)) == [0, 1]


def test_single_factor_product():
    z5 = ring("Z(5)")
    p = direct_product([z5])
    assert p.order == 5
    assert check_star_isomorphism(z5, p, [p.from_components([k]) for k in range(5)]).ok


def test_corner_rings():
    m = ring("M(2,Z(3))")
    e11 = m.unit_matrix(0, 0)
    c = corner_ring(m, e11)
    assert c.order == 3 and c.is_commutative
    fixed = np.asarray(m.mul(m.mul(e11, m.elements), e11)) == m.elements
    assert c.order == int(fixed.sum())
    assert corner_ring(m, m.one).order == m.order
    assert corner_ring(m, 0).order == 1
    with pytest.raises(NotAProjection):
        corner_ring(m, m.from_entries([[1, 1], [0, 0]]))


def test_group_rings():
    g = group_ring(G.build_group(G.Cyclic(2)), ring("GF(3,1)"))
    assert g.order == 9
    # (1 + g)/2 and (1 - g)/2 split it as F3 x F3
    assert len(g.idempotents) == 4
    g2 = ring("GR(C(2),Z(2))")
    nil = g2.add(g2.one, g2.basis_element(1))
    assert g2.mul(nil, nil) == 0
    assert verify_star_ring_axioms(ring("GR(D(3),Z(2))")).passed


@pytest.mark.parametrize("n", [2, 3, 4])
def test_group_ring_order(n):
    assert ring(f"GR(C({n}),Z(3))").order == 3 ** n


def test_generated_subrings():
    m = ring("M(2,Z(2))")
    e11 = m.unit_matrix(0, 0)
    s = generated_subring(m, [e11])
    assert sorted(s.members.tolist()) == sorted([0, e11, m.sub(m.one, e11), m.one])
    assert generated_subring(m, []).order == 2
    assert generated_subring(m, m.elements).order == m.order


def test_enumeration_is_stable():
    assert enumerate_elements(ring("Z(4)")) == [0, 1, 2, 3]
    a = build_ring(E.Matrix(2, E.Zmod(2)))
    b = build_ring(E.Matrix(2, E.Zmod(2)))
    assert np.array_equal(a._mul_table, b._mul_table)
    assert len({tuple(map(tuple, a.entries(x))) for x in range(16)}) == 16


def test_order_cap():
    with pytest.raises(TooLarge):
        build_ring(E.Matrix(3, E.Zmod(6)))


def test_canonicalize_idempotent():
    e = E.Product((E.Zmod(3), E.Zmod(3)), (1, 0))
    c = E.canonicalize(e)
    assert E.canonicalize(c) == c


@given(st.sampled_from(SMALL_SPECS), st.data())
def test_identities_on_random_triples(spec, data):
    r = ring(spec)
    a, b, c = (data.draw(st.integers(0, r.order - 1)) for _ in range(3))
    assert r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c))
    assert r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c))
    assert r.star(r.mul(a, b)) == r.mul(r.star(b), r.star(a))
    assert r.star(r.star(a)) == a

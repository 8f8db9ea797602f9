import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from starlab import morphic as MO
from starlab.classify import Side
from starlab.clean import decide_regularity

from conftest import SMALL_SPECS, el, ring


def test_condition_values():
    z4 = ring("Z(4)")
    assert not MO.is_reduced(z4) and MO.is_reduced(ring("Z(6)"))
    assert MO.is_semicommutative(z4) and MO.is_symmetric(z4)
    m = ring("M(2,Z(2))")
    for cond in ("Abelian", "Semicommutative", "Symmetric", "Reduced"):
        v = MO.decide_condition(m, cond)
        assert not v and v.witness is not None


def test_semicommutative_witness_is_real():
    m = ring("M(2,Z(2))")
    v = MO.is_semicommutative(m)
    a, r, b = v.witness
    assert m.mul(a, b) == 0 and m.mul(m.mul(a, r), b) != 0


def test_unknown_condition():
    with pytest.raises(ValueError):
        MO.decide_condition(ring("Z(2)"), "Noetherian")


def test_armendariz_matrix_violation():
    m = ring("M(2,Z(2))")
    res = MO.is_armendariz_bounded(m, degree=1)
    assert not res
    p, q = res.witness
    assert MO._armendariz_violation(m, p, q)


def test_armendariz_commutative_reduced():
    res = MO.is_armendariz_bounded(ring("Z(6)"), degree=2)
    assert res and res.exhaustive_degree == 2


def test_armendariz_budget_is_reported():
    res = MO.is_armendariz_bounded(ring("GF(2,2)"), degree=3, budget=50)
    assert res.value and res.exhaustive_degree < 3 and "budget" in res.note


def _brute_armendariz_deg1(r):
    N = r.order
    for p in itertools.product(range(N), repeat=2):
        for q in itertools.product(range(N), repeat=2):
            if MO._armendariz_violation(r, p, q):
                return False
    return True


@pytest.mark.parametrize("spec", ["Z(4)", "Z(6)", "GF(2,2)", "GR(C(2),Z(2))", "P(Z(2),Z(2))", "Quot(Z(3),x^2+1,-x)"])
def test_armendariz_degree_one_matches_brute_force(spec):
    r = ring(spec)
    assert bool(MO.is_armendariz_bounded(r, degree=1)) == _brute_armendariz_deg1(r)


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_condition_chains(spec):
    rep = MO.conditions_equivalence_check(ring(spec), degree=1)
    assert rep.chains_hold, rep.chain_failures
    if rep.right_rickart:
        assert rep.equivalent


def test_modules_of_z6():
    z6 = ring("Z(6)")
    q = MO.quotient_module(z6, 2)
    a = MO.annihilator_module(z6, 2)
    assert q.size == 2 and a.size == 2
    ok, phi = MO.module_iso_oracle(a, q)
    assert ok and phi[0] == 0


def test_module_oracle_rejects_different_sizes():
    z4 = ring("Z(4)")
    ok, _ = MO.module_iso_oracle(MO.annihilator_module(z4, 1), MO.quotient_module(z4, 1))
    assert ok  # both trivial
    ok, _ = MO.module_iso_oracle(MO.annihilator_module(z4, 0), MO.quotient_module(z4, 1))
    assert not ok


def test_module_oracle_cap():
    m = ring("M(2,Z(3))")
    with pytest.raises(MO.SizeBound):
        MO.module_iso_oracle(MO.annihilator_module(m, 0), MO.quotient_module(m, 0), cap=10)


def test_morphic_examples():
    for spec in ("Z(4)", "Z(6)", "Z(8)", "M(2,Z(2))"):
        assert MO.is_morphic(ring(spec)), spec
    r = ring("GR(C(2),Z(2))")
    assert MO.is_morphic(r)


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_morphic_fast_path_agrees_with_oracle(spec):
    r = ring(spec)
    for side in (Side.RIGHT, Side.LEFT):
        res = MO.is_morphic(r, side, oracle=True)
        assert not res.disagreements
        assert res.oracle_checked == r.order


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_fast_witness_gives_isomorphism(spec):
    r = ring(spec)
    for x in range(r.order):
        y = MO.morphic_fast_witness(r, x)
        if y is None:
            continue
        # r + xR -> y r is well defined and bijective onto ann_r(x)
        xr = set(r.mul(x, r.elements).tolist())
        ann = {s for s in range(r.order) if r.mul(x, s) == 0}
        assert {int(v) for v in r.mul(y, r.elements)} == ann
        assert {s for s in range(r.order) if r.mul(y, s) == 0} == xr


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_morphic_implies_quasi_morphic(spec):
    r = ring(spec)
    for side in (Side.RIGHT, Side.LEFT):
        if MO.is_morphic(r, side):
            assert MO.is_quasi_morphic(r, side)


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_p_injective_reduction_matches_literal(spec):
    r = ring(spec)
    for side in (Side.LEFT, Side.RIGHT):
        assert bool(MO.is_p_injective(r, side)) == bool(MO.is_p_injective_literal(r, side))


def test_p_injective_examples():
    assert MO.is_p_injective(ring("Z(4)"))
    assert MO.is_p_injective(ring("M(2,Z(2))"))


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_literature_checks(spec):
    rep = MO.literature_equivalences_check(ring(spec), oracle=True)
    assert rep.ok, rep.failures
    assert rep.values["unitRegular"] == decide_regularity(ring(spec), "unitRegular").value


def test_literature_checks_catch_a_bad_table():
    v = dict.fromkeys(["unitRegular", "regular", "rightMorphic", "leftMorphic", "rightRickart", "leftRickart",
                       "rightQuasiMorphic", "leftQuasiMorphic", "leftPInjective", "rightPInjective"], True)
    assert all(MO.literature_checks(v).values())
    v["unitRegular"] = False
    assert not all(MO.literature_checks(v).values())


@settings(max_examples=25)
@given(st.sampled_from(["Z(4)", "Z(6)", "M(2,Z(2))", "GR(C(2),Z(2))", "Z(12)"]), st.data())
def test_quotient_module_respects_action(spec, data):
    r = ring(spec)
    x = data.draw(st.integers(0, r.order - 1))
    m = MO.quotient_module(r, x)
    a, b = data.draw(st.integers(0, m.size - 1)), data.draw(st.integers(0, m.size - 1))
    s = data.draw(st.integers(0, r.order - 1))
    # (a + b) s = a s + b s
    assert m.act[m.add[a, b], s] == m.add[m.act[a, s], m.act[b, s]]
    assert np.all(m.act[0] == 0)

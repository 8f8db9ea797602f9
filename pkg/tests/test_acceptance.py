"""Acceptance criteria 1-10, one test each. A summary line per criterion is
printed at the end of the pytest run (see conftest)."""
import json
import time

import pytest

from starlab import axioms as AX
from starlab import clean as CL
from starlab import morphic as MO
from starlab.classify import RingClass, Side, involution_is_proper, is_ring_class
from starlab.corpus import generate_corpus
from starlab.lattice import peirce_central_decompose
from starlab.report import SuiteConfig, emit_report, exit_status, run_suite, verify_report
from starlab.rings import build_ring
from starlab.spectext import parse_ring_spec

from conftest import el, ring

RESULTS = {}


def record(n, ok, detail):
    RESULTS[n] = (bool(ok), detail)
    assert ok, detail


@pytest.fixture(scope="module")
def suite(tmp_path_factory):
    """Cold full default suite (timed) and a second warm run."""
    cache = tmp_path_factory.mktemp("acceptance-cache")
    cfg = SuiteConfig(cache_dir=str(cache))
    t0 = time.perf_counter()
    first = run_suite(None, cfg)
    cold = time.perf_counter() - t0
    second = run_suite(None, cfg)
    return first, second, cold


def _theorem(report, tid):
    return next(t for t in report["theorems"] if t["id"] == tid)


def test_criterion_01_camillo_khurana():
    corpus = [e for e in generate_corpus() if build_ring(e).order <= 512]
    t0 = time.perf_counter()
    bad = []
    for e in corpus:
        rep = CL.ck_equivalence_check(build_ring(e))
        if not rep.agree:
            bad.append(e)
    dt = time.perf_counter() - t0
    record(1, not bad and dt <= 60, f"{len(corpus)} rings, {len(bad)} disagreements, {dt:.1f}s")


def test_criterion_02_abelian_lemma(suite):
    report = suite[0]
    ts = [_theorem(report, f"L-ABELIAN-{i}") for i in range(1, 5)]
    fails = sum(len(t["counterexamples"]) for t in ts)
    hyp = min(t["hypothesisCount"] for t in ts)
    record(2, fails == 0 and hyp >= 5, f"hypothesisCount {[t['hypothesisCount'] for t in ts]}, {fails} counterexamples")


def test_criterion_03_clean_regular(suite):
    t = _theorem(suite[0], "P-CLEANREG")
    ok = not t["counterexamples"] and t["hypothesisCount"] >= 3
    record(3, ok, f"{t['passCount']}/{t['hypothesisCount']}")


def _regressions():
    out = []
    z6, z4, m2, m3 = ring("Z(6)"), ring("Z(4)"), ring("M(2,Z(2))"), ring("M(2,Z(3))")
    zi = ring("Quot(Z(3),x^2+1,-x)")
    for kind in ("regular", "unitRegular"):
        out.append((f"Z6 {kind}", bool(CL.decide_regularity(z6, kind))))
    out.append(("Z6 Baer*", bool(is_ring_class(z6, RingClass.BAER_STAR))))
    out.append(("Z6 *-clean", bool(CL.is_clean_variant(z6, CL.STAR_CLEAN))))
    td = AX.type_decompose(z6)
    out.append(("Z6 type I1", td.c_I == z6.one and td.homogeneous_orders == [1, 1]))

    out.append(("Z4 clean", bool(CL.is_clean_variant(z4, CL.CLEAN))))
    v = is_ring_class(z4, RingClass.RIGHT_RICKART)
    out.append(("Z4 not right Rickart, witness 2", not v and v.witness == 2))
    for side in (Side.LEFT, Side.RIGHT):
        out.append((f"Z4 {side.value} morphic", bool(MO.is_morphic(z4, side))))
        out.append((f"Z4 {side.value} P-injective", bool(MO.is_p_injective(z4, side))))
    out.append(("Z4 not regular", not CL.decide_regularity(z4, "regular")))

    v = involution_is_proper(m2)
    out.append(("M2(F2) improper, witness [[1,1],[1,1]]", not v and v.witness == el(m2, "[[1,1],[1,1]]")))
    out.append(("M2(F2) unit-regular", bool(CL.decide_regularity(m2, "unitRegular"))))
    out.append(("M2(F2) *-clean", bool(CL.is_clean_variant(m2, CL.STAR_CLEAN))))
    out.append(("M2(F2) not Rickart*", not is_ring_class(m2, RingClass.RICKART_STAR)))

    out.append(("M2(F3) proper", bool(involution_is_proper(m3))))
    out.append(("M2(F3) Baer*", bool(is_ring_class(m3, RingClass.BAER_STAR))))
    td = AX.type_decompose(m3)
    piece = td.pieces[0]
    out.append(("M2(F3) type I2", td.c_I == m3.one and td.homogeneous_orders == [2]))
    out.append(("M2(F3) partition {e11, e22}",
                sorted(piece.partition) == sorted([el(m3, "[[1,0],[0,0]]"), el(m3, "[[0,0],[0,1]]")])))
    out.append(("M2(F3) witness e21", piece.witnesses[1] == el(m3, "[[0,0],[1,0]]")))
    e = AX.check_axiom(m3, "A2-EP")
    out.append(("M2(F3) EP fails at [[1,1],[1,2]]", not e and e.witness == el(m3, "[[1,1],[1,2]]")))

    out.append(("Z3[i] A5 holds", bool(AX.check_axiom(zi, "A5"))))
    e = AX.check_axiom(zi, "A4")
    out.append(("Z3[i] A4 fails at 1+i", not e and e.witness == el(zi, "<1,1>")))
    out.append(("Z7 A4 holds", bool(AX.check_axiom(ring("Z(7)"), "A4"))))
    return out


def test_criterion_04_regressions():
    rows = _regressions()
    bad = [name for name, ok in rows if not ok]
    record(4, not bad, f"{len(rows) - len(bad)}/{len(rows)} frozen values" + (f"; failed: {bad}" if bad else ""))


def test_criterion_05_matrix_over_z6():
    t0 = time.perf_counter()
    m = build_ring(parse_ring_spec("M(2,Z(6))"))  # fresh, so the build is timed too
    v = CL.is_clean_variant(m, CL.STAR_CLEAN)
    dt = time.perf_counter() - t0
    record(5, m.order == 1296 and v.value and dt <= 10, f"order {m.order}, *-clean {v.value}, {dt:.2f}s")


def test_criterion_06_peirce():
    z6 = ring("Z(6)")
    dec = peirce_central_decompose(z6)
    ok = dec.family == [3, 4] and dec.orders == [2, 3] and dec.check.ok
    record(6, ok, f"family {dec.family}, orders {dec.orders}, iso {dec.check.ok}")


def test_criterion_07_literature(suite):
    report = suite[0]
    lit = _theorem(report, "L-LIT")
    cm = _theorem(report, "C-MORPHIC")
    visible = "vacuous" in cm and cm["vacuous"] == (cm["hypothesisCount"] == 0)
    ok = not lit["counterexamples"] and lit["passCount"] == lit["corpusSize"] and visible
    tag = "VACUOUS" if cm["vacuous"] else f"{cm['passCount']}/{cm['hypothesisCount']}"
    record(7, ok, f"L-LIT {lit['passCount']}/{lit['hypothesisCount']}; C-MORPHIC hypothesisCount "
                  f"{cm['hypothesisCount']} ({tag}, reported)")


def test_criterion_08_oracles(suite):
    rows = [c for c in suite[0]["corpus"] if c["order"] <= 64]
    morph = [c["spec"] for c in rows if c["properties"]["morphicOracleAgree"] is not True]
    pinj = [c["spec"] for c in rows if c["properties"]["pInjectiveLiteralAgree"] is not True]
    record(8, rows and not morph and not pinj,
           f"{len(rows)} rings of order <= 64; morphic disagreements {morph}, P-injective disagreements {pinj}")


def test_criterion_09_determinism(suite):
    first, second, _ = suite
    a, b = emit_report(first), emit_report(second)
    n, failures = verify_report(json.loads(a))
    record(9, a == b and n > 0 and not failures,
           f"byte-identical {a == b}; {n - len(failures)}/{n} witnesses verified")


def test_criterion_10_performance(suite):
    first, _, cold = suite
    n = len(first["corpus"])
    big = max(c["order"] for c in first["corpus"])
    ok = cold <= 300 and n >= 30 and exit_status(first) == 0
    record(10, ok, f"{n} rings (max order {big}) in {cold:.1f}s, exit status {exit_status(first)}")

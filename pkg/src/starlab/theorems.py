"""Theorems as quantified checks over a corpus: a hypothesis predicate, a
conclusion predicate, and an honest count of how often the hypothesis held."""
from __future__ import annotations

import itertools
import random
import time
import zlib
from dataclasses import dataclass, field
from typing import Callable

from . import clean as CL
from . import expr as E
from . import witnesses as W
from .lattice import peirce_central_decompose
from .morphic import literature_checks, morphic_fast_witness
from .classify import Side
from .properties import RingRecord
from .rings import corner_ring, generated_subring

MAX_CERTIFICATES = 3
MATRIX_BASE_CAP = 6
LIFT_CAP = 256
EMBED_CAP = 256
EMBED_EXTRAS = 2
TYPE_AXIOMS = ("A1", "A2-EP", "A2-UPSR", "A3", "A4", "A5", "A6")
SUBSET_AXIOMS = ("A2-EP", "A2-UPSR", "A4", "A5", "A6")


@dataclass
class Instance:
    """One evaluation: status is skip (over cap), none (hypothesis false),
    pass or fail."""
    status: str
    witnesses: list = field(default_factory=list)
    note: str = ""
    ring: str | None = None
    tags: dict = field(default_factory=dict)


@dataclass
class Theorem:
    id: str
    anchor: str
    check: Callable
    summary: Callable | None = None  # extra report data from all instances


class Context:
    """Shared state for one run: record factory (for derived rings) and seed."""

    def __init__(self, seed: int = 0, cache=None):
        self.seed = seed
        self.cache = cache
        self._records = {}
        self._memo = {}

    def record(self, expr) -> RingRecord:
        spec_key = expr
        if spec_key not in self._records:
            self._records[spec_key] = RingRecord(expr, self.cache)
        return self._records[spec_key]

    def adopt(self, rec: RingRecord):
        self._records.setdefault(rec.expr, rec)

    def memo(self, key, build):
        if key not in self._memo:
            self._memo[key] = build()
        return self._memo[key]

    def save(self):
        for rec in self._records.values():
            rec.save()


def _sample(N: int) -> list:
    return sorted({min(1, N - 1), N // 2, N - 1})


def _props(rec, *names) -> list:
    return [W.property_record(rec.spec, n, rec.get(n)) for n in names]


def _ok(status) -> bool:
    return status is not None and status != "fails"


def _implies(a, b) -> bool:
    return not a or b


# --- Camillo-Khurana ---------------------------------------------------------

def _t_ck(rec, ctx, cert):
    if rec.order > 512:
        return [Instance("skip")]
    ur, ck = rec.get("unitRegular"), rec.get("clean-ck")
    ring, spec = (rec.ring, rec.spec) if (cert or ur != ck) else (None, None)
    wits = []
    if ring is not None:
        if ur:
            a_bad = None
        else:
            a_bad = CL.decide_regularity(ring, "unitRegular").witness
        b_bad = None if ck else CL.is_clean_variant(ring, CL.CK).witness
        elems = [a for a in (a_bad, b_bad) if a is not None] or _sample(ring.order)
        for a in elems:
            wits.append(W.inner_unit_record(ring, spec, a))
            wits.append(W.clean_or_failure(ring, spec, a, CL.CK))
    if ur != ck:
        return [Instance("fail", wits + _props(rec, "unitRegular", "clean-ck"))]
    return [Instance("pass", wits)]


def _t_ck_star(rec, ctx, cert):
    if rec.order > 512:
        return [Instance("skip")]
    if not rec.get("star-clean-ck"):
        return [Instance("none")]
    ok = rec.get("unitRegular")
    wits = []
    if cert or not ok:
        ring = rec.ring
        elems = _sample(ring.order) if ok else [CL.decide_regularity(ring, "unitRegular").witness]
        for a in elems:
            wits.append(W.clean_or_failure(ring, rec.spec, a, CL.CK_STAR))
            wits.append(W.inner_unit_record(ring, rec.spec, a))
    return [Instance("pass" if ok else "fail", wits)]


# --- abelian Rickart *-rings -----------------------------------------------

def _abelian_rickart(rec):
    return rec.get("abelian") and rec.get("rickartStar")


def _l_abelian_1(rec, ctx, cert):
    if not _abelian_rickart(rec):
        return [Instance("none")]
    ok = rec.get("idempotents") == rec.get("projections")
    wits = _props(rec, "idempotents", "projections") if cert or not ok else []
    if not ok:
        ring = rec.ring
        bad = [int(e) for e in ring.idempotents if ring.star(int(e)) != int(e)]
        wits.append(W.record(ring, rec.spec, "idempotentNotProjection", element=bad[0]))
    return [Instance("pass" if ok else "fail", wits)]


def _l_abelian_2(rec, ctx, cert):
    if not rec.get("rickartStar"):
        return [Instance("none")]
    ok = rec.get("abelian") == rec.get("starAbelian")
    wits = _props(rec, "abelian", "starAbelian") if cert or not ok else []
    return [Instance("pass" if ok else "fail", wits)]


def _l_abelian_3(rec, ctx, cert):
    if not _abelian_rickart(rec):
        return [Instance("none")]
    names = ("clean", "star-clean", "strongly-clean")
    vals = [rec.get(n) for n in names]
    ok = len(set(vals)) == 1
    wits = []
    if cert or not ok:
        ring = rec.ring
        for a in _sample(ring.order):
            for n in names:
                wits.append(W.clean_or_failure(ring, rec.spec, a, CL.MODES[n]))
        wits += _props(rec, *names)
    return [Instance("pass" if ok else "fail", wits)]


def _l_abelian_4(rec, ctx, cert):
    if not _abelian_rickart(rec):
        return [Instance("none")]
    names = ("almost-clean", "almost-star-clean", "almost-strongly-star-clean")
    bad = [n for n in names if not rec.get(n)]
    wits = []
    if cert or bad:
        ring = rec.ring
        for n in names:
            elems = [CL.is_clean_variant(ring, CL.MODES[n]).witness] if n in bad else _sample(ring.order)
            wits += [W.clean_or_failure(ring, rec.spec, a, CL.MODES[n]) for a in elems]
    return [Instance("fail" if bad else "pass", wits)]


def _p_cleanreg(rec, ctx, cert):
    if not (rec.get("starRegular") and rec.get("abelian")):
        return [Instance("none")]
    name = CL.STRONGLY_CK_STAR.name
    ok = rec.get(name)
    wits = []
    if cert or not ok:
        ring = rec.ring
        elems = _sample(ring.order) if ok else [CL.is_clean_variant(ring, CL.STRONGLY_CK_STAR).witness]
        wits = [W.clean_or_failure(ring, rec.spec, a, CL.STRONGLY_CK_STAR) for a in elems]
    return [Instance("pass" if ok else "fail", wits)]


# --- corners and matrices ----------------------------------------------------------

def _star_clean_corner(ring, p) -> bool:
    return CL.is_clean_variant(corner_ring(ring, p), CL.STAR_CLEAN).value


def _p_matrix_1(rec, ctx, cert):
    if rec.order > LIFT_CAP:
        return [Instance("skip")]
    ring = rec.ring
    one = ring.one
    p = next((int(p) for p in ring.projections if int(p) not in (0, one)
              and _star_clean_corner(ring, int(p)) and _star_clean_corner(ring, ring.sub(one, int(p)))), None)
    if p is None:
        return [Instance("none")]
    sources, failed = {}, None
    lifted = {}
    for a in range(ring.order):
        try:
            w = CL.lift_corner_witnesses(ring, p, None, None, a)
        except CL.LiftFailed:
            failed = a
            break
        sources[w.source] = sources.get(w.source, 0) + 1
        lifted[a] = w
    ok = failed is None and rec.get("star-clean")
    wits = []
    if cert or not ok:
        wits.append(W.property_record(rec.spec, "star-clean", rec.get("star-clean")))
        if failed is not None:
            wits.append(W.record(ring, rec.spec, "notClean", mode="star-clean", element=failed))
        else:
            wits += [W.clean_record(ring, rec.spec, lifted[a]) for a in _sample(ring.order)]
    return [Instance("pass" if ok else "fail", wits, note=f"p={ring.render(p)}", tags={"sources": sources})]


def _lift_summary(instances):
    total = {}
    for ins in instances:
        for k, v in ins.tags.get("sources", {}).items():
            total[k] = total.get(k, 0) + v
    return {"liftSources": dict(sorted(total.items()))}


def greedy_projection_family(ring) -> list:
    """Split 1 by repeatedly taking the least nonzero projection below the remainder."""
    rest, fam = ring.one, []
    while rest != 0:
        p = next(int(p) for p in ring.projections if int(p) != 0 and ring.mul(int(p), rest) == int(p))
        fam.append(p)
        rest = ring.sub(rest, p)
    return fam


def _p_matrix_2(rec, ctx, cert):
    if rec.order > LIFT_CAP:
        return [Instance("skip")]
    ring = rec.ring
    fam = greedy_projection_family(ring)
    if len(fam) < 2 or not all(_star_clean_corner(ring, p) for p in fam):
        return [Instance("none")]
    ok = rec.get("star-clean")
    wits = []
    if cert or not ok:
        wits = [W.record(ring, rec.spec, "orthogonalFamily", family=fam),
                W.property_record(rec.spec, "star-clean", ok)]
    return [Instance("pass" if ok else "fail", wits, note=f"family of {len(fam)}")]


def _p_matrix_3(rec, ctx, cert):
    if rec.order > MATRIX_BASE_CAP:
        return [Instance("skip")]
    if not rec.get("star-clean"):
        return [Instance("none")]
    big = ctx.record(E.Matrix(2, rec.expr))
    ok = big.get("star-clean")
    wits = []
    if cert or not ok:
        wits.append(W.property_record(big.spec, "star-clean", ok))
        ring = big.ring
        if ok:
            wits += [W.clean_or_failure(ring, big.spec, a, CL.STAR_CLEAN) for a in _sample(ring.order)]
        else:
            wits.append(W.clean_or_failure(ring, big.spec, CL.is_clean_variant(ring, CL.STAR_CLEAN).witness,
                                           CL.STAR_CLEAN))
    return [Instance("pass" if ok else "fail", wits, ring=big.spec)]


# --- embeddings ------------------------------------------------------------------

def embedding_pairs(rec, ctx) -> list:
    """Subrings S generated by all projections of R plus a few seeded
    elements, kept when S has exactly the projections of R."""
    def build():
        if rec.order > EMBED_CAP:
            return None
        if not (rec.get("star-clean") and rec.get("regular")):
            return []
        ring = rec.ring
        projs = tuple(int(p) for p in ring.projections)
        rng = random.Random(ctx.seed ^ zlib.crc32(rec.spec.encode()))
        extras = [()] + [(rng.randrange(ring.order),) for _ in range(EMBED_EXTRAS)]
        out, seen = [], set()
        for ex in extras:
            gens = tuple(sorted(set(projs + ex)))
            sub = generated_subring(ring, gens)
            members = tuple(sub.members.tolist())
            if members in seen:
                continue
            seen.add(members)
            sub_projs = sorted(int(x) for x in sub.members[sub.projections])
            if sub_projs != sorted(projs):
                continue
            out.append(ctx.record(E.GenSub(rec.expr, gens)))
        return out
    return ctx.memo(("embed", rec.expr), build)


def _embed(hyp_name, concl_name):
    def check(rec, ctx, cert):
        pairs = embedding_pairs(rec, ctx)
        if pairs is None:
            return [Instance("skip")]
        if not pairs:
            return [Instance("none")]
        out = []
        for S in pairs:
            if hyp_name and not S.get(hyp_name):
                out.append(Instance("none", ring=S.spec))
                continue
            ok = S.get(concl_name)
            wits = []
            if cert or not ok:
                ring = S.ring
                mode = CL.MODES[concl_name]
                elems = _sample(ring.order) if ok else [CL.is_clean_variant(ring, mode).witness]
                wits = [W.clean_or_failure(ring, S.spec, a, mode) for a in elems]
                wits.append(W.property_record(S.spec, "projections", S.get("projections")))
            out.append(Instance("pass" if ok else "fail", wits, ring=S.spec))
            cert = False
        return out
    return check


# --- conditions of the abelian family ---------------------------------------------

COND_CAP = 729


def _armendariz_sound(rec):
    """The bounded Armendariz verdict, or None when degree 1 was not fully covered."""
    cov = rec.get("armendarizCoveredDegree")
    return rec.get("armendarizBounded") if cov is not None and cov >= 1 else None


def _r_conditions(rec, ctx, cert):
    if rec.order > COND_CAP:
        return [Instance("skip")]
    if not rec.get("rightRickart"):
        return [Instance("none")]
    names = ["abelian", "semicommutative", "symmetric", "reduced"]
    vals = [rec.get(n) for n in names]
    arm = _armendariz_sound(rec)
    if arm is not None:
        names.append("armendarizBounded")
        vals.append(arm)
    ok = len(set(vals)) == 1
    wits = _props(rec, *names) if cert or not ok else []
    return [Instance("pass" if ok else "fail", wits)]


def _r_chains(rec, ctx, cert):
    if rec.order > COND_CAP:
        return [Instance("skip")]
    red, sym, semi, ab = (rec.get(n) for n in ("reduced", "symmetric", "semicommutative", "abelian"))
    arm = _armendariz_sound(rec)
    links = {
        "reduced => symmetric": _implies(red, sym),
        "symmetric => semicommutative": _implies(sym, semi),
        "semicommutative => abelian": _implies(semi, ab),
    }
    if arm is not None:
        links["reduced => armendariz"] = _implies(red, arm)
        links["armendariz => abelian"] = _implies(arm, ab)
    bad = [k for k, v in links.items() if not v]
    wits = []
    if cert or bad:
        wits = _props(rec, "reduced", "symmetric", "semicommutative", "abelian")
        if arm is not None:
            wits += _props(rec, "armendarizBounded", "armendarizCoveredDegree")
    return [Instance("fail" if bad else "pass", wits, note="; ".join(bad))]


# --- types --------------------------------------------------------------------

TYPE_CAP = 1296


def _clean_conclusion(rec):
    """almost *-clean, and *-clean when regular."""
    return rec.get("almost-star-clean") and _implies(rec.get("regular"), rec.get("star-clean"))


def _clean_conclusion_wits(rec):
    ring = rec.ring
    wits = _props(rec, "almost-star-clean", "regular", "star-clean")
    for name in ("almost-star-clean", "star-clean"):
        v = CL.is_clean_variant(ring, CL.MODES[name])
        if not v.value:
            wits.append(W.clean_or_failure(ring, rec.spec, v.witness, CL.MODES[name]))
    return wits


def _t_in(rec, ctx, cert):
    if rec.order > TYPE_CAP:
        return [Instance("skip")]
    if not rec.get("baerStar"):
        return [Instance("none")]
    info = rec.get("types")
    if info["homogeneousOrder"] is None or not _ok(rec.get("A2-EP")):
        return [Instance("none")]
    ok = _clean_conclusion(rec)
    wits = _clean_conclusion_wits(rec) if cert or not ok else []
    return [Instance("pass" if ok else "fail", wits, note=f"I_{info['homogeneousOrder']}",
                     tags={"upsr": _ok(rec.get("A2-UPSR"))})]


def _t_in_summary(instances):
    hyp = [i for i in instances if i.status in ("pass", "fail") and i.tags.get("upsr")]
    return {"withUPSR": {"hypothesisCount": len(hyp), "passCount": sum(i.status == "pass" for i in hyp)}}


def _axioms_ok(rec, names) -> bool:
    return all(_ok(rec.get(a)) for a in names)


def _t_if(rec, ctx, cert):
    if rec.order > TYPE_CAP:
        return [Instance("skip")]
    if not rec.get("baerStar"):
        return [Instance("none")]
    info = rec.get("types")
    tags = {"axioms": {a: _ok(rec.get(a)) for a in SUBSET_AXIOMS}, "concl": bool(_clean_conclusion(rec))}
    if not info["If"]:
        return [Instance("none", tags={})]
    if not _axioms_ok(rec, TYPE_AXIOMS):
        return [Instance("none", tags=tags)]
    ok = _clean_conclusion(rec)
    wits = _clean_conclusion_wits(rec) if cert or not ok else []
    return [Instance("pass" if ok else "fail", wits, tags=tags)]


def _subset_summary(instances):
    """Per subset of the axioms: how many hypothesis-class rings satisfy it,
    and how many of those satisfy the conclusion."""
    pool = [i.tags for i in instances if i.tags.get("axioms")]
    rows = []
    for k in range(len(SUBSET_AXIOMS) + 1):
        for sub in itertools.combinations(SUBSET_AXIOMS, k):
            hit = [t for t in pool if all(t["axioms"][a] for a in sub)]
            rows.append({"axioms": list(sub), "hypothesisCount": len(hit),
                         "passCount": sum(bool(t["concl"]) for t in hit)})
    return {"axiomSubsets": rows}


MORPHIC_NAMES = ("regular", "unitRegular", "leftMorphic", "rightMorphic", "leftQuasiMorphic", "rightQuasiMorphic")


def _c_morphic(rec, ctx, cert):
    if rec.order > TYPE_CAP:
        return [Instance("skip")]
    if not rec.get("baerStar"):
        return [Instance("none")]
    vals = [rec.get(n) for n in MORPHIC_NAMES]
    tags = {"axioms": {a: _ok(rec.get(a)) for a in SUBSET_AXIOMS}, "concl": len(set(vals)) == 1}
    if not _axioms_ok(rec, TYPE_AXIOMS):
        return [Instance("none", tags=tags)]
    ok = tags["concl"]
    wits = _props(rec, *MORPHIC_NAMES) if cert or not ok else []
    return [Instance("pass" if ok else "fail", wits, tags=tags)]


# --- Peirce and literature ------------------------------------------------------

def _p_peirce(rec, ctx, cert):
    ring = rec.ring
    dec = peirce_central_decompose(ring)
    pieces = [CL.is_clean_variant(c, CL.STAR_CLEAN).value for c in dec.corners]
    ok = dec.check.ok and rec.get("star-clean") == all(pieces)
    wits = []
    if cert or not ok:
        wits = [W.record(ring, rec.spec, "peirce", family=dec.family, orders=dec.orders),
                W.property_record(rec.spec, "star-clean", rec.get("star-clean"))]
    return [Instance("pass" if ok else "fail", wits, note=f"{len(dec.family)} pieces")]


LIT_NAMES = ("unitRegular", "regular", "rightMorphic", "leftMorphic", "rightRickart", "leftRickart",
             "rightQuasiMorphic", "leftQuasiMorphic", "leftPInjective", "rightPInjective")


def _l_lit(rec, ctx, cert):
    v = {n: rec.get(n) for n in LIT_NAMES}
    bad = [k for k, ok in literature_checks(v).items() if not ok]
    oracle = None
    if rec.order <= 64:
        oracle = rec.get("morphicOracleAgree") and rec.get("pInjectiveLiteralAgree")
        if not oracle:
            bad.append("oracle disagreement")
    wits = []
    if cert or bad:
        wits = _props(rec, *LIT_NAMES)
        if oracle is not None:
            wits += _props(rec, "morphicOracleAgree", "pInjectiveLiteralAgree")
        ring = rec.ring
        for side in (Side.RIGHT, Side.LEFT):
            for a in _sample(ring.order):
                y = morphic_fast_witness(ring, a, side)
                if y is not None:
                    wits.append(W.record(ring, rec.spec, "morphic", side=side.value, element=a, partner=int(y)))
    return [Instance("fail" if bad else "pass", wits, note="; ".join(bad), tags={"oracle": oracle})]


def _l_lit_summary(instances):
    checked = [i.tags["oracle"] for i in instances if i.tags.get("oracle") is not None]
    return {"oracleCrossCheck": {"rings": len(checked), "agree": sum(bool(c) for c in checked)}}


# --- registry ---------------------------------------------------------------------

THEOREMS = [
    Theorem("T-CK", "unit-regular iff every element is a unit plus an idempotent e with aR and eR meeting only in 0", _t_ck),
    Theorem("T-CK-STAR", "such decompositions with a projection for every element imply unit-regularity", _t_ck_star),
    Theorem("L-ABELIAN-1", "abelian Rickart *-ring: every idempotent is a projection", _l_abelian_1),
    Theorem("L-ABELIAN-2", "Rickart *-ring: abelian iff *-abelian", _l_abelian_2),
    Theorem("L-ABELIAN-3", "abelian Rickart *-ring: *-clean iff clean iff strongly clean", _l_abelian_3),
    Theorem("L-ABELIAN-4", "abelian Rickart *-ring: almost clean, almost *-clean, almost strongly *-clean",
            _l_abelian_4),
    Theorem("P-MATRIX-1", "both corners of a projection *-clean implies the ring is *-clean (witnesses lifted)",
            _p_matrix_1, _lift_summary),
    Theorem("P-MATRIX-2", "all corners of an orthogonal projection family summing to 1 *-clean implies *-clean",
            _p_matrix_2),
    Theorem("P-MATRIX-3", "R *-clean implies 2x2 matrices over R *-clean", _p_matrix_3),
    Theorem("P-CLEANREG", "*-regular abelian: every a = u + p, p a projection, u p = p u, aR and pR meet in 0",
            _p_cleanreg),
    Theorem("P-EMBED-1", "subring sharing all projections of a *-clean regular ring is almost *-clean",
            _embed(None, "almost-star-clean")),
    Theorem("P-EMBED-2", "such a subring that is regular is *-clean", _embed("regular", "star-clean")),
    Theorem("P-EMBED-3", "such a subring that is abelian is almost strongly *-clean",
            _embed("abelian", "almost-strongly-star-clean")),
    Theorem("R-CONDITIONS", "right Rickart: abelian, semicommutative, symmetric, Armendariz, reduced coincide",
            _r_conditions),
    Theorem("R-CHAINS", "reduced => symmetric => semicommutative => abelian; reduced => Armendariz => abelian",
            _r_chains),
    Theorem("T-IN", "Baer *-ring of type I_n with the EP-axiom is almost *-clean (*-clean when regular)",
            _t_in, _t_in_summary),
    Theorem("T-IF", "finite type I Baer *-ring with the axioms A1-A6 is almost *-clean (*-clean when regular)",
            _t_if, _subset_summary),
    Theorem("P-PEIRCE", "central Peirce pieces give a *-isomorphism onto their product; *-clean iff every piece is",
            _p_peirce),
    Theorem("C-MORPHIC", "Baer *-ring with A1-A6: regular, unit-regular, morphic and quasi-morphic on both sides agree",
            _c_morphic, _subset_summary),
    Theorem("L-LIT", "cited equivalences and implications among unit-regular, morphic, quasi-morphic, P-injective",
            _l_lit, _l_lit_summary),
]
THEOREM_IDS = [t.id for t in THEOREMS]
BY_ID = {t.id: t for t in THEOREMS}


def run_theorem(theorem, records, ctx: Context | None = None, timings: bool = False) -> dict:
    """Evaluate one theorem over corpus records; returns a report dict."""
    if isinstance(theorem, str):
        theorem = BY_ID[theorem]
    ctx = ctx or Context()
    for rec in records:
        ctx.adopt(rec)
    t0 = time.perf_counter()
    instances, skipped = [], []
    certificates, counterexamples = [], []
    hyp = passed = 0
    for rec in records:
        want = len(certificates) < MAX_CERTIFICATES
        for ins in theorem.check(rec, ctx, want):
            instances.append(ins)
            spec = ins.ring or rec.spec
            if ins.status == "skip":
                skipped.append(spec)
            elif ins.status == "pass":
                hyp += 1
                passed += 1
                if ins.witnesses and len(certificates) < MAX_CERTIFICATES:
                    certificates.append({"ring": spec, "note": ins.note, "witnesses": ins.witnesses})
            elif ins.status == "fail":
                hyp += 1
                counterexamples.append({"ring": spec, "note": ins.note, "witnesses": ins.witnesses})
    out = {
        "id": theorem.id,
        "anchor": theorem.anchor,
        "corpusSize": len(records),
        "hypothesisCount": hyp,
        "passCount": passed,
        "counterexamples": counterexamples,
        "vacuous": hyp == 0,
        "millis": round((time.perf_counter() - t0) * 1000) if timings else None,
        "skipped": skipped,
        "certificates": certificates,
    }
    if theorem.summary:
        out["extra"] = theorem.summary(instances)
    return out

"""Searches for rings exhibiting the patterns asked about in the open questions."""
from __future__ import annotations

import random

from . import clean as CL
from . import witnesses as W
from .corpus import ring_order
from .properties import RingRecord
from .rings import InvalidExpr, TooLarge
from .spectext import SemanticError, SpecSyntaxError, parse_ring_spec

QUESTIONS = ("Q1", "Q2", "Q3proxy", "Q4", "A4A5")
HUNT_MAX_ORDER = 256
HUNT_AXIOMS = ("A1", "A2-EP", "A2-UPSR", "A3", "A4", "A5", "A6")

PATTERNS = {
    "Q1": "clean and not *-clean",
    "Q2": "Baer * of finite type I with A1-A6, clean and not regular",
    "Q3proxy": "Baer * with a nonzero type II part",
    "Q4": "unit-regular and *-regular but not strongly *-clean",
    "A4A5": "A4 and A5 hold together",
}

_SEEDS = ["P(GF(3,1),GF(3,1))@swap(1,0)", "M(2,Z(3))", "Z(6)", "M(2,Z(2))", "P(GF(2,2),GF(2,2))@swap(1,0)",
          "GF(3,2)@frob(1)", "P(Z(3),Z(3))@swap(1,0)", "Quot(Z(3),x^2+1,-x)", "P(M(2,Z(2)),Z(3))"]
_BASES = ["Z(2)", "Z(3)", "Z(4)", "Z(5)", "Z(6)", "Z(7)", "Z(8)", "Z(9)", "GF(2,2)", "GF(2,2)@frob(1)",
          "GF(3,2)@frob(1)", "Quot(Z(3),x^2+1,-x)"]
_SMALL_BASES = ["Z(2)", "Z(3)", "Z(4)", "GF(2,2)", "GF(2,2)@frob(1)"]
_GROUPS = ["C(2)", "C(3)", "C(4)", "C(5)", "C(6)", "D(3)", "C(2)xC(2)", "D(4)"]


def _random_candidate(rng: random.Random) -> str:
    kind = rng.choice(["product", "product", "swap", "matrix", "groupring", "quot", "corner", "sub"])
    if kind == "product":
        k = rng.choice([2, 2, 3])
        return "P(" + ",".join(rng.choice(_BASES) for _ in range(k)) + ")"
    if kind == "swap":
        b = rng.choice(_BASES)
        return f"P({b},{b})@swap(1,0)"
    if kind == "matrix":
        return f"M(2,{rng.choice(_SMALL_BASES)})"
    if kind == "groupring":
        return f"GR({rng.choice(_GROUPS)},{rng.choice(['Z(2)', 'Z(3)', 'Z(4)', 'Z(5)', 'GF(2,2)'])})"
    if kind == "quot":
        p = rng.choice([2, 3, 5, 7])
        mod = f"x^2+{rng.randrange(p)}x+{rng.randrange(p)}"
        img = rng.choice(["x", "-x", f"{rng.randrange(p)}x+{rng.randrange(p)}"])
        return f"Quot(Z({p}),{mod},{img})"
    n = rng.choice([2, 3, 4])
    m = [[rng.randrange(n) for _ in range(2)] for _ in range(2)]
    lit = f"[[{m[0][0]},{m[0][1]}],[{m[1][0]},{m[1][1]}]]"
    if kind == "corner":
        return f"Corner(M(2,Z({n})),{lit})"
    return f"Sub(M(2,Z({n})),{lit})"


def candidates(seed: int = 0, max_order: int = HUNT_MAX_ORDER):
    """Distinct valid ring expressions: fixed seeds first, then random ones."""
    rng = random.Random(seed)
    seen = set()
    texts = iter(_SEEDS)
    misses = 0
    while misses < 500:
        text = next(texts, None) or _random_candidate(rng)
        try:
            expr = parse_ring_spec(text)
            if expr in seen or ring_order(expr) > max_order:
                raise InvalidExpr("skip")
        except (SpecSyntaxError, SemanticError, InvalidExpr, TooLarge, ValueError):
            misses += 1
            continue
        misses = 0
        seen.add(expr)
        yield expr


def _q1(rec):
    if rec.get("abelian") and rec.get("rickartStar"):
        return "skip", []
    if not rec.get("clean"):
        return "out", []
    if rec.get("star-clean"):
        return "in", []
    ring = rec.ring
    a = CL.is_clean_variant(ring, CL.STAR_CLEAN).witness
    return "finding", [W.clean_or_failure(ring, rec.spec, a, CL.STAR_CLEAN),
                       W.clean_or_failure(ring, rec.spec, a, CL.CLEAN),
                       W.property_record(rec.spec, "clean", True)]


def _q2(rec):
    if not rec.get("baerStar"):
        return "out", []
    info = rec.get("types")
    if info is None or not info["If"] or not all(rec.get(a) not in (None, "fails") for a in HUNT_AXIOMS):
        return "out", []
    if rec.get("regular") or not rec.get("clean"):
        return "in", []
    ring = rec.ring
    a = CL.decide_regularity(ring, "regular").witness
    return "finding", [W.record(ring, rec.spec, "noInner", element=a), W.property_record(rec.spec, "clean", True),
                       W.property_record(rec.spec, "types", info)]


def _q3(rec):
    if not rec.get("baerStar"):
        return "out", []
    info = rec.get("types")
    if info is None or info["cII"] == 0:
        return "in", []
    return "finding", [W.property_record(rec.spec, "types", info)]


def _q4(rec):
    if not (rec.get("unitRegular") and rec.get("starRegular")):
        return "out", []
    if rec.get("strongly-star-clean"):
        return "in", []
    ring = rec.ring
    a = CL.is_clean_variant(ring, CL.STRONGLY_STAR_CLEAN).witness
    return "finding", [W.clean_or_failure(ring, rec.spec, a, CL.STRONGLY_STAR_CLEAN),
                       W.property_record(rec.spec, "unitRegular", True),
                       W.property_record(rec.spec, "starRegular", True)]


def _a4a5(rec):
    # -1 is a sum of two squares a^2 + b^2 mod any prime p dividing the
    # characteristic; with i from A5, x = a + bi makes 1 + x*x lie in pR
    if not _ok(rec.get("A5")):
        return "out", []
    if not _ok(rec.get("A4")):
        return "in", []
    return "finding", [W.property_record(rec.spec, "A4", rec.get("A4")),
                       W.property_record(rec.spec, "A5", rec.get("A5"))]


def _ok(status) -> bool:
    return status is not None and status != "fails"


_TESTS = {"Q1": _q1, "Q2": _q2, "Q3proxy": _q3, "Q4": _q4, "A4A5": _a4a5}


def hunt_counterexample(question: str, budget: int = 40, seed: int = 0, cache=None, max_findings: int = 5) -> dict:
    """Examine up to ``budget`` candidate rings; ``inClass`` counts rings
    meeting the pattern's premises, ``findings`` those exhibiting it."""
    if question not in _TESTS:
        raise ValueError(f"unknown question {question!r}; expected one of {QUESTIONS}")
    if budget < 0:
        raise ValueError("budget must be >= 0")
    test = _TESTS[question]
    examined, in_class, skipped, findings = 0, 0, [], []
    if budget:
        for expr in candidates(seed):
            rec = RingRecord(expr, cache)
            status, wits = test(rec)
            rec.save()
            examined += 1
            if status == "skip":
                skipped.append(rec.spec)
            elif status in ("in", "finding"):
                in_class += 1
            if status == "finding" and len(findings) < max_findings:
                findings.append({"ring": rec.spec, "order": rec.order, "witnesses": wits})
            if examined >= budget:
                break
    return {
        "question": question,
        "pattern": PATTERNS[question],
        "budget": budget,
        "seed": seed,
        "examined": examined,
        "inClass": in_class,
        "skipped": skipped,
        "findings": findings,
        "status": "BudgetExhausted",
    }

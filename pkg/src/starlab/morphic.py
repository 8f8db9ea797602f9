"""Abelian-type ring conditions, morphic / quasi-morphic / P-injective rings,
and a module-isomorphism oracle for cyclic modules."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .classify import (RingClass, Side, Verdict, is_ring_class, key, left_anns, left_ideals, right_anns,
                       right_ideals)
from .clean import decide_regularity
from .lattice import is_abelian_ring, is_star_abelian_ring
from .rings import FiniteStarRing, span_generators

DEFAULT_ARMENDARIZ_DEGREE = 4
DEFAULT_ARMENDARIZ_BUDGET = 200_000
DEFAULT_ORACLE_CAP = 512


class SizeBound(RuntimeError):
    pass


CONDITIONS = ("Abelian", "Semicommutative", "Symmetric", "Armendariz", "Reduced", "StarAbelian")


# --- ring conditions --------------------------------------------------------

def is_reduced(ring: FiniteStarRing) -> Verdict:
    """No nonzero nilpotents (equivalently no nonzero x with x^2 = 0)."""
    bad = np.flatnonzero((ring.square_all == 0) & (ring.elements != 0))
    return Verdict(False, int(bad[0])) if len(bad) else Verdict(True)


def is_semicommutative(ring: FiniteStarRing) -> Verdict:
    """ab = 0 implies aRb = 0; witness (a, r, b)."""
    anns = right_anns(ring)
    ideals = right_ideals(ring)
    for a in range(ring.order):
        B = np.flatnonzero(anns[a])
        if len(B) <= 1:
            continue
        aR = np.flatnonzero(ideals[a])
        # y b for every y in aR and b in ann_r(a)
        prods = np.asarray(ring.mul(aR[:, None], B[None, :]))
        bad = np.argwhere(prods != 0)
        if len(bad):
            y, b = int(aR[bad[0][0]]), int(B[bad[0][1]])
            r = int(np.flatnonzero(ring.row(a) == y)[0])
            return Verdict(False, (a, r, b))
    return Verdict(True)


def is_symmetric(ring: FiniteStarRing) -> Verdict:
    """rab = 0 implies rba = 0; witness (r, a, b)."""
    e = ring.elements
    ba = np.asarray(ring.mul(e[None, :], e[:, None]))  # ba[a, b] = b*a
    for r in range(ring.order):
        ra = np.asarray(ring.row(r))
        rab = np.asarray(ring.mul(ra[:, None], e[None, :]))
        rba = np.asarray(ring.mul(r, ba))
        bad = np.argwhere((rab == 0) & (rba != 0))
        if len(bad):
            return Verdict(False, (r, int(bad[0][0]), int(bad[0][1])))
    return Verdict(True)


@dataclass
class ArmendarizResult:
    value: bool
    witness: object
    degree: int
    exhaustive_degree: int  # highest degree fully covered
    note: str = "bounded approximation"

    def __bool__(self):
        return self.value


def is_armendariz_bounded(ring: FiniteStarRing, degree: int = DEFAULT_ARMENDARIZ_DEGREE,
                          budget: int = DEFAULT_ARMENDARIZ_BUDGET) -> ArmendarizResult:
    """p(x)q(x) = 0 implies p_i q_j = 0, for p, q of degree <= ``degree``.

    Degrees are searched in increasing order. For fixed p the coefficients of
    q are chosen one at a time: the x^k coefficient of pq is p_0 q_k plus terms
    already fixed, so q_k ranges over a coset of ann_r(p_0). Shifting by x
    lets us assume p_0 != 0. ``budget`` bounds search nodes per degree; the
    result states the highest degree that was covered completely.
    """
    N = ring.order
    T = ring._mul_table
    mul = (lambda a, b: T[a, b]) if T is not None else ring.mul
    # solutions of p0 * q = t, grouped by t
    solve = {}

    def solutions(p0):
        if p0 not in solve:
            row = np.asarray(ring.row(p0))
            order = np.argsort(row, kind="stable")
            vals = row[order]
            cuts = np.flatnonzero(np.diff(vals)) + 1
            groups = np.split(order, cuts)
            solve[p0] = {int(row[g[0]]): g for g in groups}
        return solve[p0]

    covered = 0
    nonzero = np.arange(1, N)
    for d in range(1, degree + 1):
        nodes = 0
        exhausted = False
        for tail in itertools.product(range(N), repeat=d):
            if tail[-1] == 0:
                continue  # degree exactly d in p
            for p0 in nonzero.tolist():
                p = (p0,) + tail
                sol = solutions(p0)
                # DFS over q_0..q_d
                stack = [()]
                while stack:
                    q = stack.pop()
                    nodes += 1
                    k = len(q)
                    if k == d + 1:
                        if _armendariz_violation(ring, p, q):
                            return ArmendarizResult(False, (p, q), degree, covered)
                        continue
                    acc = 0
                    for i in range(1, min(k, d) + 1):
                        acc = ring.add(acc, mul(p[i], q[k - i]))
                    target = ring.neg(acc)
                    for qk in sol.get(int(target), ()):
                        stack.append(q + (int(qk),))
                if nodes > budget:
                    exhausted = True
                    break
            if exhausted:
                break
        if exhausted:
            return ArmendarizResult(True, None, degree, covered, f"bounded approximation; degree {d} budget exhausted")
        covered = d
    return ArmendarizResult(True, None, degree, covered)


def _armendariz_violation(ring, p, q) -> bool:
    """pq = 0 but some p_i q_j != 0 (q has degree <= len(p)-1 and its
    coefficients up to x^deg p already vanish in pq by construction)."""
    n, m = len(p), len(q)
    for k in range(n + m - 1):
        acc = 0
        for i in range(max(0, k - m + 1), min(k, n - 1) + 1):
            acc = ring.add(acc, ring.mul(p[i], q[k - i]))
        if acc != 0:
            return False
    return any(ring.mul(a, b) != 0 for a in p for b in q)


def decide_condition(ring: FiniteStarRing, cond: str, degree: int = DEFAULT_ARMENDARIZ_DEGREE, **kw):
    cond = cond.split("(")[0]
    if cond == "Abelian":
        return is_abelian_ring(ring)
    if cond == "StarAbelian":
        return is_star_abelian_ring(ring)
    if cond == "Semicommutative":
        return is_semicommutative(ring)
    if cond == "Symmetric":
        return is_symmetric(ring)
    if cond == "Reduced":
        return is_reduced(ring)
    if cond in ("Armendariz", "ArmendarizBounded"):
        return is_armendariz_bounded(ring, degree, **kw)
    raise ValueError(f"unknown condition {cond!r}")


@dataclass
class ConditionsReport:
    values: dict
    right_rickart: bool
    equivalence_asserted: bool
    equivalent: bool | None
    chains_hold: bool
    chain_failures: list = field(default_factory=list)


CHAINS = [("Reduced", "Symmetric"), ("Symmetric", "Semicommutative"), ("Semicommutative", "Abelian"),
          ("Armendariz", "Abelian")]


def conditions_equivalence_check(ring: FiniteStarRing, degree: int = DEFAULT_ARMENDARIZ_DEGREE) -> ConditionsReport:
    """Condition vector; on right Rickart rings the conditions must agree."""
    vals = {c: decide_condition(ring, c, degree) for c in CONDITIONS}
    rr = bool(is_ring_class(ring, RingClass.RIGHT_RICKART))
    fails = [(a, b) for a, b in CHAINS if vals[a].value and not vals[b].value]
    core = [vals[c].value for c in ("Abelian", "Semicommutative", "Symmetric", "Reduced", "Armendariz")]
    return ConditionsReport(
        values=vals,
        right_rickart=rr,
        equivalence_asserted=rr,
        equivalent=(len(set(core)) == 1) if rr else None,
        chains_hold=not fails,
        chain_failures=fails,
    )


# --- modules ------------------------------------------------------------------

@dataclass
class FiniteModule:
    """Right module over a finite ring: carrier labels 0..k-1 with 0 the zero."""
    add: np.ndarray  # k x k
    act: np.ndarray  # k x N, act[m, r] = m r
    tag: str = ""
    labels: np.ndarray | None = None  # ring elements behind each label

    @property
    def size(self) -> int:
        return len(self.add)


def quotient_module(ring: FiniteStarRing, x: int, side: Side = Side.RIGHT) -> FiniteModule:
    """R/xR as a right module (side LEFT: R/Rx as a left module, acting as m r := r m)."""
    side = Side(side)
    ideal = np.flatnonzero((right_ideals(ring) if side == Side.RIGHT else left_ideals(ring))[x])
    cos = np.asarray(ring.add(ring.elements[:, None], ideal[None, :])).min(axis=1)
    reps = np.unique(cos)
    label = np.searchsorted(reps, cos)
    add = label[np.asarray(ring.add(reps[:, None], reps[None, :]))]
    if side == Side.RIGHT:
        act = label[np.asarray(ring.mul(reps[:, None], ring.elements[None, :]))]
    else:
        act = label[np.asarray(ring.mul(ring.elements[None, :], reps[:, None]))]
    return FiniteModule(add, act, f"R/{'xR' if side == Side.RIGHT else 'Rx'}", reps)


def annihilator_module(ring: FiniteStarRing, x: int, side: Side = Side.RIGHT) -> FiniteModule:
    side = Side(side)
    members = np.flatnonzero((right_anns(ring) if side == Side.RIGHT else left_anns(ring))[x])
    idx = np.full(ring.order, -1, dtype=np.int64)
    idx[members] = np.arange(len(members))
    add = idx[np.asarray(ring.add(members[:, None], members[None, :]))]
    if side == Side.RIGHT:
        act = idx[np.asarray(ring.mul(members[:, None], ring.elements[None, :]))]
    else:
        act = idx[np.asarray(ring.mul(ring.elements[None, :], members[:, None]))]
    return FiniteModule(add, act, "ann_r(x)" if side == Side.RIGHT else "ann_l(x)", members)


def _module_generators(m: FiniteModule) -> list:
    seen = np.zeros(m.size, dtype=bool)
    seen[0] = True
    gens = []
    for g in range(m.size):
        if seen[g]:
            continue
        gens.append(g)
        seen = _closure(m, seen, g)
    return gens


def _closure(m: FiniteModule, seen: np.ndarray, g: int) -> np.ndarray:
    seen = seen.copy()
    frontier = np.unique(m.act[g])
    while True:
        cur = np.flatnonzero(seen)
        new = np.unique(np.concatenate([frontier, m.add[cur[:, None], frontier[None, :]].ravel()]))
        grown = seen.copy()
        grown[new] = True
        if grown.sum() == seen.sum():
            return seen
        seen = grown
        frontier = np.flatnonzero(seen)


def module_iso_oracle(m1: FiniteModule, m2: FiniteModule, cap: int = DEFAULT_ORACLE_CAP):
    """Search for a module isomorphism m1 -> m2 by backtracking over the images
    of a generating set of m1. Returns (bool, map-or-None)."""
    if max(m1.size, m2.size) > cap:
        raise SizeBound(f"module of size {max(m1.size, m2.size)} exceeds oracle cap {cap}")
    if m1.size != m2.size:
        return False, None
    if m1.act.shape[1] != m2.act.shape[1]:
        raise ValueError("modules over different rings")
    gens = _module_generators(m1)
    for images in itertools.product(range(m2.size), repeat=len(gens)):
        phi = _extend(m1, m2, gens, images)
        if phi is None:
            continue
        if len(np.unique(phi)) != m1.size:
            continue
        if not np.array_equal(phi[m1.act], m2.act[phi]):
            continue
        if not np.array_equal(phi[m1.add], m2.add[phi[:, None], phi[None, :]]):
            continue
        return True, phi
    return False, None


def _extend(m1, m2, gens, images):
    """Propagate generator images through the action and addition; None on conflict."""
    phi = np.full(m1.size, -1, dtype=np.int64)
    phi[0] = 0
    for g, im in zip(gens, images):
        # g r -> im r for every ring element r
        tgt = m1.act[g]
        val = m2.act[im]
        for t, v in ((tgt, val),):
            known = phi[t] >= 0
            if (phi[t][known] != v[known]).any():
                return None
            phi[t] = v
            # the same target may appear with different values
            if (phi[t] != v).any():
                return None
    while (phi < 0).any():
        have = np.flatnonzero(phi >= 0)
        s = m1.add[have[:, None], have[None, :]]
        v = m2.add[phi[have][:, None], phi[have][None, :]]
        known = phi[s] >= 0
        if (phi[s][known] != v[known]).any():
            return None
        before = (phi >= 0).sum()
        phi[s[~known]] = v[~known]
        if (phi[s] != v).any():
            return None
        if (phi >= 0).sum() == before:
            return None
    return phi


# --- morphic family --------------------------------------------------------------

def _ideal_maps(ring, side: Side):
    memo = ring.__dict__.setdefault("_morphic_memo", {})
    if side not in memo:
        anns = right_anns(ring) if side == Side.RIGHT else left_anns(ring)
        ideals = right_ideals(ring) if side == Side.RIGHT else left_ideals(ring)
        ann_keys = [key(anns[y]) for y in range(ring.order)]
        ideal_keys = [key(ideals[y]) for y in range(ring.order)]
        by_ann, by_ideal = {}, {}
        for y in range(ring.order):
            by_ann.setdefault(ann_keys[y], []).append(y)
            by_ideal.setdefault(ideal_keys[y], []).append(y)
        memo[side] = (ann_keys, ideal_keys, by_ann, by_ideal)
    return memo[side]


def morphic_fast_witness(ring: FiniteStarRing, x: int, side: Side = Side.RIGHT):
    """Least y with xR = ann_r(y) and ann_r(x) = yR (left side dually), or None."""
    ann_keys, ideal_keys, by_ann, _ = _ideal_maps(ring, Side(side))
    for y in by_ann.get(ideal_keys[x], ()):
        if ideal_keys[y] == ann_keys[x]:
            return y
    return None


@dataclass
class MorphicResult:
    value: bool
    per_element: dict
    witness: object = None
    oracle_checked: int = 0
    disagreements: list = field(default_factory=list)

    def __bool__(self):
        return self.value


def is_morphic(ring: FiniteStarRing, side: Side = Side.RIGHT, oracle: bool | None = None,
               oracle_cap: int = DEFAULT_ORACLE_CAP) -> MorphicResult:
    """ann_r(x) ≅ R/xR for every x (left: ann_l(x) ≅ R/Rx).

    A y with xR = ann_r(y) and ann_r(x) = yR gives the isomorphism
    r + xR -> yr directly. When no such y exists the module oracle decides
    (if the modules fit under its cap). With ``oracle`` (default: order <= 64)
    the oracle also runs on every element and disagreements are recorded.
    """
    side = Side(side)
    if oracle is None:
        oracle = ring.order <= 64
    per = {}
    checked, dis = 0, []
    first_bad = None
    for x in range(ring.order):
        y = morphic_fast_witness(ring, x, side)
        holds = y is not None
        if oracle or (not holds and ring.order <= oracle_cap):
            ok, _ = module_iso_oracle(annihilator_module(ring, x, side), quotient_module(ring, x, side), oracle_cap)
            checked += 1
            if ok != holds:
                dis.append(x)
            holds = ok
        per[x] = y
        if not holds and first_bad is None:
            first_bad = x
    return MorphicResult(first_bad is None, per, first_bad, checked, dis)


def is_quasi_morphic(ring: FiniteStarRing, side: Side = Side.RIGHT) -> Verdict:
    """Each x has y, z with xR = ann_r(y) and ann_r(x) = zR (left dually);
    witness on success maps x -> (y, z), on failure the element x."""
    ann_keys, ideal_keys, by_ann, by_ideal = _ideal_maps(ring, Side(side))
    wit = {}
    for x in range(ring.order):
        ys = by_ann.get(ideal_keys[x])
        zs = by_ideal.get(ann_keys[x])
        if not ys or not zs:
            return Verdict(False, x)
        wit[x] = (ys[0], zs[0])
    return Verdict(True, wit)


def is_p_injective(ring: FiniteStarRing, side: Side = Side.LEFT) -> Verdict:
    """Left P-injective iff for every x, {b : ann_l(x) b = 0} = xR; right
    dually {b : b ann_r(x) = 0} = Rx. Witness: the failing x."""
    side = Side(side)
    # b is killed by a set iff it is killed by additive generators of the set
    if side == Side.LEFT:
        anns, kill, ideals = left_anns(ring), right_anns(ring), right_ideals(ring)
    else:
        anns, kill, ideals = right_anns(ring), left_anns(ring), left_ideals(ring)
    for x in range(ring.order):
        gens = span_generators(ring, np.flatnonzero(anns[x]))
        killed = kill[gens].all(axis=0) if gens else np.ones(ring.order, dtype=bool)
        if not np.array_equal(killed, ideals[x]):
            return Verdict(False, x)
    return Verdict(True)


def is_p_injective_literal(ring: FiniteStarRing, side: Side = Side.LEFT) -> Verdict:
    """P-injectivity by enumerating module maps from principal modules.

    Left: every left-module map f: Rx -> R is r x -> r f(x); for each candidate
    image b the map is built as a table, discarded if ill-defined, and must
    then equal right multiplication by some c on Rx.
    """
    side = Side(side)
    N = ring.order
    e = ring.elements
    T = np.asarray(ring.mul(e[:, None], e[None, :]))
    if side == Side.RIGHT:
        T = T.T  # right modules over R are left modules over R^op
    for x in range(N):
        rx = T[:, x]  # r x
        dom = np.unique(rx)
        first = np.full(N, -1, dtype=np.int64)
        first[rx[::-1]] = np.arange(N)[::-1]  # least r with r x = y
        reps = first[dom]
        ext = T[dom[:, None], e[None, :]]  # y c for y in Rx, all c
        for b in range(N):
            rb = T[:, b]
            img = np.full(N, -1, dtype=np.int64)
            img[dom] = rb[reps]
            if not np.array_equal(img[rx], rb):
                continue  # not well defined
            if not (ext == img[dom][:, None]).all(axis=0).any():
                return Verdict(False, (x, b))
    return Verdict(True)


@dataclass
class LiteratureReport:
    values: dict
    checks: dict  # name -> bool
    ok: bool
    failures: list = field(default_factory=list)


def literature_equivalences_check(ring: FiniteStarRing, oracle: bool | None = None) -> LiteratureReport:
    """Independently compute the properties and assert the implications and
    equivalences cited for morphic rings, each under its own hypotheses."""
    v = {
        "unitRegular": decide_regularity(ring, "unitRegular").value,
        "regular": decide_regularity(ring, "regular").value,
        "rightMorphic": is_morphic(ring, Side.RIGHT, oracle).value,
        "leftMorphic": is_morphic(ring, Side.LEFT, oracle).value,
        "rightRickart": is_ring_class(ring, RingClass.RIGHT_RICKART).value,
        "leftRickart": is_ring_class(ring, RingClass.LEFT_RICKART).value,
        "rightQuasiMorphic": is_quasi_morphic(ring, Side.RIGHT).value,
        "leftQuasiMorphic": is_quasi_morphic(ring, Side.LEFT).value,
        "leftPInjective": is_p_injective(ring, Side.LEFT).value,
        "rightPInjective": is_p_injective(ring, Side.RIGHT).value,
    }
    checks = literature_checks(v)
    fails = [k for k, ok in checks.items() if not ok]
    return LiteratureReport(v, checks, not fails, fails)


def literature_checks(v: dict) -> dict:
    """The cited implications evaluated on a table of property values."""
    ur = v["unitRegular"]
    both_rickart = v["leftRickart"] and v["rightRickart"]
    return {
        "UR <=> regular & right morphic": ur == (v["regular"] and v["rightMorphic"]),
        "UR <=> regular & left morphic": ur == (v["regular"] and v["leftMorphic"]),
        "UR <=> right Rickart & left morphic": ur == (v["rightRickart"] and v["leftMorphic"]),
        "UR <=> left Rickart & right morphic": ur == (v["leftRickart"] and v["rightMorphic"]),
        "right morphic => right quasi-morphic": not v["rightMorphic"] or v["rightQuasiMorphic"],
        "left morphic => left quasi-morphic": not v["leftMorphic"] or v["leftQuasiMorphic"],
        "right morphic => left P-injective": not v["rightMorphic"] or v["leftPInjective"],
        "left morphic => right P-injective": not v["leftMorphic"] or v["rightPInjective"],
        "left quasi-morphic => right P-injective": not v["leftQuasiMorphic"] or v["rightPInjective"],
        "right quasi-morphic => left P-injective": not v["rightQuasiMorphic"] or v["leftPInjective"],
        "left & right Rickart => (regular <=> left P-inj <=> right P-inj)":
            not both_rickart or (v["regular"] == v["leftPInjective"] == v["rightPInjective"]),
        "left & right Rickart => (UR <=> left morphic <=> right morphic)":
            not both_rickart or (ur == v["leftMorphic"] == v["rightMorphic"]),
    }

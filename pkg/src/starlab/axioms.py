"""Baer *-ring axioms on finite rings, commutants, positivity, and the type
decomposition with homogeneous partitions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import rings as RG
from .classify import RingClass, Side, Verdict, _generator_index, is_ring_class, key, right_anns
from .lattice import (central_projections, dominates, equivalence_witnesses, is_abelian_projection,
                      minimal_central_projections, projection_predicates)
from .rings import FiniteStarRing

AXIOMS = ("A1", "A2-EP", "A2-UPSR", "A3", "A4", "A5", "A6", "A7", "GC", "LPRP")

HOLDS = "holds"
FAILS = "fails"
VACUOUS = "holdsVacuously"
ADAPTED = "adaptedHolds"


class NotBaerStar(ValueError):
    pass


def _memo(ring, name, build):
    memo = ring.__dict__.setdefault("_axioms_memo", {})
    if name not in memo:
        memo[name] = build()
    return memo[name]


# --- commutants ----------------------------------------------------------------

@dataclass
class SubsetView:
    mask: np.ndarray
    provenance: str = ""

    @property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __len__(self):
        return int(self.mask.sum())


def _commutant_mask(ring: FiniteStarRing, S) -> np.ndarray:
    # the commutant of S equals that of its additive span
    S = RG.span_generators(ring, np.unique(np.asarray(list(S), dtype=np.int64)))
    mask = np.ones(ring.order, dtype=bool)
    e = ring.elements
    for s in S:
        mask &= np.asarray(ring.mul(e, s)) == np.asarray(ring.mul(s, e))
    return mask


def commutant(ring: FiniteStarRing, S) -> SubsetView:
    S = [int(s) for s in S]
    if not S:
        raise ValueError("commutant of an empty set")
    return SubsetView(_commutant_mask(ring, S), "commutant")


def bicommutant(ring: FiniteStarRing, S) -> SubsetView:
    S = tuple(sorted({int(s) for s in S}))
    if not S:
        raise ValueError("bicommutant of an empty set")

    def build():
        memo = {}
        return memo
    memo = _memo(ring, "bicommutant", build)
    if S not in memo:
        first = _commutant_mask(ring, S)
        memo[S] = _commutant_mask(ring, np.flatnonzero(first))
    return SubsetView(memo[S], "bicommutant")


# --- positivity ------------------------------------------------------------------

@dataclass
class PositivityCone:
    mask: np.ndarray
    generators: list  # distinct values x*x

    @property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])


def positive_cone(ring: FiniteStarRing) -> PositivityCone:
    """Additive closure of {x*x}."""
    def build():
        sq = np.unique(np.asarray(ring.mul(ring.star_all, ring.elements)))
        members = RG.additive_span(ring, sq)
        mask = np.zeros(ring.order, dtype=bool)
        mask[members] = True
        return PositivityCone(mask, sq.tolist())
    return _memo(ring, "cone", build)


def is_positive(ring: FiniteStarRing, x: int) -> bool:
    return int(x) in positive_cone(ring)


# --- axiom reports -----------------------------------------------------------------

@dataclass
class AxiomEntry:
    axiom: str
    status: str
    witness: object = None
    note: str = ""
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAILS

    def __bool__(self):
        return self.ok


@dataclass
class AxiomReport:
    entries: dict

    def __getitem__(self, k) -> AxiomEntry:
        return self.entries[k]

    def holds(self, *ids) -> bool:
        return all(self.entries[i].ok for i in ids)


def _a1(ring):
    e = ring.elements
    one = ring.one
    xsx = np.asarray(ring.mul(ring.star_all, e))
    xxs = np.asarray(ring.mul(e, ring.star_all))
    bad = np.flatnonzero((xsx == one) & (xxs != one))
    if len(bad):
        return AxiomEntry("A1", FAILS, int(bad[0]))
    return AxiomEntry("A1", HOLDS)


def _a2_ep(ring):
    """For x != 0 some self-adjoint y in {x*x}'' has (x*x) y^2 a nonzero projection."""
    xsx = np.asarray(ring.mul(ring.star_all, ring.elements))
    found = {}
    for s in np.unique(xsx).tolist():
        bc = bicommutant(ring, [s]).elements
        ys = bc[ring.self_adjoint_mask[bc]]
        vals = np.asarray(ring.mul(s, ring.square_all[ys]))
        good = np.flatnonzero(ring.projection_mask[vals] & (vals != 0))
        found[s] = int(ys[good[0]]) if len(good) else None
    bad = np.array([found[int(s)] is None for s in xsx], dtype=bool)
    bad[0] = False
    if bad.any():
        # report a self-adjoint failure if there is one, first in reading order
        order = ring.reading_order
        for mask in (bad & ring.self_adjoint_mask, bad):
            hits = order[mask[order]]
            if len(hits):
                x = int(hits[0])
                return AxiomEntry("A2-EP", FAILS, x, f"no self-adjoint y in {{x*x}}'' for x*x = {int(xsx[x])}")
    return AxiomEntry("A2-EP", HOLDS, detail={"y": found})


def _upsr_scope(ring, scope: str):
    cone = positive_cone(ring)
    for x in cone.elements.tolist():
        gen = x if scope == "x" else ring.mul(ring.star(x), x)
        bc = bicommutant(ring, [gen]).elements
        roots = [int(y) for y in bc[cone.mask[bc]] if ring.square_all[y] == x]
        if len(roots) != 1:
            return Verdict(False, (x, roots), "no positive square root" if not roots else "square root not unique")
    return Verdict(True)


def _a2_upsr(ring):
    """Each positive x has exactly one positive square root in the
    bicommutant; both scopings {x}'' and {x*x}'' are computed, {x}'' decides."""
    vx = _upsr_scope(ring, "x")
    vxx = _upsr_scope(ring, "xsx")
    detail = {"scope_x": vx.value, "scope_x_witness": vx.witness,
              "scope_xsx": vxx.value, "scope_xsx_witness": vxx.witness}
    if vx:
        return AxiomEntry("A2-UPSR", HOLDS, note="scope {x}''", detail=detail)
    return AxiomEntry("A2-UPSR", FAILS, vx.witness, f"scope {{x}}'': {vx.note}", detail)


def _a3(ring):
    return AxiomEntry("A3", VACUOUS, note="finite orthogonal families always summable in a ring")


def _a4(ring):
    e = ring.elements
    vals = np.asarray(ring.add(ring.one, ring.mul(ring.star_all, e)))
    bad = np.flatnonzero(~ring.unit_mask[vals])
    if len(bad):
        return AxiomEntry("A4", FAILS, int(bad[0]))
    return AxiomEntry("A4", HOLDS)


def _a5(ring):
    """A central i with i^2 = -1 and i* = -i."""
    m1 = ring.neg(ring.one)
    sq = np.flatnonzero(ring.square_all == m1)
    skew = [int(i) for i in sq if ring.star(int(i)) == ring.neg(int(i))]
    central = [i for i in skew if ring.center_mask[i]]
    if central:
        return AxiomEntry("A5", HOLDS, central[0])
    cert = {"squares_to_minus_one": sq.tolist(), "also_skew": skew, "also_central": []}
    return AxiomEntry("A5", FAILS, cert, "no central skew square root of -1")


def _projection_of_right_ann(ring):
    """ann_r-key -> projection q with ann_r(x) = qR, for Rickart *-rings."""
    return _generator_index(ring, Side.RIGHT, "projection")


def rp_table(ring) -> np.ndarray:
    """RP(x) for every x, or -1 where it does not exist."""
    def build():
        index = _projection_of_right_ann(ring)
        anns = right_anns(ring)
        out = np.full(ring.order, -1, dtype=np.int64)
        for x in range(ring.order):
            q = index.get(key(anns[x]))
            if q is not None:
                out[x] = ring.sub(ring.one, q)
        return out
    return _memo(ring, "rp", build)


def lp_table(ring) -> np.ndarray:
    """LP(x) = RP(x*)."""
    return _memo(ring, "lp", lambda: rp_table(ring)[ring.star_all])


def _a6(ring):
    """Finite collapse: a unitary u with RP(1-u) = 1 must have 1-u invertible."""
    rickart = bool(is_ring_class(ring, RingClass.RICKART_STAR))
    e = ring.elements
    unitary = np.flatnonzero((np.asarray(ring.mul(ring.star_all, e)) == ring.one)
                             & (np.asarray(ring.mul(e, ring.star_all)) == ring.one))
    rp = rp_table(ring) if rickart else None
    for u in unitary.tolist():
        d = ring.sub(ring.one, u)
        full = (rp[d] == ring.one) if rickart else int(right_anns(ring)[d].sum()) == 1
        if full and not ring.unit_mask[d]:
            return AxiomEntry("A6", FAILS, u, "1-u not invertible though RP(1-u) = 1")
    how = "RP" if rickart else "ann_r(1-u) = 0"
    return AxiomEntry("A6", ADAPTED, note=f"sequences collapse to p = 1 in a finite lattice; tested via {how}",
                      detail={"unitaries": len(unitary)})


def _a7(ring, budget: int = 20000):
    """Orthogonal families of at most 3 nonzero projections, positive a_n with
    a_n = p_n a_n p_n: some a has a p_n = a_n. Candidate a = sum a_n."""
    cone = positive_cone(ring)
    P = [p for p in ring.projections.tolist() if p != 0]
    inner = {}
    for p in P:
        pap = np.asarray(ring.mul(ring.mul(p, ring.elements), p))
        inner[p] = [int(a) for a in np.flatnonzero(cone.mask & (pap == ring.elements))]
    checked = 0
    for size in (1, 2, 3):
        for fam in itertools.combinations(P, size):
            if any(ring.mul(a, b) != 0 for a, b in itertools.combinations(fam, 2)):
                continue
            for avec in itertools.product(*(inner[p] for p in fam)):
                checked += 1
                if checked > budget:
                    return AxiomEntry("A7", ADAPTED, note=f"families of size <= 3; stopped at budget {budget}",
                                      detail={"checked": budget, "complete": False})
                a = 0
                for an in avec:
                    a = ring.add(a, an)
                if any(ring.mul(a, p) != an for p, an in zip(fam, avec)):
                    return AxiomEntry("A7", FAILS, (fam, avec))
    return AxiomEntry("A7", ADAPTED, note="families of size <= 3", detail={"checked": checked, "complete": True})


def check_gc(ring: FiniteStarRing) -> AxiomEntry:
    """For every pair of projections some central projection c has
    cp ≼ cq and (1-c)q ≼ (1-c)p; dominance is computed in R."""
    cps = central_projections(ring)
    P = ring.projections.tolist()
    wit = {}
    for p in P:
        for q in P:
            for c in cps:
                d = ring.sub(ring.one, c)
                if dominates(ring, ring.mul(c, p), ring.mul(c, q)) and \
                        dominates(ring, ring.mul(d, q), ring.mul(d, p)):
                    wit[(p, q)] = c
                    break
            else:
                return AxiomEntry("GC", FAILS, (p, q))
    return AxiomEntry("GC", HOLDS, detail={"c": wit})


def check_lp_rp(ring: FiniteStarRing) -> AxiomEntry:
    if not is_ring_class(ring, RingClass.RICKART_STAR):
        return AxiomEntry("LPRP", VACUOUS, note="NotApplicable: ring is not Rickart *")
    rp, lp = rp_table(ring), lp_table(ring)
    wit = equivalence_witnesses(ring)
    seen = {}
    for x in range(ring.order):
        pair = (int(lp[x]), int(rp[x]))
        if pair not in seen:
            seen[pair] = wit.get(pair)
            if seen[pair] is None:
                return AxiomEntry("LPRP", FAILS, x)
    return AxiomEntry("LPRP", HOLDS, detail={"pairs": len(seen)})


_CHECKS = {"A1": _a1, "A2-EP": _a2_ep, "A2-UPSR": _a2_upsr, "A3": _a3, "A4": _a4, "A5": _a5, "A6": _a6,
           "A7": _a7, "GC": check_gc, "LPRP": check_lp_rp}


def check_axiom(ring: FiniteStarRing, axiom: str) -> AxiomEntry:
    if axiom not in _CHECKS:
        raise ValueError(f"unknown axiom {axiom!r}")
    memo = _memo(ring, "entries", dict)
    if axiom not in memo:
        memo[axiom] = _CHECKS[axiom](ring)
    return memo[axiom]


def check_axioms(ring: FiniteStarRing, ids=AXIOMS) -> AxiomReport:
    return AxiomReport({a: check_axiom(ring, a) for a in ids})


# --- types ----------------------------------------------------------------------

@dataclass
class HomogeneousPartition:
    projections: list
    witnesses: list  # v_i with v_i* v_i = p_1, v_i v_i* = p_i

    @property
    def n(self) -> int:
        return len(self.projections)


def homogeneous_partition(ring: FiniteStarRing, n: int) -> HomogeneousPartition | None:
    """n orthogonal, pairwise equivalent, abelian projections summing to 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    N = ring.order
    wit = equivalence_witnesses(ring)
    size = {p: len(np.unique(ring.row(p))) for p in ring.projections.tolist() if p != 0}
    firsts = [p for p in size if size[p] ** n == N and is_abelian_projection(ring, p)]

    def extend(chosen, total):
        if len(chosen) == n:
            return chosen if total == ring.one else None
        p1 = chosen[0]
        for q in size:
            if q <= chosen[-1] or (p1, q) not in wit:
                continue
            if any(ring.mul(q, c) != 0 for c in chosen):
                continue
            out = extend(chosen + [q], ring.add(total, q))
            if out:
                return out
        return None

    for p1 in firsts:
        out = extend([p1], p1)
        if out:
            return HomogeneousPartition(out, [wit[(out[0], q)] for q in out])
    return None


@dataclass
class StructureIso:
    base: FiniteStarRing
    matrix: FiniteStarRing
    map: np.ndarray | None
    check: RG.HomCheck


def structure_iso_In(ring: FiniteStarRing, partition: HomogeneousPartition | None = None, n: int | None = None):
    """x -> (v_i* x v_j) onto M_n(p_1 R p_1), verified; None when no partition."""
    if partition is None:
        partition = homogeneous_partition(ring, n if n is not None else 1)
        if partition is None:
            return None
    n = partition.n
    A = RG.corner_ring(ring, partition.projections[0])
    M = RG.matrix_ring(A, n)
    v = partition.witnesses
    e = ring.elements
    ent = []
    for i in range(n):
        left = np.asarray(ring.mul(ring.star(v[i]), e))
        for j in range(n):
            ent.append(A.index(np.asarray(ring.mul(left, v[j]))))
    f = np.asarray(M.encode(np.stack(ent)))
    check = RG.check_star_isomorphism(ring, M, f)
    return StructureIso(A, M, f if check.ok else None, check)


@dataclass
class TypePiece:
    central: int
    type: str  # "I" | "II" | "III"
    n: int | None
    base_order: int | None
    partition: list | None
    witnesses: list | None


@dataclass
class TypeDecomposition:
    c_I: int
    c_II: int
    c_III: int
    pieces: list
    finite: bool
    I_f: bool

    @property
    def homogeneous_orders(self) -> list:
        return [p.n for p in self.pieces if p.type == "I"]


def _classify_atom(ring, corner) -> str:
    """Type of a corner with no nontrivial central projections."""
    P = [p for p in corner.projections.tolist() if p != 0]
    preds = [projection_predicates(corner, p) for p in P]
    if any(pr.abelian and pr.faithful for pr in preds):
        return "I"
    if any(pr.finite and pr.faithful for pr in preds) and not any(pr.abelian for pr in preds):
        return "II"
    if not any(pr.finite for pr in preds):
        return "III"
    return "unclassified"


def type_decompose(ring: FiniteStarRing) -> TypeDecomposition:
    if not is_ring_class(ring, RingClass.BAER_STAR):
        raise NotBaerStar("type decomposition needs a Baer *-ring")
    sums = {"I": 0, "II": 0, "III": 0}
    pieces = []
    for c in minimal_central_projections(ring):
        corner = RG.corner_ring(ring, c)
        t = _classify_atom(ring, corner)
        if t not in sums:
            raise RuntimeError(f"central piece {c} fits no type")
        sums[t] = ring.add(sums[t], c)
        n = base = part = vs = None
        if t == "I":
            for k in range(1, corner.order.bit_length() + 1):
                hp = homogeneous_partition(corner, k)
                if hp is not None:
                    n = k
                    part = [int(corner.members[p]) for p in hp.projections]
                    vs = [int(corner.members[x]) for x in hp.witnesses]
                    base = RG.corner_ring(corner, hp.projections[0]).order
                    break
        pieces.append(TypePiece(c, t, n, base, part, vs))
    finite = projection_predicates(ring, ring.one).finite
    return TypeDecomposition(sums["I"], sums["II"], sums["III"], pieces, finite,
                             I_f=finite and sums["II"] == 0 and sums["III"] == 0)

"""Projection lattice, Murray-von Neumann equivalence and central Peirce
decompositions."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import rings as RG
from .classify import Verdict
from .rings import FiniteStarRing


@dataclass
class ProjectionLattice:
    projections: list
    leq: np.ndarray  # leq[i, j]: projections[i] <= projections[j]
    witnesses: dict  # (p, q) -> least x with x*x = p, xx* = q
    classes: list  # equivalence classes as sorted lists
    central: list
    abelian: list
    finite: list
    sup: dict
    inf: dict
    is_lattice: bool
    completeness: str = "vacuous: finite lattice"

    def index(self, p: int) -> int:
        return self.projections.index(int(p))

    def le(self, p: int, q: int) -> bool:
        return bool(self.leq[self.index(p), self.index(q)])


def _memo(ring, name, build):
    memo = ring.__dict__.setdefault("_lattice_memo", {})
    if name not in memo:
        memo[name] = build()
    return memo[name]


def equivalence_witnesses(ring: FiniteStarRing) -> dict:
    """(p, q) -> least x with x*x = p and xx* = q, over all pairs of projections.

    One pass over the ring: every x certifies the pair (x*x, xx*) when both
    are projections.
    """
    def build():
        e = ring.elements
        xsx = np.asarray(ring.mul(ring.star_all, e))
        xxs = np.asarray(ring.mul(e, ring.star_all))
        ok = ring.projection_mask[xsx] & ring.projection_mask[xxs]
        out = {}
        for x in np.flatnonzero(ok).tolist():
            out.setdefault((int(xsx[x]), int(xxs[x])), x)
        return out
    return _memo(ring, "equiv", build)


def equivalent(ring: FiniteStarRing, p: int, q: int):
    """Witness x with x*x = p and xx* = q, or None."""
    return equivalence_witnesses(ring).get((int(p), int(q)))


def leq(ring: FiniteStarRing, p: int, q: int) -> bool:
    """p <= q iff p = pq."""
    return ring.mul(p, q) == p


def dominates(ring: FiniteStarRing, p: int, q: int) -> Verdict:
    """p is equivalent to a subprojection of q; witness (r, x)."""
    wit = equivalence_witnesses(ring)
    for r in ring.projections.tolist():
        if leq(ring, r, q):
            x = wit.get((int(p), r))
            if x is not None:
                return Verdict(True, (r, x))
    return Verdict(False)


def is_abelian_ring(ring: FiniteStarRing) -> Verdict:
    """Every idempotent central; witness a non-central idempotent."""
    bad = np.flatnonzero(ring.idempotent_mask & ~ring.center_mask)
    return Verdict(False, int(bad[0])) if len(bad) else Verdict(True)


def is_star_abelian_ring(ring: FiniteStarRing) -> Verdict:
    """Every projection central."""
    bad = np.flatnonzero(ring.projection_mask & ~ring.center_mask)
    return Verdict(False, int(bad[0])) if len(bad) else Verdict(True)


def central_projections(ring: FiniteStarRing) -> list:
    return np.flatnonzero(ring.projection_mask & ring.center_mask).tolist()


def central_idempotents(ring: FiniteStarRing) -> list:
    return np.flatnonzero(ring.idempotent_mask & ring.center_mask).tolist()


@dataclass
class ProjectionPredicates:
    abelian: bool
    finite: bool
    faithful: bool
    central: bool
    finite_witness: object = None
    faithful_witness: object = None


def is_abelian_projection(ring: FiniteStarRing, p: int) -> bool:
    def build():
        return {}
    memo = _memo(ring, "abelian_proj", build)
    p = int(p)
    if p not in memo:
        memo[p] = bool(is_abelian_ring(RG.corner_ring(ring, p)))
    return memo[p]


def projection_predicates(ring: FiniteStarRing, p: int) -> ProjectionPredicates:
    p = int(p)
    if not ring.projection_mask[p]:
        raise RG.NotAProjection(f"element {p} is not a projection")
    wit = equivalence_witnesses(ring)
    finite_w = None
    for r in ring.projections.tolist():
        if r != p and leq(ring, r, p) and (p, r) in wit:
            finite_w = (r, wit[(p, r)])
            break
    faithful_w = None
    for e in central_idempotents(ring):
        if e != 0 and ring.mul(e, p) == 0:
            faithful_w = e
            break
    return ProjectionPredicates(
        abelian=is_abelian_projection(ring, p),
        finite=finite_w is None,
        faithful=faithful_w is None,
        central=bool(ring.center_mask[p]),
        finite_witness=finite_w,
        faithful_witness=faithful_w,
    )


def projections(ring: FiniteStarRing) -> ProjectionLattice:
    def build():
        P = ring.projections.tolist()
        arr = np.array(P, dtype=np.int64)
        le = np.asarray(ring.mul(arr[:, None], arr[None, :])) == arr[:, None]
        wit = equivalence_witnesses(ring)
        # classes via union over witnessed pairs
        cls = {}
        for p in P:
            if p in cls:
                continue
            members = sorted(q for q in P if (p, q) in wit)
            for q in members:
                cls[q] = members
        classes = sorted({tuple(v) for v in cls.values()})
        sup, inf = {}, {}
        is_lat = True
        n = len(P)
        for i in range(n):
            for j in range(i, n):
                ub = [k for k in range(n) if le[i, k] and le[j, k]]
                least = [k for k in ub if all(le[k, m] for m in ub)]
                lb = [k for k in range(n) if le[k, i] and le[k, j]]
                great = [k for k in lb if all(le[m, k] for m in lb)]
                if least:
                    sup[(P[i], P[j])] = sup[(P[j], P[i])] = P[least[0]]
                else:
                    is_lat = False
                if great:
                    inf[(P[i], P[j])] = inf[(P[j], P[i])] = P[great[0]]
                else:
                    is_lat = False
        preds = {p: projection_predicates(ring, p) for p in P}
        return ProjectionLattice(
            projections=P,
            leq=le,
            witnesses=wit,
            classes=[list(c) for c in classes],
            central=[p for p in P if preds[p].central],
            abelian=[p for p in P if preds[p].abelian],
            finite=[p for p in P if preds[p].finite],
            sup=sup,
            inf=inf,
            is_lattice=is_lat,
        )
    return _memo(ring, "lattice", build)


# --- central Peirce decomposition ------------------------------------------

@dataclass
class PeirceDecomposition:
    family: list  # central projections, orthogonal, summing to 1
    corners: list  # corner rings p_i R
    product: FiniteStarRing
    iso: np.ndarray  # x -> id of (p_i x) in product
    check: RG.HomCheck

    @property
    def orders(self) -> list:
        return [c.order for c in self.corners]


def minimal_central_projections(ring: FiniteStarRing) -> list:
    """Atoms of the Boolean algebra of central projections."""
    cps = [c for c in central_projections(ring) if c != 0]
    return [c for c in cps if not any(d != c and ring.mul(d, c) == d for d in cps)]


def peirce_central_decompose(ring: FiniteStarRing, family=None) -> PeirceDecomposition:
    """Split R along central projections summing to 1 and verify that
    x -> (p_i x) is a *-isomorphism onto the product of the corners."""
    if family is None:
        family = minimal_central_projections(ring) if ring.order > 1 else []
    family = [int(p) for p in family]
    if ring.order > 1:
        total = 0
        for i, p in enumerate(family):
            if not (ring.center_mask[p] and ring.projection_mask[p]):
                raise ValueError(f"{p} is not a central projection")
            for q in family[i + 1:]:
                if ring.mul(p, q) != 0:
                    raise ValueError("family is not orthogonal")
            total = ring.add(total, p)
        if total != ring.one:
            raise ValueError("family does not sum to 1")
    corners = [RG.corner_ring(ring, p) for p in family]
    if not corners:
        corners = [RG.corner_ring(ring, 0)]
    prod = RG.direct_product(corners)
    comps = [c.index(np.asarray(ring.mul(p, ring.elements))) for p, c in zip(family, corners)] or [np.zeros(ring.order, dtype=np.int64)]
    iso = np.asarray(prod.encode(np.stack(comps)))
    return PeirceDecomposition(family, corners, prod, iso, RG.check_star_isomorphism(ring, prod, iso))

"""Element classification, annihilators, RP/LP and the Rickart/Baer classes."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .rings import FiniteStarRing


class NoSuchProjection(ValueError):
    pass


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class RingClass(str, Enum):
    RIGHT_RICKART = "RightRickart"
    LEFT_RICKART = "LeftRickart"
    RICKART_STAR = "RickartStar"
    BAER = "Baer"
    BAER_STAR = "BaerStar"


@dataclass(frozen=True)
class ElementClass:
    element: int
    is_unit: bool
    is_left_zero_divisor: bool
    is_right_zero_divisor: bool
    is_regular_element: bool
    is_idempotent: bool
    is_self_adjoint: bool
    is_projection: bool
    is_unitary: bool
    is_partial_isometry: bool
    is_nilpotent: bool
    is_central: bool
    is_positive: bool | None = None  # filled by axioms.positive_cone


@dataclass
class Verdict:
    """A decided property: value plus a certificate when it is false
    (or, for existential properties, when it is true)."""
    value: bool
    witness: object = None
    note: str = ""

    def __bool__(self):
        return self.value


@dataclass
class AnnihilatorResult:
    side: Side
    inputs: tuple
    elements: np.ndarray
    idempotent_generator: int | None
    projection_generator: int | None


def classify_element(ring: FiniteStarRing, x: int) -> ElementClass:
    x = int(x)
    xs = ring.star(x)
    one = ring.one
    return ElementClass(
        element=x,
        is_unit=bool(ring.unit_mask[x]),
        is_left_zero_divisor=bool(ring.left_zero_divisor_mask[x]),
        is_right_zero_divisor=bool(ring.right_zero_divisor_mask[x]),
        is_regular_element=bool(ring.regular_element_mask[x]),
        is_idempotent=ring.mul(x, x) == x,
        is_self_adjoint=xs == x,
        is_projection=ring.mul(x, x) == x and xs == x,
        is_unitary=ring.mul(xs, x) == one and ring.mul(x, xs) == one,
        is_partial_isometry=ring.mul(ring.mul(x, xs), x) == x,
        is_nilpotent=bool(ring.nilpotent_mask[x]),
        is_central=bool(ring.center_mask[x]),
    )


def involution_is_proper(ring: FiniteStarRing) -> Verdict:
    """x*x = 0 implies x = 0. The witness is the least nonzero self-adjoint x
    with x*x = 0 when one exists (a self-adjoint nilpotent), else the least
    nonzero x with x*x = 0."""
    xsx = ring.mul(ring.star_all, ring.elements)
    bad = (xsx == 0) & (ring.elements != 0)
    for mask in (bad & ring.self_adjoint_mask, bad):
        hit = np.flatnonzero(mask)
        if len(hit):
            return Verdict(False, int(hit[0]))
    return Verdict(True)


# --- ideals as boolean masks --------------------------------------------------

def right_ideal_mask(ring: FiniteStarRing, x: int) -> np.ndarray:
    """xR."""
    m = np.zeros(ring.order, dtype=bool)
    m[ring.row(x)] = True
    return m


def left_ideal_mask(ring: FiniteStarRing, x: int) -> np.ndarray:
    """Rx."""
    m = np.zeros(ring.order, dtype=bool)
    m[ring.col(x)] = True
    return m


def right_ann_mask(ring: FiniteStarRing, x: int) -> np.ndarray:
    return ring.row(x) == 0


def left_ann_mask(ring: FiniteStarRing, x: int) -> np.ndarray:
    return ring.col(x) == 0


def _cache(ring, name, build):
    memo = ring.__dict__.setdefault("_classify_memo", {})
    if name not in memo:
        memo[name] = build()
    return memo[name]


def right_ideals(ring) -> np.ndarray:
    """Row x is the mask of xR."""
    return _cache(ring, "right_ideals", lambda: np.stack([right_ideal_mask(ring, x) for x in range(ring.order)]))


def left_ideals(ring) -> np.ndarray:
    return _cache(ring, "left_ideals", lambda: np.stack([left_ideal_mask(ring, x) for x in range(ring.order)]))


def right_anns(ring) -> np.ndarray:
    """Row x is the mask of ann_r(x)."""
    def build():
        if ring._mul_table is not None:
            return ring._mul_table == 0
        return np.stack([right_ann_mask(ring, x) for x in range(ring.order)])
    return _cache(ring, "right_anns", build)


def left_anns(ring) -> np.ndarray:
    def build():
        if ring._mul_table is not None:
            return (ring._mul_table == 0).T.copy()
        return np.stack([left_ann_mask(ring, x) for x in range(ring.order)])
    return _cache(ring, "left_anns", build)


def key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


def _generator_index(ring, side: Side, which: str) -> dict:
    """Map ideal-key -> least generator, for gR (right) or Rg (left) with g an
    idempotent or a projection."""
    def build():
        cands = ring.idempotents if which == "idempotent" else ring.projections
        out = {}
        for g in cands.tolist():
            m = right_ideal_mask(ring, g) if side == Side.RIGHT else left_ideal_mask(ring, g)
            out.setdefault(key(m), g)
        return out
    return _cache(ring, f"gen_{side.value}_{which}", build)


def annihilator(ring: FiniteStarRing, side, S) -> AnnihilatorResult:
    side = Side(side)
    S = [int(s) for s in S]
    if not S:
        raise ValueError("annihilator of an empty set is not defined here")
    mask = np.ones(ring.order, dtype=bool)
    for s in S:
        mask &= right_ann_mask(ring, s) if side == Side.RIGHT else left_ann_mask(ring, s)
    k = key(mask)
    return AnnihilatorResult(
        side=side,
        inputs=tuple(S),
        elements=np.flatnonzero(mask),
        idempotent_generator=_generator_index(ring, side, "idempotent").get(k),
        projection_generator=_generator_index(ring, side, "projection").get(k),
    )


def rp(ring: FiniteStarRing, x: int) -> int:
    """Right projection: the projection p with xp = x and ann_r(x) = (1-p)R."""
    x = int(x)
    target = right_ann_mask(ring, x)
    for p in ring.projections.tolist():
        if ring.mul(x, p) == x and np.array_equal(right_ideal_mask(ring, ring.sub(ring.one, p)), target):
            return p
    raise NoSuchProjection(f"no right projection for element {x}")


def lp(ring: FiniteStarRing, x: int) -> int:
    """Left projection: the projection q with qx = x and ann_l(x) = R(1-q)."""
    x = int(x)
    target = left_ann_mask(ring, x)
    for q in ring.projections.tolist():
        if ring.mul(q, x) == x and np.array_equal(left_ideal_mask(ring, ring.sub(ring.one, q)), target):
            return q
    raise NoSuchProjection(f"no left projection for element {x}")


def annihilator_lattice(ring: FiniteStarRing, side: Side = Side.RIGHT) -> dict:
    """All distinct annihilators of nonempty subsets: key -> (mask, subset).

    ann(S) is the intersection of element annihilators, so the family is the
    closure of element annihilators under pairwise intersection.
    """
    side = Side(side)
    def build():
        anns = right_anns(ring) if side == Side.RIGHT else left_anns(ring)
        family = {}
        for x in range(ring.order):
            family.setdefault(key(anns[x]), (anns[x], (x,)))
        frontier = list(family.values())
        while frontier:
            new = []
            base = list(family.values())
            for m1, s1 in frontier:
                for m2, s2 in base:
                    m = m1 & m2
                    k = key(m)
                    if k not in family:
                        family[k] = (m, tuple(sorted(set(s1 + s2))))
                        new.append(family[k])
            frontier = new
        return family
    return _cache(ring, f"annlattice_{side.value}", build)


def is_ring_class(ring: FiniteStarRing, cls) -> Verdict:
    """Decide Rickart / Rickart * / Baer / Baer *; witness is the offending
    element (Rickart) or subset (Baer)."""
    cls = RingClass(cls)
    if cls in (RingClass.RIGHT_RICKART, RingClass.LEFT_RICKART, RingClass.RICKART_STAR):
        side = Side.LEFT if cls == RingClass.LEFT_RICKART else Side.RIGHT
        which = "projection" if cls == RingClass.RICKART_STAR else "idempotent"
        index = _generator_index(ring, side, which)
        anns = right_anns(ring) if side == Side.RIGHT else left_anns(ring)
        for x in range(ring.order):
            if key(anns[x]) not in index:
                return Verdict(False, x)
        return Verdict(True)
    which = "projection" if cls == RingClass.BAER_STAR else "idempotent"
    index = _generator_index(ring, Side.RIGHT, which)
    for k, (mask, subset) in annihilator_lattice(ring, Side.RIGHT).items():
        if k not in index:
            return Verdict(False, subset)
    return Verdict(True)

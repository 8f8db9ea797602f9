"""Serializable certificates and their re-verification from the definitions.

A witness record is a plain dict

    {"ring": <spec text>, "kind": <kind>, "data": {... ids ...}, "rendered": {... text ...}}

so it survives a JSON round trip. ``verify_record`` rebuilds the ring from its
spec and rechecks the claim without trusting anything else in the record.
"""
from __future__ import annotations

import numpy as np

from . import clean as CL
from .classify import Side, left_ann_mask, left_ideal_mask, right_ann_mask, right_ideal_mask
from .lattice import peirce_central_decompose
from .rings import build_ring
from .spectext import parse_ring_spec

_ID_FIELDS = ("element", "unit", "idempotent", "p", "q", "x", "partner")


def record(ring, spec: str, kind: str, **data) -> dict:
    rendered = {}
    for k, v in data.items():
        if k in _ID_FIELDS and v is not None:
            rendered[k] = ring.render(int(v))
        elif k == "family":
            rendered[k] = [ring.render(int(p)) for p in v]
    return {"ring": spec, "kind": kind, "data": data, "rendered": rendered}


def clean_record(ring, spec: str, w: CL.CleanWitness) -> dict:
    return record(ring, spec, "clean", mode=w.mode.name, element=int(w.element), unit=int(w.unit_part),
                  idempotent=int(w.idempotent_part))


def clean_or_failure(ring, spec: str, a: int, mode: CL.CleanMode) -> dict:
    w = CL.decomposition_witness(ring, a, mode)
    if w is None:
        return record(ring, spec, "notClean", mode=mode.name, element=int(a))
    return clean_record(ring, spec, w)


def inner_unit_record(ring, spec: str, a: int) -> dict:
    u = CL._inner_inverse(ring, a, ring.units)
    if u is None:
        return record(ring, spec, "noInnerUnit", element=int(a))
    return record(ring, spec, "innerUnit", element=int(a), unit=int(u))


def property_record(spec: str, name: str, value) -> dict:
    return {"ring": spec, "kind": "property", "data": {"name": name, "value": value}, "rendered": {}}


# --- verification -----------------------------------------------------------

def _v_clean(ring, d):
    mode = CL.MODES[d["mode"]]
    w = CL.verify_witness(ring, CL.CleanWitness(d["element"], d["unit"], d["idempotent"], mode))
    return w.ok, "" if w.ok else f"flags {w.verified}"


def _v_not_clean(ring, d):
    w = CL.decomposition_witness(ring, d["element"], CL.MODES[d["mode"]])
    return w is None, "" if w is None else "a decomposition exists"


def _v_inner_unit(ring, d):
    a, u = d["element"], d["unit"]
    ok = bool(ring.unit_mask[u]) and ring.mul(ring.mul(a, u), a) == a
    return ok, "" if ok else "not an inner unit"


def _v_no_inner(pool_name):
    def check(ring, d):
        pool = ring.units if pool_name == "units" else ring.elements
        hit = CL._inner_inverse(ring, d["element"], pool)
        return hit is None, "" if hit is None else f"inner inverse {hit} exists"
    return check


def _v_idempotent_not_projection(ring, d):
    x = d["element"]
    ok = ring.mul(x, x) == x and ring.star(x) != x
    return ok, "" if ok else "claim fails"


def _v_equivalence(ring, d):
    p, q, x = d["p"], d["q"], d["x"]
    sx = ring.star(x)
    ok = ring.mul(sx, x) == p and ring.mul(x, sx) == q
    return ok, "" if ok else "x*x != p or xx* != q"


def _v_orthogonal_family(ring, d):
    fam = [int(p) for p in d["family"]]
    total = 0
    for i, p in enumerate(fam):
        if not ring.projection_mask[p]:
            return False, f"{p} is not a projection"
        if any(ring.mul(p, q) != 0 for q in fam[i + 1:]):
            return False, "not orthogonal"
        total = ring.add(total, p)
    return total == ring.one, "" if total == ring.one else "does not sum to 1"


def _v_peirce(ring, d):
    dec = peirce_central_decompose(ring, d["family"])
    ok = dec.check.ok and dec.orders == list(d["orders"])
    return ok, "" if ok else "decomposition does not verify"


def _v_morphic(ring, d):
    side, x, y = Side(d["side"]), d["element"], d["partner"]
    if side == Side.RIGHT:
        ok = (np.array_equal(right_ideal_mask(ring, x), right_ann_mask(ring, y))
              and np.array_equal(right_ann_mask(ring, x), right_ideal_mask(ring, y)))
    else:
        ok = (np.array_equal(left_ideal_mask(ring, x), left_ann_mask(ring, y))
              and np.array_equal(left_ann_mask(ring, x), left_ideal_mask(ring, y)))
    return ok, "" if ok else "ideal/annihilator exchange fails"


def _v_property(ring, d):
    from .properties import PROPERTIES
    fn, cap = PROPERTIES[d["name"]]
    if ring.order > cap:
        return False, "ring above the property's cap"
    cold = fn(ring)
    return cold == d["value"], "" if cold == d["value"] else f"recomputed {cold!r}"


VERIFIERS = {
    "clean": _v_clean,
    "notClean": _v_not_clean,
    "innerUnit": _v_inner_unit,
    "noInnerUnit": _v_no_inner("units"),
    "noInner": _v_no_inner("all"),
    "idempotentNotProjection": _v_idempotent_not_projection,
    "equivalence": _v_equivalence,
    "orthogonalFamily": _v_orthogonal_family,
    "peirce": _v_peirce,
    "morphic": _v_morphic,
    "property": _v_property,
}


class RingPool:
    """Builds each spec once."""

    def __init__(self):
        self._rings = {}

    def get(self, spec: str):
        if spec not in self._rings:
            self._rings[spec] = build_ring(parse_ring_spec(spec))
        return self._rings[spec]


def verify_record(rec: dict, pool: RingPool | None = None) -> tuple:
    """(ok, message) for one witness record."""
    pool = pool or RingPool()
    fn = VERIFIERS.get(rec.get("kind"))
    if fn is None:
        return False, f"unknown witness kind {rec.get('kind')!r}"
    ring = pool.get(rec["ring"])
    data = rec["data"]
    for k in _ID_FIELDS:
        v = data.get(k)
        if v is not None and not 0 <= int(v) < ring.order:
            return False, f"{k}={v} out of range"
    try:
        return fn(ring, data)
    except (KeyError, ValueError, TypeError) as exc:
        return False, f"malformed record: {exc}"

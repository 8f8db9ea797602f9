"""Named ring properties with order caps, and an on-disk cache of their values."""
from __future__ import annotations

import hashlib
import json
import logging
import os
import random
from pathlib import Path

from . import __version__
from . import axioms as AX
from . import clean as CL
from . import morphic as MO
from .classify import RingClass, Side, involution_is_proper, is_ring_class
from .lattice import is_abelian_ring, is_star_abelian_ring
from .rings import build_ring
from .spectext import format_ring_spec

log = logging.getLogger(__name__)

BIG = 1 << 20


def _type_info(ring):
    if not is_ring_class(ring, RingClass.BAER_STAR):
        return None
    td = AX.type_decompose(ring)
    hp_n = None
    for n in range(1, ring.order.bit_length() + 1):
        if AX.homogeneous_partition(ring, n) is not None:
            hp_n = n
            break
    return {"cI": td.c_I, "cII": td.c_II, "cIII": td.c_III, "If": td.I_f, "homogeneousOrder": hp_n,
            "pieces": [[p.central, p.type, p.n] for p in td.pieces]}


def _armendariz(r):
    memo = r.__dict__.setdefault("_armendariz_memo", {})
    if "v" not in memo:
        memo["v"] = MO.is_armendariz_bounded(r, budget=ARMENDARIZ_BUDGET)
    return memo["v"]


def _oracle_agree(r):
    return all(not MO.is_morphic(r, s, oracle=True).disagreements for s in (Side.LEFT, Side.RIGHT))


def _pinj_agree(r):
    return all(MO.is_p_injective(r, s).value == MO.is_p_injective_literal(r, s).value
               for s in (Side.LEFT, Side.RIGHT))


ARMENDARIZ_BUDGET = 4000
ORACLE_RANGE = 64

# name -> (function, order cap); functions return JSON-ready values
PROPERTIES = {
    "commutative": (lambda r: bool(r.is_commutative), BIG),
    "units": (lambda r: int(len(r.units)), BIG),
    "idempotents": (lambda r: int(len(r.idempotents)), BIG),
    "projections": (lambda r: int(len(r.projections)), BIG),
    "properInvolution": (lambda r: involution_is_proper(r).value, BIG),
    "rightRickart": (lambda r: is_ring_class(r, RingClass.RIGHT_RICKART).value, BIG),
    "leftRickart": (lambda r: is_ring_class(r, RingClass.LEFT_RICKART).value, BIG),
    "rickartStar": (lambda r: is_ring_class(r, RingClass.RICKART_STAR).value, BIG),
    "baer": (lambda r: is_ring_class(r, RingClass.BAER).value, BIG),
    "baerStar": (lambda r: is_ring_class(r, RingClass.BAER_STAR).value, BIG),
    "abelian": (lambda r: is_abelian_ring(r).value, BIG),
    "starAbelian": (lambda r: is_star_abelian_ring(r).value, BIG),
    "regular": (lambda r: CL.decide_regularity(r, "regular").value, BIG),
    "unitRegular": (lambda r: CL.decide_regularity(r, "unitRegular").value, BIG),
    "starRegular": (lambda r: CL.decide_regularity(r, "starRegular").value, BIG),
    "reduced": (lambda r: MO.is_reduced(r).value, BIG),
    "semicommutative": (lambda r: MO.is_semicommutative(r).value, 1296),
    "symmetric": (lambda r: MO.is_symmetric(r).value, 729),
    "armendarizBounded": (lambda r: _armendariz(r).value, 81),
    "armendarizCoveredDegree": (lambda r: _armendariz(r).exhaustive_degree, 81),
    "rightMorphic": (lambda r: MO.is_morphic(r, Side.RIGHT).value, BIG),
    "leftMorphic": (lambda r: MO.is_morphic(r, Side.LEFT).value, BIG),
    "rightQuasiMorphic": (lambda r: MO.is_quasi_morphic(r, Side.RIGHT).value, BIG),
    "leftQuasiMorphic": (lambda r: MO.is_quasi_morphic(r, Side.LEFT).value, BIG),
    "leftPInjective": (lambda r: MO.is_p_injective(r, Side.LEFT).value, BIG),
    "rightPInjective": (lambda r: MO.is_p_injective(r, Side.RIGHT).value, BIG),
    "morphicOracleAgree": (_oracle_agree, ORACLE_RANGE),
    "pInjectiveLiteralAgree": (_pinj_agree, ORACLE_RANGE),
    "A1": (lambda r: AX.check_axiom(r, "A1").status, BIG),
    "A2-EP": (lambda r: AX.check_axiom(r, "A2-EP").status, 1296),
    "A2-UPSR": (lambda r: AX.check_axiom(r, "A2-UPSR").status, 1296),
    "A2-UPSR-xsx": (lambda r: AX.check_axiom(r, "A2-UPSR").detail["scope_xsx"], 1296),
    "A3": (lambda r: AX.check_axiom(r, "A3").status, BIG),
    "A4": (lambda r: AX.check_axiom(r, "A4").status, BIG),
    "A5": (lambda r: AX.check_axiom(r, "A5").status, BIG),
    "A6": (lambda r: AX.check_axiom(r, "A6").status, BIG),
    "A7": (lambda r: AX.check_axiom(r, "A7").status, 1296),
    "GC": (lambda r: AX.check_axiom(r, "GC").status, 1296),
    "LPRP": (lambda r: AX.check_axiom(r, "LPRP").status, BIG),
    "types": (_type_info, 1296),
}
for _m in CL.MODES.values():
    PROPERTIES[_m.name] = ((lambda m: lambda r: CL.is_clean_variant(r, m).value)(_m), BIG)


class RingRecord:
    """A corpus member: expression, lazily built ring, property values."""

    def __init__(self, expr, cache: "PropertyCache | None" = None):
        self.expr = expr
        self.spec = format_ring_spec(expr)
        self._ring = None
        self.cache = cache
        self.values = cache.load(self.spec) if cache else {}
        self._dirty = False

    @property
    def ring(self):
        if self._ring is None:
            self._ring = build_ring(self.expr)
        return self._ring

    @property
    def order(self) -> int:
        if "order" not in self.values:
            self.values["order"] = self.ring.order
            self._dirty = True
        return self.values["order"]

    def get(self, name: str):
        """Value of a property, or None when the ring is above its cap."""
        fn, cap = PROPERTIES[name]
        if self.order > cap:
            return None
        if name not in self.values:
            self.values[name] = fn(self.ring)
            self._dirty = True
        return self.values[name]

    def compute(self, name: str):
        """Cold recomputation, bypassing stored values."""
        fn, cap = PROPERTIES[name]
        if self.order > cap:
            return None
        return fn(build_ring(self.expr))

    def save(self):
        if self.cache and self._dirty:
            self.cache.store(self.spec, self.values)
            self._dirty = False

    def table(self) -> dict:
        out = {"order": self.order}
        for k in sorted(self.values):
            if k != "order":
                out[k] = self.values[k]
        return out


def default_cache_dir() -> Path:
    env = os.environ.get("SRL_CACHE_DIR")
    return Path(env) if env else Path.home() / ".cache" / "srl"


class CacheMismatch(RuntimeError):
    pass


class PropertyCache:
    """One JSON file per ring, named by a hash of the canonical spec and tool version."""

    def __init__(self, directory=None, version: str = __version__):
        self.dir = Path(directory) if directory else default_cache_dir()
        self.version = version

    def path(self, spec: str) -> Path:
        h = hashlib.sha256(f"{self.version}\n{spec}".encode()).hexdigest()[:32]
        return self.dir / f"{h}.json"

    def load(self, spec: str) -> dict:
        p = self.path(spec)
        try:
            data = json.loads(p.read_text())
        except (OSError, ValueError):
            return {}
        if data.get("spec") != spec or data.get("version") != self.version:
            return {}
        return dict(data.get("values", {}))

    def store(self, spec: str, values: dict):
        self.dir.mkdir(parents=True, exist_ok=True)
        p = self.path(spec)
        tmp = p.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(json.dumps({"spec": spec, "version": self.version, "values": values}))
        os.replace(tmp, p)


def spot_check(records, seed: int = 0, samples: int = 3) -> list:
    """Recompute a few cached values cold; returns mismatches (spec, name, cached, cold).
    Mismatching entries are dropped from the record so they are recomputed."""
    rng = random.Random(seed)
    bad = []
    for rec in records:
        names = sorted(k for k in rec.values if k in PROPERTIES)
        for name in rng.sample(names, min(samples, len(names))):
            cold = rec.compute(name)
            if cold != rec.values[name]:
                bad.append((rec.spec, name, rec.values[name], cold))
                log.warning("cache mismatch for %s %s; recomputing", rec.spec, name)
                rec.values = {}
                rec._dirty = True
                break
    return bad

"""Deterministic corpora of small *-rings."""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import expr as E
from .rings import TooLarge, build_ring
from .spectext import format_ring_spec, parse_ring_spec

FAMILIES = ("zmod", "gf", "quot", "matrix", "product", "groupring", "corner", "sub", "random")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusConfig:
    max_order: int = 4096
    families: tuple = FAMILIES
    seed: int = 0
    random_extras: int = 4
    big_matrix: bool = True  # include M(2,Z(6)), order 1296

    def __post_init__(self):
        bad = set(self.families) - set(FAMILIES)
        if bad:
            raise ConfigError(f"unknown families {sorted(bad)}")
        if self.max_order < 1:
            raise ConfigError("max_order must be positive")
        if self.random_extras < 0:
            raise ConfigError("random_extras must be >= 0")


_FIXED = {
    "zmod": [f"Z({n})" for n in range(2, 17)],
    "gf": ["GF(2,1)", "GF(3,1)", "GF(5,1)", "GF(7,1)", "GF(11,1)", "GF(13,1)", "GF(2,2)", "GF(2,2)@frob(1)",
           "GF(2,3)", "GF(3,2)", "GF(3,2)@frob(1)", "GF(2,4)", "GF(2,4)@frob(2)"],
    "quot": ["Quot(Z(3),x^2+1,-x)", "Quot(Z(7),x^2+1,-x)"],
    "matrix": ["M(2,Z(2))", "M(2,Z(3))", "M(2,Z(4))", "M(2,Z(5))", "M(2,GF(2,2))", "M(2,GF(2,2)@frob(1))",
               "M(2,GR(C(2),Z(2)))"],
    "product": ["P(Z(2),Z(3))", "P(Z(2),Z(2))", "P(GF(3,1),GF(3,1))", "P(GF(3,1),GF(3,1))@swap(1,0)",
                "P(GF(2,2),GF(2,2))@swap(1,0)", "P(M(2,Z(3)),Z(3))", "P(M(2,Z(2)),Z(4))",
                "P(M(2,Z(2)),GF(2,4),GF(2,4))"],
    "groupring": ["GR(C(2),Z(2))", "GR(C(2),Z(3))", "GR(C(2),Z(5))", "GR(C(3),Z(2))", "GR(C(3),Z(3))",
                  "GR(C(4),Z(2))", "GR(C(4),Z(3))", "GR(C(2),GF(2,2))", "GR(C(2)xC(2),Z(3))",
                  "GR(D(3),Z(2))", "GR(D(3),Z(3))"],
    "corner": ["Corner(M(2,Z(3)),[[1,0],[0,0]])", "Corner(P(Z(2),Z(3)),(1,0))",
               "Corner(P(M(2,Z(3)),Z(3)),([[1,0],[0,0]],1))", "Corner(M(2,Z(6)),[[1,0],[0,0]])"],
    "sub": ["Sub(M(2,Z(2)),[[1,0],[0,0]])", "Sub(M(2,Z(3)),[[1,0],[0,0]])", "Sub(M(2,Z(3)),[[0,1],[1,0]])",
            "Sub(M(2,Z(2)),[[1,1],[0,1]])"],
}

_SMALL = ["Z(2)", "Z(3)", "Z(4)", "Z(5)", "GF(2,2)", "GF(2,2)@frob(1)", "Z(6)"]


def _random_spec(rng: random.Random) -> str:
    kind = rng.choice(["product", "product", "matrix", "groupring", "sub"])
    if kind == "product":
        a, b = rng.sample(_SMALL, 2)
        return f"P({a},{b})"
    if kind == "matrix":
        return f"M(2,{rng.choice(_SMALL[:5])})"
    if kind == "groupring":
        return f"GR(C({rng.randint(2, 4)}),{rng.choice(['Z(2)', 'Z(3)', 'Z(4)'])})"
    n = rng.choice([2, 3])
    entries = [[rng.randrange(n) for _ in range(2)] for _ in range(2)]
    return f"Sub(M(2,Z({n})),[[{entries[0][0]},{entries[0][1]}],[{entries[1][0]},{entries[1][1]}]])"


def ring_order(expr) -> int:
    o = E.expected_order(expr)
    return o if o is not None else build_ring(expr).order


def generate_corpus(config: CorpusConfig = CorpusConfig()) -> list:
    """Canonical expressions, deduplicated, in a fixed order."""
    texts = []
    for fam in FAMILIES:
        if fam not in config.families:
            continue
        if fam == "random":
            rng = random.Random(config.seed)
            texts += [_random_spec(rng) for _ in range(config.random_extras)]
        else:
            texts += _FIXED[fam]
            if fam == "matrix" and config.big_matrix:
                texts.append("M(2,Z(6))")
    out, seen = [], set()
    for t in texts:
        e = parse_ring_spec(t)
        if e in seen:
            continue
        try:
            if ring_order(e) > config.max_order:
                continue
        except TooLarge:
            continue
        seen.add(e)
        out.append(e)
    return out


def load_corpus_file(path) -> list:
    """One ring spec per line; blank lines and lines starting with '#' are skipped."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                out.append(parse_ring_spec(line))
    return out


def corpus_texts(corpus) -> list:
    return [format_ring_spec(e) for e in corpus]

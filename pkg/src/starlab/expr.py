"""Constructor trees describing finite *-rings.

Expressions are frozen dataclasses so they hash and compare structurally;
``canonicalize`` puts them in the normal form that fixes element encodings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import groups as G


@dataclass(frozen=True)
class Zmod:
    n: int


@dataclass(frozen=True)
class FiniteField:
    p: int
    k: int = 1
    frob: int = 0  # involution x -> x^(p^frob); 0 is the identity


@dataclass(frozen=True)
class QuotAdjoin:
    """base[x] / (modulus), with x* given by a polynomial in x.

    Polynomials are integer coefficient tuples, lowest degree first.
    """
    base: object
    modulus: tuple
    image: tuple


@dataclass(frozen=True)
class Matrix:
    n: int
    entry: object


@dataclass(frozen=True)
class Product:
    factors: tuple
    perm: tuple | None = None  # factor permutation for the involution


@dataclass(frozen=True)
class GroupRing:
    group: object
    coeff: object


@dataclass(frozen=True)
class Corner:
    parent: object
    projection: int  # element id in the parent


@dataclass(frozen=True)
class GenSub:
    parent: object
    gens: tuple  # element ids in the parent


RingExpr = Zmod | FiniteField | QuotAdjoin | Matrix | Product | GroupRing | Corner | GenSub


class InvalidExpr(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def characteristic(expr) -> int | None:
    """Additive order of 1, when it can be read off the expression."""
    if isinstance(expr, Zmod):
        return expr.n
    if isinstance(expr, FiniteField):
        return expr.p
    if isinstance(expr, (Matrix,)):
        return characteristic(expr.entry)
    if isinstance(expr, GroupRing):
        return characteristic(expr.coeff)
    if isinstance(expr, QuotAdjoin):
        return characteristic(expr.base)
    if isinstance(expr, Product):
        chars = [characteristic(f) for f in expr.factors]
        if any(c is None for c in chars):
            return None
        return math.lcm(*chars)
    return None


def _trim(poly: tuple) -> tuple:
    poly = list(poly)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def canonicalize_group(spec):
    if isinstance(spec, G.GroupProduct):
        specs = tuple(canonicalize_group(s) for s in spec.specs)
        return specs[0] if len(specs) == 1 else G.GroupProduct(specs)
    if isinstance(spec, G.CayleyTable):
        return G.CayleyTable(tuple(tuple(int(v) for v in row) for row in spec.table), int(spec.identity))
    return spec


def canonicalize(expr):
    """Normal form of an expression; idempotent."""
    if isinstance(expr, Zmod):
        return expr
    if isinstance(expr, FiniteField):
        frob = expr.frob % expr.k if expr.k else 0
        return replace(expr, frob=frob)
    if isinstance(expr, QuotAdjoin):
        base = canonicalize(expr.base)
        c = characteristic(base)
        mod, img = expr.modulus, expr.image
        if c is not None:
            mod = tuple(v % c for v in mod)
            img = tuple(v % c for v in img)
        return QuotAdjoin(base, _trim(mod), _trim(img))
    if isinstance(expr, Matrix):
        return Matrix(expr.n, canonicalize(expr.entry))
    if isinstance(expr, Product):
        factors = tuple(canonicalize(f) for f in expr.factors)
        perm = expr.perm
        if perm is not None and tuple(perm) == tuple(range(len(factors))):
            perm = None
        if perm is not None:
            perm = tuple(int(i) for i in perm)
        if len(factors) == 1 and perm is None:
            return factors[0]
        return Product(factors, perm)
    if isinstance(expr, GroupRing):
        return GroupRing(canonicalize_group(expr.group), canonicalize(expr.coeff))
    if isinstance(expr, Corner):
        return Corner(canonicalize(expr.parent), int(expr.projection))
    if isinstance(expr, GenSub):
        return GenSub(canonicalize(expr.parent), tuple(sorted(set(int(g) for g in expr.gens))))
    raise InvalidExpr(f"not a ring expression: {expr!r}")


def validate(expr) -> None:
    """Parameter checks that do not need the ring to be built."""
    if isinstance(expr, Zmod):
        if expr.n < 2:
            raise InvalidExpr(f"Z(n) needs n >= 2, got {expr.n}")
    elif isinstance(expr, FiniteField):
        if not is_prime(expr.p):
            raise InvalidExpr(f"GF characteristic {expr.p} is not prime")
        if expr.k < 1:
            raise InvalidExpr("GF degree must be >= 1")
        if (2 * expr.frob) % expr.k:
            raise InvalidExpr(f"frob({expr.frob}) is not an involution of GF({expr.p}^{expr.k})")
    elif isinstance(expr, QuotAdjoin):
        validate(expr.base)
        if len(expr.modulus) < 2:
            raise InvalidExpr("modulus must have degree >= 1")
        if expr.modulus[-1] != 1:
            raise InvalidExpr("modulus must be monic")
    elif isinstance(expr, Matrix):
        if expr.n < 1:
            raise InvalidExpr("matrix size must be >= 1")
        validate(expr.entry)
    elif isinstance(expr, Product):
        if not expr.factors:
            raise InvalidExpr("product needs at least one factor")
        for f in expr.factors:
            validate(f)
        if expr.perm is not None:
            perm = tuple(expr.perm)
            m = len(expr.factors)
            if sorted(perm) != list(range(m)):
                raise InvalidExpr(f"{perm} is not a permutation of the factors")
            for i, j in enumerate(perm):
                if perm[j] != i:
                    raise InvalidExpr("factor permutation must be self-inverse")
                if canonicalize(expr.factors[i]) != canonicalize(expr.factors[j]):
                    raise InvalidExpr(f"swapped factors {i} and {j} are not identical")
    elif isinstance(expr, GroupRing):
        G.build_group(expr.group)
        validate(expr.coeff)
    elif isinstance(expr, (Corner, GenSub)):
        validate(expr.parent)
    else:
        raise InvalidExpr(f"not a ring expression: {expr!r}")


def expected_order(expr) -> int | None:
    """Order implied by the constructor formula; None for subrings."""
    if isinstance(expr, Zmod):
        return expr.n
    if isinstance(expr, FiniteField):
        return expr.p ** expr.k
    if isinstance(expr, QuotAdjoin):
        b = expected_order(expr.base)
        return None if b is None else b ** (len(expr.modulus) - 1)
    if isinstance(expr, Matrix):
        b = expected_order(expr.entry)
        return None if b is None else b ** (expr.n * expr.n)
    if isinstance(expr, Product):
        out = 1
        for f in expr.factors:
            b = expected_order(f)
            if b is None:
                return None
            out *= b
        return out
    if isinstance(expr, GroupRing):
        b = expected_order(expr.coeff)
        return None if b is None else b ** G.group_order(expr.group)
    return None

"""Realized finite rings with involution.

Elements are the integers ``0..order-1`` with ``0`` always the zero element.
Arithmetic is computed from structural encodings (residues, matrix entries,
coefficient vectors) and is vectorized over numpy integer arrays; small rings
additionally cache full operation tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import expr as E
from . import groups as G
from .expr import InvalidExpr

DEFAULT_ORDER_CAP = 1 << 20
DEFAULT_TABLE_THRESHOLD = 1024


class TooLarge(Exception):
    pass


class NotAProjection(ValueError):
    pass


class NonCommutativeCoefficients(ValueError):
    pass


def _arr(x) -> np.ndarray:
    return np.asarray(x, dtype=np.int64)


class FiniteStarRing:
    """Base class; subclasses provide ``_add``, ``_neg``, ``_mul``, ``_star``
    acting on flat int64 arrays of element ids."""

    table_threshold = DEFAULT_TABLE_THRESHOLD

    def __init__(self, order: int, one: int, expr=None):
        self.order = int(order)
        self.one = int(one)
        self.zero = 0
        self.expr = expr

    # --- arithmetic -----------------------------------------------------
    def _binary(self, fn, table, a, b):
        scalar = np.ndim(a) == 0 and np.ndim(b) == 0
        a, b = np.broadcast_arrays(_arr(a), _arr(b))
        if table is not None:
            out = table[a, b]
        else:
            out = fn(a.ravel(), b.ravel()).reshape(a.shape)
        return int(out) if scalar else out

    def _unary(self, fn, vec, a):
        scalar = np.ndim(a) == 0
        a = _arr(a)
        out = vec[a] if vec is not None else fn(a.ravel()).reshape(a.shape)
        return int(out) if scalar else out

    def add(self, a, b):
        return self._binary(self._add, self._add_table, a, b)

    def mul(self, a, b):
        return self._binary(self._mul, self._mul_table, a, b)

    def neg(self, a):
        return self._unary(self._neg, self._neg_vec, a)

    def star(self, a):
        return self._unary(self._star, self._star_vec, a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    @cached_property
    def _small(self) -> bool:
        return self.order <= self.table_threshold

    @cached_property
    def _add_table(self):
        if not self._small:
            return None
        e = self.elements
        return self._add(np.repeat(e, self.order), np.tile(e, self.order)).reshape(self.order, self.order)

    @cached_property
    def _mul_table(self):
        if not self._small:
            return None
        e = self.elements
        return self._mul(np.repeat(e, self.order), np.tile(e, self.order)).reshape(self.order, self.order)

    @cached_property
    def _neg_vec(self):
        return self._neg(self.elements) if self._small else None

    @cached_property
    def _star_vec(self):
        return self._star(self.elements) if self._small else None

    def from_int(self, k: int) -> int:
        """The element k*1."""
        k = int(k)
        base = self.one if k >= 0 else self.neg(self.one)
        k = abs(k)
        acc = 0
        while k:
            if k & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            k >>= 1
        return acc

    def power(self, a, k: int):
        out = np.full(np.shape(a), self.one, dtype=np.int64) if np.ndim(a) else self.one
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    # --- whole-ring views -------------------------------------------------
    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    @cached_property
    def reading_order(self) -> np.ndarray:
        """Elements sorted as they read when printed (first component most
        significant); used to pick stable, readable witnesses."""
        return self.elements

    @cached_property
    def star_all(self) -> np.ndarray:
        return _arr(self.star(self.elements))

    @cached_property
    def neg_all(self) -> np.ndarray:
        return _arr(self.neg(self.elements))

    @cached_property
    def square_all(self) -> np.ndarray:
        return _arr(self.mul(self.elements, self.elements))

    def row(self, a: int) -> np.ndarray:
        """a*x for every x."""
        if self._mul_table is not None:
            return self._mul_table[a]
        return self.mul(a, self.elements)

    def col(self, a: int) -> np.ndarray:
        """x*a for every x."""
        if self._mul_table is not None:
            return self._mul_table[:, a]
        return self.mul(self.elements, a)

    @cached_property
    def additive_generators(self) -> tuple:
        """Greedy generating set of (R, +), scanning ids in ascending order."""
        span = np.zeros(self.order, dtype=bool)
        span[0] = True
        members = np.array([0], dtype=np.int64)
        gens = []
        for x in range(self.order):
            if span[x]:
                continue
            gens.append(x)
            members = additive_extend(self, members, x)
            span[members] = True
        return tuple(gens)

    @cached_property
    def inverse(self) -> np.ndarray:
        """Two-sided inverse id, or -1 for non-units."""
        inv = np.full(self.order, -1, dtype=np.int64)
        if self._mul_table is not None:
            hits = self._mul_table == self.one
            has = hits.any(axis=1)
            inv[has] = hits.argmax(axis=1)[has]
        else:
            for x in range(self.order):
                w = np.flatnonzero(self.row(x) == self.one)
                if len(w):
                    inv[x] = w[0]
        # a right inverse in a finite ring is two-sided; confirm anyway
        ok = inv >= 0
        if ok.any():
            back = self.mul(inv[ok], self.elements[ok])
            bad = back != self.one
            if bad.any():
                idx = np.flatnonzero(ok)[bad]
                inv[idx] = -1
        return inv

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return self.inverse >= 0

    @cached_property
    def left_zero_divisor_mask(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=bool)
        if self._mul_table is not None:
            out = (self._mul_table[:, 1:] == 0).any(axis=1)
        else:
            for x in range(self.order):
                out[x] = bool((self.row(x)[1:] == 0).any())
        return out

    @cached_property
    def right_zero_divisor_mask(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=bool)
        if self._mul_table is not None:
            out = (self._mul_table[1:, :] == 0).any(axis=0)
        else:
            for x in range(self.order):
                out[x] = bool((self.col(x)[1:] == 0).any())
        return out

    @cached_property
    def regular_element_mask(self) -> np.ndarray:
        return ~self.left_zero_divisor_mask & ~self.right_zero_divisor_mask

    @cached_property
    def idempotent_mask(self) -> np.ndarray:
        return self.square_all == self.elements

    @cached_property
    def self_adjoint_mask(self) -> np.ndarray:
        return self.star_all == self.elements

    @cached_property
    def projection_mask(self) -> np.ndarray:
        return self.idempotent_mask & self.self_adjoint_mask

    @cached_property
    def idempotents(self) -> np.ndarray:
        return np.flatnonzero(self.idempotent_mask)

    @cached_property
    def projections(self) -> np.ndarray:
        return np.flatnonzero(self.projection_mask)

    @cached_property
    def units(self) -> np.ndarray:
        return np.flatnonzero(self.unit_mask)

    @cached_property
    def center_mask(self) -> np.ndarray:
        out = np.ones(self.order, dtype=bool)
        for g in self.additive_generators:
            out &= self.row(g) == self.col(g)
        return out

    @cached_property
    def center(self) -> np.ndarray:
        return np.flatnonzero(self.center_mask)

    @cached_property
    def nilpotent_mask(self) -> np.ndarray:
        x = self.elements
        k = 1
        while k < self.order:
            x = _arr(self.mul(x, x))
            k *= 2
        return x == 0

    @cached_property
    def is_commutative(self) -> bool:
        return bool(self.center_mask.all())

    # --- rendering ----------------------------------------------------------
    def render(self, x: int) -> str:
        return str(int(x))

    def from_literal(self, lit) -> int:
        """Element from a parsed literal (see spectext)."""
        if isinstance(lit, tuple) and lit and lit[0] == "id":
            x = int(lit[1])
            if not 0 <= x < self.order:
                raise InvalidExpr(f"element id {x} out of range")
            return x
        if isinstance(lit, int):
            return self.from_int(lit)
        raise InvalidExpr(f"cannot read element literal {lit!r} in this ring")

    def __repr__(self):
        return f"<{type(self).__name__} order={self.order}>"


def additive_extend(ring: FiniteStarRing, members: np.ndarray, x: int) -> np.ndarray:
    """Subgroup generated by an additive subgroup ``members`` and ``x``."""
    parts = [members]
    m = x
    while m != 0:
        parts.append(_arr(ring.add(members, m)))
        m = ring.add(m, x)
    return np.unique(np.concatenate(parts))


def additive_span(ring: FiniteStarRing, gens) -> np.ndarray:
    members = np.array([0], dtype=np.int64)
    mask = np.zeros(ring.order, dtype=bool)
    mask[0] = True
    for g in gens:
        g = int(g)
        if not mask[g]:
            members = additive_extend(ring, members, g)
            mask[members] = True
    return members


def span_generators(ring: FiniteStarRing, elements) -> list:
    """A subset of ``elements`` generating the same additive subgroup."""
    members = np.array([0], dtype=np.int64)
    mask = np.zeros(ring.order, dtype=bool)
    mask[0] = True
    gens = []
    for g in np.asarray(elements).tolist():
        if not mask[g]:
            gens.append(int(g))
            members = additive_extend(ring, members, g)
            mask[members] = True
    return gens


# --- concrete rings ---------------------------------------------------------

class ZmodRing(FiniteStarRing):
    def __init__(self, n: int, expr=None):
        super().__init__(n, 1 % n, expr)
        self.n = n

    def _add(self, a, b):
        return (a + b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _star(self, a):
        return a.copy()

    @cached_property
    def additive_generators(self):
        return (1,) if self.n > 1 else ()


def _poly_mod_p(a, m, p):
    a = list(a)
    while len(a) >= len(m):
        c = a[-1] % p
        if c:
            shift = len(a) - len(m)
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return [v % p for v in a]


def _poly_mul_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _irreducible(p: int, k: int) -> list:
    """Lexicographically first monic irreducible of degree k over F_p."""
    if k == 1:
        return [0, 1]
    def polys(deg):
        for coeffs in itertools.product(range(p), repeat=deg):
            yield list(coeffs) + [1]
    for cand in polys(k):
        if cand[0] == 0:
            continue
        if all(any(_poly_mod_p(cand, d, p)) for deg in range(1, k // 2 + 1) for d in polys(deg)):
            return cand
    raise AssertionError("no irreducible polynomial found")


class GaloisField(FiniteStarRing):
    """GF(p^k); element id = sum of coefficient_i * p^i in a fixed polynomial basis."""

    def __init__(self, p: int, k: int, frob: int = 0, expr=None):
        q = p ** k
        super().__init__(q, 1, expr)
        self.p, self.k, self.frob = p, k, frob
        self._pows = p ** np.arange(k, dtype=np.int64)
        modulus = _irreducible(p, k)
        # log / antilog tables from a primitive element
        def to_poly(x):
            return [(x // p ** i) % p for i in range(k)]
        def to_id(poly):
            poly = list(poly) + [0] * (k - len(poly))
            return sum(c * p ** i for i, c in enumerate(poly[:k]))
        for g in range(1, q):
            exp = np.zeros(q - 1, dtype=np.int64)
            cur = [1]
            seen = set()
            for e in range(q - 1):
                cid = to_id(cur)
                if cid in seen:
                    break
                seen.add(cid)
                exp[e] = cid
                cur = _poly_mod_p(_poly_mul_p(cur, to_poly(g), p), modulus, p)
            if len(seen) == q - 1:
                break
        self._exp = exp
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self._log = log
        self.modulus = modulus

    def _digits(self, a):
        return (a[None, :] // self._pows[:, None]) % self.p

    def _add(self, a, b):
        return ((self._digits(a) + self._digits(b)) % self.p * self._pows[:, None]).sum(0)

    def _neg(self, a):
        return ((-self._digits(a)) % self.p * self._pows[:, None]).sum(0)

    def _mul(self, a, b):
        out = self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def _star(self, a):
        if self.frob == 0:
            return a.copy()
        e = self.p ** self.frob
        out = self._exp[(self._log[a] * e) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    @cached_property
    def additive_generators(self):
        return tuple(int(v) for v in self._pows)

    def render(self, x):
        if self.k == 1:
            return str(int(x))
        d = [(int(x) // self.p ** i) % self.p for i in range(self.k)]
        return "<" + ",".join(map(str, d)) + ">"

    def from_literal(self, lit):
        if isinstance(lit, tuple) and lit[0] == "vec":
            coeffs = lit[1]
            if len(coeffs) > self.k or not all(isinstance(c, int) for c in coeffs):
                raise InvalidExpr(f"bad GF literal {lit!r}")
            return int(sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs)))
        return super().from_literal(lit)


class TableRing(FiniteStarRing):
    """A ring given by explicit tables; used for tests and negative controls."""

    def __init__(self, add_table, mul_table, star_vec, one, expr=None):
        add_table = _arr(add_table)
        super().__init__(len(add_table), one, expr)
        self._at = add_table
        self._mt = _arr(mul_table)
        self._sv = _arr(star_vec)
        zero_col = add_table[:, 0]
        neg = np.zeros(self.order, dtype=np.int64)
        for x in range(self.order):
            neg[x] = int(np.flatnonzero(add_table[x] == 0)[0])
        self._nv = neg

    def _add(self, a, b):
        return self._at[a, b]

    def _mul(self, a, b):
        return self._mt[a, b]

    def _neg(self, a):
        return self._nv[a]

    def _star(self, a):
        return self._sv[a]


class _RadixRing(FiniteStarRing):
    """Rings whose elements are tuples of component ids packed in mixed radix
    (component 0 is the least significant digit)."""

    def _setup_radix(self, radices):
        self._radices = np.array(radices, dtype=np.int64)
        self._strides = np.concatenate([[1], np.cumprod(self._radices)[:-1]]).astype(np.int64)

    def decode(self, a) -> np.ndarray:
        a = _arr(a)
        return (a[None, ...] // self._strides.reshape((-1,) + (1,) * a.ndim)) % self._radices.reshape((-1,) + (1,) * a.ndim)

    def encode(self, comps) -> np.ndarray:
        comps = _arr(comps)
        return (comps * self._strides.reshape((-1,) + (1,) * (comps.ndim - 1))).sum(0)

    @cached_property
    def reading_order(self) -> np.ndarray:
        return np.lexsort(self.decode(self.elements)[::-1])


class MatrixRing(_RadixRing):
    """n x n matrices over ``base`` with the *-transpose involution."""

    def __init__(self, base: FiniteStarRing, n: int, expr=None):
        self.base, self.n = base, n
        order = base.order ** (n * n)
        self._setup_radix([base.order] * (n * n))
        one = int(self.encode(np.array([base.one if i == j else 0 for i in range(n) for j in range(n)])))
        super().__init__(order, one, expr)

    def _add(self, a, b):
        return self.encode(self.base.add(self.decode(a), self.decode(b)))

    def _neg(self, a):
        return self.encode(self.base.neg(self.decode(a)))

    def _mul(self, a, b):
        n, B = self.n, self.base
        A, C = self.decode(a), self.decode(b)
        out = np.zeros_like(A)
        for i in range(n):
            for j in range(n):
                acc = B.mul(A[i * n], C[j])
                for k in range(1, n):
                    acc = B.add(acc, B.mul(A[i * n + k], C[k * n + j]))
                out[i * n + j] = acc
        return self.encode(out)

    def _star(self, a):
        n = self.n
        A = self.decode(a)
        perm = [j * n + i for i in range(n) for j in range(n)]
        return self.encode(self.base.star(A[perm]))

    def entries(self, x: int) -> list:
        d = self.decode(x).tolist()
        return [d[i * self.n:(i + 1) * self.n] for i in range(self.n)]

    def from_entries(self, rows) -> int:
        return int(self.encode(np.array([v for r in rows for v in r])))

    def unit_matrix(self, i: int, j: int) -> int:
        flat = [0] * (self.n * self.n)
        flat[i * self.n + j] = self.base.one
        return int(self.encode(np.array(flat)))

    @cached_property
    def additive_generators(self):
        out = []
        for pos in range(self.n * self.n):
            for g in self.base.additive_generators:
                flat = [0] * (self.n * self.n)
                flat[pos] = g
                out.append(int(self.encode(np.array(flat))))
        return tuple(out)

    def render(self, x):
        rows = self.entries(x)
        return "[" + ",".join("[" + ",".join(self.base.render(v) for v in r) + "]" for r in rows) + "]"

    def from_literal(self, lit):
        if isinstance(lit, tuple) and lit[0] == "list":
            rows = lit[1]
            if len(rows) != self.n or any(not (isinstance(r, tuple) and r[0] == "list" and len(r[1]) == self.n) for r in rows):
                raise InvalidExpr(f"matrix literal must be {self.n}x{self.n}")
            return self.from_entries([[self.base.from_literal(v) for v in r[1]] for r in rows])
        return super().from_literal(lit)


class ProductRing(_RadixRing):
    """Direct product; the involution may permute factors: (x*)_i = (x_perm[i])*."""

    def __init__(self, factors, perm=None, expr=None):
        self.factors = list(factors)
        m = len(self.factors)
        self.perm = list(perm) if perm is not None else list(range(m))
        self._setup_radix([f.order for f in self.factors])
        order = int(np.prod([f.order for f in self.factors], dtype=object))
        one = int(self.encode(np.array([f.one for f in self.factors])))
        super().__init__(order, one, expr)

    def _componentwise(self, op, *args):
        parts = [self.decode(a) for a in args]
        out = np.stack([getattr(f, op)(*[p[i] for p in parts]) for i, f in enumerate(self.factors)])
        return self.encode(out)

    def _add(self, a, b):
        return self._componentwise("add", a, b)

    def _neg(self, a):
        return self._componentwise("neg", a)

    def _mul(self, a, b):
        return self._componentwise("mul", a, b)

    def _star(self, a):
        d = self.decode(a)
        out = np.stack([f.star(d[self.perm[i]]) for i, f in enumerate(self.factors)])
        return self.encode(out)

    def components(self, x: int) -> list:
        return self.decode(x).tolist()

    def from_components(self, comps) -> int:
        return int(self.encode(np.array(comps)))

    def injection(self, i: int, y) -> np.ndarray:
        """Embed ids of factor i (other components zero)."""
        return _arr(y) * self._strides[i]

    @cached_property
    def additive_generators(self):
        return tuple(int(g) * int(self._strides[i]) for i, f in enumerate(self.factors) for g in f.additive_generators)

    def render(self, x):
        return "(" + ",".join(f.render(c) for f, c in zip(self.factors, self.components(x))) + ")"

    def from_literal(self, lit):
        if isinstance(lit, tuple) and lit[0] == "tuple":
            comps = lit[1]
            if len(comps) != len(self.factors):
                raise InvalidExpr("product literal has wrong arity")
            return self.from_components([f.from_literal(c) for f, c in zip(self.factors, comps)])
        return super().from_literal(lit)


class GroupRingRing(_RadixRing):
    """Coefficient vectors indexed by group elements, convolution product,
    involution sum a_g g -> sum a_g* g^-1."""

    def __init__(self, group: G.FiniteGroup, coeff: FiniteStarRing, expr=None):
        self.group, self.coeff = group, coeff
        gn = group.order
        self._setup_radix([coeff.order] * gn)
        flat = [0] * gn
        flat[group.identity] = coeff.one
        one = int(self.encode(np.array(flat)))
        super().__init__(coeff.order ** gn, one, expr)
        self._pairs = [(g, h, int(group.table[g, h])) for g in range(gn) for h in range(gn)]

    def _add(self, a, b):
        return self.encode(self.coeff.add(self.decode(a), self.decode(b)))

    def _neg(self, a):
        return self.encode(self.coeff.neg(self.decode(a)))

    def _mul(self, a, b):
        A, B = self.decode(a), self.decode(b)
        C = self.coeff
        out = np.zeros_like(A)
        for g, h, k in self._pairs:
            out[k] = C.add(out[k], C.mul(A[g], B[h]))
        return self.encode(out)

    def _star(self, a):
        A = self.decode(a)
        out = np.empty_like(A)
        out[self.group.inverse] = self.coeff.star(A)
        return self.encode(out)

    def basis_element(self, g: int) -> int:
        flat = [0] * self.group.order
        flat[g] = self.coeff.one
        return int(self.encode(np.array(flat)))

    @cached_property
    def additive_generators(self):
        return tuple(int(c) * int(self._strides[g]) for g in range(self.group.order) for c in self.coeff.additive_generators)

    def render(self, x):
        return "<" + ",".join(self.coeff.render(c) for c in self.decode(x).tolist()) + ">"

    def from_literal(self, lit):
        if isinstance(lit, tuple) and lit[0] == "vec":
            cs = lit[1]
            if len(cs) > self.group.order:
                raise InvalidExpr("group ring literal too long")
            cs = list(cs) + [0] * (self.group.order - len(cs))
            return int(self.encode(np.array([self.coeff.from_literal(c) if c != 0 else 0 for c in cs])))
        return super().from_literal(lit)


class QuotRing(_RadixRing):
    """base[x]/(m(x)) for a monic m over a commutative base; x* = image(x)."""

    def __init__(self, base: FiniteStarRing, modulus, image, expr=None):
        self.base = base
        d = len(modulus) - 1
        self.degree = d
        self._setup_radix([base.order] * d)
        self._mod = [base.from_int(c) for c in modulus[:-1]]
        super().__init__(base.order ** d, base.one, expr)
        # star(x^i) = image^i, built from the ring's own product
        img = self._poly_id([base.from_int(c) for c in image])
        pows = [self.one]
        for _ in range(1, d):
            pows.append(int(self._mul(_arr([pows[-1]]), _arr([img]))[0]))
        self._img_pows = pows
        self._image_id = img

    def _poly_id(self, coeffs) -> int:
        """Reduce an arbitrary-length coefficient list (base ids) to an element id."""
        coeffs = list(coeffs) + [0] * max(0, self.degree - len(coeffs))
        arr = np.array(coeffs, dtype=np.int64)[:, None]
        return int(self.encode(self._reduce(arr))[0])

    def _reduce(self, coef):
        B, d = self.base, self.degree
        coef = [c for c in coef]
        for k in range(len(coef) - 1, d - 1, -1):
            c = coef[k]
            for i in range(d):
                coef[k - d + i] = B.sub(coef[k - d + i], B.mul(c, self._mod[i]))
        return np.stack(coef[:d])

    def _add(self, a, b):
        return self.encode(self.base.add(self.decode(a), self.decode(b)))

    def _neg(self, a):
        return self.encode(self.base.neg(self.decode(a)))

    def _mul(self, a, b):
        B, d = self.base, self.degree
        A, C = self.decode(a), self.decode(b)
        prod = [np.zeros(A.shape[1:], dtype=np.int64) for _ in range(2 * d - 1)]
        for i in range(d):
            for j in range(d):
                prod[i + j] = B.add(prod[i + j], B.mul(A[i], C[j]))
        return self.encode(self._reduce(prod))

    def _star(self, a):
        A = self.decode(a)
        acc = np.zeros(A.shape[1:], dtype=np.int64)
        for i in range(self.degree):
            const = self.base.star(A[i])  # constant polynomial: id equals base id
            acc = self._add(acc, self._mul(const, np.full_like(const, self._img_pows[i])))
        return acc

    @cached_property
    def generator(self) -> int:
        return self._poly_id([0, self.base.one])

    @cached_property
    def additive_generators(self):
        return tuple(int(c) * int(self._strides[i]) for i in range(self.degree) for c in self.base.additive_generators)

    def render(self, x):
        return "<" + ",".join(self.base.render(c) for c in self.decode(x).tolist()) + ">"

    def from_literal(self, lit):
        if isinstance(lit, tuple) and lit[0] == "vec":
            cs = lit[1]
            return self._poly_id([self.base.from_literal(c) for c in cs])
        return super().from_literal(lit)


class SubsetRing(FiniteStarRing):
    """A subring (possibly with its own unity, as for corners) of ``parent``;
    ids index the sorted parent ids in ``members``."""

    def __init__(self, parent: FiniteStarRing, members, one_parent: int, expr=None):
        members = np.unique(_arr(members))
        if members[0] != 0:
            raise ValueError("subring must contain zero")
        self.parent = parent
        self.members = members
        super().__init__(len(members), 0, expr)
        self.one = self.index(one_parent)

    def index(self, parent_ids):
        """Local id of parent elements; raises if some are not members."""
        scalar = np.ndim(parent_ids) == 0
        p = _arr(parent_ids)
        pos = np.searchsorted(self.members, p)
        pos = np.minimum(pos, len(self.members) - 1)
        if not np.array_equal(self.members[pos], p):
            raise ValueError("element not in subring")
        return int(pos) if scalar else pos

    def contains(self, parent_ids) -> np.ndarray:
        p = _arr(parent_ids)
        pos = np.minimum(np.searchsorted(self.members, p), len(self.members) - 1)
        return self.members[pos] == p

    def embed(self, a):
        return self.members[_arr(a)]

    def _add(self, a, b):
        return self.index(self.parent.add(self.members[a], self.members[b]))

    def _neg(self, a):
        return self.index(self.parent.neg(self.members[a]))

    def _mul(self, a, b):
        return self.index(self.parent.mul(self.members[a], self.members[b]))

    def _star(self, a):
        return self.index(self.parent.star(self.members[a]))

    def render(self, x):
        return self.parent.render(int(self.members[x]))

    def from_literal(self, lit):
        if isinstance(lit, tuple) and lit and lit[0] == "id":
            return super().from_literal(lit)
        return self.index(self.parent.from_literal(lit))


# --- constructors ----------------------------------------------------------

def _check_cap(order: int, cap: int):
    if order > cap:
        raise TooLarge(f"ring order {order} exceeds cap {cap}")


def matrix_ring(ring: FiniteStarRing, n: int, cap: int = DEFAULT_ORDER_CAP, expr=None) -> MatrixRing:
    if n < 1:
        raise InvalidExpr("matrix size must be >= 1")
    _check_cap(ring.order ** (n * n), cap)
    return MatrixRing(ring, n, expr)


def direct_product(rings, perm=None, cap: int = DEFAULT_ORDER_CAP, expr=None) -> FiniteStarRing:
    rings = list(rings)
    if not rings:
        raise InvalidExpr("product needs at least one factor")
    order = 1
    for r in rings:
        order *= r.order
    _check_cap(order, cap)
    if perm is not None:
        perm = list(perm)
        if sorted(perm) != list(range(len(rings))) or any(perm[j] != i for i, j in enumerate(perm)):
            raise InvalidExpr("factor permutation must be a self-inverse permutation")
        for i, j in enumerate(perm):
            if rings[i].order != rings[j].order:
                raise InvalidExpr("swapped factors must be isomorphic")
    return ProductRing(rings, perm, expr)


def corner_ring(ring: FiniteStarRing, p: int, expr=None) -> SubsetRing:
    """pRp for a projection p; its unity is p."""
    p = int(p)
    if not (ring.mul(p, p) == p and ring.star(p) == p):
        raise NotAProjection(f"element {p} is not a projection")
    members = ring.mul(ring.row(p), p)
    return SubsetRing(ring, members, p, expr)


def group_ring(group, coeff: FiniteStarRing, cap: int = DEFAULT_ORDER_CAP, expr=None) -> GroupRingRing:
    g = group if isinstance(group, G.FiniteGroup) else G.build_group(group)
    _check_cap(coeff.order ** g.order, cap)
    if not coeff.is_commutative:
        raise NonCommutativeCoefficients("group ring coefficients must commute")
    return GroupRingRing(g, coeff, expr)


def generated_subring(ring: FiniteStarRing, gens=(), expr=None) -> SubsetRing:
    """Smallest subring containing gens and 1, closed under the involution."""
    gens = [int(g) for g in gens]
    alphabet = np.unique(_arr([ring.one] + gens + [ring.star(g) for g in gens]))
    mono = np.array([ring.one], dtype=np.int64)
    while True:
        new = np.unique(np.concatenate([mono, _arr(ring.mul(mono[:, None], alphabet[None, :])).ravel()]))
        if len(new) == len(mono):
            break
        mono = new
    members = additive_span(ring, mono)
    return SubsetRing(ring, members, ring.one, expr)


def quot_ring(base: FiniteStarRing, modulus, image, cap: int = DEFAULT_ORDER_CAP, expr=None) -> QuotRing:
    if len(modulus) < 2 or modulus[-1] != 1:
        raise InvalidExpr("modulus must be a monic polynomial of degree >= 1")
    _check_cap(base.order ** (len(modulus) - 1), cap)
    if not base.is_commutative:
        raise InvalidExpr("Quot needs a commutative base")
    ring = QuotRing(base, tuple(modulus), tuple(image), expr)
    report = verify_star_ring_axioms(ring)
    if not report.passed:
        raise InvalidExpr(f"declared image of x does not induce an involution: {report.first_failure()}")
    return ring


def build_ring(expr, cap: int = DEFAULT_ORDER_CAP) -> FiniteStarRing:
    """Realize a ring expression; element ids depend only on the canonical form."""
    expr = E.canonicalize(expr)
    E.validate(expr)
    order = E.expected_order(expr)
    if order is not None:
        _check_cap(order, cap)
    return _build(expr, cap)


def _build(expr, cap):
    if isinstance(expr, E.Zmod):
        return ZmodRing(expr.n, expr)
    if isinstance(expr, E.FiniteField):
        return GaloisField(expr.p, expr.k, expr.frob, expr)
    if isinstance(expr, E.QuotAdjoin):
        return quot_ring(_build(expr.base, cap), expr.modulus, expr.image, cap, expr)
    if isinstance(expr, E.Matrix):
        return matrix_ring(_build(expr.entry, cap), expr.n, cap, expr)
    if isinstance(expr, E.Product):
        return direct_product([_build(f, cap) for f in expr.factors], expr.perm, cap, expr)
    if isinstance(expr, E.GroupRing):
        return group_ring(expr.group, _build(expr.coeff, cap), cap, expr)
    if isinstance(expr, E.Corner):
        parent = _build(expr.parent, cap)
        if not 0 <= expr.projection < parent.order:
            raise InvalidExpr("corner projection id out of range")
        return corner_ring(parent, expr.projection, expr)
    if isinstance(expr, E.GenSub):
        parent = _build(expr.parent, cap)
        if any(not 0 <= g < parent.order for g in expr.gens):
            raise InvalidExpr("generator id out of range")
        return generated_subring(parent, expr.gens, expr)
    raise InvalidExpr(f"not a ring expression: {expr!r}")


def enumerate_elements(ring: FiniteStarRing) -> list:
    return list(range(ring.order))


# --- axiom verification -------------------------------------------------------

DEFAULT_EXHAUSTIVE_BOUND = 4096


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: tuple | None = None


@dataclass
class StarRingAxiomReport:
    order: int
    exhaustive: bool
    checks: list = field(default_factory=list)
    samples: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self):
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _first_bad(mask, *cols):
    idx = np.argwhere(~mask)
    if len(idx) == 0:
        return None
    return tuple(int(c[tuple(idx[0])]) if np.ndim(c) else int(c) for c in cols)


def _pair_blocks(N: int, block: int = 1 << 20):
    """Row blocks (A column, B row) covering all N x N pairs."""
    rows = max(1, block // N)
    cols = np.arange(N, dtype=np.int64)[None, :]
    for start in range(0, N, rows):
        yield np.arange(start, min(N, start + rows), dtype=np.int64)[:, None], cols


def verify_star_ring_axioms(ring: FiniteStarRing, exhaustive_bound: int = DEFAULT_EXHAUSTIVE_BOUND,
                            samples: int = 20000, seed: int = 0) -> StarRingAxiomReport:
    """Check ring and involution identities.

    Up to ``exhaustive_bound`` the check is a complete proof: pair identities
    are scanned over all pairs (a, g) with g an additive generator, which by
    induction over sums of generators covers every element; multilinear
    identities are then only needed on generator tuples. Above the bound,
    random triples from a fixed seed are checked instead.
    """
    N = ring.order
    rep = StarRingAxiomReport(order=N, exhaustive=N <= exhaustive_bound)
    e = ring.elements
    add, mul, star, neg = ring.add, ring.mul, ring.star, ring.neg

    def record(name, mask, *cols):
        w = _first_bad(np.asarray(mask), *cols)
        rep.checks.append(AxiomCheck(name, w is None, w))

    record("zero_ne_one", np.array(N == 1 or ring.one != 0), 0, ring.one)
    record("add_identity", add(e, 0) == e, e)
    record("add_inverse", add(e, neg(e)) == 0, e)
    record("mul_identity", (mul(e, ring.one) == e) & (mul(ring.one, e) == e), e)
    record("star_involutive", star(star(e)) == e, e)
    record("star_one", np.array(star(ring.one) == ring.one), ring.one)

    if rep.exhaustive:
        gens = np.array(ring.additive_generators or (0,), dtype=np.int64)
        g = gens[None, :]
        record("add_commutative", add(e[:, None], g) == add(g, e[:, None]), e[:, None], g)
        identities = {
            "add_associative": lambda A, B, gi: (add(add(A, B), gi), add(A, add(B, gi))),
            "right_distributive": lambda A, B, gi: (mul(add(A, gi), B), add(mul(A, B), mul(gi, B))),
            "left_distributive": lambda A, B, gi: (mul(A, add(B, gi)), add(mul(A, B), mul(A, gi))),
        }
        for name, fn in identities.items():
            wit = None
            for gi in gens.tolist():
                for A, B in _pair_blocks(N):
                    l, r = fn(A, B, gi)
                    bad = np.argwhere(l != r)
                    if len(bad):
                        i, j = bad[0]
                        wit = (int(np.ravel(A)[i]), int(np.ravel(B)[j]), gi)
                        break
                if wit:
                    break
            rep.checks.append(AxiomCheck(name, wit is None, wit))
        ga, gb, gc = np.meshgrid(gens, gens, gens, indexing="ij")
        record("mul_associative", mul(mul(ga, gb), gc) == mul(ga, mul(gb, gc)), ga, gb, gc)
        record("star_additive", star(add(e[:, None], g)) == add(star(e[:, None]), star(g)), e[:, None], g)
        pa, pb = np.meshgrid(gens, gens, indexing="ij")
        record("star_antimultiplicative", star(mul(pa, pb)) == mul(star(pb), star(pa)), pa, pb)
    else:
        rng = np.random.default_rng(seed)
        a, b, c = (rng.integers(0, N, samples) for _ in range(3))
        rep.samples = samples
        record("add_commutative", add(a, b) == add(b, a), a, b)
        record("add_associative", add(add(a, b), c) == add(a, add(b, c)), a, b, c)
        record("right_distributive", mul(add(a, b), c) == add(mul(a, c), mul(b, c)), a, b, c)
        record("left_distributive", mul(a, add(b, c)) == add(mul(a, b), mul(a, c)), a, b, c)
        record("mul_associative", mul(mul(a, b), c) == mul(a, mul(b, c)), a, b, c)
        record("star_additive", star(add(a, b)) == add(star(a), star(b)), a, b)
        record("star_antimultiplicative", star(mul(a, b)) == mul(star(b), star(a)), a, b)
    return rep


# --- homomorphisms ------------------------------------------------------------

@dataclass
class HomCheck:
    ok: bool
    failure: str | None = None
    witness: tuple | None = None


def check_star_isomorphism(src: FiniteStarRing, dst: FiniteStarRing, f) -> HomCheck:
    """Verify that the id map ``f`` (array over src ids) is a bijective
    unital *-homomorphism. Pairs are scanned exhaustively when there are at
    most ~1M of them, otherwise additivity is checked against additive
    generators and multiplicativity on generator pairs (enough by biadditivity).
    """
    f = _arr(f)
    if len(f) != src.order or src.order != dst.order:
        return HomCheck(False, "order mismatch")
    if len(np.unique(f)) != len(f):
        return HomCheck(False, "not injective")
    if f[src.one] != dst.one:
        return HomCheck(False, "unity not preserved", (src.one,))
    e = src.elements
    if src.order ** 2 <= 1_100_000:
        right = e
    else:
        right = np.array(src.additive_generators, dtype=np.int64)
    A, B = e[:, None], right[None, :]
    bad = np.argwhere(f[src.add(A, B)] != dst.add(f[A], f[B]))
    if len(bad):
        return HomCheck(False, "additivity", (int(bad[0][0]), int(right[bad[0][1]])))
    left = e if src.order ** 2 <= 1_100_000 else right
    A = left[:, None]
    bad = np.argwhere(f[src.mul(A, B)] != dst.mul(f[A], f[B]))
    if len(bad):
        return HomCheck(False, "multiplicativity", (int(left[bad[0][0]]), int(right[bad[0][1]])))
    bad = np.flatnonzero(f[src.star_all] != dst.star(f))
    if len(bad):
        return HomCheck(False, "star", (int(bad[0]),))
    return HomCheck(True)

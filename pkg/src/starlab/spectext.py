"""Text form of ring expressions: a small recursive-descent parser and the
matching printer.

    ring  := Z(n) | GF(p,k)[@frob(j)] | M(n, ring) | P(ring, ...)[@swap(i, ...)]
           | GR(group, ring) | Quot(ring, poly, poly) | Corner(ring, elem)
           | Sub(ring, elem, ...)
    group := C(n) | D(n) | S(n) | group x group
    elem  := int | #id | [elem, ...] | (elem, ...) | <elem, ...>
"""
from __future__ import annotations

import re

from . import expr as E
from . import groups as G


class SpecSyntaxError(SyntaxError):
    def __init__(self, text: str, pos: int, expected: str):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col, self.expected = line, col, expected
        got = text[pos:pos + 10] or "end of input"
        super().__init__(f"line {line}, col {col}: expected {expected}, got {got!r}")


class SemanticError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + msg)


_INT = re.compile(r"-?\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # lexing helpers
    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str):
        if not self.peek(s):
            raise SpecSyntaxError(self.text, self.pos, repr(s))
        self.pos += len(s)

    def int(self, what="integer") -> int:
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise SpecSyntaxError(self.text, self.pos, what)
        self.pos = m.end()
        return int(m.group())

    def where(self, pos):
        line = self.text.count("\n", 0, pos) + 1
        return line, pos - (self.text.rfind("\n", 0, pos) + 1) + 1

    def semantic(self, pos, msg):
        return SemanticError(msg, *self.where(pos))

    # grammar
    def ring(self):
        self.ws()
        start = self.pos
        for head, fn in (("Z(", self.zmod), ("GF(", self.gf), ("M(", self.matrix), ("P(", self.product),
                         ("GR(", self.group_ring), ("Quot(", self.quot), ("Corner(", self.corner),
                         ("Sub(", self.sub)):
            if self.text.startswith(head, self.pos):
                self.pos += len(head)
                return fn(start)
        raise SpecSyntaxError(self.text, self.pos, "ring constructor (Z, GF, M, P, GR, Quot, Corner, Sub)")

    def zmod(self, start):
        n = self.int()
        self.eat(")")
        if n < 2:
            raise self.semantic(start, f"Z(n) needs n >= 2, got {n}")
        return E.Zmod(n)

    def gf(self, start):
        p = self.int("prime")
        self.eat(",")
        k = self.int()
        self.eat(")")
        frob = 0
        if self.peek("@frob("):
            self.eat("@frob(")
            frob = self.int()
            self.eat(")")
        if not E.is_prime(p):
            raise self.semantic(start, f"field characteristic {p} is not prime")
        if k < 1:
            raise self.semantic(start, f"field degree must be >= 1, got {k}")
        if (2 * frob) % k:
            raise self.semantic(start, f"frobenius power {frob} is not an involution of GF({p}^{k})")
        return E.FiniteField(p, k, frob % k)

    def matrix(self, start):
        n = self.int()
        self.eat(",")
        r = self.ring()
        self.eat(")")
        if n < 1:
            raise self.semantic(start, f"matrix size must be >= 1, got {n}")
        return E.Matrix(n, r)

    def product(self, start):
        factors = [self.ring()]
        while self.peek(","):
            self.eat(",")
            factors.append(self.ring())
        self.eat(")")
        perm = None
        if self.peek("@swap("):
            at = self.pos
            self.eat("@swap(")
            perm = [self.int()]
            while self.peek(","):
                self.eat(",")
                perm.append(self.int())
            self.eat(")")
            m = len(factors)
            if sorted(perm) != list(range(m)) or any(perm[perm[i]] != i for i in range(m)):
                raise self.semantic(at, f"@swap{tuple(perm)} is not a self-inverse permutation of {m} factors")
            if any(factors[i] != factors[perm[i]] for i in range(m)):
                raise self.semantic(at, "swapped factors must be identical")
        return E.Product(tuple(factors), tuple(perm) if perm else None)

    def group(self):
        self.ws()
        parts = [self.group_atom()]
        while self.peek("x"):
            self.eat("x")
            parts.append(self.group_atom())
        return parts[0] if len(parts) == 1 else G.GroupProduct(tuple(parts))

    def group_atom(self):
        self.ws()
        start = self.pos
        for head, cls in (("C(", G.Cyclic), ("D(", G.Dihedral), ("S(", G.Symmetric)):
            if self.text.startswith(head, self.pos):
                self.pos += len(head)
                n = self.int()
                self.eat(")")
                if n < 1 or (cls is G.Dihedral and n < 2) or (cls is G.Symmetric and n > 4):
                    raise self.semantic(start, f"{head}{n}) is not a supported group")
                return cls(n)
        raise SpecSyntaxError(self.text, self.pos, "group (C, D, S)")

    def group_ring(self, start):
        g = self.group()
        self.eat(",")
        r = self.ring()
        self.eat(")")
        return E.GroupRing(g, r)

    def poly(self) -> tuple:
        """Integer polynomial in x: signed terms c, c*x, cx, x^k, c*x^k."""
        self.ws()
        start = self.pos
        coeffs = {}
        first = True
        while True:
            self.ws()
            sign = 1
            if self.peek("+") and not first:
                self.eat("+")
            elif self.peek("-"):
                self.eat("-")
                sign = -1
            elif not first:
                break
            self.ws()
            c, deg = 1, 0
            m = re.compile(r"\d+").match(self.text, self.pos)
            if m:
                c = int(m.group())
                self.pos = m.end()
                if self.peek("*"):
                    self.eat("*")
                    if not self.peek("x"):
                        raise SpecSyntaxError(self.text, self.pos, "'x'")
            if self.peek("x"):
                self.eat("x")
                deg = 1
                if self.peek("^"):
                    self.eat("^")
                    deg = self.int("exponent")
            elif not m:
                raise SpecSyntaxError(self.text, self.pos, "polynomial term")
            coeffs[deg] = coeffs.get(deg, 0) + sign * c
            first = False
        if not coeffs:
            raise SpecSyntaxError(self.text, start, "polynomial")
        top = max(coeffs)
        return tuple(coeffs.get(i, 0) for i in range(top + 1))

    def quot(self, start):
        base = self.ring()
        self.eat(",")
        mod = self.poly()
        self.eat(",")
        img = self.poly()
        self.eat(")")
        return E.QuotAdjoin(base, mod, img)

    def corner(self, start):
        parent = self.ring()
        self.eat(",")
        at = self.pos
        lit = self.elem()
        self.eat(")")
        return ("corner", parent, lit, at)

    def sub(self, start):
        parent = self.ring()
        lits = []
        while self.peek(","):
            self.eat(",")
            self.ws()
            lits.append((self.elem(), self.pos))
        self.eat(")")
        if not lits:
            raise SpecSyntaxError(self.text, self.pos, "at least one generator")
        return ("sub", parent, lits, start)

    def elem(self):
        self.ws()
        if self.peek("#"):
            self.eat("#")
            return ("id", self.int("element id"))
        for open_, close, tag in (("[", "]", "list"), ("(", ")", "tuple"), ("<", ">", "vec")):
            if self.peek(open_):
                self.eat(open_)
                items = [self.elem()]
                while self.peek(","):
                    self.eat(",")
                    items.append(self.elem())
                self.eat(close)
                return (tag, items)
        return self.int("element literal")


def _resolve(p: _Parser, node):
    """Turn parse nodes carrying element literals into expressions (building
    parents as needed to read the literals)."""
    from .rings import TooLarge, build_ring

    if isinstance(node, tuple) and node and node[0] in ("corner", "sub"):
        parent = _resolve(p, node[1])
        ring = build_ring(parent)
        if node[0] == "corner":
            _, _, lit, at = node
            try:
                x = ring.from_literal(lit)
            except E.InvalidExpr as ex:
                raise p.semantic(at, str(ex)) from None
            if not ring.projection_mask[x]:
                raise p.semantic(at, f"corner element {ring.render(x)} is not a projection")
            return E.Corner(parent, int(x))
        ids = []
        for lit, at in node[2]:
            try:
                ids.append(int(ring.from_literal(lit)))
            except E.InvalidExpr as ex:
                raise p.semantic(at, str(ex)) from None
        return E.GenSub(parent, tuple(ids))
    if isinstance(node, E.Matrix):
        return E.Matrix(node.n, _resolve(p, node.entry))
    if isinstance(node, E.Product):
        return E.Product(tuple(_resolve(p, f) for f in node.factors), node.perm)
    if isinstance(node, E.GroupRing):
        return E.GroupRing(node.group, _resolve(p, node.coeff))
    if isinstance(node, E.QuotAdjoin):
        q = E.QuotAdjoin(_resolve(p, node.base), node.modulus, node.image)
        try:
            build_ring(q)
        except E.InvalidExpr as ex:
            raise SemanticError(str(ex)) from None
        except TooLarge:
            pass
        return q
    return node


def parse_ring_spec(text: str):
    """Parse and canonicalize; raises SpecSyntaxError or SemanticError."""
    p = _Parser(text)
    node = p.ring()
    p.ws()
    if p.pos != len(text):
        raise SpecSyntaxError(text, p.pos, "end of input")
    expr = E.canonicalize(_resolve(p, node))
    try:
        E.validate(expr)
    except E.InvalidExpr as ex:
        raise SemanticError(str(ex)) from None
    return expr


def parse_element(ring, text: str) -> int:
    p = _Parser(text)
    lit = p.elem()
    p.ws()
    if p.pos != len(text):
        raise SpecSyntaxError(text, p.pos, "end of input")
    try:
        return int(ring.from_literal(lit))
    except E.InvalidExpr as ex:
        raise SemanticError(str(ex)) from None


# --- printing ----------------------------------------------------------------

def format_poly(coeffs) -> str:
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        mag = abs(c)
        body = "x" if d == 1 else f"x^{d}" if d > 1 else ""
        text = (str(mag) if mag != 1 or not body else "") + body
        terms.append(("-" if c < 0 else "+" if terms else "") + text)
    return "".join(terms) or "0"


def format_group(g) -> str:
    if isinstance(g, G.Cyclic):
        return f"C({g.n})"
    if isinstance(g, G.Dihedral):
        return f"D({g.n})"
    if isinstance(g, G.Symmetric):
        return f"S({g.n})"
    if isinstance(g, G.GroupProduct):
        return "x".join(format_group(s) for s in g.specs)
    raise ValueError(f"group {g!r} has no text form")


def format_ring_spec(expr) -> str:
    """Canonical text; parse(format(e)) == canonicalize(e)."""
    from .rings import build_ring

    expr = E.canonicalize(expr)
    if isinstance(expr, E.Zmod):
        return f"Z({expr.n})"
    if isinstance(expr, E.FiniteField):
        s = f"GF({expr.p},{expr.k})"
        return s + (f"@frob({expr.frob})" if expr.frob else "")
    if isinstance(expr, E.Matrix):
        return f"M({expr.n},{format_ring_spec(expr.entry)})"
    if isinstance(expr, E.Product):
        s = "P(" + ",".join(format_ring_spec(f) for f in expr.factors) + ")"
        if expr.perm is not None:
            s += "@swap(" + ",".join(str(i) for i in expr.perm) + ")"
        return s
    if isinstance(expr, E.GroupRing):
        return f"GR({format_group(expr.group)},{format_ring_spec(expr.coeff)})"
    if isinstance(expr, E.QuotAdjoin):
        return f"Quot({format_ring_spec(expr.base)},{format_poly(expr.modulus)},{format_poly(expr.image)})"
    if isinstance(expr, E.Corner):
        parent = build_ring(expr.parent)
        return f"Corner({format_ring_spec(expr.parent)},{parent.render(expr.projection)})"
    if isinstance(expr, E.GenSub):
        parent = build_ring(expr.parent)
        return f"Sub({format_ring_spec(expr.parent)}," + ",".join(parent.render(g) for g in expr.gens) + ")"
    raise ValueError(f"expression {expr!r} has no text form")

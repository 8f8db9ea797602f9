"""Finite groups given by Cayley tables, used as bases of group rings."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np


class InvalidGroup(ValueError):
    pass


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    """Symmetries of the regular n-gon; order 2n."""
    n: int


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class GroupProduct:
    specs: tuple


@dataclass(frozen=True)
class CayleyTable:
    table: tuple  # tuple of row tuples
    identity: int = 0


GroupSpec = Cyclic | Dihedral | Symmetric | GroupProduct | CayleyTable


@dataclass(frozen=True)
class FiniteGroup:
    table: np.ndarray
    identity: int
    inverse: np.ndarray

    @property
    def order(self) -> int:
        return len(self.inverse)


def group_order(spec) -> int:
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, Dihedral):
        return 2 * spec.n
    if isinstance(spec, Symmetric):
        return len(list(itertools.permutations(range(spec.n))))
    if isinstance(spec, GroupProduct):
        out = 1
        for s in spec.specs:
            out *= group_order(s)
        return out
    if isinstance(spec, CayleyTable):
        return len(spec.table)
    raise InvalidGroup(f"unknown group spec {spec!r}")


def _raw_table(spec) -> tuple[np.ndarray, int]:
    if isinstance(spec, Cyclic):
        if spec.n < 1:
            raise InvalidGroup("cyclic group needs n >= 1")
        i = np.arange(spec.n)
        return (i[:, None] + i[None, :]) % spec.n, 0
    if isinstance(spec, Dihedral):
        n = spec.n
        if n < 1:
            raise InvalidGroup("dihedral group needs n >= 1")
        # index k + n*f stands for r^k s^f
        t = np.zeros((2 * n, 2 * n), dtype=np.int64)
        for a, f, b, g in itertools.product(range(n), range(2), range(n), range(2)):
            k = (a + (b if f == 0 else -b)) % n
            t[a + n * f, b + n * g] = k + n * ((f + g) % 2)
        return t, 0
    if isinstance(spec, Symmetric):
        if not 1 <= spec.n <= 4:
            raise InvalidGroup("symmetric groups are supported for n <= 4")
        perms = list(itertools.permutations(range(spec.n)))
        index = {p: i for i, p in enumerate(perms)}
        t = np.array([[index[tuple(p[q[i]] for i in range(spec.n))] for q in perms] for p in perms])
        return t, 0
    if isinstance(spec, GroupProduct):
        if not spec.specs:
            raise InvalidGroup("empty group product")
        t, e = _raw_table(spec.specs[0])
        for s in spec.specs[1:]:
            u, f = _raw_table(s)
            m = len(u)
            # mixed radix: first factor is the high digit
            t = (t[:, None, :, None] * m + u[None, :, None, :]).reshape(len(t) * m, len(t) * m)
            e = e * m + f
        return t, e
    if isinstance(spec, CayleyTable):
        return np.array(spec.table, dtype=np.int64), spec.identity
    raise InvalidGroup(f"unknown group spec {spec!r}")


def build_group(spec) -> FiniteGroup:
    """Realize a group spec and check the group axioms on its table."""
    table, e = _raw_table(spec)
    n = len(table)
    if table.shape != (n, n) or n == 0:
        raise InvalidGroup("Cayley table must be a nonempty square")
    if table.min() < 0 or table.max() >= n:
        raise InvalidGroup("Cayley table entries out of range")
    if not 0 <= e < n:
        raise InvalidGroup("identity index out of range")
    idx = np.arange(n)
    if not (np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx)):
        raise InvalidGroup("identity index is not a two-sided identity")
    lhs = table[table[:, :, None], idx[None, None, :]]
    rhs = table[idx[:, None, None], table[None, :, :]]
    if not np.array_equal(lhs, rhs):
        a, b, c = np.argwhere(lhs != rhs)[0]
        raise InvalidGroup(f"table is not associative at ({a}, {b}, {c})")
    hits = table == e
    if not hits.any(axis=1).all():
        raise InvalidGroup("some element has no inverse")
    inverse = hits.argmax(axis=1)
    if not np.array_equal(table[inverse, idx], np.full(n, e)):
        raise InvalidGroup("right inverse is not a left inverse")
    return FiniteGroup(table=table, identity=int(e), inverse=inverse)

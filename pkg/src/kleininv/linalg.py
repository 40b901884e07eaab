"""Sparse exact linear algebra used by the oracle.

Vectors are sparse over integer indices.  Over a binary field GF(2^k) a
vector is stored bit-sliced: ``k`` sets of indices, plane ``i`` holding the
indices whose coefficient has bit ``i`` set, so additions are set
symmetric differences.  Over F_2(l) a vector is a dict ``index -> payload``.

Eliminations pivot on the largest index of a vector.
"""

from __future__ import annotations

from typing import Iterable

from .coeff import BinaryField, Field

__all__ = ["Backend", "backend_for", "Echelon"]


class Backend:
    """Vector operations for one coefficient field."""

    def __init__(self, field: Field):
        self.field = field

    # the interface below is implemented by the two subclasses
    def from_items(self, items: Iterable[tuple[int, object]]):
        raise NotImplementedError

    def items(self, v) -> list[tuple[int, object]]:
        raise NotImplementedError


class _Planes(Backend):
    def __init__(self, field: BinaryField):
        super().__init__(field)
        self.k = field.k
        # columns of the multiplication-by-c matrix, for every c
        self._mat = {}
        for c in range(1, field.order):
            cols = [field.mul(c, 1 << j) for j in range(self.k)]
            # plane i of c*v is the xor of planes j of v with bit i of c*t^j set
            self._mat[c] = [[j for j in range(self.k) if cols[j] >> i & 1] for i in range(self.k)]

    def zero(self):
        return [set() for _ in range(self.k)]

    def copy(self, v):
        return [set(p) for p in v]

    def from_items(self, items):
        v = self.zero()
        for i, c in items:
            b = 0
            while c:
                if c & 1:
                    v[b] ^= {i}
                c >>= 1
                b += 1
        return v

    def from_set(self, s: set):
        v = self.zero()
        v[0] = set(s)
        return v

    def items(self, v):
        out: dict = {}
        for b, p in enumerate(v):
            for i in p:
                out[i] = out.get(i, 0) | (1 << b)
        return sorted(out.items())

    def is_zero(self, v) -> bool:
        return not any(v)

    def lead(self, v):
        return max(max(p) for p in v if p)

    def coeff(self, v, i) -> int:
        c = 0
        for b, p in enumerate(v):
            if i in p:
                c |= 1 << b
        return c

    def indices(self, v) -> set:
        if self.k == 1:
            return v[0]
        return set().union(*v)

    def scaled(self, v, c):
        if c == 1:
            return v
        mat = self._mat[c]
        out = []
        for row in mat:
            s: set = set()
            for j in row:
                s ^= v[j]
            out.append(s)
        return out

    def add_into(self, v, w, c=1):
        """v += c*w (in place)."""
        if c != 1:
            w = self.scaled(w, c)
        for a, b in zip(v, w):
            a ^= b

    def normalize(self, v):
        c = self.coeff(v, self.lead(v))
        return v if c == 1 else self.scaled(v, self.field.inv(c))

    def restrict(self, v, keep):
        return [{i for i in p if keep(i)} for p in v]

    def size(self, v) -> int:
        return len(self.indices(v))


class _Dicts(Backend):
    def zero(self):
        return {}

    def copy(self, v):
        return dict(v)

    def from_items(self, items):
        F = self.field
        v = {}
        for i, c in items:
            s = F.add(v.get(i, F.zero), c)
            if F.is_zero(s):
                v.pop(i, None)
            else:
                v[i] = s
        return v

    def from_set(self, s: set):
        return {i: self.field.one for i in s}

    def items(self, v):
        return sorted(v.items())

    def is_zero(self, v) -> bool:
        return not v

    def lead(self, v):
        return max(v)

    def coeff(self, v, i):
        return v.get(i, self.field.zero)

    def indices(self, v) -> set:
        return set(v)

    def scaled(self, v, c):
        F = self.field
        return {i: F.mul(a, c) for i, a in v.items()}

    def add_into(self, v, w, c=None):
        F = self.field
        for i, a in w.items():
            if c is not None:
                a = F.mul(a, c)
            s = F.add(v.get(i, F.zero), a)
            if F.is_zero(s):
                v.pop(i, None)
            else:
                v[i] = s

    def normalize(self, v):
        c = v[self.lead(v)]
        return v if c == self.field.one else self.scaled(v, self.field.inv(c))

    def restrict(self, v, keep):
        return {i: a for i, a in v.items() if keep(i)}

    def size(self, v) -> int:
        return len(v)


def backend_for(field: Field) -> Backend:
    if isinstance(field, BinaryField):
        return _Planes(field)
    return _Dicts(field)


class Echelon:
    """Row echelon form keyed by lead index; rows are kept monic."""

    def __init__(self, backend: Backend):
        self.bk = backend
        self.pivots: dict = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v, stop_below: int | None = None):
        """Top-reduce ``v`` (a private copy is modified).

        Stops when the lead is not a pivot, or when it drops below ``stop_below``.
        """
        bk = self.bk
        piv = self.pivots
        while not bk.is_zero(v):
            h = bk.lead(v)
            if stop_below is not None and h < stop_below:
                break
            p = piv.get(h)
            if p is None:
                break
            bk.add_into(v, p, bk.coeff(v, h))
        return v

    def insert(self, v) -> bool:
        """Add ``v`` to the span; True if the rank grew."""
        v = self.reduce(v)
        if self.bk.is_zero(v):
            return False
        v = self.bk.normalize(v)
        self.pivots[self.bk.lead(v)] = v
        return True

    def contains(self, v) -> bool:
        return self.bk.is_zero(self.reduce(self.bk.copy(v)))

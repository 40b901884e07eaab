"""Sparse multivariate polynomials in characteristic 2 with grevlex order.

Variables are listed ascending in the term order (smallest first).  A
monomial is a tuple of exponents, one slot per variable.  Under grevlex a
monomial of higher total degree is larger; on ties the one with the smaller
exponent in the smallest variable where they differ is larger.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .coeff import BinaryField, Field, RationalFunctionField, Scalar
from .errors import (
    MixedAmbient,
    MixedFields,
    NotDivisible,
    NotMonicInVariable,
    ParseError,
    ZeroPolynomial,
)

__all__ = [
    "Monomial",
    "GrevlexOrder",
    "PolynomialRing",
    "Polynomial",
    "compare",
    "monic_divide",
    "parse_polynomial",
    "format_polynomial",
    "LT",
    "EQ",
    "GT",
]

Monomial = tuple  # tuple[int, ...]

LT, EQ, GT = -1, 0, 1


def grevlex_key(e: Monomial) -> tuple:
    return (sum(e), *(-a for a in e))


class GrevlexOrder:
    """Grevlex over a fixed ascending variable list."""

    kind = "grevlex"

    def __init__(self, names: tuple[str, ...]):
        self.names = names

    key = staticmethod(grevlex_key)

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != len(b) or len(a) != len(self.names):
            raise MixedAmbient("monomials over different variable lists")
        ka, kb = grevlex_key(a), grevlex_key(b)
        return GT if ka > kb else LT if ka < kb else EQ

    def __eq__(self, other):
        return isinstance(other, GrevlexOrder) and other.names == self.names

    def __hash__(self):
        return hash(("grevlex", self.names))


def compare(a, b, order: GrevlexOrder) -> int:
    """Compare two monomials (tuples or monomial polynomials)."""
    if isinstance(a, Polynomial):
        a = a.lm
    if isinstance(b, Polynomial):
        b = b.lm
    return order.compare(a, b)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolynomialRing:
    """F[v_1, ..., v_n] with the variables ascending in grevlex."""

    def __init__(self, names: Iterable[str], field: Field):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        for nm in self.names:
            if not _NAME.match(nm):
                raise ValueError(f"bad variable name {nm!r}")
        self.field = field
        self.n = len(self.names)
        self.order = GrevlexOrder(self.names)
        self._index = {nm: i for i, nm in enumerate(self.names)}

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.names == other.names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolynomialRing({list(self.names)}, {self.field!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def unit(self, i: int, power: int = 1) -> Monomial:
        e = [0] * self.n
        e[i] = power
        return tuple(e)

    def var(self, v) -> "Polynomial":
        i = self._index[v] if isinstance(v, str) else v
        return Polynomial(self, {self.unit(i): self.field.one})

    @property
    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.n)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(self.field.one)

    def const(self, c) -> "Polynomial":
        if isinstance(c, Scalar):
            if c.field != self.field:
                raise MixedFields("constant from another field")
            c = c.value
        elif isinstance(c, int):
            c = self.field.from_int(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.n: c})

    def monomial(self, e: Monomial, coeff=None) -> "Polynomial":
        e = tuple(e)
        if len(e) != self.n:
            raise MixedAmbient("exponent vector has wrong length")
        c = self.field.one if coeff is None else _payload(self.field, coeff)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {e: c})

    def from_terms(self, terms: Mapping) -> "Polynomial":
        F = self.field
        out = {}
        for e, c in terms.items():
            c = _payload(F, c)
            if not F.is_zero(c):
                out[tuple(e)] = c
        return Polynomial(self, out)

    def with_field(self, field: Field) -> "PolynomialRing":
        return PolynomialRing(self.names, field)

    def with_names(self, names: Iterable[str]) -> "PolynomialRing":
        return PolynomialRing(names, self.field)

    def monomial_str(self, e: Monomial) -> str:
        parts = []
        for nm, a in zip(self.names, e):
            if a == 1:
                parts.append(nm)
            elif a:
                parts.append(f"{nm}^{a}")
        return "*".join(parts) if parts else "1"

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


def _payload(F: Field, c):
    if isinstance(c, Scalar):
        if c.field != F:
            raise MixedFields(f"{c.field!r} vs {F!r}")
        return c.value
    if isinstance(c, int):
        return F.from_int(c)
    return c


class Polynomial:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to payloads."""

    __slots__ = ("ring", "terms", "_lm", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None
        self._hash = None

    # -- basic queries
    @property
    def field(self) -> Field:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def lm(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ZeroPolynomial("leading monomial of zero")
            self._lm = max(self.terms, key=grevlex_key)
        return self._lm

    @property
    def lc(self) -> Scalar:
        return Scalar(self.field, self.terms[self.lm])

    def leading(self) -> tuple[Monomial, Scalar]:
        return self.lm, self.lc

    def lt(self) -> "Polynomial":
        return Polynomial(self.ring, {self.lm: self.terms[self.lm]})

    def coefficient(self, e: Monomial) -> Scalar:
        return Scalar(self.field, self.terms.get(tuple(e), self.field.zero))

    def monomials(self) -> list[Monomial]:
        """Support sorted descending."""
        return sorted(self.terms, key=grevlex_key, reverse=True)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self) -> int | None:
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None or not self.terms

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def support_vars(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    # -- arithmetic
    def _check(self, other: "Polynomial"):
        if other.ring is not self.ring and other.ring != self.ring:
            if other.ring.field != self.ring.field and other.ring.names == self.ring.names:
                raise MixedFields("polynomials over different fields")
            raise MixedAmbient("polynomials over different rings")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Scalar)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        F = self.field
        out = dict(a)
        for e, c in b.items():
            d = out.get(e)
            if d is None:
                out[e] = c
            else:
                s = F.add(d, c)
                if F.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__
    __sub__ = __add__  # characteristic 2
    __rsub__ = __add__

    def __neg__(self):
        return self

    def scale(self, c) -> "Polynomial":
        F = self.field
        c = _payload(F, c)
        if F.is_zero(c):
            return self.ring.zero()
        if c == F.one:
            return self
        return Polynomial(self.ring, {e: F.mul(v, c) for e, v in self.terms.items()})

    def shift(self, m: Monomial) -> "Polynomial":
        """Multiply by a monomial."""
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, m)): c for e, c in self.terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        F = self.field
        gf2 = F is _GF2_FIELD or (isinstance(F, BinaryField) and F.k == 1)
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if gf2:
                    if e in out:
                        del out[e]
                    else:
                        out[e] = 1
                else:
                    c = F.mul(ca, cb)
                    d = out.get(e)
                    if d is None:
                        out[e] = c
                    else:
                        s = F.add(d, c)
                        if F.is_zero(s):
                            del out[e]
                        else:
                            out[e] = s
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def square(self) -> "Polynomial":
        """Frobenius: squaring is additive in characteristic 2."""
        F = self.field
        return Polynomial(
            self.ring,
            {tuple(2 * a for a in e): F.mul(c, c) for e, c in self.terms.items()},
        )

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Scalar)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- division
    def divides_monomial(self, m: Monomial) -> bool:
        return all(a >= b for a, b in zip(m, self.lm))

    def exact_divide(self, m) -> "Polynomial":
        """Divide every term by the monomial ``m``; raise if any term is not divisible."""
        if isinstance(m, Polynomial):
            if len(m.terms) != 1:
                raise NotDivisible("divisor must be a single term")
            (m, c), = m.terms.items()
            scale = self.field.inv(c)
        else:
            scale = None
        m = tuple(m)
        out = {}
        for e in self.monomials():
            q = tuple(a - b for a, b in zip(e, m))
            if min(q, default=0) < 0:
                raise NotDivisible(
                    f"{self.ring.monomial_str(e)} is not divisible by {self.ring.monomial_str(m)}",
                    witness=e,
                )
            out[q] = self.terms[e]
        p = Polynomial(self.ring, out)
        return p.scale(scale) if scale is not None else p

    def map_coefficients(self, ring: PolynomialRing, fn) -> "Polynomial":
        """Apply ``fn`` (Scalar -> Scalar) to each coefficient, landing in ``ring``."""
        F = ring.field
        out = {}
        for e, c in self.terms.items():
            v = _payload(F, fn(Scalar(self.field, c)))
            if not F.is_zero(v):
                out[e] = v
        return Polynomial(ring, out)

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Ring homomorphism sending variable i to ``images[i]``."""
        ring = images[0].ring if images else self.ring
        cache: dict = {}

        def power(i: int, a: int) -> Polynomial:
            key = (i, a)
            if key not in cache:
                cache[key] = images[i] ** a
            return cache[key]

        total = ring.zero()
        one = (0,) * ring.n
        for e, c in self.terms.items():
            t = Polynomial(ring, {one: c})
            for i, a in enumerate(e):
                if a:
                    t = t * power(i, a)
            total = total + t
        return total

    # -- text
    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


_GF2_FIELD = BinaryField(1)


# ---------------------------------------------------------------- division by y_k-monic


def monic_divide(
    f: Polynomial, N: Polynomial, k: int, strategy: str = "block"
) -> tuple[Polynomial, Polynomial]:
    """Divide ``f`` by ``N`` as polynomials in variable ``k``: ``f = q N + r``."""
    if f.ring != N.ring:
        raise MixedAmbient("f and N over different rings")
    if N.is_zero():
        raise NotMonicInVariable("N is zero")
    ring = f.ring
    F = ring.field
    D = N.degree_in(k)
    lead = [(e, c) for e, c in N.terms.items() if e[k] == D]
    if len(lead) != 1 or any(a for i, a in enumerate(lead[0][0]) if i != k):
        raise NotMonicInVariable(
            f"leading coefficient of N in {ring.names[k]} is not a nonzero scalar"
        )
    inv = F.inv(lead[0][1])
    q = ring.zero()
    r = f
    while r and r.degree_in(k) >= D:
        d = r.degree_in(k)
        if strategy == "block":
            top = {e: c for e, c in r.terms.items() if e[k] == d}
        else:
            e = max((e for e in r.terms if e[k] == d), key=grevlex_key)
            top = {e: r.terms[e]}
        step = Polynomial(
            ring,
            {
                tuple(a - (D if i == k else 0) for i, a in enumerate(e)): F.mul(c, inv)
                for e, c in top.items()
            },
        )
        q = q + step
        r = r - step * N
    return q, r


# ---------------------------------------------------------------- text grammar


def format_polynomial(p: Polynomial) -> str:
    """Terms descending in grevlex, joined by ``+``; non-unit coefficients parenthesised."""
    if not p.terms:
        return "0"
    F = p.field
    parts = []
    for e in p.monomials():
        c = p.terms[e]
        mono = p.ring.monomial_str(e)
        if c == F.one:
            parts.append(mono)
        else:
            cs = f"({F.format_payload(c)})"
            parts.append(cs if mono == "1" else f"{cs}*{mono}")
    return "+".join(parts)


_TOKEN_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_INT = re.compile(r"[0-9]+")


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse the grammar emitted by :func:`format_polynomial`.

    ``term = factor ("*" factor)*``; a factor is a variable with optional
    ``^n``, an integer, or a coefficient in parentheses.  Bare coefficient
    names (``t``, ``l``) that are not ring variables are also accepted.
    """
    F = ring.field
    pos = 0
    n = len(text)
    total = ring.zero()

    def fail(msg, at):
        raise ParseError(msg, at)

    if not text.strip():
        fail("empty polynomial", 0)

    while True:
        coeff = F.one
        exps = [0] * ring.n
        while True:
            if pos >= n:
                fail("expected factor", pos)
            ch = text[pos]
            if ch == "(":
                depth, j = 1, pos + 1
                while j < n and depth:
                    depth += {"(": 1, ")": -1}.get(text[j], 0)
                    j += 1
                if depth:
                    fail("unbalanced parenthesis", pos)
                coeff = F.mul(coeff, F.parse_payload(text[pos + 1 : j - 1], pos + 1))
                pos = j
            elif ch.isdigit():
                m = _TOKEN_INT.match(text, pos)
                coeff = F.mul(coeff, F.from_int(int(m.group())))
                pos = m.end()
            elif ch.isalpha() or ch == "_":
                m = _TOKEN_NAME.match(text, pos)
                name = m.group()
                end = m.end()
                power = 1
                if end < n and text[end] == "^":
                    im = _TOKEN_INT.match(text, end + 1)
                    if im is None:
                        fail("expected exponent", end + 1)
                    power = int(im.group())
                    end = im.end()
                if name in ring._index:
                    exps[ring._index[name]] += power
                else:
                    try:
                        c = F.parse_payload(text[pos:end], pos)
                    except ParseError:
                        fail(f"unknown variable {name!r}", pos)
                    coeff = F.mul(coeff, c)
                pos = end
            else:
                fail(f"unexpected {ch!r}", pos)
            if pos < n and text[pos] == "*":
                pos += 1
                continue
            break
        if not F.is_zero(coeff):
            total = total + Polynomial(ring, {tuple(exps): coeff})
        if pos >= n:
            return total
        if text[pos] != "+":
            fail(f"unexpected {text[pos]!r}", pos)
        pos += 1


def iter_monomials(nvars: int, d: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree ``d``."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in iter_monomials(nvars - 1, d - a):
            yield (a, *rest)

"""Exact coefficient fields of characteristic 2.

Three kinds of field are provided:

* ``GF2`` : the prime field, payloads ``0`` and ``1``;
* ``BinaryField(k)`` : GF(2^k), payloads are ints whose bits are the
  coefficients of a polynomial in ``t`` reduced modulo a fixed irreducible
  modulus;
* ``RationalFunctionField`` : F_2(l), payloads are reduced pairs
  ``(num, den)`` of F_2[l] polynomials, again encoded as bit-ints.

Fields work on raw payloads (fast path used by the polynomial and linear
algebra code); :class:`Scalar` wraps a payload together with its field for
user-facing arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterator

from .errors import DivisionByZero, MixedFields, ParseError, PoleAtValue

__all__ = [
    "BinaryField",
    "RationalFunctionField",
    "Scalar",
    "GF2",
    "GF4",
    "GF8",
    "GF16",
    "F2L",
    "DEFAULT_MODULI",
    "evaluate_lambda",
    "parse_field",
    "clmul",
    "pdivmod",
    "pgcd",
]

# Fixed moduli (all primitive, so t generates the multiplicative group).
DEFAULT_MODULI = {
    1: 0b11,  # t+1
    2: 0b111,  # t^2+t+1
    3: 0b1011,  # t^3+t+1
    4: 0b10011,  # t^4+t+1
    5: 0b100101,  # t^5+t^2+1
    6: 0b1000011,  # t^6+t+1
    7: 0b10000011,  # t^7+t+1
    8: 0b100011101,  # t^8+t^4+t^3+t^2+1
}


# ---------------------------------------------------------------- F_2[t] ops


def clmul(a: int, b: int) -> int:
    """Carry-less product of two F_2[t] polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def pdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise DivisionByZero("polynomial division by zero")
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def pmod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, pmod(a, b)
    return a


def _is_irreducible(p: int) -> bool:
    k = p.bit_length() - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if pmod(p, f) == 0:
                return False
    return True


def _poly_to_text(p: int, var: str) -> str:
    if p == 0:
        return "0"
    parts = []
    for e in range(p.bit_length() - 1, -1, -1):
        if p >> e & 1:
            parts.append("1" if e == 0 else var if e == 1 else f"{var}^{e}")
    return "+".join(parts)


class _Cursor:
    """Tiny recursive-descent helper for the coefficient grammar."""

    def __init__(self, text: str, pos: int = 0, offset: int = 0):
        self.text = text
        self.pos = pos
        self.offset = offset

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, msg: str):
        raise ParseError(msg, self.offset + self.pos)

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected integer")
        return int(self.text[start:self.pos])

    def poly(self, var: str) -> int:
        """Parse ``term (+ term)*`` where term is ``0``, ``1``, var, var^n."""
        acc = 0
        while True:
            ch = self.peek()
            if ch == var:
                self.pos += 1
                e = 1
                if self.peek() == "^":
                    self.pos += 1
                    e = self.integer()
                acc ^= 1 << e
            elif ch.isdigit():
                acc ^= self.integer() & 1
            else:
                self.fail(f"expected term in {var}")
            if self.peek() != "+":
                return acc
            self.pos += 1


# ---------------------------------------------------------------- fields


@dataclass(frozen=True)
class BinaryField:
    """GF(2^k) with payloads reduced modulo ``modulus`` (``k = 1`` is GF(2))."""

    k: int
    modulus: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.modulus == 0:
            if self.k not in DEFAULT_MODULI:
                raise ValueError(f"no default modulus for k={self.k}")
            object.__setattr__(self, "modulus", DEFAULT_MODULI[self.k])
        if self.modulus.bit_length() - 1 != self.k:
            raise ValueError("modulus degree must equal k")
        if not _is_irreducible(self.modulus):
            raise ValueError(f"modulus {_poly_to_text(self.modulus, 't')} is reducible")

    # -- tables (excluded from equality; computed on first use)
    @cached_property
    def _tables(self):
        q1 = (1 << self.k) - 1
        exp = [0] * (2 * q1 + 1)
        log = [0] * (q1 + 1)
        a = 1
        for i in range(q1):
            exp[i] = a
            log[a] = i
            a = pmod(a << 1, self.modulus)
        if a != 1 or len({exp[i] for i in range(q1)}) != q1:
            return None  # t is not primitive; fall back to clmul
        for i in range(q1, 2 * q1 + 1):
            exp[i] = exp[i - q1]
        return exp, log

    @property
    def kind(self) -> str:
        return "GF2" if self.k == 1 else "GF2k"

    @property
    def order(self) -> int:
        return 1 << self.k

    @property
    def name(self) -> str:
        return "GF2" if self.k == 1 else f"GF{1 << self.k}"

    zero = 0
    one = 1
    is_finite = True

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return 1
        t = self._tables
        if t is None:
            return pmod(clmul(a, b), self.modulus)
        exp, log = t
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return 1
        t = self._tables
        if t is None:
            return self.pow(a, self.order - 2)
        exp, log = t
        return exp[(self.order - 1 - log[a]) % (self.order - 1)]

    def pow(self, a: int, n: int) -> int:
        r, b = 1, a
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            n >>= 1
        return r

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int) -> int:
        return n & 1

    def canonical(self, a: int) -> int:
        return pmod(a, self.modulus)

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def gen(self) -> "Scalar":
        """The class of ``t`` (the primitive element)."""
        return Scalar(self, self.canonical(0b10))

    def format_payload(self, a: int) -> str:
        return _poly_to_text(a, "t")

    def parse_payload(self, text: str, offset: int = 0) -> int:
        cur = _Cursor(text.strip(), 0, offset)
        if self.k == 1:
            if cur.text not in ("0", "1"):
                cur.fail("expected 0 or 1")
            return int(cur.text)
        val = cur.poly("t")
        if cur.pos != len(cur.text):
            cur.fail("unexpected character")
        return self.canonical(val)

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, int):
            return Scalar(self, self.canonical(value) if self.k > 1 else value & 1)
        return Scalar(self, self.parse_payload(value))

    def __repr__(self) -> str:
        if self.modulus == DEFAULT_MODULI.get(self.k):
            return self.name
        return f"{self.name}[{_poly_to_text(self.modulus, 't')}]"


@dataclass(frozen=True)
class RationalFunctionField:
    """F_2(l): payloads are reduced ``(num, den)`` pairs of F_2[l] bit-ints."""

    kind = "RationalFunction"
    name = "F2(l)"
    is_finite = False
    zero = (0, 1)
    one = (1, 1)

    def canonical(self, a: tuple[int, int]) -> tuple[int, int]:
        n, d = a
        if d == 0:
            raise DivisionByZero("zero denominator")
        if n == 0:
            return (0, 1)
        g = pgcd(n, d)
        if g != 1:
            n, d = pdivmod(n, g)[0], pdivmod(d, g)[0]
        return (n, d)

    def add(self, a, b):
        an, ad = a
        bn, bd = b
        if an == 0:
            return b
        if bn == 0:
            return a
        if ad == bd:
            return self.canonical((an ^ bn, ad))
        return self.canonical((clmul(an, bd) ^ clmul(bn, ad), clmul(ad, bd)))

    def mul(self, a, b):
        an, ad = a
        bn, bd = b
        if an == 0 or bn == 0:
            return (0, 1)
        if ad == 1 and bd == 1:
            return (clmul(an, bn), 1)
        return self.canonical((clmul(an, bn), clmul(ad, bd)))

    def inv(self, a):
        if a[0] == 0:
            raise DivisionByZero("inverse of zero")
        return (a[1], a[0])

    def pow(self, a, n: int):
        return (_ipow(a[0], n), _ipow(a[1], n))

    def is_zero(self, a) -> bool:
        return a[0] == 0

    def from_int(self, n: int):
        return (n & 1, 1)

    def gen(self) -> "Scalar":
        return Scalar(self, (0b10, 1))

    def format_payload(self, a) -> str:
        def part(p):
            s = _poly_to_text(p, "l")
            return f"({s})" if "+" in s else s

        return f"{part(a[0])}/{part(a[1])}"

    def parse_payload(self, text: str, offset: int = 0):
        cur = _Cursor(text.strip(), 0, offset)

        def part():
            if cur.peek() == "(":
                cur.pos += 1
                v = cur.poly("l")
                if cur.peek() != ")":
                    cur.fail("expected ')'")
                cur.pos += 1
                return v
            return cur.poly("l")

        num = part()
        den = 1
        if cur.peek() == "/":
            cur.pos += 1
            den = part()
            if den == 0:
                cur.fail("zero denominator")
        if cur.pos != len(cur.text):
            cur.fail("unexpected character")
        return self.canonical((num, den))

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, int):
            return Scalar(self, (value & 1, 1))
        if isinstance(value, tuple):
            return Scalar(self, self.canonical(value))
        return Scalar(self, self.parse_payload(value))

    def __repr__(self) -> str:
        return self.name


def _ipow(p: int, n: int) -> int:
    r = 1
    while n:
        if n & 1:
            r = clmul(r, p)
        p = clmul(p, p)
        n >>= 1
    return r


GF2 = BinaryField(1)
GF4 = BinaryField(2)
GF8 = BinaryField(3)
GF16 = BinaryField(4)
F2L = RationalFunctionField()

Field = BinaryField | RationalFunctionField


def parse_field(name: str) -> Field:
    """``GF2``, ``GF4``, ..., ``GF256`` or ``F2(l)``."""
    if name in ("F2(l)", "F2L", "RationalFunction"):
        return F2L
    if name.startswith("GF") and name[2:].isdigit():
        q = int(name[2:])
        k = q.bit_length() - 1
        if q == 1 << k and k >= 1:
            return BinaryField(k)
    raise ValueError(f"unknown field {name!r}")


# ---------------------------------------------------------------- scalars


@dataclass(frozen=True, slots=True)
class Scalar:
    """An immutable field element."""

    field: Field
    value: object = dc_field(default=0)

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise MixedFields(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, int):
            return Scalar(self.field, self.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.add(self.value, o.value))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.mul(self.value, o.value))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.field, self.field.pow(self.value, n))

    def __bool__(self) -> bool:
        return not self.field.is_zero(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Scalar(self.field, self.field.from_int(other)) if other in (0, 1) else None
        if not isinstance(other, Scalar):
            return False
        return self.field == other.field and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def canonical(self) -> "Scalar":
        return Scalar(self.field, self.field.canonical(self.value))

    def __str__(self) -> str:
        return self.field.format_payload(self.value)

    def __repr__(self) -> str:
        return f"Scalar({self.field!r}, {self})"


def evaluate_lambda(s: Scalar, v: Scalar) -> Scalar:
    """Specialise an element of F_2(l) at ``l = v`` in a finite field."""
    if not isinstance(s.field, RationalFunctionField):
        raise MixedFields("evaluate_lambda expects an F2(l) scalar")
    F = v.field

    def at(p: int):
        acc = 0
        for e in range(p.bit_length() - 1, -1, -1):
            acc = F.add(F.mul(acc, v.value), p >> e & 1)
        return acc

    den = at(s.value[1])
    if F.is_zero(den):
        raise PoleAtValue(f"denominator of {s} vanishes at {v}")
    return Scalar(F, F.mul(at(s.value[0]), F.inv(den)))

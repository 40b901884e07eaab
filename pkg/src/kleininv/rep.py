"""Indecomposable representations of the Klein four group in characteristic 2.

The group is generated by two commuting involutions ``s1`` and ``s2`` acting
on polynomial rings by linear substitutions.  The catalogue covers:

* ``V_{m,lambda}`` (selector ``Vm:<m>:lambda=<scalar>``);
* ``Omega^{-m}`` (``Omega-:<m>``) and ``Omega^{+m}`` (``Omega+:<m>``);
* the regular representation (``Vreg``).
"""

from __future__ import annotations

import enum
from functools import cached_property

from .coeff import (
    F2L,
    GF2,
    GF4,
    BinaryField,
    Field,
    RationalFunctionField,
    Scalar,
    evaluate_lambda,
    parse_field,
)
from .errors import MixedAmbient, ParseError
from .poly import Polynomial, PolynomialRing

__all__ = [
    "GroupElement",
    "Representation",
    "even",
    "omega_minus",
    "omega_plus",
    "regular",
    "parse_selector",
    "parse_lambda",
    "act",
    "delta",
    "transfer",
    "norm",
    "is_invariant",
]


class GroupElement(enum.Enum):
    """Elements of Z/2 x Z/2; the value's bits record the s1 and s2 parts."""

    E = 0
    S1 = 1
    S2 = 2
    S1S2 = 3

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.value ^ other.value)

    def inverse(self) -> "GroupElement":
        return self

    @property
    def label(self) -> str:
        return ("e", "s1", "s2", "s1s2")[self.value]


class Representation:
    """A G-module given by the images of each variable under s1 and s2."""

    def __init__(
        self,
        kind: str,
        m: int,
        ring: PolynomialRing,
        images1: list[Polynomial],
        images2: list[Polynomial],
        lam: Scalar | None = None,
        fixed: tuple[int, ...] = (),
    ):
        self.kind = kind
        self.m = m
        self.ring = ring
        self.lam = lam
        self.fixed = fixed  # indices of the variables fixed by G
        self._images = (images1, images2)
        self._check_group_law()

    # -- identity
    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def selector(self) -> str:
        if self.kind == "V":
            s = f"Vm:{self.m}:lambda={self.lam}"
            if isinstance(self.field, BinaryField) and self.field.k > 2:
                s += f"@{self.field.name}"
            return s
        if self.kind == "Vreg":
            return "Vreg"
        return f"{self.kind}:{self.m}"

    @property
    def label(self) -> str:
        if self.kind == "V":
            return f"V_{{{self.m},{self.lam}}}"
        if self.kind == "Vreg":
            return "V_reg"
        sign = "-" if self.kind == "Omega-" else ""
        return f"Omega^{{{sign}{self.m}}}"

    def __repr__(self):
        return f"Representation({self.selector!r}, field={self.field!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.selector == other.selector
            and self.ring == other.ring
        )

    def __hash__(self):
        return hash((self.selector, self.ring))

    # -- parameters
    @cached_property
    def c(self) -> Scalar | None:
        """c = lambda^2 + lambda for the even family."""
        if self.lam is None:
            return None
        return self.lam * self.lam + self.lam

    @property
    def is_generic(self) -> bool:
        """True when lambda lies outside F_2 (c is nonzero)."""
        return self.c is not None and bool(self.c)

    @property
    def ell(self) -> int:
        return self.m // 2

    @property
    def ell_prime(self) -> int:
        return (self.m + 1) // 2

    @property
    def n_x(self) -> int:
        return len(self.fixed)

    @property
    def n_y(self) -> int:
        return self.ring.n - len(self.fixed)

    def x(self, j: int) -> Polynomial:
        """x_j, or zero outside the range of x-variables."""
        name = "x" if self.kind == "Vreg" and j == 1 else f"x{j}"
        if self.kind == "Vreg" and j != 1:
            return self.ring.zero()
        return self.ring.var(name) if name in self.ring._index else self.ring.zero()

    def y(self, j: int) -> Polynomial:
        name = f"y{j}"
        return self.ring.var(name) if name in self.ring._index else self.ring.zero()

    def var(self, name: str) -> Polynomial:
        return self.ring.var(name)

    def scalar(self, value) -> Scalar:
        return self.field(value)

    def poly(self, text: str) -> Polynomial:
        return self.ring.parse(text)

    # -- group action
    def _check_group_law(self):
        n = self.ring.n
        gens = self.ring.gens
        for i in range(n):
            v = gens[i]
            for s in (0, 1):
                if self._sub(s, self._sub(s, v)) != v:
                    raise ValueError(f"s{s + 1} is not an involution on {self.ring.names[i]}")
            if self._sub(0, self._sub(1, v)) != self._sub(1, self._sub(0, v)):
                raise ValueError(f"s1 and s2 do not commute on {self.ring.names[i]}")
        for i in self.fixed:
            for s in (0, 1):
                if self._images[s][i] != gens[i]:
                    raise ValueError(f"{self.ring.names[i]} is not fixed")

    def _sub(self, s: int, f: Polynomial) -> Polynomial:
        return f.substitute(self._images[s])

    def _own(self, f: Polynomial):
        if f.ring != self.ring:
            raise MixedAmbient(f"polynomial not over {self.selector}")

    def image(self, s: int, var: int) -> Polynomial:
        """Image of variable ``var`` under generator ``s`` (1 or 2)."""
        return self._images[s - 1][var]

    def act(self, g: GroupElement, f: Polynomial) -> Polynomial:
        self._own(f)
        if g.value & 1:
            f = self._sub(0, f)
        if g.value & 2:
            f = self._sub(1, f)
        return f

    def delta(self, i: int, f: Polynomial) -> Polynomial:
        self._own(f)
        return self._sub(i - 1, f) + f

    def transfer(self, f: Polynomial) -> Polynomial:
        self._own(f)
        a = self._sub(0, f)
        return f + a + self._sub(1, f) + self._sub(1, a)

    def orbit(self, f: Polynomial) -> list[Polynomial]:
        self._own(f)
        out: list[Polynomial] = []
        for g in GroupElement:
            h = self.act(g, f)
            if h not in out:
                out.append(h)
        return out

    def norm(self, f: Polynomial) -> Polynomial:
        """Product over the distinct elements of the orbit."""
        result = self.ring.one()
        for h in self.orbit(f):
            result = result * h
        return result

    def is_invariant(self, f: Polynomial) -> bool:
        self._own(f)
        return self._sub(0, f) == f and self._sub(1, f) == f

    # -- coefficient changes
    def specialize(self, value: Scalar) -> "Representation":
        """Evaluate a generic-lambda representation at a concrete lambda."""
        if self.kind != "V" or not isinstance(self.field, RationalFunctionField):
            raise ValueError("only generic V_{m,lambda} can be specialised")
        return even(self.m, value)

    def transport(self, f: Polynomial, target: "Representation") -> Polynomial:
        """Move ``f`` into ``target``'s ring (lambda evaluation or field embedding)."""
        if isinstance(self.field, RationalFunctionField) and not isinstance(
            target.field, RationalFunctionField
        ):
            v = target.lam
            return f.map_coefficients(target.ring, lambda s: evaluate_lambda(s, v))
        if self.field == target.field:
            return Polynomial(target.ring, dict(f.terms))
        if isinstance(self.field, BinaryField) and self.field.k == 1:
            return f.map_coefficients(target.ring, lambda s: target.field(int(s.value)))
        raise ValueError(f"cannot move polynomials from {self.field!r} to {target.field!r}")

    def with_field(self, field: Field) -> "Representation":
        """The same lambda-free representation over a larger field."""
        if self.kind == "V":
            if self.lam is not None and self.lam.value in (0, 1, (0, 1), (1, 1)):
                return even(self.m, field(int(bool(self.lam))))
            raise ValueError("lambda is not in the prime field")
        if self.kind == "Omega-":
            return omega_minus(self.m, field)
        if self.kind == "Omega+":
            return omega_plus(self.m, field)
        return regular(field)


# ---------------------------------------------------------------- catalogue


def _build(kind, m, names, field, rules, lam=None, fixed_names=None):
    """``rules[s]`` maps a variable name to a list of (coefficient, name) extras."""
    ring = PolynomialRing(names, field)
    images = ([], [])
    for s in (0, 1):
        for nm in names:
            img = ring.var(nm)
            for coef, other in rules[s].get(nm, ()):
                img = img + ring.var(other) * coef
            images[s].append(img)
    fixed_names = fixed_names or [nm for nm in names if nm.startswith("x")]
    fixed = tuple(ring.index(nm) for nm in fixed_names)
    return Representation(kind, m, ring, images[0], images[1], lam, fixed)


def even(m: int, lam) -> Representation:
    """V_{m,lambda}: s1(y_j) = y_j + x_j, s2(y_j) = y_j + lambda x_j + x_{j-1}."""
    if m < 1:
        raise ValueError("m must be positive")
    if not isinstance(lam, Scalar):
        lam = parse_lambda(str(lam))
    field = lam.field
    names = [f"x{j}" for j in range(1, m + 1)] + [f"y{j}" for j in range(1, m + 1)]
    r1 = {f"y{j}": [(1, f"x{j}")] for j in range(1, m + 1)}
    r2 = {}
    for j in range(1, m + 1):
        extra = []
        if lam:
            extra.append((lam, f"x{j}"))
        if j > 1:
            extra.append((1, f"x{j - 1}"))
        r2[f"y{j}"] = extra
    return _build("V", m, names, field, (r1, r2), lam)


def omega_minus(m: int, field: Field = GF2) -> Representation:
    """Omega^{-m}: s1(y_j) = y_j + x_j, s2(y_j) = y_j + x_{j-1} (x_0 = x_{m+1} = 0)."""
    if m < 1:
        raise ValueError("m must be positive")
    names = [f"x{j}" for j in range(1, m + 1)] + [f"y{j}" for j in range(1, m + 2)]
    r1 = {f"y{j}": [(1, f"x{j}")] for j in range(1, m + 1)}
    r2 = {f"y{j}": [(1, f"x{j - 1}")] for j in range(2, m + 2)}
    return _build("Omega-", m, names, field, (r1, r2))


def omega_plus(m: int, field: Field = GF2) -> Representation:
    """Omega^{m}: s1(y_j) = y_j + x_j, s2(y_j) = y_j + x_{j+1}."""
    if m < 1:
        raise ValueError("m must be positive")
    names = [f"x{j}" for j in range(1, m + 2)] + [f"y{j}" for j in range(1, m + 1)]
    r1 = {f"y{j}": [(1, f"x{j}")] for j in range(1, m + 1)}
    r2 = {f"y{j}": [(1, f"x{j + 1}")] for j in range(1, m + 1)}
    return _build("Omega+", m, names, field, (r1, r2))


def regular(field: Field = GF2) -> Representation:
    """The regular representation on x < y2 < y1 < z.

    s1: z -> z + y1, y2 -> y2 + x;  s2: z -> z + y2, y1 -> y1 + x.
    Hence Delta_i(z) = y_i, Tr(z) = x, and u = y1 y2 + x z is invariant.
    """
    names = ["x", "y2", "y1", "z"]
    r1 = {"z": [(1, "y1")], "y2": [(1, "x")]}
    r2 = {"z": [(1, "y2")], "y1": [(1, "x")]}
    rep = _build("Vreg", 1, names, field, (r1, r2), fixed_names=["x"])
    if rep.transfer(rep.var("z")) != rep.var("x"):
        raise ValueError("regular representation: Tr(z) != x")
    return rep


def parse_lambda(text: str) -> Scalar:
    """``0``/``1`` -> GF2; a polynomial in ``t`` -> GF4 (or ``...@GF<q>``);
    anything in ``l`` -> F_2(l)."""
    text = text.strip()
    field_name = None
    if "@" in text:
        text, field_name = text.split("@", 1)
    if field_name is not None:
        field = parse_field(field_name)
    elif "l" in text:
        field = F2L
    elif "t" in text:
        field = GF4
    else:
        field = GF2
    return field(text)


def parse_selector(text: str, field: Field | None = None) -> Representation:
    """Parse ``Vm:<m>:lambda=<scalar>``, ``Omega-:<m>``, ``Omega+:<m>`` or ``Vreg``."""
    t = text.strip()
    try:
        if t == "Vreg":
            return regular(field or GF2)
        head, _, rest = t.partition(":")
        if head == "Vm":
            ms, _, lam = rest.partition(":")
            if not lam.startswith("lambda="):
                raise ParseError("expected lambda=<scalar>", len(head) + len(ms) + 2)
            return even(int(ms), parse_lambda(lam[len("lambda="):]))
        if head == "Omega-":
            return omega_minus(int(rest), field or GF2)
        if head == "Omega+":
            return omega_plus(int(rest), field or GF2)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad selector {text!r}: {exc}", 0) from exc
    raise ParseError(f"unknown representation selector {text!r}", 0)


# Module-level aliases of the operator methods.
def act(g: GroupElement, f: Polynomial, rep: Representation) -> Polynomial:
    return rep.act(g, f)


def delta(i: int, f: Polynomial, rep: Representation) -> Polynomial:
    return rep.delta(i, f)


def transfer(f: Polynomial, rep: Representation) -> Polynomial:
    return rep.transfer(f)


def norm(f: Polynomial, rep: Representation) -> Polynomial:
    return rep.norm(f)


def is_invariant(f: Polynomial, rep: Representation) -> bool:
    return rep.is_invariant(f)

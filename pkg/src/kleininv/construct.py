"""Named invariants, hsops with top classes, closed-form identities and
candidate generating sets for each representation family.

Families (see :func:`family`):

* ``V``      : V_{m,lambda} with lambda outside F_2 (c != 0);
* ``V0``     : V_{m,lambda} with lambda in F_2;
* ``Omega-`` : Omega^{-m};
* ``Omega+`` : Omega^{m};
* ``Vreg``   : the regular representation.

Names are namespaced by family, so ``u_133`` means different polynomials
for ``V`` (m = 3) and for ``Omega-`` (m = 3).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable

from .errors import IndexOutOfRange, ParseError, UnknownIdentity, UnknownName
from .poly import Monomial, Polynomial, format_polynomial
from .rep import Representation

__all__ = [
    "NamedInvariant",
    "HsopSpec",
    "IdentityResult",
    "family",
    "n",
    "u",
    "basic_invariants",
    "capital_N",
    "norm_y",
    "tr",
    "auxiliary",
    "auxiliary_names",
    "hsop",
    "verify_identity",
    "identity_ids",
    "identity_statement",
    "candidate_generating_set",
    "candidate_set_names",
    "registry_dump",
    "top_class_divisors",
    "hilbert_generators",
    "lead_term_facts",
    "LeadTermFact",
    "expected_noether_number",
]


@dataclass(frozen=True)
class NamedInvariant:
    name: str
    value: Polynomial
    rep: Representation = field(repr=False, compare=False)
    invariant: bool = True  # False for the s1-invariant building blocks

    @property
    def degree(self) -> int:
        return self.value.degree()

    def __str__(self) -> str:
        return f"{self.name} = {self.value}"


@dataclass(frozen=True)
class HsopSpec:
    rep: Representation = field(repr=False)
    elements: tuple[NamedInvariant, ...]
    top_class: Monomial
    tag: str
    ell: int
    ell_prime: int

    @property
    def polys(self) -> list[Polynomial]:
        return [e.value for e in self.elements]

    @property
    def names(self) -> list[str]:
        return [e.name for e in self.elements]

    @property
    def top_degree(self) -> int:
        return sum(self.top_class)


@dataclass
class IdentityResult:
    id: str
    holds: bool
    difference: Polynomial
    statement: str
    verdict: str = ""
    recomputed: str | None = None

    def __post_init__(self):
        if not self.verdict:
            self.verdict = "pass" if self.holds else "fail"

    def __bool__(self) -> bool:
        return self.holds


def family(rep: Representation) -> str:
    if rep.kind == "V":
        return "V" if rep.is_generic else "V0"
    return rep.kind


# ---------------------------------------------------------------- building blocks


def n(rep: Representation, i: int) -> Polynomial:
    """n_i = y_i^2 + x_i y_i."""
    y = rep.y(i)
    return y * y + rep.x(i) * y


def u(rep: Representation, i: int, j: int) -> Polynomial:
    """u_ij = x_i y_j + x_j y_i (out-of-range variables are zero)."""
    return rep.x(i) * rep.y(j) + rep.x(j) * rep.y(i)


def _require_xy(rep: Representation):
    if rep.kind == "Vreg":
        raise UnknownName("the regular representation has no n_i / u_ij")


def basic_invariants(rep: Representation) -> dict[str, NamedInvariant]:
    """All n_i and u_ij (i < j) over the y-range of ``rep``."""
    _require_xy(rep)
    ny = rep.n_y
    out = {}
    for i in range(1, ny + 1):
        out[f"n_{i}"] = NamedInvariant(f"n_{i}", n(rep, i), rep, invariant=False)
    for i, j in itertools.combinations(range(1, ny + 1), 2):
        out[f"u_{i}{j}"] = NamedInvariant(f"u_{i}{j}", u(rep, i, j), rep, invariant=False)
    return out


def _c(rep: Representation):
    return rep.c if rep.c is not None else rep.scalar(0)


def capital_N(i: int, rep: Representation) -> NamedInvariant:
    """N_i with lead term y_i^2, for i within the family range."""
    fam = family(rep)
    if fam == "V":
        top = rep.ell
    elif fam == "V0":
        top = rep.ell_prime
    elif fam == "Omega-":
        top = rep.m + 1
    else:
        raise IndexOutOfRange(f"N_i is not defined for {rep.label}")
    if not 1 <= i <= top:
        raise IndexOutOfRange(f"N_{i} needs 1 <= i <= {top} for {rep.label}")
    val = n(rep, i)
    if fam in ("V", "V0"):
        c = _c(rep)
        for j in range(1, i + 1):
            val = val + u(rep, i - j + 1, i + j) * c
    for j in range(1, i):
        val = val + u(rep, i - j, i + j) + u(rep, i - j, i + j - 1)
    return NamedInvariant(f"N_{i}", val, rep)


def norm_y(rep: Representation, name: str | int) -> NamedInvariant:
    """N(v) for a y-variable (``2`` or ``"y2"``) or ``"z"``."""
    if isinstance(name, int):
        name = f"y{name}"
    return NamedInvariant(f"N({name})", rep.norm(rep.var(name)), rep)


def tr(rep: Representation, beta: Monomial | Polynomial | str) -> NamedInvariant:
    """Tr(beta) for a monomial beta, named ``Tr(y1*y2^3)``."""
    if isinstance(beta, str):
        beta = rep.poly(beta)
    if isinstance(beta, Polynomial):
        (e,) = beta.terms
    else:
        e = tuple(beta)
    return NamedInvariant(f"Tr({rep.ring.monomial_str(e)})", rep.transfer(rep.ring.monomial(e)), rep)


def _tj(rep, j):
    return u(rep, 1, 2) * rep.x(j - 1) + u(rep, 1, j) * rep.x(1)


def _w(rep):
    n2 = n(rep, 2)
    return rep.delta(2, n2) * u(rep, 1, 2) + rep.x(1) ** 2 * n2


def _wtilde(rep):
    x1, x2 = rep.x(1), rep.x(2)
    return (x1 + x2) * u(rep, 1, 2) + x1 * n(rep, 2)


def _ntilde2(rep):
    x1, x2 = rep.x(1), rep.x(2)
    n2 = n(rep, 2)
    return n2 * n2 + n2 * (x1 * x1 + x1 * x2)


def _u123(rep):
    x1, x2 = rep.x(1), rep.x(2)
    return x1 * (n(rep, 2) + u(rep, 1, 2) + u(rep, 1, 3)) + x2 * u(rep, 1, 3) * _c(rep)


def _n23(rep):
    c = _c(rep)
    x1, x2, x3 = rep.x(1), rep.x(2), rep.x(3)
    first = (n(rep, 2) + u(rep, 1, 2) + u(rep, 1, 3)) * (x3 * c + x2 + x1)
    u23 = u(rep, 2, 3)
    return first + (x1 * n(rep, 3) + x2 * u23 + x3 * u23 * c) * c


def _x1_divide(rep, f, power):
    return f.exact_divide(rep.ring.unit(rep.ring.index("x1"), power))


def _u133_v(rep):
    c = _c(rep)
    inner = rep.x(3) * _tj(rep, 3) * c + rep.x(2) * _u123(rep)
    return _x1_divide(rep, inner, 1)


def _n222(rep):
    c = _c(rep)
    x1, x2, x3 = rep.x(1), rep.x(2), rep.x(3)
    t3 = _tj(rep, 3)
    N1 = capital_N(1, rep).value
    inner = (
        t3 * t3
        + N1 * (x2**4 + x1 * x1 * x3 * x3)
        + ((x2**3 + x1 * x2 * x3) * c + x1 * x2 * x2) * t3
    )
    return _x1_divide(rep, inner, 2)


def _u2333(rep):
    c = _c(rep)
    x2, x3 = rep.x(2), rep.x(3)
    inner = (
        (x3 * c + x2) * _n222(rep)
        + _n23(rep) * x2 * x2
        + x2 * x2 * (_u123(rep) + _tj(rep, 3))
    )
    return _x1_divide(rep, inner, 1)


def _vj(rep, j):
    x1, x2 = rep.x(1), rep.x(2)
    return u(rep, 1, j) * (x2 * x2 + x1 * x2) + n(rep, 1) * (rep.x(j) * x2 + x1 * rep.x(j + 1))


def _n13(rep):
    x1, x3 = rep.x(1), rep.x(3)
    return x3 * n(rep, 1) + x3 * u(rep, 1, 2) + x1 * n(rep, 2)


def _u1233(rep):
    x1, x2, x3 = rep.x(1), rep.x(2), rep.x(3)
    return (x3 * x3 + x2 * x3) * u(rep, 1, 2) + (x2 * x2 + x1 * x3) * n(rep, 2)


def _alpha(rep):
    x1, x2, x3, x4 = (rep.x(j) for j in range(1, 5))
    y1, y2, y3 = rep.y(1), rep.y(2), rep.y(3)
    return (
        (x1 + x2 + x3) * y2 * y3
        + (x1 + x2 + x3 + x4) * y1 * y3
        + (x2 + x3 + x4) * y1 * y2
        + y1 * y1 * y3
        + y1 * y3 * y3
    )


def _vreg_u(rep):
    return rep.var("y1") * rep.var("y2") + rep.var("x") * rep.var("z")


def _vreg_h(rep):
    uu = _vreg_u(rep)
    top = uu * uu + rep.norm(rep.var("y1")) * rep.norm(rep.var("y2"))
    return top.exact_divide(rep.ring.unit(rep.ring.index("x")))


def _need(cond: bool, name: str, rep: Representation):
    if not cond:
        raise UnknownName(f"{name} is not defined for {rep.label}")


def auxiliary(name: str, rep: Representation) -> NamedInvariant:
    """Construct a named auxiliary element for ``rep``'s family."""
    fam = family(rep)
    m = rep.m
    even = fam in ("V", "V0")
    inv = True
    if name.startswith("t_") and name[2:].isdigit():
        j = int(name[2:])
        top = m + 1 if fam == "Omega-" else m
        _need(fam in ("V", "V0", "Omega-") and 2 <= j <= top, name, rep)
        val = _tj(rep, j)
    elif name.startswith("v_") and name[2:].isdigit():
        j = int(name[2:])
        _need(fam == "Omega+" and 2 <= j <= m, name, rep)
        val = _vj(rep, j)
    elif name.startswith("N_") and name[2:].isdigit():
        return capital_N(int(name[2:]), rep)
    elif name.startswith("N(") and name.endswith(")"):
        return norm_y(rep, name[2:-1])
    elif name.startswith("Tr(") and name.endswith(")"):
        return tr(rep, name[3:-1])
    elif name == "w":
        _need(even and m >= 2, name, rep)
        val = _w(rep)
    elif name == "w~":
        _need(m >= 2 and fam in ("V0", "Omega-"), name, rep)
        val = _wtilde(rep)
    elif name == "N~_2":
        _need(m >= 2 and fam in ("V0", "Omega-"), name, rep)
        val = _ntilde2(rep)
    elif name == "u_123":
        _need(even and m >= 3, name, rep)
        val = _u123(rep)
    elif name == "n_23":
        _need(even and m >= 3, name, rep)
        val = _n23(rep)
    elif name == "u_133" and fam == "Omega-":
        _need(m >= 3, name, rep)
        val = rep.x(3) * u(rep, 1, 3) + rep.x(1) * u(rep, 2, 4)
    elif name == "u_233":
        _need(fam == "Omega-" and m >= 3, name, rep)
        val = rep.x(3) * u(rep, 2, 3) + rep.x(2) * u(rep, 2, 4) + rep.x(3) * u(rep, 1, 4)
    elif name == "u_133":
        _need(fam == "V" and m >= 3, name, rep)
        val = _u133_v(rep)
    elif name == "n_222":
        _need(fam == "V" and m >= 3, name, rep)
        val = _n222(rep)
    elif name == "u_2333":
        _need(fam == "V" and m >= 3, name, rep)
        val = _u2333(rep)
    elif name == "r_3":
        _need(fam == "V0" and m >= 3, name, rep)
        val = (rep.x(3) + rep.x(2)) * u(rep, 1, 3) + rep.x(1) * n(rep, 3)
    elif name == "n_13":
        _need(fam == "Omega+" and m >= 2, name, rep)
        val = _n13(rep)
    elif name == "u_1233":
        _need(fam == "Omega+" and m >= 2, name, rep)
        val = _u1233(rep)
    elif name == "alpha":
        _need(fam == "Omega+" and m >= 3, name, rep)
        val = _alpha(rep)
        inv = False
    elif name == "u":
        _need(fam == "Vreg", name, rep)
        val = _vreg_u(rep)
    elif name == "h":
        _need(fam == "Vreg", name, rep)
        val = _vreg_h(rep)
    else:
        raise UnknownName(f"unknown auxiliary {name!r} for {rep.label}")
    return NamedInvariant(name, val, rep, invariant=inv)


def auxiliary_names(rep: Representation) -> list[str]:
    """Every auxiliary name that is defined for ``rep``."""
    fam = family(rep)
    m = rep.m
    names: list[str] = []
    if fam in ("V", "V0"):
        top = rep.ell if fam == "V" else rep.ell_prime
        names += [f"N_{i}" for i in range(1, top + 1)]
        names += [f"t_{j}" for j in range(3, m + 1)]
        if m >= 2:
            names += ["w"] if fam == "V" else ["w~", "N~_2"]
        if m >= 3:
            names += ["u_123", "n_23"]
            names += ["u_133", "n_222", "u_2333"] if fam == "V" else ["r_3"]
    elif fam == "Omega-":
        names += [f"N_{i}" for i in range(1, m + 2)]
        names += [f"t_{j}" for j in range(3, m + 2)]
        if m >= 2:
            names += ["w~", "N~_2"]
        if m >= 3:
            names += ["u_133", "u_233"]
    elif fam == "Omega+":
        names += [f"v_{j}" for j in range(2, m + 1)]
        if m >= 2:
            names += ["n_13", "u_1233"]
        if m >= 3:
            names += ["alpha"]
    else:
        names += ["u", "h"]
    ys = [nm for nm in rep.ring.names if nm not in ("x",) and not nm.startswith("x")]
    names += [f"N({nm})" for nm in ys]
    return names


# ---------------------------------------------------------------- hsops


def _ymono(rep: Representation, powers: dict[str, int]) -> Monomial:
    e = [0] * rep.ring.n
    for nm, a in powers.items():
        e[rep.ring.index(nm)] = a
    return tuple(e)


def hsop(rep: Representation) -> HsopSpec:
    """The family's block hsop candidate together with its claimed top class."""
    fam = family(rep)
    m = rep.m
    xs = [NamedInvariant(nm, rep.var(nm), rep) for nm in rep.ring.names if nm.startswith("x")]
    if fam in ("V", "V0"):
        k = rep.ell if fam == "V" else rep.ell_prime
        elems = xs + [capital_N(i, rep) for i in range(1, k + 1)]
        elems += [norm_y(rep, j) for j in range(k + 1, m + 1)]
        beta = {f"y{j}": 1 if j <= k else 3 for j in range(1, m + 1)}
        tag = "H" if fam == "V" else "H'"
    elif fam == "Omega-":
        elems = xs + [capital_N(i, rep) for i in range(1, m + 2)]
        beta = {f"y{j}": 1 for j in range(1, m + 2)}
        tag = "H_-m"
    elif fam == "Omega+":
        elems = xs + [norm_y(rep, j) for j in range(1, m + 1)]
        beta = {f"y{j}": 3 for j in range(1, m + 1)}
        tag = "H_m"
    else:
        elems = xs + [norm_y(rep, nm) for nm in ("y1", "y2", "z")]
        beta = {"y1": 1, "y2": 1, "z": 3}
        tag = "Vreg"
    return HsopSpec(rep, tuple(elems), _ymono(rep, beta), tag, rep.ell, rep.ell_prime)


def top_class_divisors(beta: Monomial) -> list[Monomial]:
    """Divisors of ``beta`` in lexicographic order of exponent vectors."""
    return [tuple(e) for e in itertools.product(*(range(a + 1) for a in beta))]


# ---------------------------------------------------------------- identities


def _get(rep, name):
    return auxiliary(name, rep).value


def _id_eq1(rep):
    _need(family(rep) == "V" and rep.m >= 2, "eq1", rep)
    x1, x2 = rep.x(1), rep.x(2)
    d = rep.delta(2, n(rep, 2))
    w = _w(rep)
    lhs = w * w
    rhs = d * d * x2 * x2 * _get(rep, "N_1") + x1**4 * _get(rep, "N(y2)") + w * d * (d + x1 * x1)
    return lhs, rhs, "w^2 = D^2 x2^2 N_1 + x1^4 N(y2) + w D (D + x1^2), D = Delta_2(n_2)"


def _id_v20(rep):
    _need(family(rep) == "V0" and rep.m >= 2, "v20_hypersurface", rep)
    x1, x2 = rep.x(1), rep.x(2)
    wt = _wtilde(rep)
    lhs = wt * wt + x2 * x2 * (x2 + x1) ** 2 * n(rep, 1) + x1 * x2 * (x1 + x2) * wt
    rhs = x1 * x1 * _ntilde2(rep)
    return lhs, rhs, "w~^2 + x2^2 (x2+x1)^2 n_1 + x1 x2 (x1+x2) w~ = x1^2 N~_2"


def _id_om2(rep):
    _need(family(rep) == "Omega-" and rep.m == 2, "omega-2_hypersurface", rep)
    x1, x2 = rep.x(1), rep.x(2)
    t3 = _tj(rep, 3)
    N = [None] + [capital_N(i, rep).value for i in (1, 2, 3)]
    lhs = t3 * t3 + x2**4 * N[1] + x1 * x2 * (x1 + x2) * t3 + x1 * x1 * x2 * x2 * N[2]
    return lhs, x1**4 * N[3], "t_3^2 + x2^4 N_1 + x1 x2 (x1+x2) t_3 + x1^2 x2^2 N_2 = x1^4 N_3"


def _id_vreg_u(rep):
    _need(family(rep) == "Vreg", "vreg_u2", rep)
    uu, h = _vreg_u(rep), _vreg_h(rep)
    lhs = uu * uu
    rhs = _get(rep, "N(y1)") * _get(rep, "N(y2)") + rep.var("x") * h
    return lhs, rhs, "u^2 = N(y1) N(y2) + x h"


def _id_vreg_h(rep):
    _need(family(rep) == "Vreg", "vreg_h2", rep)
    uu, h, x = _vreg_u(rep), _vreg_h(rep), rep.var("x")
    a, b, nz = _get(rep, "N(y1)"), _get(rep, "N(y2)"), _get(rep, "N(z)")
    lhs = h * h
    rhs = a * a * b + a * b * b + x * (h * a + uu * h + h * b + x * nz)
    return lhs, rhs, "h^2 = N(y1)^2 N(y2) + N(y1) N(y2)^2 + x (h N(y1) + u h + h N(y2) + x N(z))"


def _id_vreg_h_closed(rep):
    _need(family(rep) == "Vreg", "vreg_h_closed_form", rep)
    x, y1, y2, z = (rep.var(nm) for nm in ("x", "y1", "y2", "z"))
    rhs = y1 * y1 * y2 + y2 * y2 * y1 + x * (z * z + y1 * y2)
    return _vreg_h(rep), rhs, "h = y1^2 y2 + y2^2 y1 + x (z^2 + y1 y2)"


def _id_w_t3(rep):
    _need(family(rep) == "V" and rep.m >= 3, "w_t3", rep)
    x1, x2 = rep.x(1), rep.x(2)
    t3 = _tj(rep, 3)
    rhs = x2 * t3 * _c(rep) + x1 * _u123(rep) + x1 * t3
    return _w(rep), rhs, "w = c x2 t_3 + x1 u_123 + x1 t_3"


def _id_wtilde(rep):
    fam = family(rep)
    _need((fam == "V0" and rep.m >= 3) or (fam == "Omega-" and rep.m >= 2), "wtilde_N2", rep)
    rhs = rep.x(1) * capital_N(2, rep).value + _tj(rep, 3)
    return _wtilde(rep), rhs, "w~ = x1 N_2 + t_3"


def _id_norm_sub(rep):
    _need(family(rep) == "V" and rep.m > 3, "norm_y1_subduction", rep)
    c = _c(rep)
    x1, x2 = rep.x(1), rep.x(2)
    N1, N2 = capital_N(1, rep).value, capital_N(2, rep).value
    rhs = (
        N1 * N1
        + ((x2 * c) ** 2 + x1 * x1 * c) * N1
        + (x1 * c) ** 2 * N2
        + (x2 * c**3 + x1 * c**2) * _tj(rep, 3)
        + x1 * _tj(rep, 4) * c**3
    )
    return (
        _get(rep, "N(y1)"),
        rhs,
        "N(y1) = N_1^2 + ((c x2)^2 + c x1^2) N_1 + (c x1)^2 N_2 + (c^3 x2 + c^2 x1) t_3 + c^3 x1 t_4",
    )


def _id_norm_formula(rep):
    _need(family(rep) == "V", "norm_y1_formula", rep)
    c = _c(rep)
    x1, y1 = rep.x(1), rep.y(1)
    rhs = y1**4 + x1 * x1 * y1 * y1 * (c + 1) + x1**3 * y1 * c
    return _get(rep, "N(y1)"), rhs, "N(y1) = y1^4 + x1^2 y1^2 (c+1) + x1^3 y1 c"


def _id_norm_y2(rep):
    _need(family(rep) in ("V", "V0") and rep.m >= 2, "norm_y2_v2", rep)
    n2 = n(rep, 2)
    return _get(rep, "N(y2)"), n2 * n2 + n2 * rep.delta(2, n2), "N(y2) = n_2^2 + n_2 Delta_2(n_2)"


def _id_norm_printed(rep):
    _need(family(rep) == "V" and rep.m >= 2, "norm_y1_printed", rep)
    c = _c(rep)
    x1, x2 = rep.x(1), rep.x(2)
    N1 = capital_N(1, rep).value
    w = _w(rep)
    rhs = N1 * N1 + (x2 * x2 * N1 + w) * c * c + x1 * x1 * (w * w + w) * N1
    return (
        _get(rep, "N(y1)"),
        rhs,
        "N(y1) = N_1^2 + c^2 (x2^2 N_1 + w) + x1^2 (w^2 + w) N_1  (as printed)",
    )


def _id_tr_alpha(rep):
    _need(family(rep) == "Omega+" and rep.m >= 3, "tr_alpha", rep)
    x = rep.x(2) + rep.x(3)
    return rep.transfer(_alpha(rep)), x**3, "Tr(alpha) = (x2 + x3)^3"


def _id_om3(rep):
    _need(family(rep) == "Omega-" and rep.m == 3, "omega-3_relation", rep)
    lhs = rep.x(2) * _tj(rep, 4) + rep.x(3) * _tj(rep, 3) + rep.x(1) * _get(rep, "u_133")
    return lhs, rep.ring.zero(), "x2 t_4 + x3 t_3 + x1 u_133 = 0"


def _id_om2plus(rep):
    _need(family(rep) == "Omega+" and rep.m == 2, "omega2_relation", rep)
    x1, x2, x3 = rep.x(1), rep.x(2), rep.x(3)
    lhs = x3 * _vj(rep, 2) + (x2 * x2 + x1 * x3) * _n13(rep) + x1 * _u1233(rep)
    return lhs, rep.ring.zero(), "x3 v_2 + (x2^2 + x1 x3) n_13 + x1 u_1233 = 0"


def _id_tr_y1y2yj(rep):
    _need(family(rep) in ("V", "V0") and rep.m >= 3, "tr_y1y2yj", rep)
    c = _c(rep)
    x, y = rep.x, rep.y
    diffs = rep.ring.zero()
    for j in range(2, rep.m + 1):
        lhs = rep.transfer(y(1) * y(2) * y(j))
        first = (
            y(1) * (x(2) * x(j - 1) + x(1) * x(j))
            + y(2) * x(1) * x(j - 1)
            + y(j) * x(1) * x(1)
            + x(1) * x(2) * (x(j) * c + x(j - 1))
            + x(1) * x(1) * (x(j) + x(j - 1))
        )
        second = (
            _tj(rep, j)
            + rep.transfer(y(1) * y(3)) * (x(j) * c + x(j - 1))
            + rep.transfer(y(1) * y(2)) * (x(j) + x(j - 1))
        )
        diffs = diffs + (lhs + first) + (lhs + second)
    return diffs, rep.ring.zero(), "Tr(y1 y2 y_j) expansions (both displayed forms, every j > 1)"


_IDENTITIES: dict[str, Callable] = {
    "eq1": _id_eq1,
    "v20_hypersurface": _id_v20,
    "omega-2_hypersurface": _id_om2,
    "vreg_u2": _id_vreg_u,
    "vreg_h2": _id_vreg_h,
    "vreg_h_closed_form": _id_vreg_h_closed,
    "w_t3": _id_w_t3,
    "wtilde_N2": _id_wtilde,
    "norm_y1_subduction": _id_norm_sub,
    "norm_y1_formula": _id_norm_formula,
    "norm_y2_v2": _id_norm_y2,
    "norm_y1_printed": _id_norm_printed,
    "tr_alpha": _id_tr_alpha,
    "omega-3_relation": _id_om3,
    "omega2_relation": _id_om2plus,
    "tr_y1y2yj": _id_tr_y1y2yj,
}


def identity_ids(rep: Representation | None = None) -> list[str]:
    """Registered identity ids, optionally only those defined for ``rep``."""
    if rep is None:
        return list(_IDENTITIES)
    out = []
    for key, fn in _IDENTITIES.items():
        try:
            fn(rep)
        except UnknownName:
            continue
        out.append(key)
    return out


def verify_identity(id: str, rep: Representation) -> IdentityResult:
    """Evaluate LHS - RHS exactly; the difference is the witness on failure.

    The printed relation ``norm_y1_printed`` is not homogeneous; when it fails
    its verdict is ``fail-as-printed`` and the relation obtained by subducting
    N(y1) against {x1, x2, N_1, w, N(y2)} is attached.
    """
    if id not in _IDENTITIES:
        raise UnknownIdentity(id)
    try:
        lhs, rhs, statement = _IDENTITIES[id](rep)
    except UnknownName as exc:
        raise UnknownIdentity(f"{id} is not defined for {rep.label}") from exc
    diff = lhs - rhs
    res = IdentityResult(id, diff.is_zero(), diff, statement)
    if id == "norm_y1_printed" and not res.holds:
        res.verdict = "fail-as-printed"
        res.recomputed = recompute_norm_y1_relation(rep)
    return res


def identity_statement(id: str, rep: Representation) -> str:
    """Human-readable form of a registered identity."""
    if id not in _IDENTITIES:
        raise UnknownIdentity(id)
    return _IDENTITIES[id](rep)[2]


def recompute_norm_y1_relation(rep: Representation) -> str:
    """Express N(y1) through {x1, x2, N_1, w, N(y2)} by subduction."""
    from .sagbi import subduct

    names = ["x1", "x2", "N_1", "w", "N(y2)"]
    basis = [rep.x(1), rep.x(2), capital_N(1, rep).value, _w(rep), _get(rep, "N(y2)")]
    res = subduct(_get(rep, "N(y1)"), basis, record=True)
    expr = res.expression(names)
    if res.remainder:
        return f"N(y1) = {expr} + [remainder {res.remainder}]"
    return f"N(y1) = {expr}"


# ---------------------------------------------------------------- candidate sets


def _named(rep, names):
    return [auxiliary(nm, rep) if not nm.startswith("x") else NamedInvariant(nm, rep.var(nm), rep) for nm in names]


def _xs(rep):
    return [nm for nm in rep.ring.names if nm.startswith("x")]


def candidate_set_names(rep: Representation) -> list[str]:
    fam = family(rep)
    m = rep.m
    out = []
    if fam == "V":
        out.append("B")
        if m == 1:
            out.append("V1")
        if m == 2:
            out.append("V2")
        if m == 3:
            out += ["B_3", "B_3_input"]
    elif fam == "V0":
        out.append("B'")
        if m == 1:
            out.append("V1")
        if m == 2:
            out.append("V20")
        if m == 3:
            out.append("V30")
    elif fam == "Omega-":
        out.append("Omega-_input")
        if m == 1:
            out.append("Omega-1")
        if m == 2:
            out.append("Omega-2")
        if m == 3:
            out.append("Omega-3")
    elif fam == "Omega+":
        out.append("B_m")
        if m == 1:
            out.append("Omega1")
        if m == 2:
            out.append("B_2")
    else:
        out.append("C")
    return out


def candidate_generating_set(rep: Representation, name: str | None = None) -> list[NamedInvariant]:
    """The named generating-set candidate (default: the family's main set)."""
    fam = family(rep)
    m = rep.m
    names = candidate_set_names(rep)
    if name is None:
        # prefer the known complete generating set when one exists
        name = names[-1] if len(names) > 1 and not names[-1].endswith("_input") else names[0]
    if name not in names:
        raise UnknownName(f"candidate set {name!r} is not defined for {rep.label}")
    xs = _xs(rep)
    if name in ("B", "B'"):
        return list(hsop(rep).elements) + _named(rep, [f"t_{j}" for j in range(3, m + 1)])
    if name == "V1":
        return _named(rep, ["x1", "N(y1)"])
    if name == "V2":
        return _named(rep, ["x1", "x2", "N_1", "w", "N(y2)"])
    if name == "V20":
        out = _named(rep, ["x1", "x2", "w~", "N~_2"])
        return out[:2] + [NamedInvariant("n_1", n(rep, 1), rep)] + out[2:]
    if name == "B_3":
        base = _named(
            rep,
            xs + ["N_1", "t_3", "u_123", "u_133", "n_23", "n_222", "u_2333", "N(y2)", "N(y3)"],
        )
        trs = ["y1*y2*y3^3", "y1*y2^3*y3", "y2^3*y3^3", "y1*y2^3*y3^3"]
        return base + [tr(rep, b) for b in trs]
    if name == "B_3_input":
        return _named(rep, xs + ["N_1", "u_123", "t_3", "N(y2)", "N(y3)"])
    if name == "V30":
        out = _named(rep, xs)
        out.append(NamedInvariant("n_1", n(rep, 1), rep))
        out.append(NamedInvariant("N_2", capital_N(2, rep).value, rep))
        out += _named(rep, ["t_3", "r_3", "N(y3)"])
        out += [tr(rep, "y2*y3^3"), tr(rep, "y1*y2*y3^3")]
        return out
    if name == "Omega-_input":
        return _named(rep, xs + [f"N_{i}" for i in range(1, m + 2)] + [f"t_{j}" for j in range(3, m + 2)])
    if name == "Omega-1":
        return _named(rep, ["x1", "N_1", "N_2"])
    if name == "Omega-2":
        return _named(rep, xs + ["N_1", "N_2", "N_3", "t_3"])
    if name == "Omega-3":
        out = _named(rep, xs + ["N_1", "N_2", "N_3", "N_4", "t_3", "t_4", "u_233", "u_133"])
        return out + [tr(rep, "y1*y2*y3*y4")]
    if name == "Omega1":
        return _named(rep, ["x1", "x2", "N(y1)"])
    if name == "B_2":
        out = _named(rep, xs + ["N(y1)", "N(y2)", "v_2", "n_13", "u_1233"])
        return out + [tr(rep, "y1^3*y2^3")]
    if name == "B_m":
        spec = hsop(rep)
        out = list(spec.elements)
        seen = {e.value for e in out}
        for beta in top_class_divisors(spec.top_class):
            if not any(beta):
                continue
            t = tr(rep, beta)
            if t.value and t.value not in seen:
                seen.add(t.value)
                out.append(t)
        return out
    if name == "C":
        return _named(rep, ["x", "u", "N(y1)", "N(y2)", "h", "N(z)"])
    raise UnknownName(name)  # pragma: no cover


@dataclass
class LeadTermFact:
    id: str
    element: str
    expected: str
    actual: str
    holds: bool


# element, expected lead monomial, power of c in the lead coefficient (None: monomial only)
_LEAD_FACTS = [
    ("u_123", "x2*x3*y1", None),
    ("w", "x2^3*y1", 1),
    ("n_23", "x3*y2^2", 1),
    ("u_133", "x3^2*y1", 1),
    ("n_222", "x2^2*y2^2", 0),
    ("u_2333", "x3^3*y2", 2),
    ("Tr(y1*y2*y3^3)", "x3^3*y1*y2", 1),
]


def lead_term_facts(rep: Representation) -> list[LeadTermFact]:
    """Lead terms of the hsop elements and of the named auxiliaries.

    Each non-linear hsop element must lead with y^(a+1), where a is the
    exponent of that variable in the top class.  For the generic even
    family the auxiliaries' lead terms are checked as well.
    """
    out = []
    spec = hsop(rep)
    ring = rep.ring
    for el in spec.elements:
        if el.degree == 1:
            continue
        got = el.value.lt()
        support = [i for i, a in enumerate(got.lm) if a]
        if len(support) != 1 or support[0] in rep.fixed:
            out.append(LeadTermFact(f"LT({el.name})", el.name, "pure power of a y", str(got), False))
            continue
        v = support[0]
        want = ring.unit(v, spec.top_class[v] + 1)
        ok = got.lm == want and got.lc == 1
        out.append(LeadTermFact(f"LT({el.name})", el.name, ring.monomial_str(want), str(got), ok))
    if family(rep) == "V":
        c = _c(rep)
        for name, mono, power in _LEAD_FACTS:
            try:
                val = auxiliary(name, rep).value
            except (UnknownName, IndexOutOfRange, ParseError):
                continue
            want = ring.parse(mono).lm
            got = val.lt()
            ok = got.lm == want
            expected = mono
            if power is not None:
                coef = c ** power
                ok = ok and got.lc == coef
                expected = str(ring.monomial(want, coef))
            out.append(LeadTermFact(f"LT({name})", name, expected, str(got), ok))
    return out


def hilbert_generators(rep: Representation) -> list[NamedInvariant]:
    """The stated generating set of the Hilbert ideal.

    This is the family hsop except for the regular representation (five
    generators, not an hsop) and the small lambda = 0 cases, where a
    different but equivalent set is given.
    """
    fam = family(rep)
    if fam == "Vreg":
        return _named(rep, ["x", "u", "N(y1)", "N(y2)", "N(z)"])
    if fam == "V0" and rep.m == 2:
        out = _named(rep, ["x1", "x2", "N~_2"])
        return out[:2] + [NamedInvariant("n_1", n(rep, 1), rep)] + out[2:]
    if fam == "V0" and rep.m == 3:
        out = _named(rep, _xs(rep))
        out.append(NamedInvariant("n_1", n(rep, 1), rep))
        out.append(NamedInvariant("n_2+u_13+u_12", n(rep, 2) + u(rep, 1, 3) + u(rep, 1, 2), rep))
        out.append(norm_y(rep, 3))
        return out
    return list(hsop(rep).elements)


def expected_noether_number(rep: Representation) -> int:
    """Closed-form Noether number of each family."""
    fam, m = family(rep), rep.m
    if fam == "Vreg":
        return 4
    if fam in ("V", "V0"):
        if m == 1:
            return 4
        half = m // 2 if fam == "V" else (m + 1) // 2
        return 3 * m - 2 * half
    if fam == "Omega-":
        return m + 1
    return {1: 4, 2: 6}.get(m, 3 * m)


# ---------------------------------------------------------------- registry


def registry_dump(rep: Representation) -> str:
    """JSON array of {family, name, degree, leadTerm, text} for ``rep``."""
    rows = []
    items = list(basic_invariants(rep).values()) if rep.kind != "Vreg" else []
    items += [auxiliary(nm, rep) for nm in auxiliary_names(rep)]
    for item in items:
        v = item.value
        lm, lc = v.leading()
        lead = v.ring.monomial_str(lm)
        if lc != 1:
            lead = f"({lc})*{lead}"
        rows.append(
            {
                "family": family(rep),
                "name": item.name,
                "degree": v.degree(),
                "leadTerm": lead,
                "text": format_polynomial(v),
            }
        )
    return json.dumps(rows, indent=1)

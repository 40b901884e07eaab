"""Groebner bases (Buchberger, grevlex), normal forms, hsop and block-hsop
checks, and comparison of an ideal with the Hilbert ideal."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .poly import Monomial, Polynomial, PolynomialRing, grevlex_key

__all__ = [
    "GroebnerBasis",
    "NormalFormRecord",
    "s_polynomial",
    "normal_form",
    "buchberger",
    "is_groebner",
    "standard_monomials",
    "is_hsop",
    "is_block_hsop",
    "hilbert_ideal_equals",
    "HsopVerdict",
    "BlockHsopVerdict",
    "HilbertVerdict",
]


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _term(ring: PolynomialRing, e: Monomial, c) -> Polynomial:
    return Polynomial(ring, {e: c})


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    F = f.field
    L = _lcm(f.lm, g.lm)
    a = tuple(x - y for x, y in zip(L, f.lm))
    b = tuple(x - y for x, y in zip(L, g.lm))
    return f.shift(a).scale(F.inv(f.terms[f.lm])) - g.shift(b).scale(F.inv(g.terms[g.lm]))


@dataclass
class NormalFormRecord:
    """``f = sum quotients[i] * G[i] + remainder``."""

    remainder: Polynomial
    quotients: list


def normal_form(f: Polynomial, G: Sequence[Polynomial], record: bool = False):
    """Full reduction of ``f`` modulo ``G`` (every term reduced)."""
    ring = f.ring
    F = ring.field
    G = [g for g in G if g]
    leads = [(g.lm, F.inv(g.terms[g.lm]), g) for g in G]
    quot = [dict() for _ in G] if record else None
    p = dict(f.terms)
    rem: dict = {}
    while p:
        m = max(p, key=grevlex_key)
        c = p[m]
        for i, (lm, inv, g) in enumerate(leads):
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                k = F.mul(c, inv)
                for e, v in g.terms.items():
                    e2 = tuple(x + y for x, y in zip(e, shift))
                    s = F.add(p.get(e2, F.zero), F.mul(k, v))
                    if F.is_zero(s):
                        p.pop(e2, None)
                    else:
                        p[e2] = s
                if record:
                    q = quot[i]
                    s = F.add(q.get(shift, F.zero), k)
                    if F.is_zero(s):
                        q.pop(shift, None)
                    else:
                        q[shift] = s
                break
        else:
            rem[m] = c
            del p[m]
    r = Polynomial(ring, rem)
    if record:
        return NormalFormRecord(r, [Polynomial(ring, q) for q in quot])
    return r


@dataclass
class GroebnerBasis:
    generators: list
    ring: PolynomialRing
    reduced: bool = False

    @property
    def order(self):
        return self.ring.order

    @property
    def lead_monomials(self) -> list[Monomial]:
        return [g.lm for g in self.generators]

    def normal_form(self, f: Polynomial, record: bool = False):
        return normal_form(f, self.generators, record)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.generators).is_zero()

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def _reduce_basis(G: list[Polynomial]) -> list[Polynomial]:
    F = G[0].field if G else None
    G = sorted(G, key=lambda g: grevlex_key(g.lm))
    minimal = []
    for i, g in enumerate(G):
        if any(_divides(h.lm, g.lm) and (h.lm != g.lm or j < i) for j, h in enumerate(G) if j != i):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        lead = g.lt()
        tail = normal_form(g - lead, others)
        h = lead + tail
        out.append(h.scale(F.inv(h.terms[h.lm])))
    return sorted(out, key=lambda g: grevlex_key(g.lm))


def buchberger(gens: Sequence[Polynomial], reduce: bool = True) -> GroebnerBasis:
    """Buchberger with the normal selection strategy and the coprime criterion."""
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("buchberger needs a nonzero generator")
    ring = gens[0].ring
    G: list[Polynomial] = []
    pairs: list = []

    def add(h):
        G.append(h)
        k = len(G) - 1
        for j in range(k):
            if not _coprime(G[j].lm, h.lm):
                L = _lcm(G[j].lm, h.lm)
                pairs.append((sum(L), grevlex_key(L), j, k))

    for g in gens:
        h = normal_form(g, G) if G else g
        if h:
            add(h)
    while pairs:
        pairs.sort()
        _, _, i, j = pairs.pop(0)
        h = normal_form(s_polynomial(G[i], G[j]), G)
        if h:
            add(h)
    if reduce:
        return GroebnerBasis(_reduce_basis(G), ring, True)
    return GroebnerBasis(G, ring, False)


def is_groebner(polys: Sequence[Polynomial]) -> tuple[bool, Polynomial | None]:
    """Buchberger's criterion; on failure returns a nonzero reduced S-polynomial."""
    G = [p for p in polys if p]
    for j in range(len(G)):
        for i in range(j):
            if _coprime(G[i].lm, G[j].lm):
                continue
            r = normal_form(s_polynomial(G[i], G[j]), G)
            if r:
                return False, r
    return True, None


def standard_monomials(lms: Sequence[Monomial], nvars: int, limit: int = 200000):
    """Monomials divisible by no element of ``lms``; None if there are more than ``limit``."""
    seen = {(0,) * nvars}
    frontier = [(0,) * nvars]
    if any(not any(m) for m in lms):
        return []
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(nvars):
                e = list(m)
                e[i] += 1
                e = tuple(e)
                if e in seen or any(_divides(l, e) for l in lms):
                    continue
                seen.add(e)
                nxt.append(e)
                if len(seen) > limit:
                    return None
        frontier = nxt
    return sorted(seen, key=grevlex_key)


@dataclass
class HsopVerdict:
    passed: bool
    powers: dict = field(default_factory=dict)
    reason: str = ""

    def __bool__(self):
        return self.passed


def _elements(spec) -> list[Polynomial]:
    if hasattr(spec, "polys"):
        return spec.polys
    return [getattr(e, "value", e) for e in spec]


def is_hsop(spec) -> HsopVerdict:
    """Zero-dimensionality: each variable has a pure power among the GB lead monomials."""
    elems = _elements(spec)
    ring = elems[0].ring
    if len(elems) != ring.n:
        return HsopVerdict(False, {}, f"{len(elems)} elements for {ring.n} variables")
    if any(e.homogeneous_degree() is None for e in elems):
        return HsopVerdict(False, {}, "element not homogeneous")
    gb = buchberger(elems)
    powers = {}
    for m in gb.lead_monomials:
        support = [i for i, a in enumerate(m) if a]
        if len(support) == 1:
            v = support[0]
            powers[ring.names[v]] = min(powers.get(ring.names[v], m[v]), m[v])
    missing = [nm for nm in ring.names if nm not in powers]
    if missing:
        return HsopVerdict(False, powers, f"not zero-dimensional: no pure power of {missing}")
    return HsopVerdict(True, powers, "")


@dataclass
class BlockHsopVerdict:
    is_block: bool
    top_class: Monomial | None
    matches_claim: bool | None = None
    reason: str = ""

    def __bool__(self):
        return self.is_block and self.matches_claim is not False

    def as_tuple(self):
        return self.is_block, self.top_class


def is_block_hsop(spec, claimed_top: Monomial | None = None) -> BlockHsopVerdict:
    """The elements form a Groebner basis and their standard monomials are
    exactly the divisors of one monomial (the top class)."""
    elems = _elements(spec)
    if claimed_top is None:
        claimed_top = getattr(spec, "top_class", None)
    ring = elems[0].ring
    hv = is_hsop(elems)
    if not hv:
        return BlockHsopVerdict(False, None, None, hv.reason)
    ok, witness = is_groebner(elems)
    if not ok:
        return BlockHsopVerdict(False, None, None, f"not a Groebner basis: S-pair leaves {witness}")
    std = standard_monomials([e.lm for e in elems], ring.n)
    if std is None:
        return BlockHsopVerdict(False, None, None, "too many standard monomials")
    top = tuple(max(col) for col in zip(*std))
    count = 1
    for a in top:
        count *= a + 1
    if top not in set(std) or count != len(std):
        return BlockHsopVerdict(False, None, None, "standard monomials are not the divisors of one monomial")
    match = None if claimed_top is None else tuple(claimed_top) == top
    return BlockHsopVerdict(True, top, match, "")


@dataclass
class HilbertVerdict:
    passed: bool
    witness: Polynomial | None = None
    checked_degree: int = 0
    method: str = ""
    reason: str = ""
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def hilbert_ideal_equals(
    rep,
    spec,
    noether_bound: int,
    xcaps="auto",
    budget: float | None = None,
) -> HilbertVerdict:
    """Check that the ideal generated by ``spec`` is the Hilbert ideal.

    Confirms (i) every element is invariant and (ii) every invariant of
    positive degree at most ``noether_bound`` has normal form zero.

    ``xcaps`` lists truncation caps for the fixed-variable degree to try
    before the exact computation (see :func:`oracle.hilbert_check`); a pass
    under any cap is a proof.  ``"auto"`` uses caps only for large pieces.
    """
    from . import oracle

    elems = _elements(spec)
    for e in elems:
        if not rep.is_invariant(e):
            return HilbertVerdict(False, e, 0, "invariance", "element is not invariant")
    gb = buchberger(elems)
    fixed_in = all(gb.contains(rep.ring.var(i)) for i in rep.fixed)
    if xcaps == "auto":
        xcaps = [2, 3, 4] if fixed_in and _piece_size(rep.ring.n, noether_bound) > TRUNCATE_ABOVE else []
    last = None
    for cap in xcaps or []:
        res = oracle.hilbert_check(rep, gb, noether_bound, xcap=cap, budget=budget)
        if res.passed:
            return HilbertVerdict(True, None, noether_bound, f"truncated(xcap={cap})", "", {"xcap": cap})
        last = res
    res = oracle.hilbert_check(rep, gb, noether_bound, budget=budget)
    details = {} if last is None else {"truncated_attempts": list(xcaps)}
    if res.passed:
        return HilbertVerdict(True, None, noether_bound, "exact", "", details)
    return HilbertVerdict(False, res.witness, res.degree, "exact", res.reason, details)


# above this many monomials in the top degree, truncated certificates are tried first
TRUNCATE_ABOVE = 20000


def _piece_size(n: int, d: int) -> int:
    from math import comb

    return comb(n + d - 1, d)

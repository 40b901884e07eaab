"""Ground truth by exact linear algebra on graded pieces.

The degree-``d`` invariants are the common kernel of ``Delta_1`` and
``Delta_2`` on the space of degree-``d`` monomials.  Monomials are packed
into integers (six bits per exponent) and enumerated in ascending grevlex
order; the kernel is found by a single elimination in which each monomial's
row carries a tag, so that every kernel vector comes out with its own
monomial as lead monomial.

An optional truncation ``xcap`` works modulo the monomials whose degree in
the fixed variables exceeds ``xcap``.  That ideal is stable under the group
(the action never lowers the degree in fixed variables), so every true
invariant maps to a truncated one; the truncated kernel is an over-count
and yields one-sided certificates.
"""

from __future__ import annotations

import functools
import os
import threading
import time
from dataclasses import dataclass, field
from functools import cached_property

from .coeff import BinaryField
from .errors import BudgetExceeded, NotInvariant, UnknownLemma
from .linalg import Echelon, backend_for
from .poly import Monomial, Polynomial, iter_monomials
from .rep import GroupElement, Representation

__all__ = [
    "GradedBasis",
    "GeneratorProfile",
    "HilbertCheck",
    "invariant_basis",
    "generator_profile",
    "symonds_bound",
    "is_decomposable",
    "decomposable_span",
    "transfer_image_basis",
    "transfer_generation_check",
    "radical_membership_spotcheck",
    "hilbert_check",
    "lemma_predicates",
    "LEMMAS",
    "clear_cache",
    "applicable_lemmas",
    "LemmaVerdict",
    "TransferImage",
    "worker_count",
]

BITS = 6
_FIELD_MASK = (1 << BITS) - 1


def pack(e: Monomial) -> int:
    r = 0
    for i, a in enumerate(e):
        r |= a << (BITS * i)
    return r


def unpack(p: int, n: int) -> Monomial:
    return tuple((p >> (BITS * i)) & _FIELD_MASK for i in range(n))


def _digit_sum(p: int) -> int:
    # base-64 digit sum; exact while the sum stays below 63
    return p % 63


# ---------------------------------------------------------------- packed polynomials


class _Packed:
    """Arithmetic on packed polynomials for one field.

    Over GF(2) a polynomial is a set of packed monomials; otherwise a dict
    mapping packed monomials to field payloads.
    """

    def __init__(self, field, xmask: int, xcap: int | None):
        self.field = field
        self.gf2 = isinstance(field, BinaryField) and field.k == 1
        self.xmask = xmask
        self.xcap = xcap

    def keep(self, p: int) -> bool:
        return self.xcap is None or _digit_sum(p & self.xmask) <= self.xcap

    def from_poly(self, f: Polynomial):
        if self.gf2:
            return {pack(e) for e in f.terms if self.keep(pack(e))}
        return {pack(e): c for e, c in f.terms.items() if self.keep(pack(e))}

    def to_poly(self, ring, P) -> Polynomial:
        n = ring.n
        if self.gf2:
            return Polynomial(ring, {unpack(p, n): 1 for p in P})
        return Polynomial(ring, {unpack(p, n): c for p, c in P.items()})

    def one(self):
        return {0} if self.gf2 else {0: self.field.one}

    def mul(self, A, B):
        keep = self.keep if self.xcap is not None else None
        if self.gf2:
            if len(A) > len(B):
                A, B = B, A
            if len(A) == 1:
                (a,) = A
                out = {a + b for b in B}
                return {p for p in out if keep(p)} if keep else out
            acc: set = set()
            for a in A:
                acc ^= {a + b for b in B}
            return {p for p in acc if keep(p)} if keep else acc
        F = self.field
        out: dict = {}
        for a, ca in A.items():
            for b, cb in B.items():
                p = a + b
                if keep and not keep(p):
                    continue
                s = F.add(out.get(p, F.zero), F.mul(ca, cb))
                if F.is_zero(s):
                    out.pop(p, None)
                else:
                    out[p] = s
        return out

    def add_into(self, A, B):
        if self.gf2:
            A ^= B
            return A
        F = self.field
        for p, c in B.items():
            s = F.add(A.get(p, F.zero), c)
            if F.is_zero(s):
                A.pop(p, None)
            else:
                A[p] = s
        return A

    def items(self, P):
        if self.gf2:
            return ((p, 1) for p in P)
        return P.items()


# ---------------------------------------------------------------- per-representation context


class _Context:
    """Packed action tables and cached graded data for one representation."""

    def __init__(self, rep: Representation, xcap: int | None = None):
        self.rep = rep
        self.ring = rep.ring
        self.n = rep.ring.n
        self.xcap = xcap
        xmask = 0
        for i in rep.fixed:
            xmask |= _FIELD_MASK << (BITS * i)
        self.pk = _Packed(rep.field, xmask, xcap)
        self.bk = backend_for(rep.field)
        self._tables: dict = {}
        self.bases: dict[int, GradedBasis] = {}
        self.generators: dict[int, list] = {}
        self.profile_degree = 0
        self.new_counts: dict[int, int] = {}

    def _images(self, g: GroupElement):
        return [self.pk.from_poly(self.rep.act(g, v)) for v in self.ring.gens]

    def power(self, g: GroupElement, v: int, a: int):
        tab = self._tables.setdefault(g, {})
        row = tab.get(v)
        if row is None:
            row = tab[v] = [self.pk.one(), self._images(g)[v]]
        while len(row) <= a:
            row.append(self.pk.mul(row[-1], row[1]))
        return row[a]

    def image(self, g: GroupElement, e: Monomial):
        """g applied to the monomial e, as a packed polynomial."""
        out = self.pk.one()
        for v, a in enumerate(e):
            if a:
                out = self.pk.mul(out, self.power(g, v, a))
        return out

    def space(self, d: int) -> "_Space":
        return _Space(self, d)


class _Space:
    """Degree-d monomials (within the truncation) in ascending grevlex order."""

    def __init__(self, ctx: _Context, d: int):
        self.ctx = ctx
        self.d = d
        keep = ctx.pk.keep
        mons = [e for e in iter_monomials(ctx.n, d)]
        if ctx.xcap is not None:
            mons = [e for e in mons if keep(pack(e))]
        self.monomials = mons
        self.packed = [pack(e) for e in mons]
        self.index = {p: i for i, p in enumerate(self.packed)}

    def __len__(self) -> int:
        return len(self.monomials)

    def vector(self, P):
        """Packed polynomial -> backend vector over monomial indices."""
        idx = self.index
        bk = self.ctx.bk
        if self.ctx.pk.gf2:
            v = bk.zero()
            v[0] = {idx[p] for p in P}
            return v
        return bk.from_items((idx[p], c) for p, c in P.items())

    def packed_poly(self, v):
        bk = self.ctx.bk
        if self.ctx.pk.gf2:
            return {self.packed[i] for i in v[0]}
        return {self.packed[i]: c for i, c in bk.items(v)}


_CACHE: dict = {}
# the caches are shared and mutable; entry points run one at a time
_LOCK = threading.RLock()


def _serialized(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with _LOCK:
            return fn(*args, **kwargs)

    return wrapper


def _context(rep: Representation, xcap: int | None = None) -> _Context:
    key = (rep.selector, repr(rep.field), rep.ring.names, xcap)
    ctx = _CACHE.get(key)
    if ctx is None:
        ctx = _CACHE[key] = _Context(rep, xcap)
    return ctx


@_serialized
def clear_cache() -> None:
    _CACHE.clear()


# ---------------------------------------------------------------- invariant bases


@dataclass
class GradedBasis:
    """A basis of the degree-d invariants in reduced echelon form.

    ``vectors`` are backend vectors over the indices of ``space``; the lead
    index of each is the position of its lead monomial.
    """

    rep: Representation
    degree: int
    space: _Space = field(repr=False)
    vectors: list = field(repr=False)
    truncated: bool = False

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    @cached_property
    def basis(self) -> list[Polynomial]:
        ring = self.rep.ring
        return [self.space.ctx.pk.to_poly(ring, self.space.packed_poly(v)) for v in self.vectors]

    @cached_property
    def packed(self) -> list:
        return [self.space.packed_poly(v) for v in self.vectors]

    @property
    def lead_monomials(self) -> list[Monomial]:
        bk = self.space.ctx.bk
        return [self.space.monomials[bk.lead(v)] for v in self.vectors]

    @cached_property
    def echelon(self) -> Echelon:
        E = Echelon(self.space.ctx.bk)
        for v in self.vectors:
            E.pivots[E.bk.lead(v)] = v
        return E

    def to_vector(self, f: Polynomial):
        P = self.space.ctx.pk.from_poly(f)
        if any(p not in self.space.index for p, _ in self.space.ctx.pk.items(P)):
            raise ValueError("polynomial not in this graded piece")
        return self.space.vector(P)

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        if f.homogeneous_degree() != self.degree:
            return False
        return self.echelon.contains(self.to_vector(f))


def _kernel(ctx: _Context, d: int, budget: "_Budget | None" = None) -> GradedBasis:
    sp = ctx.space(d)
    N = len(sp)
    bk = ctx.bk
    pk = ctx.pk
    idx = sp.index
    s1, s2 = GroupElement.S1, GroupElement.S2
    E = Echelon(bk)
    kernel = []
    for i, e in enumerate(sp.monomials):
        if budget is not None and not i % 512:
            budget.check(f"kernel at degree {d}")
        p = sp.packed[i]
        a = ctx.image(s1, e)
        b = ctx.image(s2, e)
        if pk.gf2:
            a.discard(p)
            b.discard(p)
            row = {idx[t] for t in a}
            row.update(idx[t] + N for t in b)
            row.add(i - N)
            v = bk.zero()
            v[0] = row
        else:
            F = ctx.rep.field
            items = [(idx[t], c) for t, c in a.items()]
            items += [(idx[t] + N, c) for t, c in b.items()]
            items += [(i, F.one), (i + N, F.one), (i - N, F.one)]  # subtract the identity
            v = bk.from_items(items)
        v = E.reduce(v, stop_below=0)
        if bk.is_zero(v) or bk.lead(v) < 0:
            kernel.append(bk.restrict(v, lambda j: j < 0))
        else:
            E.insert(v)
    # shift tags back to monomial indices and reduce to canonical echelon form
    vecs = []
    for v in kernel:
        items = [(j + N, c) for j, c in bk.items(v)]
        vecs.append(bk.normalize(bk.from_items(items)))
    vecs = _reduced_echelon(bk, vecs)
    return GradedBasis(ctx.rep, d, sp, vecs, truncated=ctx.xcap is not None)


def _reduced_echelon(bk, vecs):
    """Back-substitute a list with distinct leads so that no lead appears elsewhere."""
    by_lead = {bk.lead(v): v for v in vecs}
    leads = sorted(by_lead)
    done: dict = {}
    for h in leads:
        v = bk.copy(by_lead[h])
        for j in sorted(bk.indices(v) & done.keys(), reverse=True):
            c = bk.coeff(v, j)
            if c:
                bk.add_into(v, done[j], c)
        done[h] = v
    return [done[h] for h in leads]


@_serialized
def invariant_basis(rep: Representation, d: int, xcap: int | None = None, budget: float | None = None) -> GradedBasis:
    """Basis of the degree-``d`` invariants (exact kernel, canonical echelon form)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    ctx = _context(rep, xcap)
    gb = ctx.bases.get(d)
    if gb is None:
        gb = ctx.bases[d] = _kernel(ctx, d, _Budget(budget) if budget else None)
    return gb


class _Budget:
    def __init__(self, seconds: float | None):
        self.seconds = seconds
        self.start = time.monotonic()

    def check(self, where: str, partial=None):
        if self.seconds is not None and time.monotonic() - self.start > self.seconds:
            raise BudgetExceeded(f"time budget of {self.seconds}s exceeded during {where}", partial)


# ---------------------------------------------------------------- generator profile


@dataclass
class GeneratorProfile:
    rep: Representation
    degree_bound: int
    dimensions: dict = field(default_factory=dict)
    new_counts: dict = field(default_factory=dict)
    generators: dict = field(default_factory=dict, repr=False)
    upper_bound: int | None = None  # a proven bound on generator degrees, if known
    complete: bool = True

    @property
    def noether_number(self) -> int:
        return max((d for d, c in self.new_counts.items() if c), default=0)

    @property
    def certified(self) -> bool:
        """True when the profile reaches a proven upper bound on generator degrees."""
        return self.complete and self.upper_bound is not None and self.degree_bound >= self.upper_bound

    def as_dict(self) -> dict:
        return {
            "rep": self.rep.selector,
            "degree_bound": self.degree_bound,
            "dimensions": {str(d): c for d, c in sorted(self.dimensions.items())},
            "new_generators": {str(d): c for d, c in sorted(self.new_counts.items())},
            "noether_number": self.noether_number,
            "upper_bound": self.upper_bound,
            "certified": self.certified,
        }


def _product_vectors(ctx: _Context, d: int, sp: _Space):
    """Yield products generator * basis element spanning the decomposables of degree d.

    A product of two or more generators has a factor of least degree k <= d/2,
    so generators of degree at most d/2 times all invariants of the
    complementary degree suffice.
    """
    jobs = []
    for k in range(1, d // 2 + 1):
        gens = ctx.generators.get(k, [])
        basis = ctx.bases[d - k].packed
        for g in gens:
            for b in basis:
                jobs.append((len(g) * len(b), g, b))
    jobs.sort(key=lambda t: t[0])
    for _, g, b in jobs:
        yield sp.vector(ctx.pk.mul(g, b))


def _decomposables(ctx: _Context, d: int, stop_rank: int | None, budget: _Budget | None) -> Echelon:
    sp = ctx.bases[d].space
    E = Echelon(ctx.bk)
    for count, v in enumerate(_product_vectors(ctx, d, sp)):
        if budget is not None and not count % 256:
            budget.check(f"decomposables at degree {d}")
        E.insert(v)
        if stop_rank is not None and len(E) >= stop_rank:
            break
    return E


def _extend_profile(ctx: _Context, D: int, budget: _Budget | None, partial: GeneratorProfile):
    for d in range(ctx.profile_degree + 1, D + 1):
        B = invariant_basis(ctx.rep, d, ctx.xcap)
        E = _decomposables(ctx, d, B.dimension, budget)
        new = []
        for v, P in zip(B.vectors, B.packed):
            if E.insert(ctx.bk.copy(v)):
                new.append(P)
        ctx.generators[d] = new
        ctx.new_counts[d] = len(new)
        ctx.profile_degree = d
        partial.dimensions[d] = B.dimension
        partial.new_counts[d] = len(new)
        if budget is not None:
            budget.check(f"profile after degree {d}", partial)


def symonds_bound(rep: Representation) -> int | None:
    """max(largest hsop degree, deg of the top class) when the family hsop is a block hsop."""
    from .construct import hsop
    from .gb import is_block_hsop

    try:
        spec = hsop(rep)
    except Exception:
        return None
    verdict = is_block_hsop(spec)
    if not verdict.is_block:
        return None
    return max(max(p.degree() for p in spec.polys), sum(verdict.top_class))


@_serialized
def generator_profile(
    rep: Representation,
    D: int,
    keep_generators: bool = False,
    budget: float | None = None,
    certify: bool = True,
) -> GeneratorProfile:
    """Per-degree dimensions and counts of new generators up to degree ``D``.

    ``budget`` is a time limit in seconds; when exceeded a BudgetExceeded
    carrying the partial profile is raised.
    """
    ctx = _context(rep)
    prof = GeneratorProfile(rep, D)
    for d in range(1, min(D, ctx.profile_degree) + 1):
        prof.dimensions[d] = ctx.bases[d].dimension
        prof.new_counts[d] = ctx.new_counts[d]
    bud = _Budget(budget) if budget else None
    try:
        _extend_profile(ctx, D, bud, prof)
    except BudgetExceeded as exc:
        prof.complete = False
        exc.partial = prof
        raise
    if keep_generators:
        prof.generators = {
            d: [ctx.pk.to_poly(rep.ring, P) for P in ctx.generators[d]] for d in range(1, D + 1)
        }
    if certify:
        prof.upper_bound = symonds_bound(rep)
    return prof


@_serialized
def decomposable_span(rep: Representation, d: int, budget: float | None = None) -> Echelon:
    ctx = _context(rep)
    bud = _Budget(budget) if budget else None
    # generators up to d/2 and all invariants of the complementary degrees
    _extend_profile(ctx, d // 2, bud, GeneratorProfile(rep, d // 2))
    for k in range(d - d // 2, d + 1):
        invariant_basis(rep, k)
    return _decomposables(ctx, d, None, bud)


@_serialized
def is_decomposable(f: Polynomial, rep: Representation, budget: float | None = None) -> bool:
    """True iff ``f`` lies in the span of products of invariants of positive degree."""
    if not rep.is_invariant(f):
        raise NotInvariant(f"{f} is not invariant")
    d = f.homogeneous_degree()
    if d is None:
        raise ValueError("is_decomposable needs a homogeneous polynomial")
    if f.is_zero():
        return True
    E = decomposable_span(rep, d, budget)
    B = invariant_basis(rep, d)
    return E.contains(B.to_vector(f))


# ---------------------------------------------------------------- transfer


def _transfer_packed(ctx: _Context, e: Monomial):
    pk = ctx.pk
    out = {pack(e)} if pk.gf2 else {pack(e): ctx.rep.field.one}
    for g in (GroupElement.S1, GroupElement.S2, GroupElement.S1S2):
        out = pk.add_into(out, ctx.image(g, e))
    return out


@dataclass
class TransferImage:
    rep: Representation
    degree: int
    space: _Space = field(repr=False)
    echelon: Echelon = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.echelon)

    @cached_property
    def basis(self) -> list[Polynomial]:
        pk = self.space.ctx.pk
        return [pk.to_poly(self.rep.ring, self.space.packed_poly(v)) for _, v in sorted(self.echelon.pivots.items())]

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        if f.homogeneous_degree() != self.degree:
            return False
        P = self.space.ctx.pk.from_poly(f)
        return self.echelon.contains(self.space.vector(P))


@_serialized
def transfer_image_basis(rep: Representation, d: int, max_monomials: int = 400000) -> TransferImage:
    """Span of the transfers of all degree-``d`` monomials."""
    ctx = _context(rep)
    sp = ctx.space(d)
    if len(sp) > max_monomials:
        raise BudgetExceeded(f"{len(sp)} monomials in degree {d} exceeds {max_monomials}")
    E = Echelon(ctx.bk)
    for e in sp.monomials:
        T = _transfer_packed(ctx, e)
        if T:
            E.insert(sp.vector(T))
    return TransferImage(rep, d, sp, E)


@_serialized
def transfer_generation_check(rep: Representation, d: int, top_class: Monomial) -> tuple[bool, Polynomial | None]:
    """Is the degree-d transfer image inside the invariant-ring ideal generated
    by the transfers of the divisors of ``top_class``?  Returns a witness on failure."""
    from .construct import top_class_divisors

    ctx = _context(rep)
    T = transfer_image_basis(rep, d)
    sp = T.space
    E = Echelon(ctx.bk)
    for gamma in top_class_divisors(top_class):
        k = sum(gamma)
        if k > d or k == 0:
            continue
        tg = _transfer_packed(ctx, gamma)
        if not tg:
            continue
        mults = [ctx.pk.one()] if k == d else invariant_basis(rep, d - k).packed
        for b in mults:
            E.insert(sp.vector(ctx.pk.mul(tg, b)))
    for f in T.basis:
        if not E.contains(sp.vector(ctx.pk.from_poly(f))):
            return False, f
    return True, None


@_serialized
def radical_membership_spotcheck(
    rep: Representation, f: Polynomial, kmax: int, max_monomials: int = 400000
) -> int | None:
    """Smallest k <= kmax with f^k in the transfer ideal, or None.

    The image of the transfer is an ideal of the invariant ring, so degreewise
    membership is membership in the span of transfers of monomials.
    """
    if not rep.is_invariant(f):
        raise NotInvariant(f"{f} is not invariant")
    d = f.homogeneous_degree()
    if d is None or d == 0:
        raise ValueError("need a homogeneous invariant of positive degree")
    g = rep.ring.one()
    for k in range(1, kmax + 1):
        g = g * f
        T = transfer_image_basis(rep, k * d, max_monomials)
        if T.contains(g):
            return k
    return None


# ---------------------------------------------------------------- Hilbert ideal


@dataclass
class HilbertCheck:
    passed: bool
    witness: Polynomial | None = None
    degree: int | None = None
    xcap: int | None = None
    reason: str = ""


@_serialized
def hilbert_check(rep: Representation, gb, bound: int, xcap: int | None = None, budget: float | None = None) -> HilbertCheck:
    """Every invariant of positive degree <= ``bound`` reduces to zero modulo ``gb``.

    When every fixed variable lies in the ideal, an invariant is in the ideal
    iff its part free of fixed variables is.  Under grevlex with the fixed
    variables smallest, the kernel vectors whose lead monomial is free of
    fixed variables span all those parts, so only they are reduced.

    With ``xcap`` set the kernel is computed modulo high degree in the fixed
    variables; a pass is then still a proof, a failure is inconclusive.
    """
    ring = rep.ring
    fixed_in = all(gb.contains(ring.var(i)) for i in rep.fixed)
    if xcap is not None and not fixed_in:
        raise ValueError("truncation needs every fixed variable in the ideal")
    bud = _Budget(budget) if budget else None
    fixed = set(rep.fixed)
    for d in range(1, bound + 1):
        B = invariant_basis(rep, d, xcap, budget)
        if bud:
            bud.check(f"Hilbert check at degree {d}")
        pk = B.space.ctx.pk
        for v, lm in zip(B.vectors, B.lead_monomials):
            if fixed_in:
                if any(lm[i] for i in fixed):
                    continue
                P = B.space.packed_poly(v)
                f = pk.to_poly(ring, P)
                f = Polynomial(ring, {e: c for e, c in f.terms.items() if not any(e[i] for i in fixed)})
            else:
                f = pk.to_poly(ring, B.space.packed_poly(v))
            if gb.normal_form(f):
                why = "truncated invariant not in the ideal (inconclusive)" if xcap is not None else "invariant not in the ideal"
                return HilbertCheck(False, f, d, xcap, why)
    return HilbertCheck(True, None, bound, xcap, "")


# ---------------------------------------------------------------- lemma predicates


@dataclass
class LemmaVerdict:
    lemma: str
    passed: bool
    witness: Monomial | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed


def _pairing(rep: Representation, s: int) -> dict[int, int]:
    """y -> x for a generator acting by y -> y + x on every moved variable."""
    ring = rep.ring
    pairs = {}
    for v in range(ring.n):
        img = rep.image(s, v) + ring.var(v)
        if not img:
            continue
        if len(img.terms) != 1 or img.lc != 1 or img.homogeneous_degree() != 1:
            raise ValueError(f"s{s} does not act by y -> y + x on {ring.names[v]}")
        (e,) = img.terms
        w = e.index(1)
        if w not in rep.fixed:
            raise ValueError(f"s{s} does not act by y -> y + x on {ring.names[v]}")
        pairs[v] = w
    return pairs


def _x_content(e, xs):
    return [(w, e[w]) for w in xs if e[w]]


def _with(e, changes):
    out = list(e)
    for v, da in changes:
        out[v] += da
    return tuple(out)


def _lemma_even(f, rep, s):
    """Pure y-monomials have even exponents; so do the other y's of y^a * y_k x_k."""
    pairs = _pairing(rep, s)
    xs = set(pairs.values())
    for e in f.monomials():
        xc = _x_content(e, xs)
        if not xc:
            if any(e[y] % 2 for y in pairs):
                return e
        elif len(xc) == 1 and xc[0][1] == 1:
            w = xc[0][0]
            for k, xk in pairs.items():
                if xk == w and e[k] == 1:
                    if any(e[y] % 2 for y in pairs if y != k):
                        return e
    return None


def _lemma_swap(f, rep, s):
    """M' x_i y_j (y_j-degree of M' even) forces M' x_j y_i with the same coefficient."""
    pairs = _pairing(rep, s)
    xs = set(pairs.values())
    inv = {x: y for y, x in pairs.items()}
    for e in f.monomials():
        xc = _x_content(e, xs)
        if len(xc) != 1 or xc[0][1] != 1:
            continue
        xi = xc[0][0]
        yi = inv[xi]
        for yj, xj in pairs.items():
            if yj == yi or e[yj] % 2 == 0:
                continue
            base = _with(e, [(xi, -1), (yj, -1)])
            if base[yi] % 2:
                return e
            partner = _with(base, [(xj, 1), (yi, 1)])
            if f.coefficient(partner) != f.coefficient(e):
                return e
    return None


def _lemma_lift(f, rep, s):
    """M' y_j x_j and M' y_j^2 appear together with equal coefficients; M' y_j^3 x_j never."""
    pairs = _pairing(rep, s)
    xs = set(pairs.values())
    for e in f.monomials():
        xc = _x_content(e, xs)
        if len(xc) == 1 and xc[0][1] == 1:
            xj = xc[0][0]
            for yj, w in pairs.items():
                if w != xj:
                    continue
                if e[yj] == 3:
                    return e
                if e[yj] == 1:
                    sq = _with(e, [(xj, -1), (yj, 1)])
                    if f.coefficient(sq) != f.coefficient(e):
                        return e
        elif not xc:
            for yj, xj in pairs.items():
                if e[yj] == 2:
                    lin = _with(e, [(yj, -1), (xj, 1)])
                    if f.coefficient(lin) != f.coefficient(e):
                        return e
    return None


def _require_kind(rep, kinds, lemma):
    if rep.kind not in kinds:
        raise ValueError(f"lemma {lemma!r} applies to {', '.join(kinds)} only")


def _lemma_shift(f, rep, s):
    """Even family: M' y_i x_m (i > 1, y_i-degree of M' even) never appears, and
    M' y_i x_j appears iff M' y_{j+1} x_{i-1} does (j < m, matching parities)."""
    _require_kind(rep, ("V",), "shift")
    m = rep.m
    X = [rep.ring.index(f"x{j}") for j in range(1, m + 1)]
    Y = [rep.ring.index(f"y{j}") for j in range(1, m + 1)]
    support = set(f.terms)
    for e in f.monomials():
        xc = _x_content(e, X)
        if len(xc) != 1 or xc[0][1] != 1:
            continue
        j = X.index(xc[0][0]) + 1
        for i in range(2, m + 1):
            yi = Y[i - 1]
            if e[yi] % 2 == 0:
                continue
            base = _with(e, [(yi, -1), (X[j - 1], -1)])
            if j == m:
                return e
            partner = _with(base, [(Y[j], 1), (X[i - 2], 1)])
            if base[Y[j]] % 2 or partner not in support:
                return e
    return None


def _lemma_double(f, rep, s):
    """A product of squares prod_{i in I} y_i^2 needs 2 max(I) <= m+1 (<= m for generic lambda)."""
    _require_kind(rep, ("V",), "square_index_bound")
    m = rep.m
    X = [rep.ring.index(f"x{j}") for j in range(1, m + 1)]
    Y = [rep.ring.index(f"y{j}") for j in range(1, m + 1)]
    limit = m if rep.is_generic else m + 1
    for e in f.terms:
        if any(e[x] for x in X) or any(e[y] not in (0, 2) for y in Y):
            continue
        idx = [j for j in range(1, m + 1) if e[Y[j - 1]]]
        if idx and 2 * max(idx) > limit:
            return e
    return None


def _lemma_end_x(f, rep, s):
    """y^e x_1^k or y^e x_{m+1}^k (k > 0) in an invariant forces every e_j even."""
    _require_kind(rep, ("Omega+",), "end_x_even")
    m = rep.m
    X = [rep.ring.index(f"x{j}") for j in range(1, m + 2)]
    Y = [rep.ring.index(f"y{j}") for j in range(1, m + 1)]
    ends = {X[0], X[-1]}
    for e in f.terms:
        xc = _x_content(e, X)
        if len(xc) == 1 and xc[0][0] in ends:
            if any(e[y] % 2 for y in Y):
                return e
    return None


def _lemma_no_squares(f, rep, s):
    """No product of squares prod_{j in J} y_j^2 (J nonempty) appears in an invariant."""
    _require_kind(rep, ("Omega+",), "no_square_products")
    m = rep.m
    X = [rep.ring.index(f"x{j}") for j in range(1, m + 2)]
    Y = [rep.ring.index(f"y{j}") for j in range(1, m + 1)]
    for e in f.terms:
        if any(e[x] for x in X):
            continue
        if all(e[y] in (0, 2) for y in Y) and any(e[y] for y in Y):
            return e
    return None


# id -> (predicate, invariance required: "sigma" for one generator, "G" for the group)
LEMMAS = {
    "even_y_exponents": (_lemma_even, "sigma"),
    "swap": (_lemma_swap, "sigma"),
    "lift": (_lemma_lift, "sigma"),
    "shift": (_lemma_shift, "G"),
    "square_index_bound": (_lemma_double, "G"),
    "end_x_even": (_lemma_end_x, "G"),
    "no_square_products": (_lemma_no_squares, "G"),
}


def lemma_predicates(f: Polynomial, rep: Representation, lemma: str, sigma: int = 1) -> LemmaVerdict:
    """Scan the support of ``f`` for a violation of one of the appearance lemmas.

    The first three concern invariants of a single generator ``s<sigma>``
    acting by ``y -> y + x``; the others concern invariants of the group.
    """
    if lemma not in LEMMAS:
        raise UnknownLemma(f"unknown lemma {lemma!r}; known: {', '.join(LEMMAS)}")
    pred, scope = LEMMAS[lemma]
    if scope == "sigma":
        if rep.delta(sigma, f):
            raise NotInvariant(f"not invariant under s{sigma}")
    elif not rep.is_invariant(f):
        raise NotInvariant("not invariant under the group")
    bad = pred(f, rep, sigma)
    if bad is None:
        return LemmaVerdict(lemma, True)
    return LemmaVerdict(lemma, False, bad, rep.ring.monomial_str(bad))


def applicable_lemmas(rep: Representation) -> list[tuple[str, int]]:
    """(lemma, generator) pairs that make sense for ``rep``."""
    out = []
    for s in (1, 2):
        try:
            _pairing(rep, s)
        except ValueError:
            continue
        out += [(nm, s) for nm in ("even_y_exponents", "swap", "lift")]
    if rep.kind == "V":
        out += [("shift", 2), ("square_index_bound", 2)]
    if rep.kind == "Omega+":
        out += [("end_x_even", 2), ("no_square_products", 2)]
    return out


def worker_count() -> int:
    """Worker cap from KLEIN_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("KLEIN_THREADS", "1")))
    except ValueError:
        return 1

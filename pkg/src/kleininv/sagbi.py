"""Subalgebra (SAGBI) tools: subduction, lead-term relations, the SAGBI test
and the divide-by-x completion loop.

Lead-term relations ("tetes") of a list ``B`` are pairs of exponent vectors
``(I, J)`` with ``LM(B^I) = LM(B^J)``.  They are obtained from a Groebner
basis of the binomial ideal ``(t_i - z^{LM(b_i)})`` under an elimination
order, and then trimmed to a minimal generating set fibre by fibre.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .coeff import Scalar
from .errors import DegreeBoundExceeded, IterationBudgetExceeded, NonHomogeneousMix
from .poly import Monomial, Polynomial, PolynomialRing, format_polynomial, grevlex_key

__all__ = [
    "TeteATete",
    "SubductionResult",
    "SagbiVerdict",
    "CompletionResult",
    "subduct",
    "tete_a_tetes",
    "sagbi_test",
    "sagbi_divide_by_x",
    "algebra_contains",
    "strip_content",
    "lead_monoid_dimensions",
    "equivalent_generating_sets",
]


# ---------------------------------------------------------------- subduction


class _LeadSolver:
    """Finds exponent vectors E with sum E_i LM_i = target (memoised DFS)."""

    def __init__(self, lms: Sequence[Monomial]):
        self.lms = [tuple(m) for m in lms]
        n = len(self.lms[0]) if self.lms else 0
        # variables still coverable by elements k, k+1, ...
        self.cover = []
        acc = [False] * n
        for m in reversed(self.lms):
            acc = [a or b > 0 for a, b in zip(acc, m)]
            self.cover.append(tuple(acc))
        self.cover.reverse()
        self._failed: set = set()

    def _ok(self, target, k):
        if k == len(self.lms):
            return not any(target)
        cov = self.cover[k]
        return all(c or not t for c, t in zip(cov, target))

    def find(self, target: Monomial, k: int = 0):
        if not any(target):
            return (0,) * (len(self.lms) - k)
        if not self._ok(target, k) or (target, k) in self._failed:
            return None
        lm = self.lms[k]
        top = min((t // a for t, a in zip(target, lm) if a), default=0)
        for e in range(top, -1, -1):
            rest = tuple(t - e * a for t, a in zip(target, lm))
            sub = self.find(rest, k + 1)
            if sub is not None:
                return (e, *sub)
        self._failed.add((target, k))
        return None

    def all(self, target: Monomial, k: int = 0):
        """Every solution (the fibre of ``target``)."""
        if k == len(self.lms):
            if not any(target):
                yield ()
            return
        if not self._ok(target, k):
            return
        lm = self.lms[k]
        top = min((t // a for t, a in zip(target, lm) if a), default=0)
        for e in range(top, -1, -1):
            rest = tuple(t - e * a for t, a in zip(target, lm))
            for sub in self.all(rest, k + 1):
                yield (e, *sub)


class _Products:
    """Cached powers/products of a fixed list of polynomials."""

    def __init__(self, basis: Sequence[Polynomial]):
        self.basis = list(basis)
        self._pow: dict = {}

    def power(self, i: int, e: int) -> Polynomial:
        key = (i, e)
        p = self._pow.get(key)
        if p is None:
            p = self.basis[i] ** e
            self._pow[key] = p
        return p

    def product(self, E: Sequence[int]) -> Polynomial:
        ring = self.basis[0].ring
        out = ring.one()
        for i, e in enumerate(E):
            if e:
                out = out * self.power(i, e)
        return out

    def lead_coefficient(self, E: Sequence[int]):
        F = self.basis[0].field
        c = F.one
        for i, e in enumerate(E):
            if e:
                c = F.mul(c, F.pow(self.basis[i].terms[self.basis[i].lm], e))
        return c


@dataclass
class SubductionResult:
    remainder: Polynomial
    steps: list = field(default_factory=list)  # (Scalar coefficient, exponent tuple)
    basis: list = field(default_factory=list, repr=False)

    @property
    def reduced_to_zero(self) -> bool:
        return self.remainder.is_zero()

    def reexpand(self) -> Polynomial:
        """Sum of coefficient * B^E over recorded steps."""
        prods = _Products(self.basis)
        total = self.remainder.ring.zero()
        for c, E in self.steps:
            total = total + prods.product(E).scale(c)
        return total

    def expression(self, names: Sequence[str]) -> str:
        """The accumulated combination written with the given names."""
        acc: dict = {}
        F = self.remainder.field
        for c, E in self.steps:
            acc[E] = F.add(acc.get(E, F.zero), c.value)
        parts = []
        for E in sorted(acc, reverse=True):
            c = acc[E]
            if F.is_zero(c):
                continue
            fac = [nm if e == 1 else f"{nm}^{e}" for nm, e in zip(names, E) if e]
            mono = "*".join(fac) if fac else "1"
            parts.append(mono if c == F.one else f"({F.format_payload(c)})*{mono}")
        return "+".join(parts) if parts else "0"


def _clean_basis(B: Sequence[Polynomial]) -> list[Polynomial]:
    out = []
    for b in B:
        if b.is_zero() or b.is_constant():
            continue
        out.append(b)
    return out


class Subductor:
    """Reusable subduction against a fixed basis (keeps power caches)."""

    def __init__(self, B: Sequence[Polynomial]):
        self.basis = _clean_basis(B)
        self.solver = _LeadSolver([b.lm for b in self.basis]) if self.basis else None
        self.products = _Products(self.basis) if self.basis else None

    def __call__(self, f: Polynomial, record: bool = False) -> SubductionResult:
        if f.homogeneous_degree() is None and f:
            raise NonHomogeneousMix("subduction needs a homogeneous polynomial")
        res = SubductionResult(f, [], self.basis)
        if not self.basis:
            return res
        F = f.field
        r = f
        while r:
            E = self.solver.find(r.lm)
            if E is None:
                break
            coef = F.mul(r.terms[r.lm], F.inv(self.products.lead_coefficient(E)))
            r = r - self.products.product(E).scale(coef)
            if record:
                res.steps.append((Scalar(F, coef), E))
        res.remainder = r
        return res


def subduct(f: Polynomial, B: Sequence[Polynomial], record: bool = False) -> SubductionResult:
    """Subduct ``f`` against ``B`` until its lead monomial is not a product of lead monomials."""
    return Subductor(B)(f, record)


def algebra_contains(f: Polynomial, sagbi_basis: Sequence[Polynomial]) -> bool:
    """Membership in the algebra generated by a SAGBI basis (subduction to zero)."""
    return subduct(f, sagbi_basis).reduced_to_zero


# ---------------------------------------------------------------- lead-term relations


@dataclass(frozen=True)
class TeteATete:
    I: tuple[int, ...]
    J: tuple[int, ...]
    monomial: Monomial

    @property
    def nontrivial(self) -> bool:
        return all(not (a and b) for a, b in zip(self.I, self.J))

    @property
    def degree(self) -> int:
        return sum(self.monomial)


def _block_key(e, nz, weights):
    z = e[:nz]
    t = e[nz:]
    return (
        sum(z),
        *(-a for a in z),
        sum(w * a for w, a in zip(weights, t)),
        *(-a for a in t),
    )


def _toric_gb(lms: list[Monomial], cap: int):
    """Binomial Buchberger for (t_i - z^{lm_i}) under a z-eliminating block order.

    Returns (pure-t binomials as (lead_t, tail_t), complete flag).  Pairs whose
    weighted degree exceeds ``cap`` are skipped, in which case the result is
    complete only up to ``cap``.
    """
    nz = len(lms[0])
    s = len(lms)
    weights = [sum(m) for m in lms]
    key = lambda e: _block_key(e, nz, weights)

    def deg(e):
        return sum(e[:nz]) + sum(w * a for w, a in zip(weights, e[nz:]))

    def divides(a, b):
        return all(x <= y for x, y in zip(a, b))

    G: list = []

    def reduce_mono(m):
        changed = True
        while changed:
            changed = False
            for lead, tail in G:
                if divides(lead, m):
                    m = tuple(x - l + t for x, l, t in zip(m, lead, tail))
                    changed = True
                    break
        return m

    def add(p, q):
        p, q = reduce_mono(p), reduce_mono(q)
        if p == q:
            return None
        return (p, q) if key(p) > key(q) else (q, p)

    pairs: list = []
    complete = True

    def push(i):
        li = G[i][0]
        for j in range(i):
            lj = G[j][0]
            if all(not (a and b) for a, b in zip(li, lj)):
                continue  # coprime leads
            lcm = tuple(max(a, b) for a, b in zip(li, lj))
            pairs.append((deg(lcm), j, i, lcm))

    for k, m in enumerate(lms):
        z = tuple(m) + (0,) * s
        t = (0,) * nz + tuple(1 if i == k else 0 for i in range(s))
        b = add(z, t)
        if b is not None:
            G.append(b)
            push(len(G) - 1)
    while pairs:
        pairs.sort(key=lambda p: (p[0], p[1], p[2]))
        d, i, j, lcm = pairs.pop(0)
        if d > cap:
            complete = False
            continue
        (li, ti), (lj, tj) = G[i], G[j]
        a = tuple(x - l + t for x, l, t in zip(lcm, li, ti))
        b = tuple(x - l + t for x, l, t in zip(lcm, lj, tj))
        nb = add(a, b)
        if nb is not None:
            G.append(nb)
            push(len(G) - 1)
    toric = [(lead[nz:], tail[nz:]) for lead, tail in G if not any(lead[:nz])]
    return toric, complete


def tete_a_tetes(
    B: Sequence[Polynomial],
    degree_bound: int | None = None,
    max_bound: int = 256,
) -> list[TeteATete]:
    """A minimal generating set of the lead-term relations of ``B``.

    The elimination is degree-capped at ``degree_bound`` (default twice the
    largest degree), doubling while pairs remain until ``max_bound``.
    """
    basis = list(B)
    lms = [b.lm for b in basis]
    if not lms:
        return []
    cap = degree_bound or 2 * max(sum(m) for m in lms)
    while True:
        toric, complete = _toric_gb(lms, cap)
        if complete:
            break
        if cap >= max_bound:
            raise DegreeBoundExceeded("lead-term relations not complete", cap)
        cap = min(2 * cap, max_bound)
    # candidate fibres: the multidegrees of the Groebner basis elements
    fibres = {}
    for lead, _ in toric:
        b = tuple(sum(e * m[v] for e, m in zip(lead, lms)) for v in range(len(lms[0])))
        fibres[b] = True
    solver = _LeadSolver(lms)
    out: list[TeteATete] = []
    for b in sorted(fibres, key=grevlex_key):
        pts = list(solver.all(b))
        comps = _components(pts)
        if len(comps) < 2:
            continue
        reps = [min(c, key=lambda E: (sum(E), E)) for c in comps]
        reps.sort(reverse=True)
        for other in reps[1:]:
            out.append(TeteATete(reps[0], other, b))
    return out


def _components(points):
    """Connected components of the shared-support graph on a fibre."""
    parent = list(range(len(points)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(points)), 2):
        if any(a and b for a, b in zip(points[i], points[j])):
            parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(len(points)):
        groups.setdefault(find(i), []).append(points[i])
    return sorted(groups.values(), key=lambda g: max(g), reverse=True)


# ---------------------------------------------------------------- SAGBI test


@dataclass
class SagbiVerdict:
    passed: bool
    tetes: list
    witness: Polynomial | None = None
    failing: TeteATete | None = None
    remainders: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def witness_degree(self) -> int | None:
        return None if self.witness is None else self.witness.degree()

    @property
    def candidate(self) -> Polynomial | None:
        """The witness with its monomial content divided out."""
        if self.witness is None:
            return None
        return strip_content(self.witness)[0]

    @property
    def candidate_degree(self) -> int | None:
        c = self.candidate
        return None if c is None else c.degree()


def strip_content(f: Polynomial) -> tuple[Polynomial, Monomial]:
    """Split ``f = m * q`` with ``m`` the gcd of the monomials of ``f``."""
    if not f:
        return f, (0,) * f.ring.n
    content = tuple(min(col) for col in zip(*f.terms))
    if not any(content):
        return f, content
    return f.exact_divide(content), content


def _tete_difference(products: _Products, t: TeteATete) -> Polynomial:
    F = products.basis[0].field
    a = products.product(t.I)
    b = products.product(t.J)
    scale = F.mul(products.lead_coefficient(t.I), F.inv(products.lead_coefficient(t.J)))
    return a - b.scale(scale)


def sagbi_test(
    B: Sequence[Polynomial],
    degree_bound: int | None = None,
    stop_at_first: bool = False,
) -> SagbiVerdict:
    """Pass iff every nontrivial lead-term relation subducts to zero over ``B``."""
    basis = _clean_basis(B)
    tetes = tete_a_tetes(basis, degree_bound)
    sub = Subductor(basis)
    products = sub.products
    verdict = SagbiVerdict(True, tetes)
    for t in tetes:
        r = sub(_tete_difference(products, t)).remainder
        if r:
            verdict.remainders.append((t, r))
            if verdict.passed:
                verdict.passed = False
                verdict.witness = r
                verdict.failing = t
            if stop_at_first:
                break
    return verdict


# ---------------------------------------------------------------- divide by x


@dataclass
class CompletionResult:
    basis: list
    added: list
    transcript: list
    sweeps: int
    ring: PolynomialRing = field(repr=False, default=None)

    def transcript_text(self) -> list[str]:
        return [
            f"sweep {s}: relation {t.I}~{t.J} remainder degree {d} inserted {txt}"
            for s, t, d, txt in self.transcript
        ]


class _Recoordinate:
    """Linear change of variables making the linear form ``x`` the smallest variable."""

    def __init__(self, ring: PolynomialRing, x: Polynomial, name: str = "x"):
        if x.homogeneous_degree() != 1:
            raise ValueError("x must be a linear form")
        self.old = ring
        F = ring.field
        support = sorted(x.support_vars())
        if len(support) == 1 and support[0] == 0 and x.lc == 1:
            self.trivial = True
            self.new = ring
            self.x_index = 0
            return
        self.trivial = False
        # replace the first variable (by index) after the smallest one in x's
        # support when possible, matching x = x_2 + x_3 -> replaces x_2
        k = support[0]
        coeffs = {e.index(1): c for e, c in x.terms.items()}
        new_names = [name if name not in ring.names else "x_"] + [
            nm for i, nm in enumerate(ring.names) if i != k
        ]
        self.new = PolynomialRing(new_names, F)
        self.x_index = 0
        pos = {i: (1 + i - (1 if i > k else 0)) for i in range(ring.n) if i != k}
        X = self.new.var(0)
        inv = F.inv(coeffs[k])
        img_k = X
        for i, c in coeffs.items():
            if i != k:
                img_k = img_k + self.new.var(pos[i]).scale(c)
        img_k = img_k.scale(inv)
        self.forward_images = [img_k if i == k else self.new.var(pos[i]) for i in range(ring.n)]
        back = [None] * self.new.n
        back[0] = x
        for i, p in pos.items():
            back[p] = ring.var(i)
        self.backward_images = back

    def forward(self, f: Polynomial) -> Polynomial:
        return f if self.trivial else f.substitute(self.forward_images)

    def backward(self, f: Polynomial) -> Polynomial:
        return f if self.trivial else f.substitute(self.backward_images)


def _strip_x(f: Polynomial, xi: int) -> tuple[Polynomial, int]:
    k = min(e[xi] for e in f.terms)
    if k == 0:
        return f, 0
    e = [0] * f.ring.n
    e[xi] = k
    return f.exact_divide(tuple(e)), k


def sagbi_divide_by_x(
    B: Sequence[Polynomial],
    x: Polynomial | str,
    budget: int = 50,
    degree_bound: int | None = None,
) -> CompletionResult:
    """Complete ``B`` by subducting lead-term relations and dividing remainders by ``x``.

    ``x`` may be a variable name or any linear form in fixed variables; the
    loop runs in coordinates where ``x`` is the smallest variable.  The
    returned basis is in the original coordinates and contains ``B``.
    """
    B = list(B)
    ring = B[0].ring
    if isinstance(x, str):
        x = ring.var(x)
    rc = _Recoordinate(ring, x)
    xi = rc.x_index
    X = rc.new.var(xi)
    work = [rc.forward(b) for b in B]
    original = list(work)
    transcript: list = []
    added: list = []
    # make the non-x elements x-free
    for i, b in enumerate(work):
        if b != X:
            q, k = _strip_x(b, xi)
            if k:
                work[i] = q
    if X not in work:
        work.insert(0, X)
    sweeps = 0
    while True:
        if sweeps >= budget:
            raise IterationBudgetExceeded(
                f"divide-by-x did not finish in {budget} sweeps",
                partial=[rc.backward(b) for b in work],
            )
        sweeps += 1
        basis = _clean_basis(work)
        tetes = tete_a_tetes(basis, degree_bound)
        sub = Subductor(basis)
        new: list[Polynomial] = []
        for t in tetes:
            r = sub(_tete_difference(sub.products, t)).remainder
            if new and r:
                r = Subductor(basis + new)(r).remainder
            while r:
                q, k = _strip_x(r, xi)
                if not k:
                    break
                r = Subductor(basis + new)(q).remainder
            if r:
                r = r.scale(r.field.inv(r.terms[r.lm]))
                new.append(r)
                transcript.append((sweeps, t, r.degree(), format_polynomial(rc.backward(r))))
        if not new:
            break
        work += new
        added += new
    back = [rc.backward(b) for b in work]
    # keep the caller's elements verbatim, followed by what was inserted
    seen = {b for b in B}
    result = list(B) + [b for b in back if b not in seen and b not in [rc.backward(o) for o in original]]
    return CompletionResult(result, [rc.backward(a) for a in added], transcript, sweeps, ring)


# ---------------------------------------------------------------- comparisons


def lead_monoid_dimensions(B: Sequence[Polynomial], D: int) -> dict[int, int]:
    """Number of distinct products of lead monomials of ``B`` in each degree <= D.

    For a SAGBI basis this is the dimension of each graded piece of the
    algebra it generates.
    """
    lms = [b.lm for b in _clean_basis(B)]
    n = len(lms[0]) if lms else 0
    layers: list[set] = [{(0,) * n}] + [set() for _ in range(D)]
    for d in range(1, D + 1):
        for m in lms:
            k = sum(m)
            if k > d:
                continue
            for e in layers[d - k]:
                layers[d].add(tuple(a + b for a, b in zip(e, m)))
    return {d: len(layers[d]) for d in range(1, D + 1)}


def equivalent_generating_sets(A: Sequence[Polynomial], B: Sequence[Polynomial]) -> tuple[bool, str]:
    """Both lists are SAGBI bases of one algebra with matching degree profiles.

    Elements are compared up to scalars and up to elements of the algebra
    generated in lower degrees: each side subducts to zero over the other
    and the sorted degree lists agree.
    """
    A, B = _clean_basis(A), _clean_basis(B)
    if sorted(a.degree() for a in A) != sorted(b.degree() for b in B):
        return False, "degree lists differ"
    sa, sb = Subductor(A), Subductor(B)
    for f in A:
        if sb(f).remainder:
            return False, f"{f} is not in the algebra of the second set"
    for f in B:
        if sa(f).remainder:
            return False, f"{f} is not in the algebra of the first set"
    return True, ""

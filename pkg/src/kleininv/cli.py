"""Batch driver: run named verification suites against one representation.

Usage::

    kleininv --rep Vreg --suite all --degree-bound 6
    kleininv --rep Omega-:2 --suite sagbi --format text

The report lists one entry per claim with a verdict.  Everything except the
``timing`` field is deterministic for a given configuration and version.
The process exits 0 iff every claim is acceptable (see ``ACCEPTED``).
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import random
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import __version__, construct, gb, oracle, sagbi
from .errors import BudgetExceeded, DegreeBoundExceeded, IterationBudgetExceeded, KleinError, ParseError
from .poly import Polynomial, format_polynomial, parse_polynomial
from .rep import Representation, parse_selector

__all__ = [
    "SuiteConfig",
    "Claim",
    "Report",
    "SUITES",
    "run",
    "main",
    "parse_polynomial",
    "format_polynomial",
]

SUITES = ("leadterms", "identities", "hsop", "hilbert", "transfer", "lemmas", "noether", "sagbi")
VERDICTS = ("pass", "fail", "fail-as-printed", "budget-exceeded", "error")
# a printed relation that is wrong only as printed counts once its corrected form is attached
ACCEPTED = ("pass", "fail-as-printed")

_WITNESS_CHARS = 4000


@dataclass
class SuiteConfig:
    rep: str
    suite: str = "all"
    degree_bound: int = 6
    lam: str | None = None
    budget: int = 50
    out: str | None = None
    format: str = "json"

    def validate(self) -> Representation:
        """Check the invariants and return the parsed representation."""
        if self.suite != "all" and self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.degree_bound < 1:
            raise ValueError("degree bound must be at least 1")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.format not in ("json", "text"):
            raise ValueError(f"unknown format {self.format!r}")
        return parse_selector(self.selector)

    @property
    def selector(self) -> str:
        """The selector with ``lam`` substituted for the lambda of Vm."""
        if self.lam is None:
            return self.rep
        head, _, rest = self.rep.partition(":")
        if head != "Vm":
            raise ParseError(f"--lambda only applies to Vm selectors, not {self.rep!r}", 0)
        m = rest.partition(":")[0]
        return f"Vm:{m}:lambda={self.lam}"

    def echo(self) -> dict:
        return {
            "rep": self.rep,
            "selector": self.selector,
            "suite": self.suite,
            "degree_bound": self.degree_bound,
            "lambda": self.lam,
            "budget": self.budget,
            "format": self.format,
        }


@dataclass
class Claim:
    id: str
    anchor: str
    verdict: str
    witness: str | None = None
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict in ACCEPTED

    def as_dict(self) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class Report:
    config: SuiteConfig
    representation: str
    claims: list[Claim]
    started: str = ""
    total_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.claims)

    def summary(self) -> dict:
        counts = {v: 0 for v in VERDICTS}
        for c in self.claims:
            counts[c.verdict] += 1
        return {"claims": len(self.claims), "verdicts": counts, "ok": self.ok}

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "tool": "kleininv",
            "version": __version__,
            "config": self.config.echo(),
            "representation": self.representation,
            "claims": [c.as_dict() for c in self.claims],
            "summary": self.summary(),
        }
        if timing:
            out["timing"] = {
                "started": self.started,
                "total_seconds": round(self.total_seconds, 3),
                "claims": {c.id: round(c.seconds, 3) for c in self.claims},
            }
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2) + "\n"

    def to_text(self) -> str:
        cfg = self.config
        lines = [f"kleininv {__version__}  rep={self.representation}  suite={cfg.suite}  D={cfg.degree_bound}"]
        width = max((len(c.id) for c in self.claims), default=0)
        for c in self.claims:
            line = f"{c.verdict.upper():16} {c.id:{width}}  {c.anchor}"
            if c.witness is not None and not c.ok:
                line += f"\n{'':17}witness: {c.witness}"
            lines.append(line)
        s = self.summary()
        tally = ", ".join(f"{n} {v}" for v, n in s["verdicts"].items() if n)
        lines.append(f"{s['claims']} claims: {tally or 'none'}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        return self.to_json() if self.config.format == "json" else self.to_text()


# ---------------------------------------------------------------- helpers


def _show(p) -> str | None:
    if p is None:
        return None
    text = format_polynomial(p) if isinstance(p, Polynomial) else str(p)
    if len(text) > _WITNESS_CHARS:
        extra = f" ({len(p.terms)} terms)" if isinstance(p, Polynomial) else ""
        text = text[:_WITNESS_CHARS] + f"...{extra}"
    return text


@dataclass
class _Outcome:
    verdict: str
    witness: str | None = None
    details: dict = field(default_factory=dict)


def _check(ok: bool, witness=None, **details) -> _Outcome:
    return _Outcome("pass" if ok else "fail", None if ok else _show(witness), details)


# a pending claim: id, anchor and a thunk producing the outcome
_Pending = tuple[str, str, Callable[[], _Outcome]]


# ---------------------------------------------------------------- suites


def _suite_leadterms(rep, cfg) -> list[_Pending]:
    out = []
    for fact in construct.lead_term_facts(rep):
        out.append(
            (
                f"leadterms/{fact.id}",
                f"lead term of {fact.element} is {fact.expected}",
                lambda f=fact: _check(f.holds, f.actual, actual=f.actual),
            )
        )
    return out


def _suite_identities(rep, cfg) -> list[_Pending]:
    out = []
    for key in construct.identity_ids(rep):

        def thunk(key=key):
            res = construct.verify_identity(key, rep)
            details = {}
            if res.recomputed is not None:
                details["recomputed"] = res.recomputed
                details["recomputed_exact"] = "[remainder" not in res.recomputed
                if not details["recomputed_exact"]:
                    return _Outcome("fail", _show(res.difference), details)
            witness = None if res.holds else _show(res.difference)
            return _Outcome(res.verdict, witness, details)

        statement = construct.identity_statement(key, rep)
        out.append((f"identities/{key}", statement, thunk))
    return out


def _suite_hsop(rep, cfg) -> list[_Pending]:
    spec = construct.hsop(rep)
    names = ", ".join(spec.names)
    top = rep.ring.monomial_str(spec.top_class)

    def zero_dim():
        v = gb.is_hsop(spec)
        return _check(v.passed, v.reason or None, powers=dict(sorted(v.powers.items())))

    def block():
        v = gb.is_block_hsop(spec)
        found = None if v.top_class is None else rep.ring.monomial_str(v.top_class)
        if not v.is_block:
            return _Outcome("fail", v.reason, {"top_class": found})
        return _check(bool(v), found, top_class=found)

    return [
        ("hsop/zero-dimensional", f"{{{names}}} is a homogeneous system of parameters", zero_dim),
        ("hsop/block", f"{{{names}}} is a block hsop with top class {top}", block),
    ]


def _hilbert_bound(rep) -> int:
    b = oracle.symonds_bound(rep)
    return b if b is not None else construct.expected_noether_number(rep)


def _suite_hilbert(rep, cfg) -> list[_Pending]:
    gens = construct.hilbert_generators(rep)
    names = ", ".join(g.name for g in gens)

    def equals():
        bound = _hilbert_bound(rep)
        v = gb.hilbert_ideal_equals(rep, gens, bound)
        details = {"bound": bound, "method": v.method}
        details.update(v.details)
        if v.reason:
            details["reason"] = v.reason
        return _check(v.passed, v.witness, **details)

    def low_degree():
        top = max(g.degree for g in gens)
        return _check(top <= 4, f"max degree {top}", max_degree=top)

    return [
        ("hilbert/generators", f"the Hilbert ideal is generated by {{{names}}}", equals),
        ("hilbert/degree-at-most-4", "the Hilbert ideal is generated in degree at most 4", low_degree),
    ]


def _radical_cases(rep) -> list[tuple[str, int, int | None]]:
    """(invariant text, kmax, expected smallest power or None) for the spot checks."""
    fam = construct.family(rep)
    if fam == "V" and rep.m <= 4:
        return [("x1", 4, 0)]
    if fam == "Omega+" and rep.m >= 3:
        return [("x2+x3", 3, 3)]
    if fam == "Omega+" and rep.m == 2:
        return [("x1", 4, None), ("x1^2*x2+x1*x2^2", 4, 0)]
    return []


def _suite_transfer(rep, cfg) -> list[_Pending]:
    out: list[_Pending] = []
    ring = rep.ring

    out.append(
        (
            "transfer/Tr(1)=0",
            "the transfer of a constant vanishes",
            lambda: _check(rep.transfer(ring.one()).is_zero()),
        )
    )
    spec = construct.hsop(rep)
    top = spec.top_class
    top_text = ring.monomial_str(top)
    limit = min(cfg.degree_bound, sum(top))
    for d in range(1, limit + 1):

        def gen_check(d=d):
            ok, w = oracle.transfer_generation_check(rep, d, top)
            return _check(ok, w, degree=d)

        out.append(
            (
                f"transfer/generated-by-divisors@{d}",
                f"in degree {d} the transfer image lies in the ideal generated by Tr of the divisors of {top_text}",
                gen_check,
            )
        )
    for text, kmax, expect in _radical_cases(rep):

        def spot(text=text, kmax=kmax, expect=expect):
            f = rep.poly(text)
            k = oracle.radical_membership_spotcheck(rep, f, kmax)
            bound = kmax * f.degree()
            details = {"smallest_power": k, "verified_up_to_degree": bound}
            if expect is None:
                return _check(k is None, f"({text})^{k} is a transfer", **details)
            if expect == 0:
                return _check(k is not None, f"no power up to {kmax}", **details)
            return _check(k == expect, f"smallest power {k}", **details)

        if expect is None:
            anchor = f"no power ({text})^k with k <= {kmax} lies in the transfer image"
        elif expect == 0:
            anchor = f"({text})^k lies in the transfer image for some k <= {kmax}"
        else:
            anchor = f"({text})^{expect} is the least power of {text} in the transfer image"
        out.append((f"transfer/radical:{text}", anchor, spot))
    return out


def _suite_lemmas(rep, cfg) -> list[_Pending]:
    top = min(cfg.degree_bound, 6)
    out = []
    for lemma, s in oracle.applicable_lemmas(rep):

        def scan(lemma=lemma, s=s):
            checked = 0
            for d in range(1, top + 1):
                for f in oracle.invariant_basis(rep, d).basis:
                    v = oracle.lemma_predicates(f, rep, lemma, s)
                    checked += 1
                    if not v:
                        return _Outcome("fail", v.detail, {"degree": d, "element": _show(f)})
            return _Outcome("pass", None, {"elements_checked": checked, "max_degree": top})

        out.append(
            (
                f"lemmas/{lemma}@s{s}",
                f"every invariant basis element up to degree {top} satisfies {lemma} for s{s}",
                scan,
            )
        )
    return out


def _suite_noether(rep, cfg) -> list[_Pending]:
    expected = construct.expected_noether_number(rep)
    spec = construct.hsop(rep)
    top = spec.top_class
    ring = rep.ring
    top_text = ring.monomial_str(top)

    def number():
        bound = oracle.symonds_bound(rep)
        D = max(cfg.degree_bound, bound or expected)
        prof = oracle.generator_profile(rep, D)
        details = {
            "degree_bound": D,
            "new_generators": {str(d): c for d, c in sorted(prof.new_counts.items())},
            "upper_bound": prof.upper_bound,
            "certified": prof.certified,
            "noether_number": prof.noether_number,
        }
        ok = prof.certified and prof.noether_number == expected
        return _check(ok, f"Noether number {prof.noether_number} (certified={prof.certified})", **details)

    fam, m = construct.family(rep), rep.m
    if expected < sum(top):
        want_indecomposable = False  # forced by the Noether number
    elif m >= {"V": 3, "V0": 4, "Omega-": 2, "Omega+": 2}.get(fam, m + 1):
        want_indecomposable = True
    else:
        want_indecomposable = None  # nothing is claimed for the small cases

    def indecomposable():
        t = construct.tr(rep, top)
        if t.value.is_zero():
            return _Outcome("fail", "Tr of the top class is zero")
        dec = oracle.is_decomposable(t.value, rep)
        return _check(dec != want_indecomposable, t.name, degree=sum(top), decomposable=dec)

    def sanity():
        divisors = [g for g in construct.top_class_divisors(top) if 0 < sum(g) < sum(top)]
        rng = random.Random(0)
        rng.shuffle(divisors)
        x1 = ring.var(0)
        tried = []
        for g in divisors:
            t = rep.transfer(ring.monomial(g))
            if t.is_zero():
                continue
            tried.append(ring.monomial_str(g))
            if not oracle.is_decomposable(t * x1, rep):
                msg = f"{ring.names[0]}*Tr({tried[-1]}) is indecomposable"
                return _Outcome("fail", msg, {"divisors": tried})
            if len(tried) == 3:
                break
        return _Outcome("pass", None, {"divisors": tried})

    out = [("noether/number", f"the Noether number is {expected}", number)]
    if want_indecomposable is not None:
        cid = "noether/top-transfer-" + ("indecomposable" if want_indecomposable else "decomposable")
        out.append((cid, f"Tr({top_text}) is {'in' if want_indecomposable else ''}decomposable", indecomposable))
    out.append(
        (
            "noether/decomposable-sanity",
            f"{ring.names[0]} times Tr of a proper divisor of the top class is decomposable",
            sanity,
        )
    )
    return out


def _values(items) -> list[Polynomial]:
    return [getattr(e, "value", e) for e in items]


def _sagbi_pass(rep, name: str, D: int) -> list[_Pending]:
    S = construct.candidate_generating_set(rep, name)
    names = ", ".join(e.name for e in S)

    def test():
        v = sagbi.sagbi_test(_values(S))
        return _check(v.passed, v.candidate, tetes=len(v.tetes))

    def dims():
        want = {d: oracle.invariant_basis(rep, d).dimension for d in range(1, D + 1)}
        got = sagbi.lead_monoid_dimensions(_values(S), D)
        bad = [d for d in want if want[d] != got[d]]
        return _check(not bad, f"degree {bad[0]}: {got[bad[0]]} vs {want[bad[0]]}" if bad else None)

    def soundness():
        basis = _values(S)
        checked = 0
        for d in range(1, min(D, 4) + 1):
            for f in oracle.invariant_basis(rep, d).basis:
                res = sagbi.subduct(f, basis, record=True)
                if res.remainder or res.reexpand() != f:
                    return _Outcome("fail", _show(f), {"degree": d})
                checked += 1
        return _Outcome("pass", None, {"elements_checked": checked})

    return [
        (f"sagbi/{name}", f"{{{names}}} is a SAGBI basis", test),
        (f"sagbi/{name}/dimensions", f"{{{names}}} spans every invariant space up to degree {D}", dims),
        (f"sagbi/{name}/re-expansion", f"subduction over {{{names}}} re-expands to the input", soundness),
    ]


def _sagbi_drop(rep, name: str, drop: str, degree: int) -> _Pending:
    def thunk():
        S = [e for e in construct.candidate_generating_set(rep, name) if e.name != drop]
        v = sagbi.sagbi_test(_values(S))
        if v.passed:
            return _Outcome("fail", "the reduced set passes")
        return _check(v.candidate_degree == degree, v.candidate, candidate_degree=v.candidate_degree)

    return (
        f"sagbi/{name}-without-{drop}",
        f"without {drop} the SAGBI test fails in degree {degree}",
        thunk,
    )


def _sagbi_complete(rep, source: str, target: str, budget: int) -> _Pending:
    T = construct.candidate_generating_set(rep, target)
    names = ", ".join(e.name for e in T)

    def thunk():
        B = _values(construct.candidate_generating_set(rep, source))
        try:
            res = sagbi.sagbi_divide_by_x(B, "x1", budget=budget)
        except IterationBudgetExceeded as exc:
            return _Outcome("budget-exceeded", str(exc))
        ok, reason = sagbi.equivalent_generating_sets(res.basis, _values(T))
        details = {"sweeps": res.sweeps, "size": len(res.basis), "transcript": res.transcript_text()}
        return _check(ok, reason, **details)

    return (
        f"sagbi/divide-by-x:{source}->{target}",
        f"completing the initial set by dividing by x1 yields {{{names}}}",
        thunk,
    )


def _suite_sagbi(rep, cfg) -> list[_Pending]:
    fam, m = construct.family(rep), rep.m
    D = min(cfg.degree_bound, 6)
    out: list[_Pending] = []
    if fam == "Vreg":
        out += _sagbi_pass(rep, "C", D)
    elif fam == "V" and m in (1, 2):
        out += _sagbi_pass(rep, f"V{m}", D)
    elif fam == "V" and m == 3:
        out += _sagbi_pass(rep, "B_3", D)
        out.append(_sagbi_drop(rep, "B_3", "Tr(y1*y2^3*y3^3)", 7))
    elif fam == "V0" and m == 1:
        out += _sagbi_pass(rep, "V1", D)
    elif fam == "V0" and m == 2:
        out += _sagbi_pass(rep, "V20", D)
    elif fam == "V0" and m == 3:
        out.append(_sagbi_complete(rep, "B'", "V30", cfg.budget))
        out += _sagbi_pass(rep, "V30", D)
    elif fam == "Omega-" and m == 1:
        out += _sagbi_pass(rep, "Omega-1", D)
    elif fam == "Omega-" and m in (2, 3):
        out.append(_sagbi_complete(rep, "Omega-_input", f"Omega-{m}", cfg.budget))
        out += _sagbi_pass(rep, f"Omega-{m}", D)
    elif fam == "Omega+" and m == 1:
        out += _sagbi_pass(rep, "Omega1", D)
    elif fam == "Omega+" and m == 2:
        out += _sagbi_pass(rep, "B_2", D)
        out.append(_sagbi_drop(rep, "B_2", "Tr(y1^3*y2^3)", 6))
    relation = {("Omega-", 2): "omega-2_hypersurface", ("V0", 2): "v20_hypersurface"}.get((fam, m))
    if relation:
        out += [
            (f"sagbi/relation:{relation}", anchor, thunk)
            for cid, anchor, thunk in _suite_identities(rep, cfg)
            if cid == f"identities/{relation}"
        ]
    return out


_SUITE_FUNCS = {
    "leadterms": _suite_leadterms,
    "identities": _suite_identities,
    "hsop": _suite_hsop,
    "hilbert": _suite_hilbert,
    "transfer": _suite_transfer,
    "lemmas": _suite_lemmas,
    "noether": _suite_noether,
    "sagbi": _suite_sagbi,
}


# ---------------------------------------------------------------- driver


def _execute(pending: _Pending) -> Claim:
    cid, anchor, thunk = pending
    t0 = time.perf_counter()
    try:
        o = thunk()
    except (BudgetExceeded, IterationBudgetExceeded, DegreeBoundExceeded) as exc:
        o = _Outcome("budget-exceeded", str(exc))
    except KleinError as exc:
        o = _Outcome("error", f"{type(exc).__name__}: {exc}")
    return Claim(cid, anchor, o.verdict, o.witness, o.details, time.perf_counter() - t0)


def run(config: SuiteConfig) -> Report:
    """Execute the configured suites and assemble the report (claims in a fixed order)."""
    rep = config.validate()
    started = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    t0 = time.perf_counter()
    suites = SUITES if config.suite == "all" else (config.suite,)
    pending: list[_Pending] = []
    for name in suites:
        try:
            pending += _SUITE_FUNCS[name](rep, config)
        except KleinError as exc:
            msg = f"{type(exc).__name__}: {exc}"
            pending.append((f"{name}/setup", f"the {name} suite applies", lambda msg=msg: _Outcome("error", msg)))
    workers = oracle.worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            claims = list(pool.map(_execute, pending))
    else:
        claims = [_execute(p) for p in pending]
    return Report(config, rep.label, claims, started, time.perf_counter() - t0)


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".kleininv-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kleininv", description="Verify invariant-theory claims for Klein four group representations.")
    p.add_argument("--rep", required=True, help="Vm:<m>:lambda=<scalar>, Omega-:<m>, Omega+:<m> or Vreg")
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    p.add_argument("--degree-bound", type=int, default=6, metavar="D")
    p.add_argument("--lambda", dest="lam", default=None, help="scalar text, e.g. 0, t, l, t+1@GF16")
    p.add_argument("--budget", type=int, default=50, help="iteration budget for completion loops")
    p.add_argument("--out", default=None, help="output file (written atomically); default stdout")
    p.add_argument("--format", default="json", choices=("json", "text"))
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = SuiteConfig(args.rep, args.suite, args.degree_bound, args.lam, args.budget, args.out, args.format)
    try:
        report = run(cfg)
    except (ParseError, ValueError) as exc:
        print(f"kleininv: {exc}", file=sys.stderr)
        return 2
    text = report.render()
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

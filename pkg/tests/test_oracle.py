import pytest

from kleininv import construct as c
from kleininv import oracle, sagbi
from kleininv.coeff import F2L, GF4
from kleininv.errors import BudgetExceeded, NotInvariant, UnknownLemma
from kleininv.rep import even, omega_minus, omega_plus, parse_selector, regular


def test_degree_one_is_the_fixed_span():
    r = even(3, GF4("t"))
    B = oracle.invariant_basis(r, 1)
    assert B.dimension == 3
    assert sorted(B.basis, key=lambda p: p.lm) == sorted([r.x(j) for j in (1, 2, 3)], key=lambda p: p.lm)


def test_basis_vectors_are_invariant():
    for sel in ["Vm:2:lambda=t", "Omega+:2", "Vreg", "Vm:2:lambda=l"]:
        r = parse_selector(sel)
        for d in range(1, 5):
            B = oracle.invariant_basis(r, d)
            assert all(r.is_invariant(f) for f in B.basis)
            assert len(set(B.lead_monomials)) == B.dimension


def test_omega_minus_one_is_polynomial():
    r = omega_minus(1)
    gens = [r.x(1), c.n(r, 1), r.poly("y2^2+x1*y2")]
    assert all(r.is_invariant(g) for g in gens)
    dims = sagbi.lead_monoid_dimensions(gens, 8)
    assert dims == {d: oracle.invariant_basis(r, d).dimension for d in range(1, 9)}


def test_degree_two_for_v2_at_omega():
    r = even(2, GF4("t"))
    B = oracle.invariant_basis(r, 2)
    assert B.contains(c.capital_N(1, r).value)
    for i in (1, 2):
        for j in (1, 2):
            assert B.contains(r.x(i) * r.x(j))
    assert not B.contains(c.n(r, 1))


def test_truncated_basis_over_counts():
    r = even(3, GF4("t"))
    assert oracle.invariant_basis(r, 4, xcap=2).dimension >= oracle.invariant_basis(r, 4).dimension


@pytest.mark.parametrize(
    "sel, want",
    [("Vm:3:lambda=t", 7), ("Omega-:2", 3), ("Omega-:3", 4), ("Omega-:4", 5), ("Vreg", 4), ("Omega+:2", 6)],
)
def test_noether_numbers(sel, want):
    r = parse_selector(sel)
    prof = oracle.generator_profile(r, oracle.symonds_bound(r))
    assert prof.noether_number == want
    assert prof.certified
    assert prof.as_dict()["noether_number"] == want


def test_profile_budget():
    oracle.clear_cache()
    r = even(4, GF4("t"))
    with pytest.raises(BudgetExceeded) as exc:
        oracle.generator_profile(r, 8, budget=1e-9)
    assert exc.value.partial is not None and not exc.value.partial.complete


def test_decomposability():
    r = even(2, GF4("t"))
    N1 = c.capital_N(1, r).value
    assert oracle.is_decomposable(r.x(1) * N1, r)
    with pytest.raises(NotInvariant):
        oracle.is_decomposable(r.y(1), r)
    o3 = omega_plus(3)
    assert not oracle.is_decomposable(c.tr(o3, "y1^3*y2^3*y3^3").value, o3)
    v40 = parse_selector("Vm:4:lambda=0")
    assert not oracle.is_decomposable(c.tr(v40, "y1*y2*y3^3*y4^3").value, v40)


def test_transfer_image():
    r = even(3, GF4("t"))
    t3 = c.auxiliary("t_3", r).value
    assert oracle.transfer_image_basis(r, 3).contains(t3)
    assert oracle.transfer_image_basis(r, 0).dimension == 0
    o3 = omega_plus(3)
    assert oracle.transfer_image_basis(o3, 3).contains(o3.poly("x2+x3") ** 3)


def test_radical_spot_checks():
    o3 = omega_plus(3)
    assert oracle.radical_membership_spotcheck(o3, o3.poly("x2+x3"), 3) == 3
    r = even(3, GF4("t"))
    k = oracle.radical_membership_spotcheck(r, r.x(1), 4)
    assert k is not None and k <= 4
    o2 = omega_plus(2)
    assert oracle.radical_membership_spotcheck(o2, o2.x(1), 4) is None
    assert oracle.radical_membership_spotcheck(o2, o2.poly("x1^2*x2+x1*x2^2"), 4) is not None


def test_transfer_generation():
    r = omega_minus(2)
    top = c.hsop(r).top_class
    for d in range(1, 4):
        assert oracle.transfer_generation_check(r, d, top)[0]


def test_lemmas():
    v2 = even(2, F2L.gen())
    N1 = c.capital_N(1, v2).value
    assert oracle.lemma_predicates(N1 * N1, v2, "even_y_exponents")
    with pytest.raises(UnknownLemma):
        oracle.lemma_predicates(N1, v2, "nonsense")
    with pytest.raises(NotInvariant):
        oracle.lemma_predicates(v2.y(1), v2, "shift")
    v4 = even(4, GF4("t"))
    for d in range(1, 7):
        for f in oracle.invariant_basis(v4, d).basis:
            assert oracle.lemma_predicates(f, v4, "square_index_bound", 2)
    o2 = omega_plus(2)
    for d in range(1, 7):
        for f in oracle.invariant_basis(o2, d).basis:
            assert oracle.lemma_predicates(f, o2, "no_square_products", 2)


def test_applicable_lemmas():
    kinds = {nm for nm, _ in oracle.applicable_lemmas(even(3, GF4("t")))}
    assert {"even_y_exponents", "shift", "square_index_bound"} <= kinds
    assert "no_square_products" in {nm for nm, _ in oracle.applicable_lemmas(omega_plus(2))}
    assert oracle.applicable_lemmas(regular()) == []


def test_worker_count(monkeypatch):
    monkeypatch.setenv("KLEIN_THREADS", "3")
    assert oracle.worker_count() == 3
    monkeypatch.setenv("KLEIN_THREADS", "junk")
    assert oracle.worker_count() == 1

import pytest

from kleininv import construct as c
from kleininv import sagbi
from kleininv.coeff import F2L, GF2, GF4
from kleininv.errors import DegreeBoundExceeded, IterationBudgetExceeded, NonHomogeneousMix
from kleininv.poly import PolynomialRing
from kleininv.rep import even, omega_minus, omega_plus, parse_selector, regular


def values(items):
    return [e.value for e in items]


def test_member_subducts_to_zero():
    r = even(2, F2L.gen())
    B = values(c.candidate_generating_set(r, "V2"))
    for b in B:
        assert sagbi.subduct(b, B).reduced_to_zero


def test_norm_y1_relation_for_m4():
    r = even(4, F2L.gen())
    names = ["x1", "x2", "x3", "x4", "N_1", "N_2", "t_3", "t_4"]
    B = [r.var(nm) if nm.startswith("x") else c.auxiliary(nm, r).value for nm in names]
    res = sagbi.subduct(r.norm(r.y(1)), B, record=True)
    assert res.reduced_to_zero
    assert res.reexpand() == r.norm(r.y(1))
    text = res.expression(names)
    assert "N_1^2" in text and "x1*t_4" in text


def test_w_squared_subducts():
    r = even(2, F2L.gen())
    B = values(c.candidate_generating_set(r, "V2"))
    w = c.auxiliary("w", r).value
    assert sagbi.subduct(w * w, B).reduced_to_zero


def test_subduction_needs_homogeneous_input():
    r = even(2, GF4("t"))
    with pytest.raises(NonHomogeneousMix):
        sagbi.subduct(r.x(1) + r.x(2) ** 2, [r.x(1)])


def test_tete_a_tete_counts():
    assert len(sagbi.tete_a_tetes(values(c.candidate_generating_set(regular(), "C")))) == 2
    v2 = even(2, F2L.gen())
    assert len(sagbi.tete_a_tetes(values(c.candidate_generating_set(v2, "V2")))) == 1
    R = PolynomialRing(["x1", "y1"], GF2)
    assert sagbi.tete_a_tetes([R.parse("x1"), R.parse("y1^2+x1*y1")]) == []


def test_tete_a_tete_bound():
    R = PolynomialRing(["x1", "y1"], GF2)
    B = [R.parse("y1^2"), R.parse("y1^3")]
    assert len(sagbi.tete_a_tetes(B)) == 1
    with pytest.raises(DegreeBoundExceeded):
        sagbi.tete_a_tetes(B, degree_bound=2, max_bound=4)


def test_sagbi_passes():
    for r, name in [(regular(), "C"), (omega_plus(2), "B_2"), (even(3, F2L.gen()), "B_3")]:
        assert sagbi.sagbi_test(values(c.candidate_generating_set(r, name))).passed, name


@pytest.mark.parametrize(
    "r, name, drop, degree",
    [
        (even(3, F2L.gen()), "B_3", "Tr(y1*y2^3*y3^3)", 7),
        (omega_plus(2), "B_2", "Tr(y1^3*y2^3)", 6),
    ],
)
def test_sagbi_witness_degree(r, name, drop, degree):
    S = [e for e in c.candidate_generating_set(r, name) if e.name != drop]
    v = sagbi.sagbi_test(values(S))
    assert not v.passed
    assert v.candidate_degree == degree
    # the witness is an invariant outside the algebra generated by S
    assert r.is_invariant(v.witness)


def test_divide_by_x_omega_minus_2():
    r = omega_minus(2)
    B = values(c.candidate_generating_set(r, "Omega-_input"))
    res = sagbi.sagbi_divide_by_x(B, "x1")
    ok, why = sagbi.equivalent_generating_sets(res.basis, values(c.candidate_generating_set(r, "Omega-2")))
    assert ok, why
    assert c.verify_identity("omega-2_hypersurface", r).holds


@pytest.mark.parametrize("sel, source, target, size", [("Omega-:3", "Omega-_input", "Omega-3", 12), ("Vm:3:lambda=0", "B'", "V30", 10)])
def test_divide_by_x_completions(sel, source, target, size):
    r = parse_selector(sel)
    res = sagbi.sagbi_divide_by_x(values(c.candidate_generating_set(r, source)), "x1")
    assert len(res.basis) == size
    assert res.transcript_text()
    ok, why = sagbi.equivalent_generating_sets(res.basis, values(c.candidate_generating_set(r, target)))
    assert ok, why
    assert all(r.is_invariant(b) for b in res.basis)


def test_divide_by_x_budget():
    r = parse_selector("Vm:3:lambda=0")
    with pytest.raises(IterationBudgetExceeded) as exc:
        sagbi.sagbi_divide_by_x(values(c.candidate_generating_set(r, "B'")), "x1", budget=1)
    assert exc.value.partial


def test_strip_content():
    R = PolynomialRing(["x1", "y1"], GF2)
    q, m = sagbi.strip_content(R.parse("x1^2*y1+x1^3"))
    assert q == R.parse("y1+x1") and m == (2, 0)


def test_lead_monoid_dimensions():
    R = PolynomialRing(["x1", "y1"], GF2)
    assert sagbi.lead_monoid_dimensions([R.parse("x1"), R.parse("y1^2")], 4) == {1: 1, 2: 2, 3: 2, 4: 3}

import json

import pytest

from kleininv import construct as c
from kleininv.coeff import F2L, GF4
from kleininv.errors import IndexOutOfRange, UnknownIdentity, UnknownName
from kleininv.rep import even, omega_minus, omega_plus, parse_selector, regular


@pytest.fixture(scope="module")
def v2():
    return even(2, F2L.gen())


def test_building_blocks(v2):
    R = v2.ring
    assert c.n(v2, 1) == R.parse("y1^2+x1*y1")
    assert c.u(v2, 1, 2) == R.parse("x1*y2+x2*y1")
    for i in (1, 2):
        assert v2.delta(1, c.n(v2, i)).is_zero()


def test_capital_N(v2):
    want = v2.ring.parse("y1^2+x1*y1") + v2.ring.const(v2.c) * v2.ring.parse("x1*y2+x2*y1")
    assert c.capital_N(1, v2).value == want
    om = omega_minus(3)
    assert c.capital_N(1, om).value == c.n(om, 1)
    assert c.capital_N(2, om).value == c.n(om, 2) + c.u(om, 1, 2) + c.u(om, 1, 3)
    with pytest.raises(IndexOutOfRange):
        c.capital_N(9, om)


def test_auxiliaries():
    r = even(3, F2L.gen())
    assert c.auxiliary("t_3", r).value == c.u(r, 1, 2) * r.x(2) + c.u(r, 1, 3) * r.x(1)
    reg = regular()
    assert c.auxiliary("h", reg).value == reg.poly("y1^2*y2+y2^2*y1+x*z^2+x*y1*y2")
    o2 = omega_plus(2)
    want = (o2.poly("x3^2+x2*x3")) * c.u(o2, 1, 2) + o2.poly("x2^2+x1*x3") * c.n(o2, 2)
    assert c.auxiliary("u_1233", o2).value == want
    with pytest.raises(UnknownName):
        c.auxiliary("nonsense", r)


def test_every_auxiliary_is_invariant():
    for sel in ["Vm:3:lambda=l", "Vm:3:lambda=0", "Omega-:3", "Omega+:3", "Vreg"]:
        r = parse_selector(sel)
        for nm in c.auxiliary_names(r):
            if nm == "alpha":  # a monomial, used through its transfer
                continue
            assert r.is_invariant(c.auxiliary(nm, r).value), (sel, nm)


def test_hsops():
    r = even(4, GF4("t"))
    H = c.hsop(r)
    assert H.names == ["x1", "x2", "x3", "x4", "N_1", "N_2", "N(y3)", "N(y4)"]
    assert r.ring.monomial_str(H.top_class) == "y1*y2*y3^3*y4^3"
    om = omega_minus(3)
    assert c.hsop(om).names == ["x1", "x2", "x3", "N_1", "N_2", "N_3", "N_4"]
    assert om.ring.monomial_str(c.hsop(om).top_class) == "y1*y2*y3*y4"
    op = omega_plus(2)
    assert c.hsop(op).names == ["x1", "x2", "x3", "N(y1)", "N(y2)"]
    assert op.ring.monomial_str(c.hsop(op).top_class) == "y1^3*y2^3"
    for sel in ["Vm:5:lambda=0", "Omega-:4", "Vreg"]:
        s = parse_selector(sel)
        H = c.hsop(s)
        assert len(H.elements) == s.ring.n
        assert all(s.is_invariant(p) and p.is_homogeneous() for p in H.polys)


def test_identities_generic_and_at_omega():
    for lam in (F2L.gen(), GF4("t")):
        for m in (2, 3):
            r = even(m, lam)
            for key in c.identity_ids(r):
                res = c.verify_identity(key, r)
                if key == "norm_y1_printed":
                    continue
                assert res.holds, (m, lam, key, res.difference)


def test_other_identities():
    for sel, key in [
        ("Omega-:3", "omega-3_relation"),
        ("Omega-:2", "omega-2_hypersurface"),
        ("Omega+:2", "omega2_relation"),
        ("Omega+:3", "tr_alpha"),
        ("Omega+:4", "tr_alpha"),
        ("Vm:2:lambda=0", "v20_hypersurface"),
        ("Vreg", "vreg_u2"),
        ("Vreg", "vreg_h2"),
    ]:
        assert c.verify_identity(key, parse_selector(sel)).holds, (sel, key)


def test_printed_norm_relation_fails_as_printed(v2):
    res = c.verify_identity("norm_y1_printed", v2)
    assert not res.holds
    assert res.verdict == "fail-as-printed"
    assert res.recomputed.startswith("N(y1) = ")
    assert "remainder" not in res.recomputed


def test_unknown_identity(v2):
    with pytest.raises(UnknownIdentity):
        c.verify_identity("no_such_identity", v2)
    with pytest.raises(UnknownIdentity):
        c.verify_identity("tr_alpha", v2)


def test_candidate_sets():
    assert len(c.candidate_generating_set(regular(), "C")) == 6
    B2 = c.candidate_generating_set(omega_plus(2), "B_2")
    assert len(B2) == 9 and "Tr(y1^3*y2^3)" in [e.name for e in B2]
    Bm = c.candidate_generating_set(omega_plus(2), "B_m")
    transfers = [e for e in Bm if e.name.startswith("Tr(")]
    assert all(e.value for e in transfers)
    assert len(transfers) == len({e.value for e in transfers}) <= 4**2 - 1
    for sel in ["Vm:3:lambda=l", "Omega-:3", "Vm:3:lambda=0"]:
        r = parse_selector(sel)
        for nm in c.candidate_set_names(r):
            assert all(r.is_invariant(e.value) for e in c.candidate_generating_set(r, nm))


def test_lead_term_facts_generic():
    facts = c.lead_term_facts(even(3, F2L.gen()))
    assert len(facts) >= 9
    assert all(f.holds for f in facts)


def test_hilbert_generator_sets():
    names = lambda sel: [g.name for g in c.hilbert_generators(parse_selector(sel))]
    assert names("Vreg") == ["x", "u", "N(y1)", "N(y2)", "N(z)"]
    assert names("Vm:2:lambda=t") == ["x1", "x2", "N_1", "N(y2)"]
    assert names("Vm:3:lambda=0") == ["x1", "x2", "x3", "n_1", "n_2+u_13+u_12", "N(y3)"]


def test_expected_noether_numbers():
    table = {"Vm:4:lambda=t": 8, "Vm:5:lambda=0": 9, "Omega-:4": 5, "Omega+:3": 9, "Omega+:2": 6, "Vreg": 4}
    for sel, want in table.items():
        assert c.expected_noether_number(parse_selector(sel)) == want


def test_registry_dump_is_json():
    rows = json.loads(c.registry_dump(even(2, GF4("t"))))
    assert {"family", "name", "degree", "leadTerm", "text"} <= set(rows[0])

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kleininv.coeff import F2L, GF2, GF4
from kleininv.construct import capital_N, lead_term_facts, n, norm_y, u
from kleininv.errors import MixedAmbient, NotDivisible, NotMonicInVariable, ParseError, ZeroPolynomial
from kleininv.poly import (
    EQ,
    GT,
    LT,
    PolynomialRing,
    compare,
    format_polynomial,
    iter_monomials,
    monic_divide,
    parse_polynomial,
)
from kleininv.rep import even, parse_selector


@pytest.fixture
def v2():
    return even(2, F2L.gen())


@pytest.fixture
def v3():
    return even(3, F2L.gen())


def test_x_below_y(v2):
    R = v2.ring
    assert compare(R.var("x1"), R.var("y1"), R.order) == LT
    assert compare(R.var("x1") ** 2, R.var("y1"), R.order) == GT
    assert compare(R.var("y2"), R.var("y2"), R.order) == EQ


def test_mixed_ambient(v2, v3):
    with pytest.raises(MixedAmbient):
        compare(v2.ring.var("x1"), v3.ring.var("x1"), v2.ring.order)


def test_lead_term_of_w(v2):
    x1 = v2.x(1)
    n2 = n(v2, 2)
    w = v2.delta(2, n2) * u(v2, 1, 2) + x1 * x1 * n2
    c = v2.c
    assert w.lt() == v2.ring.parse("y1*x2^3") * v2.ring.const(c)


def test_nine_lead_term_facts(v3):
    facts = lead_term_facts(v3)
    assert all(f.holds for f in facts), [f for f in facts if not f.holds]
    names = {f.element for f in facts}
    assert {"u_123", "w", "n_23", "u_133", "n_222", "u_2333", "Tr(y1*y2*y3^3)"} <= names
    assert any(nm.startswith("N_") for nm in names)
    assert any(nm.startswith("N(y") for nm in names)


def test_norm_and_N_lead_terms(v3):
    assert capital_N(1, v3).value.lt() == v3.ring.parse("y1^2")
    assert norm_y(v3, 2).value.lt() == v3.ring.parse("y2^4")


def test_frobenius(v2):
    R = v2.ring
    a, b = R.parse("y1+x1"), R.parse("x2*y2+(l)*x1")
    assert (a + b) ** 2 == a * a + b * b
    assert (R.var("y1") + R.var("x1")) ** 2 == R.parse("y1^2+x1^2")


def test_norm_y2_from_n2(v2):
    n2 = n(v2, 2)
    assert n2 * n2 + n2 * v2.delta(2, n2) == norm_y(v2, 2).value
    assert n2 * 1 == n2


def test_leading_of_zero(v2):
    with pytest.raises(ZeroPolynomial):
        v2.ring.zero().leading()


def test_exact_divide(v3):
    R = v3.ring
    assert R.parse("x1*y2+x1*x2").exact_divide(R.var("x1").lm) == R.parse("y2+x2")
    with pytest.raises(NotDivisible) as exc:
        R.parse("y1+x2").exact_divide(R.var("x1").lm)
    assert exc.value.witness is not None
    from kleininv.construct import auxiliary

    t3, u123 = auxiliary("t_3", v3).value, auxiliary("u_123", v3).value
    num = t3 * v3.x(3) * v3.ring.const(v3.c) + v3.x(2) * u123
    q = num.exact_divide(R.var("x1").lm)
    assert q * R.var("x1") == num


def test_monic_divide(v2):
    from kleininv import oracle

    N1 = capital_N(1, v2).value
    k = v2.ring.index("y1")
    assert monic_divide(N1, N1, k) == (v2.ring.one(), v2.ring.zero())
    small = v2.ring.parse("x1*y1+y2")
    assert monic_divide(small, N1, k) == (v2.ring.zero(), small)
    r = even(2, GF4("t"))
    N1 = capital_N(1, r).value
    for f in oracle.invariant_basis(r, 4).basis:
        q1, r1 = monic_divide(f, N1, k, strategy="block")
        q2, r2 = monic_divide(f, N1, k, strategy="term")
        assert (q1, r1) == (q2, r2)
        assert q1 * N1 + r1 == f
        assert r.is_invariant(q1) and r.is_invariant(r1)


def test_monic_divide_needs_scalar_lead(v2):
    with pytest.raises(NotMonicInVariable):
        monic_divide(v2.ring.parse("y1^3"), v2.ring.parse("x1*y1^2"), v2.ring.index("y1"))


def test_format_descending(v2):
    N1 = capital_N(1, v2).value
    text = format_polynomial(N1)
    assert text.startswith("y1^2")
    assert parse_polynomial(text, v2.ring) == N1


def test_parse_n1():
    r = parse_selector("Vm:2:lambda=t")
    assert parse_polynomial("y1^2+x1*y1", r.ring) == n(r, 1)


def test_parse_error_column():
    R = PolynomialRing(["x1", "y1"], GF2)
    with pytest.raises(ParseError) as exc:
        parse_polynomial("y1^", R)
    assert exc.value.position == 3
    with pytest.raises(ParseError):
        parse_polynomial("y1+z9", R)


def test_iter_monomials_count():
    assert len(list(iter_monomials(4, 3))) == 20


monos = st.tuples(*[st.integers(0, 3)] * 4)


@settings(max_examples=200, deadline=None)
@given(monos, monos, monos)
def test_order_axioms(a, b, c):
    R = PolynomialRing(["x1", "x2", "y1", "y2"], GF2)
    o = R.order
    ab, ba = compare(a, b, o), compare(b, a, o)
    assert ab == -ba
    assert (ab == EQ) == (a == b)
    if ab == LT and compare(b, c, o) == LT:
        assert compare(a, c, o) == LT
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    assert compare(ac, bc, o) == ab
    assert a == (0,) * 4 or compare((0,) * 4, a, o) == LT


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(monos, st.integers(1, 3)), max_size=6))
def test_round_trip(terms):
    R = PolynomialRing(["x1", "x2", "y1", "y2"], GF4)
    p = R.zero()
    for e, c in terms:
        p = p + R.monomial(e, GF4(c))
    assert parse_polynomial(format_polynomial(p), R) == p

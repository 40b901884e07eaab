import random

import pytest

from kleininv.coeff import F2L, GF4
from kleininv.construct import n, u
from kleininv.errors import MixedAmbient, ParseError
from kleininv.rep import GroupElement, even, omega_minus, omega_plus, parse_selector, regular

SELECTORS = ["Vm:1:lambda=t", "Vm:3:lambda=l", "Vm:4:lambda=0", "Omega-:3", "Omega+:3", "Vreg"]


def _random_poly(r, rng, terms=4, degree=4):
    ring = r.ring
    f = ring.zero()
    for _ in range(terms):
        e = [0] * ring.n
        for _ in range(degree):
            e[rng.randrange(ring.n)] += 1
        f = f + ring.monomial(tuple(e))
    return f


def test_generators_on_variables():
    r = even(3, F2L.gen())
    assert r.act(GroupElement.S1, r.y(2)) == r.y(2) + r.x(2)
    assert r.act(GroupElement.S2, r.x(2)) == r.x(2)
    f = r.ring.parse("y1*y3+x2")
    assert r.act(GroupElement.E, f) == f


@pytest.mark.parametrize("sel", SELECTORS)
def test_group_law_and_delta_squared(sel):
    r = parse_selector(sel)
    rng = random.Random(sel)
    for _ in range(3):
        f = _random_poly(r, rng)
        for g in GroupElement:
            assert r.act(g, r.act(g, f)) == f
            for h in GroupElement:
                assert r.act(g, r.act(h, f)) == r.act(g * h, f)
        for i in (1, 2):
            assert r.delta(i, r.delta(i, f)).is_zero()
        assert r.is_invariant(r.transfer(f))
        assert r.is_invariant(r.norm(f))


def test_delta2_of_n_and_u():
    r = even(4, F2L.gen())
    c = r.ring.const(r.c)
    for i in range(1, 5):
        want = c * r.x(i) ** 2 + r.x(i - 1) ** 2 + r.x(i) * r.x(i - 1) if i > 1 else c * r.x(1) ** 2
        assert r.delta(2, n(r, i)) == want
    for i, j in [(1, 2), (2, 4), (3, 4)]:
        assert r.delta(2, u(r, i, j)) == r.x(i) * r.x(j - 1) + r.x(i - 1) * r.x(j)


def test_transfer_of_one():
    for sel in SELECTORS:
        r = parse_selector(sel)
        assert r.transfer(r.ring.one()).is_zero()


def test_transfer_y1y2yj():
    r = even(4, F2L.gen())
    x, y = r.x, r.y
    c = r.ring.const(r.c)
    for j in range(2, 5):
        want = (
            y(1) * (x(2) * x(j - 1) + x(1) * x(j))
            + y(2) * x(1) * x(j - 1)
            + y(j) * x(1) ** 2
            + x(1) * x(2) * (c * x(j) + x(j - 1))
            + x(1) ** 2 * (x(j) + x(j - 1))
        )
        assert r.transfer(y(1) * y(2) * y(j)) == want


def test_norm_y1():
    r = even(3, F2L.gen())
    x1, y1 = r.x(1), r.y(1)
    c = r.ring.const(r.c)
    want = y1**4 + x1**2 * y1**2 * (c + 1) + x1**3 * y1 * c
    assert r.norm(y1) == want
    assert r.norm(x1) == x1


def test_norm_y2_for_v2():
    r = even(2, F2L.gen())
    n2 = n(r, 2)
    assert r.norm(r.y(2)) == n2 * n2 + n2 * r.delta(2, n2)


def test_invariance_examples():
    r = even(2, GF4("t"))
    N1 = n(r, 1) + r.ring.const(r.c) * u(r, 1, 2)
    assert r.is_invariant(N1)
    assert not r.is_invariant(r.y(1))
    assert all(r.is_invariant(r.x(j)) for j in (1, 2))


def test_family_shapes():
    assert omega_minus(3).ring.names == ("x1", "x2", "x3", "y1", "y2", "y3", "y4")
    assert omega_plus(2).ring.names == ("x1", "x2", "x3", "y1", "y2")
    reg = regular()
    assert reg.transfer(reg.var("z")) == reg.var("x")
    # Delta_i(z) = y_i needs the other generator to move y_i, so that Tr(z) = x
    for s, other in ((1, 2), (2, 1)):
        assert reg.delta(s, reg.var("z")) == reg.var(f"y{s}")
        assert reg.delta(s, reg.var(f"y{other}")) == reg.var("x")
        assert reg.delta(s, reg.var(f"y{s}")).is_zero()


def test_mixed_ambient():
    a, b = even(2, GF4("t")), even(3, GF4("t"))
    with pytest.raises(MixedAmbient):
        a.act(GroupElement.S1, b.y(1))


@pytest.mark.parametrize("bad", ["Vm:3", "Vm:x:lambda=0", "Omega:2", "", "Vm:2:lambda=q"])
def test_bad_selectors(bad):
    with pytest.raises(ParseError):
        parse_selector(bad)


def test_specialize_generic():
    r = even(3, F2L.gen())
    s = r.specialize(GF4("t"))
    f = r.norm(r.y(2))
    assert r.transport(f, s) == s.norm(s.y(2))

"""v-adic numbers: embeddings, precision semantics, Hensel lifting."""

import pytest

from carlitz.errors import DomainError, PrecisionError
from carlitz.poly import Poly
from carlitz.ratfunc import RatFunc
from carlitz.vadic import (
    VAdicNumber,
    VPlaceEmbedding,
    embed_at_v,
    embed_k_v,
    hensel_lift,
    roots_mod_v,
)

from .conftest import rand_ratfunc


@pytest.fixture
def v_theta(f3):
    return Poly.gen(f3)


@pytest.fixture
def v_theta1(f3):
    return Poly(f3, (1, 1))


def test_embed_theta_squared(f3, v_theta):
    x = embed_k_v(RatFunc.from_poly(Poly.gen(f3) ** 2), v_theta, 5)
    assert x.val == 2 and x.unit.is_one()


def test_embed_unit_example(f3, v_theta):
    # 1/(1+theta) at v = theta, N = 3: extended-Euclid oracle value
    x = embed_k_v(RatFunc(Poly.one(f3), Poly(f3, (1, 1))), v_theta, 3)
    assert x.val == 0
    assert x.unit == Poly(f3, (1, 2, 1))


def test_embed_2theta_at_theta_plus_1(f3, v_theta1):
    x = embed_k_v(RatFunc.from_poly(Poly(f3, (0, 2))), v_theta1, 4)
    assert x.val == 0
    assert (x.unit - Poly(f3, (0, 2))) % (v_theta1**4) == Poly.zero(f3)


def test_valuation_additivity(f3, v_theta):
    a = VAdicNumber(v_theta, 1, Poly.one(f3), 4)
    b = VAdicNumber(v_theta, 2, Poly.one(f3), 4)
    c = a * b
    assert c.val == 3 and c.unit.is_one()


def test_mul_example(f3, v_theta):
    # (1+theta)(1+2 theta) = 1 + 2 theta^2 mod theta^3
    a = embed_k_v(RatFunc.from_poly(Poly(f3, (1, 1))), v_theta, 3)
    b = embed_k_v(RatFunc.from_poly(Poly(f3, (1, 2))), v_theta, 3)
    c = a * b
    assert c.val == 0
    assert c.unit == Poly(f3, (1, 0, 2))


def test_mul_identity(f3, v_theta, rng):
    one = VAdicNumber.one(v_theta, 6)
    x = embed_k_v(rand_ratfunc(rng, f3, 4, nonzero=True), v_theta, 6)
    assert (x * one).unit == x.unit and (x * one).val == x.val


def test_ultrametric(f3, v_theta, rng):
    for _ in range(60):
        a = rand_ratfunc(rng, f3, 4, nonzero=True)
        b = rand_ratfunc(rng, f3, 4, nonzero=True)
        xa = embed_k_v(a, v_theta, 8)
        xb = embed_k_v(b, v_theta, 8)
        prod = xa * xb
        assert prod.val == xa.val + xb.val
        s = xa + xb
        if not s.is_zero_to_precision():
            assert s.val >= min(xa.val, xb.val)


def test_embed_ring_hom(f3, v_theta1, rng):
    for _ in range(60):
        a = rand_ratfunc(rng, f3, 4, nonzero=True)
        b = rand_ratfunc(rng, f3, 4, nonzero=True)
        d = embed_k_v(a, v_theta1, 8) * embed_k_v(b, v_theta1, 8) - embed_k_v(
            a * b, v_theta1, 8
        )
        assert d.is_zero_to_precision()


def test_division(f3, v_theta, rng):
    for _ in range(40):
        a = rand_ratfunc(rng, f3, 4, nonzero=True)
        b = rand_ratfunc(rng, f3, 4, nonzero=True)
        x = embed_k_v(a, v_theta, 7)
        y = embed_k_v(b, v_theta, 7)
        d = (x / y) * y - x
        assert d.is_zero_to_precision()


def test_divide_by_zeroish(f3, v_theta):
    z = VAdicNumber.zero_to(v_theta, 5)
    x = VAdicNumber.one(v_theta, 5)
    with pytest.raises(ZeroDivisionError):
        x / z


def test_powq_precision(f3, v_theta):
    x = embed_k_v(RatFunc.from_poly(Poly(f3, (1, 1))), v_theta, 3)
    y = x.powq(1)  # (1+theta)^3 = 1 + theta^3
    assert y.prec == 9
    assert y.unit == Poly(f3, (1, 0, 0, 1))
    capped = x.powq(1, prec_cap=4)
    assert capped.prec == 4


def test_precision_never_overstated(f3, v_theta1, rng):
    for _ in range(30):
        a = rand_ratfunc(rng, f3, 4, nonzero=True)
        b = rand_ratfunc(rng, f3, 4, nonzero=True)
        lo = embed_k_v(a, v_theta1, 6) * embed_k_v(b, v_theta1, 6) + embed_k_v(
            a, v_theta1, 6
        )
        hi = embed_k_v(a, v_theta1, 20) * embed_k_v(b, v_theta1, 20) + embed_k_v(
            a, v_theta1, 20
        )
        d = hi - lo
        if lo.is_zero_to_precision():
            continue
        assert d.is_zero_to_precision()
        assert d.abs_prec >= lo.abs_prec


# -- Hensel lifting ------------------------------------------------------------


def sqrt_2theta_minpoly(f3):
    return [
        RatFunc.from_poly(-Poly(f3, (0, 2))),
        RatFunc.zero(f3),
        RatFunc.one(f3),
    ]


def test_hensel_example(f3, v_theta1):
    # root of x^2 - 2 theta above r0 = 1 at v = theta+1:
    # r = theta + 2 mod v^2, since (theta+2)^2 - 2 theta = (theta+1)^2
    m = sqrt_2theta_minpoly(f3)
    r = hensel_lift(m, v_theta1, Poly.one(f3), 2)
    assert r.val == 0
    assert (r.unit - Poly(f3, (2, 1))) % (v_theta1**2) == Poly.zero(f3)


def test_hensel_linear(f3, v_theta):
    # m = x - c: the root is c at every precision
    c = Poly(f3, (1, 2, 1))
    m = [RatFunc.from_poly(-c), RatFunc.one(f3)]
    for n in (2, 7):
        r = hensel_lift(m, v_theta, c % v_theta, n)
        d = r - embed_k_v(RatFunc.from_poly(c), v_theta, n)
        assert d.is_zero_to_precision()


def test_hensel_no_root(f3, v_theta1):
    # x^2 - theta: theta = -1 = 2 mod (theta+1), and 2 is not a square in F_3
    m = [
        RatFunc.from_poly(-Poly.gen(f3)),
        RatFunc.zero(f3),
        RatFunc.one(f3),
    ]
    assert roots_mod_v(m, v_theta1) == []
    with pytest.raises(DomainError):
        hensel_lift(m, v_theta1, Poly.one(f3), 3)


def test_hensel_multiple_root(f3, v_theta):
    # x^2 - theta at v = theta: 0 is a double root mod v
    m = [
        RatFunc.from_poly(-Poly.gen(f3)),
        RatFunc.zero(f3),
        RatFunc.one(f3),
    ]
    with pytest.raises(DomainError):
        hensel_lift(m, v_theta, Poly.zero(f3), 3)


def test_hensel_residual_valuation(f3, v_theta1):
    m = sqrt_2theta_minpoly(f3)
    for n in (3, 9, 17):
        r = hensel_lift(m, v_theta1, Poly.one(f3), n)
        # ord(m(r)) >= n exactly
        val = (r * r - embed_k_v(RatFunc.from_poly(Poly(f3, (0, 2))), v_theta1, n))
        assert val.is_zero_to_precision()
        assert val.abs_prec >= n


def test_ext_embedding(f3, k_sqrt_2theta, v_theta1):
    emb = VPlaceEmbedding(k_sqrt_2theta, v_theta1)
    lam = k_sqrt_2theta.gen()
    x = emb.embed(lam, 8)
    # the image squares to 2 theta
    d = x * x - embed_k_v(RatFunc.from_poly(Poly(f3, (0, 2))), v_theta1, 8)
    assert d.is_zero_to_precision()
    # canonical root choice: residue 1 (sorted first), so x = theta+2 mod v^2
    assert (x.unit - Poly(f3, (2, 1))) % (v_theta1**2) == Poly.zero(f3)


def test_embed_at_v_dispatch(f3, k_sqrt_2theta, v_theta1):
    theta = Poly.gen(f3)
    a = embed_at_v(theta, v_theta1, 5)
    assert a.val == 0
    b = embed_at_v(k_sqrt_2theta.from_k(RatFunc.from_poly(theta)), v_theta1, 5)
    assert (a - b).is_zero_to_precision()


def test_residue(f3, v_theta1):
    x = embed_k_v(RatFunc.from_poly(Poly(f3, (2, 1))), v_theta1, 4)  # theta+2
    assert x.residue() == Poly.one(f3)

"""Field towers: F_q construction, rational functions, finite extensions."""

import pytest

from carlitz.errors import CarlitzError
from carlitz.ext import ExtField
from carlitz.factor import factor, is_irreducible
from carlitz.fq import Fq
from carlitz.poly import Poly
from carlitz.ratfunc import RatFunc

from .conftest import rand_poly, rand_ratfunc


class TestFq:
    def test_prime_field(self):
        f5 = Fq(5)
        assert f5.mul(3, 4) == 2
        assert f5.inv(2) == 3
        assert f5.add(4, 4) == 3

    def test_extension_field(self):
        f9 = Fq(3, 2)
        # z^2 = -modulus tail; whatever the modulus, the axioms must hold
        for a in f9.elements():
            if a:
                assert f9.mul(a, f9.inv(a)) == 1
        for a in list(f9.elements())[:5]:
            for b in list(f9.elements())[:5]:
                assert f9.mul(a, b) == f9.mul(b, a)

    def test_frobenius_fixes_fq(self):
        f9 = Fq(3, 2)
        for a in f9.elements():
            assert f9.pow(a, 9) == a

    def test_bad_p(self):
        with pytest.raises(CarlitzError):
            Fq(6)

    def test_q_cap(self):
        with pytest.raises(CarlitzError):
            Fq(2, 21)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(CarlitzError):
            Fq(3, 2, modulus=(0, 0, 1))  # z^2, clearly reducible


class TestRatFunc:
    def test_reduction_invariants(self, f3, rng):
        for _ in range(60):
            x = rand_ratfunc(rng, f3, 6)
            assert x.den.is_monic()
            assert x.num.gcd(x.den).is_one() or x.num.is_zero()

    def test_field_axioms(self, f3, rng):
        for _ in range(40):
            a = rand_ratfunc(rng, f3, 4)
            b = rand_ratfunc(rng, f3, 4)
            c = rand_ratfunc(rng, f3, 4)
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            if not a.is_zero():
                assert a * a.inverse() == RatFunc.one(f3)

    def test_twist_multiplicative(self, f3, rng):
        for _ in range(40):
            a = rand_ratfunc(rng, f3, 4)
            b = rand_ratfunc(rng, f3, 4)
            assert (a * b).twist(1) == a.twist(1) * b.twist(1)
            assert (a + b).twist(1) == a.twist(1) + b.twist(1)

    def test_ord_at(self, f3):
        theta = Poly.gen(f3)
        x = RatFunc(Poly.one(f3), theta + Poly.one(f3))
        assert x.ord_at(theta + Poly.one(f3)) == -1
        assert x.ord_at(theta) == 0

    def test_json(self, f3, rng):
        x = rand_ratfunc(rng, f3, 5)
        assert RatFunc.from_json(f3, x.to_json()) == x


class TestFactor:
    def test_irreducibles(self, f3):
        theta = Poly.gen(f3)
        assert is_irreducible(theta)
        assert is_irreducible(theta**2 + 1)
        assert not is_irreducible(theta**2 - 1)
        assert not is_irreducible(theta**3 - theta)

    def test_factor_roundtrip(self, f3, rng):
        for _ in range(25):
            f = rand_poly(rng, f3, 8, nonzero=True)
            unit, fac = factor(f)
            prod = Poly.const(f3, unit)
            for w, e in fac.items():
                assert is_irreducible(w)
                assert w.is_monic()
                prod = prod * w**e
            assert prod == f


class TestExt:
    def test_sqrt_2theta(self, f3, k_sqrt_2theta):
        K = k_sqrt_2theta
        x = K.gen()
        two_theta = RatFunc.from_poly(Poly(f3, (0, 2)))
        assert (x * x).in_k() == two_theta
        # frobenius: x^3 = 2 theta x
        fr = x.twist(1)
        assert fr == x * two_theta
        assert fr.coords[1] == two_theta

    def test_add_zero(self, k_sqrt_2theta):
        x = k_sqrt_2theta.gen()
        assert x + k_sqrt_2theta.zero() == x

    def test_inverse(self, f3, k_sqrt_2theta, rng):
        K = k_sqrt_2theta
        for _ in range(25):
            coords = [rand_ratfunc(rng, f3, 3) for _ in range(2)]
            u = K.element(coords)
            if u.is_zero():
                continue
            assert (u * u.inverse()).is_one()

    def test_twist_is_multiplicative(self, f3, k_sqrt_2theta, rng):
        K = k_sqrt_2theta
        for _ in range(15):
            a = K.element([rand_ratfunc(rng, f3, 2) for _ in range(2)])
            b = K.element([rand_ratfunc(rng, f3, 2) for _ in range(2)])
            assert (a * b).twist(1) == a.twist(1) * b.twist(1)
            # q-th power agrees with twisting
            assert a.twist(1) == a**3

    def test_reducible_minpoly_rejected(self, f3):
        # x^2 - theta^2 = (x - theta)(x + theta)
        m = [
            RatFunc.from_poly(-(Poly.gen(f3) ** 2)),
            RatFunc.zero(f3),
            RatFunc.one(f3),
        ]
        with pytest.raises(CarlitzError):
            ExtField(f3, m)

    def test_quartic_with_quadratic_factor_rejected(self, f3):
        # (x^2 - 2 theta)(x^2 - 2 theta) has no k-roots but is reducible
        theta = Poly.gen(f3)
        g = [RatFunc.from_poly(theta.scale(1)), RatFunc.zero(f3), RatFunc.one(f3)]
        # (x^2 + theta)^2 = x^4 + 2 theta x^2 + theta^2
        m = [
            RatFunc.from_poly(theta**2),
            RatFunc.zero(f3),
            RatFunc.from_poly(theta.scale(2)),
            RatFunc.zero(f3),
            RatFunc.one(f3),
        ]
        with pytest.raises(CarlitzError):
            ExtField(f3, m)

    def test_irreducible_quartic_accepted(self, f3):
        # x^4 - theta is Eisenstein at theta, hence irreducible
        m = [
            RatFunc.from_poly(-Poly.gen(f3)),
            RatFunc.zero(f3),
            RatFunc.zero(f3),
            RatFunc.zero(f3),
            RatFunc.one(f3),
        ]
        K = ExtField(f3, m)
        x = K.gen()
        assert (x**4).in_k() == RatFunc.from_poly(Poly.gen(f3))

    def test_mixing_fields_fails(self, f3, k_sqrt_2theta):
        m = [
            RatFunc.from_poly(-Poly.gen(f3)),
            RatFunc.zero(f3),
            RatFunc.one(f3),
        ]
        K2 = ExtField(f3, m)
        with pytest.raises(CarlitzError):
            k_sqrt_2theta.gen() + K2.gen()

    def test_non_integral_minpoly(self, f3):
        # x^2 - 2 theta / (theta+1): integral model via y = c x
        theta = Poly.gen(f3)
        m = [
            RatFunc(Poly(f3, (0, 1)), theta + 1),
            RatFunc.zero(f3),
            RatFunc.one(f3),
        ]
        K = ExtField(f3, m)
        assert K.c_scale == theta + 1
        for c in K.minpoly_integral:
            assert isinstance(c, Poly)

    def test_json(self, f3, k_sqrt_2theta, rng):
        from carlitz.ext import ExtElem

        u = k_sqrt_2theta.element([rand_ratfunc(rng, f3, 3) for _ in range(2)])
        back = ExtElem.from_json(f3, u.to_json())
        assert back.coords == u.coords

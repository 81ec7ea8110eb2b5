"""Polylogarithm evaluators against naive exact-summation oracles."""

import pytest

from carlitz.errors import DomainError
from carlitz.fractions import l_poly
from carlitz.laurent import embed_k_inf
from carlitz.polylog import (
    CompositionIndex,
    cmpl_eval_inf,
    cmpl_eval_v,
    cmspl_eval_inf,
    cmspl_eval_v,
    deg_l,
    l_sequence,
    star_identity_residue_inf,
    star_identity_residue_v,
)
from carlitz.poly import Poly
from carlitz.ratfunc import RatFunc
from carlitz.vadic import embed_k_v


def naive_sum_exact(fq, s, u, imax, star):
    """Direct exact summation over all index tuples with i_1 <= imax.

    Independent of the evaluators: plain RatFunc arithmetic, no tail logic.
    """
    r = len(s)
    total = RatFunc.zero(fq)

    def rec(level, prev, acc):
        nonlocal total
        if level == r:
            total = total + acc
            return
        hi = imax if level == 0 else (prev if star else prev - 1)
        for i in range(hi + 1):
            term = u[level].twist(i) / RatFunc.from_poly(l_poly(fq, i) ** s[level])
            rec(level + 1, i, acc * term)

    rec(0, 0, RatFunc.one(fq))
    return total


class TestLSequence:
    def test_recurrence(self, f3):
        ls = l_sequence(f3, 6)
        assert ls[0].is_one()
        theta = Poly.gen(f3)
        for i in range(1, 7):
            assert ls[i] == (theta - theta ** (3**i)) * ls[i - 1]
            assert ls[i].degree == deg_l(3, i)

    @pytest.mark.parametrize("vcoeffs", [(0, 1), (1, 1), (1, 0, 1)])
    def test_vadic_valuation_bound(self, f3, vcoeffs):
        # ord_v(L_i) <= i for every monic prime v; exact value floor(i/deg v)
        v = Poly(f3, vcoeffs)
        for i in range(13):
            ordv = l_poly(f3, i).ord_at(v) if i else 0
            assert ordv == i // v.degree
            assert ordv <= i


class TestVAdic:
    def test_zero_arg(self, f3):
        v = Poly.gen(f3)
        val = cmpl_eval_v(CompositionIndex.of(1), [RatFunc.zero(f3)], v, 6)
        assert val.is_exact_zero()

    def test_domain_violation(self, f3):
        v = Poly.gen(f3)
        one = RatFunc.one(f3)
        with pytest.raises(DomainError):
            cmpl_eval_v(CompositionIndex.of(1), [one], v, 6)

    def test_depth1_carlitz_log_fixture(self, f3):
        # golden: Li_1(theta) at v = theta to 6 digits, frozen from the
        # exact naive oracle (value theta + theta^2 + theta^4 + ...)
        v = Poly.gen(f3)
        theta = RatFunc.gen(f3)
        got = cmpl_eval_v(CompositionIndex.of(1), [theta], v, 6)
        oracle = naive_sum_exact(f3, (1,), [theta], 6, star=False)
        expect = embed_k_v(oracle, v, 8)
        assert (got - expect).is_zero_to_precision()
        assert got.val == 1
        assert list((got.unit % v**5).coeffs) == [1, 1, 0, 1]

    @pytest.mark.parametrize(
        "s,ucoeffs",
        [
            ((1,), [(0, 1)]),
            ((2,), [(0, 2)]),
            ((1, 1), [(0, 1), (0, 1)]),
            ((2, 1), [(0, 1), (1, 1)]),
            ((1, 1, 1), [(0, 1), (1, 1), (2, 1)]),
        ],
    )
    def test_matches_naive_oracle(self, f3, s, ucoeffs):
        v = Poly.gen(f3)
        u = [RatFunc.from_poly(Poly(f3, c)) for c in ucoeffs]
        for star, evalf in ((False, cmpl_eval_v), (True, cmspl_eval_v)):
            got = evalf(CompositionIndex(tuple(s)), u, v, 8)
            oracle = naive_sum_exact(f3, tuple(s), u, 5, star)
            expect = embed_k_v(oracle, v, 14)
            d = got - expect
            assert d.is_zero_to_precision()
            assert d.abs_prec >= 8

    def test_star_equals_nonstar_depth1(self, f3):
        v = Poly(f3, (1, 1))
        u = [RatFunc.from_poly(Poly(f3, (1, 1)))]
        a = cmpl_eval_v(CompositionIndex.of(2), u, v, 10)
        b = cmspl_eval_v(CompositionIndex.of(2), u, v, 10)
        assert (a - b).is_zero_to_precision()

    def test_doubling_truncation_is_stable(self, f3):
        v = Poly.gen(f3)
        u = [RatFunc.from_poly(Poly(f3, (0, 1))), RatFunc.from_poly(Poly(f3, (0, 2)))]
        idx = CompositionIndex.of(1, 2)
        lo = cmpl_eval_v(idx, u, v, 6)
        hi = cmpl_eval_v(idx, u, v, 12)
        d = hi - lo
        assert d.is_zero_to_precision() and d.abs_prec >= 6

    def test_ext_argument(self, f3, k_sqrt_2theta):
        # lambda = sqrt(2 theta) at v = theta+1 has |lambda|_v = 1; use
        # v * lambda as a first argument inside the open disc
        v = Poly(f3, (1, 1))
        lam = k_sqrt_2theta.gen()
        arg = lam * RatFunc.from_poly(v)
        val = cmpl_eval_v(CompositionIndex.of(1), [arg], v, 6)
        assert not val.is_zero_to_precision()
        assert val.val >= 1


class TestInf:
    def test_zero_arg(self, f3):
        got = cmpl_eval_inf(CompositionIndex.of(1), [RatFunc.zero(f3)], -10)
        assert got.is_exact_zero()

    def test_domain_violation(self, f3):
        # s = 1, q = 3: need deg u < 3/2, so deg 2 is out
        with pytest.raises(DomainError):
            cmpl_eval_inf(
                CompositionIndex.of(1), [RatFunc.from_poly(Poly.gen(f3) ** 2)], -10
            )

    def test_depth1_at_one_leading_term(self, f3):
        # s=(1), u=(1): partial sums of sum 1/L_i; the i=1 term has degree -3
        got = cmpl_eval_inf(CompositionIndex.of(1), [RatFunc.one(f3)], -12)
        assert got.coeff(0) == 1  # the i = 0 term
        assert got.val == 0
        # leading correction at theta^(-q)
        assert got.coeff(-3) != 0

    def test_s2_theta_fixture(self, f3):
        # golden to 10 coefficients, verified against the naive oracle
        got = cmpl_eval_inf(CompositionIndex.of(2), [RatFunc.gen(f3)], -12)
        oracle = naive_sum_exact(f3, (2,), [RatFunc.gen(f3)], 5, star=False)
        d = got - embed_k_inf(oracle, -14)
        assert d.is_zero_to_precision()

    @pytest.mark.parametrize(
        "s,ucoeffs,star",
        [
            ((1,), [(0, 1)], False),
            ((1, 1), [(0, 1), (1,)], False),
            ((1, 1), [(0, 1), (1,)], True),
            ((2, 1), [(0, 0, 1), (1, 1)], False),
            ((1, 2), [(0, 1), (0, 0, 1)], True),
        ],
    )
    def test_matches_naive_oracle(self, f3, s, ucoeffs, star):
        u = [RatFunc.from_poly(Poly(f3, c)) for c in ucoeffs]
        f = cmspl_eval_inf if star else cmpl_eval_inf
        got = f(CompositionIndex(tuple(s)), u, -20)
        oracle = naive_sum_exact(f3, tuple(s), u, 6, star)
        d = got - embed_k_inf(oracle, -25)
        assert d.is_zero_to_precision()

    def test_doubling_is_stable(self, f3):
        u = [RatFunc.from_poly(Poly(f3, (1, 1)))]
        lo = cmpl_eval_inf(CompositionIndex.of(1), u, -10)
        hi = cmpl_eval_inf(CompositionIndex.of(1), u, -25)
        d = hi - lo
        assert d.is_zero_to_precision()


class TestStarIdentity:
    def test_depth1_trivial(self, f3):
        v = Poly.gen(f3)
        u = [RatFunc.from_poly(Poly(f3, (0, 1)))]
        resid = star_identity_residue_v(CompositionIndex.of(1), u, v, 10)
        assert resid.is_zero_to_precision()

    def test_depth2_v(self, f3):
        v = Poly.gen(f3)
        theta = Poly.gen(f3)
        u = [
            RatFunc.from_poly(theta),
            RatFunc.from_poly(theta.scale(2)),
        ]
        resid = star_identity_residue_v(CompositionIndex.of(1, 2), u, v, 12)
        assert resid.is_zero_to_precision()
        assert resid.abs_prec >= 12

    def test_depth3_v(self, f3, rng):
        v = Poly(f3, (1, 1))
        for _ in range(5):
            u = []
            for _ in range(3):
                c = Poly(f3, (rng.randrange(3), rng.randrange(3)))
                u.append(RatFunc.from_poly(v * (c + 1 if c.is_zero() else c)))
            resid = star_identity_residue_v(CompositionIndex.of(1, 1, 1), u, v, 10)
            assert resid.is_zero_to_precision()

    def test_depth2_inf(self, f3):
        u = [
            RatFunc.from_poly(Poly(f3, (1, 1))),
            RatFunc.from_poly(Poly(f3, (2,))),
        ]
        resid = star_identity_residue_inf(CompositionIndex.of(1, 1), u, -20)
        assert resid.is_zero_to_precision()

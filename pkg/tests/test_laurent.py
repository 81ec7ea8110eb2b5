"""The completion at infinity: embeddings, reconstruction, the period power."""

import pytest

from carlitz.errors import PrecisionError
from carlitz.laurent import (
    InfLaurent,
    carlitz_period_power,
    embed_k_inf,
    rational_reconstruct,
)
from carlitz.poly import Poly
from carlitz.ratfunc import RatFunc

from .conftest import rand_ratfunc


def geometric_oracle(fq, c, prec):
    """1/(theta - c) = sum_{m >= 1} c^(m-1) theta^(-m), by hand."""
    out = {}
    power = 1
    for m in range(1, -prec + 1):
        out[-m] = power
        power = fq.mul(power, c)
    return out


def test_embed_poly_exact(f3):
    theta = Poly.gen(f3)
    x = embed_k_inf(theta, None)
    assert x.val == 1 and x.coeffs == (1,) and x.prec is None


def test_embed_zero(f3):
    x = embed_k_inf(RatFunc.zero(f3), -5)
    assert x.is_zero_to_precision()
    y = embed_k_inf(RatFunc.zero(f3), None)
    assert y.is_exact_zero()


def test_embed_geometric(f3):
    # 1/(theta - 1) over F_3 to theta^-4, against the geometric oracle
    theta = Poly.gen(f3)
    x = embed_k_inf(RatFunc(Poly.one(f3), theta - 1), -4)
    oracle = geometric_oracle(f3, 1, -4)
    assert x.val == -1
    for e in range(-1, -5, -1):
        assert x.coeff(e) == oracle[e] == 1


def test_embed_val_formula(f3, rng):
    for _ in range(40):
        x = rand_ratfunc(rng, f3, 5, nonzero=True)
        lau = embed_k_inf(x, -12)
        assert lau.val == x.num.degree - x.den.degree


def test_embed_is_ring_hom(f3, rng):
    for _ in range(30):
        a = rand_ratfunc(rng, f3, 4, nonzero=True)
        b = rand_ratfunc(rng, f3, 4, nonzero=True)
        pa = embed_k_inf(a, -15)
        pb = embed_k_inf(b, -15)
        prod = embed_k_inf(a * b, -8)
        d = pa * pb - prod
        assert d.is_zero_to_precision()
        s = embed_k_inf(a + b, -10) - (pa + pb)
        assert s.is_zero_to_precision()


def test_precision_is_never_overstated(f3, rng):
    # recompute at higher precision; all previously claimed digits agree
    for _ in range(25):
        x = rand_ratfunc(rng, f3, 4, nonzero=True)
        y = rand_ratfunc(rng, f3, 4, nonzero=True)
        lo = embed_k_inf(x, -10) * embed_k_inf(y, -10) + embed_k_inf(x, -10)
        hi = embed_k_inf(x, -30) * embed_k_inf(y, -30) + embed_k_inf(x, -30)
        if lo.is_zero_to_precision():
            continue
        for e in range(lo.val, lo.prec - 1, -1):
            assert lo.coeff(e) == hi.coeff(e)


def test_inverse_roundtrip(f3, rng):
    for _ in range(25):
        x = rand_ratfunc(rng, f3, 4, nonzero=True)
        lau = embed_k_inf(x, -20)
        d = lau * lau.inverse() - 1
        assert d.is_zero_to_precision()


def test_powq_certification(f3):
    theta = Poly.gen(f3)
    x = embed_k_inf(RatFunc(Poly.one(f3), theta - 1), -6)
    y = x.powq(1)
    z = embed_k_inf(RatFunc(Poly.one(f3), (theta - 1) ** 3), -18)
    assert (y - z).is_zero_to_precision()


# -- rational reconstruction ---------------------------------------------------


def test_reconstruct_roundtrip(f3, rng):
    for _ in range(30):
        x = rand_ratfunc(rng, f3, 3, nonzero=True)
        h = max(x.num.degree, x.den.degree, 1)
        lau = embed_k_inf(x, (x.num.degree - x.den.degree) - (2 * h + 4))
        got = rational_reconstruct(lau, h)
        assert got == x


def test_reconstruct_poly(f3):
    theta = Poly.gen(f3)
    lau = embed_k_inf(theta, None)
    assert rational_reconstruct(lau, 1) == RatFunc.from_poly(theta)


def test_reconstruct_generic_series_fails(f3, rng):
    # a random 30-coefficient series is not a height-3 fraction
    for _ in range(10):
        coeffs = [rng.randrange(1, 3)] + [rng.randrange(3) for _ in range(29)]
        lau = InfLaurent(f3, -1, coeffs, -30)
        assert rational_reconstruct(lau, 3) is None


def test_reconstruct_insufficient_precision(f3):
    lau = InfLaurent(f3, -1, [1, 2, 1], -3)
    with pytest.raises(PrecisionError):
        rational_reconstruct(lau, 3)


# -- the period power ---------------------------------------------------------


def test_period_leading_term(f3):
    pp = carlitz_period_power(f3, -8)
    assert pp.val == 3
    assert pp.coeff(3) == (-1) % 3  # (-1)^q for q = 3


def test_period_golden_prefix(f3):
    # frozen from the independent truncated-product oracle:
    #   (-theta)^3 (1-theta^-2)^-2 (1-theta^-8)^-2
    #     = 2 theta^3 + theta + 2 theta^-3 + 2 theta^-5 + ...  over F_3
    pp = carlitz_period_power(f3, -6)
    expect = {3: 2, 2: 0, 1: 1, 0: 0, -1: 0, -2: 0, -3: 2, -4: 0, -5: 2, -6: 0}
    got = {e: pp.coeff(e) for e in range(3, -7, -1)}
    assert got == expect


def test_period_precision_monotone(f3):
    lo = carlitz_period_power(f3, -5)
    hi = carlitz_period_power(f3, -10)
    for e in range(lo.val, lo.prec - 1, -1):
        assert lo.coeff(e) == hi.coeff(e)

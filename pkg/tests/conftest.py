import random

import pytest

from carlitz.ext import ExtField
from carlitz.fq import Fq
from carlitz.poly import Poly
from carlitz.ratfunc import RatFunc


@pytest.fixture(scope="session")
def f3():
    return Fq(3)


@pytest.fixture(scope="session")
def f2():
    return Fq(2)


@pytest.fixture(scope="session")
def f9():
    return Fq(3, 2)


@pytest.fixture()
def rng():
    return random.Random(0)


def rand_poly(rng, fq, max_deg, nonzero=False):
    d = rng.randrange(-1, max_deg + 1)
    if d < 0:
        if nonzero:
            d = rng.randrange(0, max_deg + 1)
        else:
            return Poly.zero(fq)
    coeffs = [rng.randrange(fq.q) for _ in range(d)] + [rng.randrange(1, fq.q)]
    return Poly(fq, tuple(coeffs))


def rand_ratfunc(rng, fq, max_deg, nonzero=False):
    num = rand_poly(rng, fq, max_deg, nonzero=nonzero)
    den = rand_poly(rng, fq, max_deg, nonzero=True)
    return RatFunc(num, den)


@pytest.fixture(scope="session")
def k_sqrt_2theta(f3):
    """K = k[x]/(x^2 - 2 theta) over F_3: the field of the torsion example."""
    m = [
        RatFunc.from_poly(-Poly(f3, (0, 2))),
        RatFunc.zero(f3),
        RatFunc.one(f3),
    ]
    return ExtField(f3, m)

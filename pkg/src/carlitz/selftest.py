"""The embedded invariant suite behind `carlitz selftest`.

A curated subset of the full test suite that runs in a few seconds from a
fresh checkout: closed forms against the recurrence, the star identity at
both places, the commute lemma, the torsion regression, and precision
honesty.  Each check prints one pass/fail line; the exit code is nonzero
if anything fails.
"""

import random
import sys
import traceback

from .ext import ExtField
from .fq import Fq
from .polylog import CompositionIndex
from .poly import Poly
from .ratfunc import RatFunc


def _check_closed_forms(rng):
    from .tmodule import TModule

    f3 = Fq(3)
    for s in ((1, 1), (2, 1)):
        u = tuple(RatFunc.from_poly(Poly(f3, (c % 2, 1))) for c in range(len(s)))
        G = TModule(CompositionIndex(tuple(s)), u)
        for i in range(4):
            for l in range(1, len(s) + 1):
                for m in range(l, len(s) + 1):
                    if not G.log_corner(i, l, m).eq(G.closed_form_corner(i, l, m)):
                        return f"corner mismatch at s={s} i={i} ({l},{m})"
    return None


def _check_star_identity_v(rng):
    from .polylog import star_identity_residue_v

    f3 = Fq(3)
    v = Poly.gen(f3)
    u = [
        RatFunc.from_poly(Poly(f3, (0, 1))),
        RatFunc.from_poly(Poly(f3, (0, 2))),
    ]
    resid = star_identity_residue_v(CompositionIndex.of(1, 1), u, v, 12)
    if not resid.is_zero_to_precision():
        return "nonzero v-adic residue"
    return None


def _check_star_identity_inf(rng):
    from .polylog import star_identity_residue_inf

    f3 = Fq(3)
    u = [
        RatFunc.from_poly(Poly(f3, (1, 1))),
        RatFunc.from_poly(Poly(f3, (2,))),
    ]
    resid = star_identity_residue_inf(CompositionIndex.of(1, 1), u, -15)
    if not resid.is_zero_to_precision():
        return "nonzero residue at infinity"
    return None


def _check_commute(rng):
    from .continuation import log_commute_check
    from .tmodule import carlitz_module

    f3 = Fq(3)
    v = Poly.gen(f3)
    G = carlitz_module(f3)
    x = [RatFunc.from_poly(Poly(f3, (0, rng.randrange(1, 3), rng.randrange(3))))]
    res = log_commute_check(G, x, Poly.gen(f3), v, 16)
    if not all(r.is_zero_to_precision() for r in res):
        return "commute residual nonzero"
    return None


def _check_lambda_case(rng):
    from .criterion import theorem_harness

    f3 = Fq(3)
    v = Poly(f3, (1, 1))
    K = ExtField(
        f3,
        [
            RatFunc.from_poly(-Poly(f3, (0, 2))),
            RatFunc.zero(f3),
            RatFunc.one(f3),
        ],
    )
    rep = theorem_harness(CompositionIndex.of(1), (K.gen(),), v, 12, 4)
    if rep["flag"] != "CONSISTENT":
        return f"flag {rep['flag']}"
    if rep["certificate"] != Poly.gen(f3):
        return "wrong certificate"
    return None


def _check_exp_log_inverse(rng):
    from .fractions import FFrac
    from .tmodule import carlitz_module

    f3 = Fq(3)
    G = carlitz_module(f3)
    P = G.log_coeffs(4)
    Q = G.exp_coeffs(4)
    for k in range(1, 5):
        acc = FFrac(Poly.zero(f3))
        for i in range(k + 1):
            acc = acc + P[i].entry(0, 0) * Q[k - i].entry(0, 0).twist(i)
        if not acc.is_zero():
            return f"composition nonzero at tau^{k}"
    return None


def _check_period(rng):
    from .laurent import carlitz_period_power

    f3 = Fq(3)
    pp = carlitz_period_power(f3, -6)
    expect = {3: 2, 2: 0, 1: 1, 0: 0, -1: 0, -2: 0, -3: 2, -4: 0, -5: 2, -6: 0}
    got = {e: pp.coeff(e) for e in range(3, -7, -1)}
    if got != expect:
        return "period prefix mismatch"
    return None


def _check_precision_honesty(rng):
    from .polylog import cmpl_eval_v

    f3 = Fq(3)
    v = Poly.gen(f3)
    u = [RatFunc.from_poly(Poly(f3, (0, rng.randrange(1, 3))))]
    lo = cmpl_eval_v(CompositionIndex.of(1), u, v, 8)
    hi = cmpl_eval_v(CompositionIndex.of(1), u, v, 16)
    d = hi - lo
    if not d.is_zero_to_precision() or (d.abs_prec or 0) < 8:
        return "claimed digits changed under precision doubling"
    return None


CHECKS = [
    ("closed-form-vs-recurrence", _check_closed_forms),
    ("star-identity-v", _check_star_identity_v),
    ("star-identity-inf", _check_star_identity_inf),
    ("commute-lemma", _check_commute),
    ("lambda-torsion", _check_lambda_case),
    ("exp-log-inverse", _check_exp_log_inverse),
    ("period-fixture", _check_period),
    ("precision-honesty", _check_precision_honesty),
]


def run_selftest(filter_="", seed=0):
    rng = random.Random(seed)
    failures = 0
    ran = 0
    for name, fn in CHECKS:
        if filter_ and filter_ not in name:
            continue
        ran += 1
        try:
            problem = fn(rng)
        except Exception as exc:  # noqa: BLE001 - report, do not crash the table
            problem = f"{type(exc).__name__}: {exc}"
            traceback.print_exc(file=sys.stderr)
        status = "PASS" if problem is None else f"FAIL ({problem})"
        print(f"{name:32s} {status}")
        if problem is not None:
            failures += 1
    if ran == 0:
        print(f"no checks match filter {filter_!r}", file=sys.stderr)
        return 4
    return 1 if failures else 0

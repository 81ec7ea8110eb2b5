"""Batch command-line front end.

Subcommands (also reachable as `eval cmpl` / `eval cmspl`):

    cmpl, cmspl     evaluate a (star) polylogarithm at a place
    log-coeffs      dump log/exp coefficient matrices of a t-module
    log-eval        evaluate log_G at a point (default: the special point)
    continue        extended star and non-star values on the closed disc
    torsion         torsion-certificate search for the special point
    check           the full three-way equivalence harness
    euler           Eulerianness check at infinity
    zeta            Carlitz zeta partial sums
    tmodule-show    dump rho_t and the dimension data
    selftest        run the embedded invariant suite

Exit codes: 0 success, 2 domain error, 3 precision unreachable, 4 parse
error.  Output is deterministic JSON on stdout; logs go to stderr.
"""

import argparse
import json
import sys

from .errors import CarlitzError, DomainError, ElementParseError, PrecisionError
from .ext import ExtElem
from .fq import Fq
from .laurent import InfLaurent
from .parsing import parse_element, parse_ext_minpoly, parse_poly, parse_tuple
from .polylog import CompositionIndex
from .poly import Poly
from .ratfunc import RatFunc
from .vadic import VAdicNumber


def _factor_q(q):
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            n = q
            while n % p == 0:
                n //= p
                e += 1
            if n != 1:
                raise ElementParseError(f"q = {q} is not a prime power")
            return p, e
    raise ElementParseError(f"bad q = {q}")


def _common_flags(sp, place=True):
    sp.add_argument("--q", type=int, required=True, help="field size q = p^e")
    sp.add_argument("--fq-modulus", help="modulus in x over F_p (for e > 1)")
    sp.add_argument("--ext-minpoly", help="monic minimal polynomial in x over k")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="write the JSON result to this file")
    sp.add_argument("--config", help="key=value defaults file")
    if place:
        sp.add_argument("--v", help="monic irreducible v in theta")
        sp.add_argument("--place", choices=("v", "inf"), default="v")
        sp.add_argument("--prec", type=int, default=24)


def _setup(args):
    p, e = _factor_q(args.q)
    modulus = None
    if getattr(args, "fq_modulus", None):
        mod_poly = parse_poly(args.fq_modulus, Fq(p), varname="x")
        modulus = tuple(mod_poly.coeffs)
    fq = Fq(p, e, modulus)
    field = None
    if getattr(args, "ext_minpoly", None):
        field = parse_ext_minpoly(args.ext_minpoly, fq)
    v = None
    if getattr(args, "v", None):
        v = parse_poly(args.v, fq)
        from .factor import is_irreducible

        if not v.is_monic() or not is_irreducible(v):
            raise DomainError("--v must be monic irreducible")
    return fq, field, v


def _parse_s(text):
    try:
        return CompositionIndex(tuple(int(x) for x in text.split(",") if x.strip()))
    except ValueError as exc:
        raise ElementParseError(f"bad composition index {text!r}") from exc


def _encode(x):
    if isinstance(x, VAdicNumber):
        out = x.to_json()
        out["kind"] = "v-adic"
        return out
    if isinstance(x, InfLaurent):
        out = x.to_json()
        out["kind"] = "laurent"
        return out
    if isinstance(x, (RatFunc,)):
        return {"kind": "ratfunc", "repr": x.to_string(), **x.to_json()}
    if isinstance(x, ExtElem):
        return {"kind": "ext", "repr": x.to_string(), **x.to_json()}
    if isinstance(x, Poly):
        return {"kind": "poly", "repr": x.to_string(), "coeffs": x.to_json()}
    if isinstance(x, dict):
        return {k: _encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v) for v in x]
    return x


def _emit(args, payload):
    text = json.dumps(_encode(payload), sort_keys=True, separators=(",", ":"))
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _cmd_eval(args, star):
    from .polylog import cmpl_eval_inf, cmpl_eval_v, cmspl_eval_inf, cmspl_eval_v

    fq, field, v = _setup(args)
    idx = _parse_s(args.s)
    u = parse_tuple(args.u, fq, field)
    if args.place == "inf":
        prec = args.prec if args.prec < 0 else -abs(args.prec)
        f = cmspl_eval_inf if star else cmpl_eval_inf
        val = f(idx, list(u), prec)
    else:
        if v is None:
            raise ElementParseError("--v is required at the finite place")
        f = cmspl_eval_v if star else cmpl_eval_v
        val = f(idx, list(u), v, args.prec)
    _emit(args, {"s": list(idx.s), "value": val, "star": star})
    return 0


def _cmd_log_coeffs(args):
    from .tmodule import TModule

    fq, field, _ = _setup(args)
    idx = _parse_s(args.s)
    u = parse_tuple(args.u, fq, field)
    G = TModule(idx, u)
    imax = args.imax
    out = {"module": G.describe(), "log": [], "exp": []}
    P = G.log_coeffs(imax)
    Q = G.exp_coeffs(imax)
    for i in range(imax + 1):
        out["log"].append(_matrix_json(G, P[i]))
        out["exp"].append(_matrix_json(G, Q[i]))
    _emit(args, out)
    return 0


def _matrix_json(G, M):
    rows = []
    for rr in range(G.d):
        row = []
        for cc in range(G.d):
            frac = M.entry(rr, cc)
            if G.ring is None:
                row.append(frac.to_ratfunc())
            else:
                row.append(frac.to_ext_elem())
        rows.append(row)
    return rows


def _cmd_log_eval(args):
    from .continuation import log_eval_v
    from .tmodule import TModule

    fq, field, v = _setup(args)
    if v is None:
        raise ElementParseError("--v is required")
    idx = _parse_s(args.s)
    u = parse_tuple(args.u, fq, field)
    G = TModule(idx, u)
    if args.point:
        pt = list(parse_tuple(args.point, fq, field))
        if len(pt) != G.d:
            raise ElementParseError(f"point must have {G.d} coordinates")
    else:
        pt = G.special_point()
    out = log_eval_v(G, pt, v, args.prec)
    _emit(args, {"module": G.describe(), "log": out})
    return 0


def _cmd_continue(args):
    from .continuation import extended_cmpl_family

    fq, field, v = _setup(args)
    if v is None:
        raise ElementParseError("--v is required")
    idx = _parse_s(args.s)
    u = parse_tuple(args.u, fq, field)
    li, star = extended_cmpl_family(idx, u, v, args.prec)
    r = idx.depth
    payload = {
        "s": list(idx.s),
        "li_suffixes": {str(l): li[(l, r)] for l in range(1, r + 1)},
        "star_suffixes": {str(l): star[(l, r)] for l in range(1, r + 1)},
        "precision": args.prec,
    }
    _emit(args, payload)
    return 0


def _cmd_torsion(args):
    from .criterion import torsion_search
    from .tmodule import TModule

    fq, field, _ = _setup(args)
    idx = _parse_s(args.s)
    u = parse_tuple(args.u, fq, field)
    G = TModule(idx, u)
    cert = torsion_search(G, G.special_point(), args.deg_bound)
    payload = {
        "s": list(idx.s),
        "degree_bound": args.deg_bound,
        "certificate": cert.to_string("t") if cert is not None else "inconclusive",
    }
    _emit(args, payload)
    return 0


def _cmd_check(args):
    from .criterion import theorem_harness

    fq, field, v = _setup(args)
    if v is None:
        raise ElementParseError("--v is required")
    idx = _parse_s(args.s)
    u = parse_tuple(args.u, fq, field)
    rep = theorem_harness(idx, u, v, args.prec, args.deg_bound)
    cert = rep["certificate"]
    payload = {
        "case": f"s={args.s};u={args.u};v={args.v}",
        "i": rep["vanishing"]["all_i"],
        "ii": rep["vanishing"]["all_ii"],
        "iii": cert.to_string("t") if cert is not None else "inconclusive",
        "flag": rep["flag"],
        "precision": args.prec,
        "degree_bound": args.deg_bound,
    }
    _emit(args, payload)
    return 0


def _cmd_euler(args):
    from .criterion import eulerian_check_inf

    fq, field, v = _setup(args)
    idx = _parse_s(args.s)
    u = parse_tuple(args.u, fq, field)
    prec = args.prec if args.prec < 0 else -abs(args.prec)
    rep = eulerian_check_inf(
        idx, u, prec, args.height, v_cross=v, cross_prec=24 if v is not None else 24
    )
    payload = {
        "s": list(idx.s),
        "eulerian": rep["eulerian"],
        "witness": rep["witness"].to_string() if rep.get("witness") else None,
        "mode": rep.get("mode"),
        "height_bound": args.height,
        "precision": prec,
    }
    if "corollary_consistent" in rep:
        payload["v_adic_vanishing"] = rep["v_adic_vanishing"]
        payload["corollary_consistent"] = rep["corollary_consistent"]
    _emit(args, payload)
    return 0


def _cmd_zeta(args):
    from .criterion import carlitz_zeta_partial

    fq, field, v = _setup(args)
    if args.place == "inf":
        prec = args.prec if args.prec < 0 else -abs(args.prec)
        val, tail = carlitz_zeta_partial(fq, args.n, args.deg_bound, "inf", prec)
    else:
        if v is None:
            raise ElementParseError("--v is required at the finite place")
        val, tail = carlitz_zeta_partial(
            fq, args.n, args.deg_bound, "v", args.prec, v=v
        )
    _emit(
        args,
        {
            "n": args.n,
            "degree_bound": args.deg_bound,
            "value": val,
            "tail_degree_bound": tail,
        },
    )
    return 0


def _cmd_tmodule_show(args):
    from .tmodule import TModule

    fq, field, _ = _setup(args)
    idx = _parse_s(args.s)
    u = parse_tuple(args.u, fq, field)
    G = TModule(idx, u)
    rt = G.rho_t()
    payload = {
        "module": G.describe(),
        "rho_t": {
            "tau0": rt.coeff(0),
            "tau1": rt.coeff(1),
        },
        "special_point": G.special_point(),
    }
    _emit(args, payload)
    return 0


def _cmd_selftest(args):
    from .selftest import run_selftest

    return run_selftest(filter_=args.filter, seed=args.seed)


def _apply_config(args):
    if not getattr(args, "config", None):
        return
    with open(args.config) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, val = line.split("=", 1)
            key = key.strip().replace("-", "_")
            val = val.strip()
            if hasattr(args, key) and getattr(args, key) in (None, 0):
                cur = getattr(args, key)
                setattr(args, key, int(val) if isinstance(cur, int) or val.lstrip("-").isdigit() else val)


def build_parser():
    ap = argparse.ArgumentParser(prog="carlitz", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        return sp

    for name, star in (("cmpl", False), ("cmspl", True)):
        sp = add(name, lambda a, s=star: _cmd_eval(a, s))
        _common_flags(sp)
        sp.add_argument("--s", required=True, help="composition index, e.g. 1,2")
        sp.add_argument("--u", required=True, help="semicolon-separated arguments")

    sp = add("log-coeffs", _cmd_log_coeffs)
    _common_flags(sp, place=False)
    sp.add_argument("--s", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--imax", type=int, default=4)

    sp = add("log-eval", _cmd_log_eval)
    _common_flags(sp)
    sp.add_argument("--s", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--point", help="coordinates; defaults to the special point")

    sp = add("continue", _cmd_continue)
    _common_flags(sp)
    sp.add_argument("--s", required=True)
    sp.add_argument("--u", required=True)

    sp = add("torsion", _cmd_torsion)
    _common_flags(sp, place=False)
    sp.add_argument("--s", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--deg-bound", type=int, default=4)

    sp = add("check", _cmd_check)
    _common_flags(sp)
    sp.add_argument("--s", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--deg-bound", type=int, default=4)

    sp = add("euler", _cmd_euler)
    _common_flags(sp)
    sp.add_argument("--s", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--height", type=int, default=4)

    sp = add("zeta", _cmd_zeta)
    _common_flags(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--deg-bound", type=int, default=4)

    sp = add("tmodule-show", _cmd_tmodule_show)
    _common_flags(sp, place=False)
    sp.add_argument("--s", required=True)
    sp.add_argument("--u", required=True)

    sp = add("selftest", _cmd_selftest)
    sp.add_argument("--q", type=int, default=3)
    sp.add_argument("--filter", default="")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--fq-modulus")
    sp.add_argument("--ext-minpoly")
    sp.add_argument("--config")
    sp.add_argument("--out")

    return ap


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    # `eval cmpl ...` is an alias for the top-level subcommands
    if argv and argv[0] == "eval":
        argv = argv[1:]
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        _apply_config(args)
        return args.fn(args)
    except ElementParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 4
    except PrecisionError as exc:
        print(f"precision unreachable: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except CarlitzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

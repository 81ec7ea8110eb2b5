"""CLI surface: parsing, exit codes, JSON determinism."""

import json
import subprocess
import sys

import pytest

from carlitz.errors import ElementParseError
from carlitz.fq import Fq
from carlitz.parsing import parse_element, parse_ext_minpoly, parse_poly, parse_tuple
from carlitz.poly import Poly
from carlitz.ratfunc import RatFunc


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "carlitz.cli", *argv],
        capture_output=True,
        text=True,
        timeout=240,
    )
    return proc


class TestParsing:
    def test_poly(self, f3):
        theta = Poly.gen(f3)
        assert parse_poly("theta^2+2*theta+1", f3) == theta**2 + theta.scale(2) + 1
        assert parse_poly("t^2+2", f3, varname="t") == theta**2 + 2

    def test_element_division(self, f3):
        got = parse_element("1/(theta+1)", f3)
        assert got == RatFunc(Poly.one(f3), Poly(f3, (1, 1)))

    def test_negation(self, f3):
        assert parse_element("-theta", f3) == -RatFunc.gen(f3)
        assert parse_poly("theta^2-2*theta", f3) == Poly(f3, (0, 1, 1))

    def test_tuple(self, f3):
        u = parse_tuple("theta+1;2*theta", f3)
        assert len(u) == 2
        assert u[1] == RatFunc.from_poly(Poly(f3, (0, 2)))

    def test_ext_minpoly(self, f3):
        K = parse_ext_minpoly("x^2-2*theta", f3)
        assert K.degree == 2
        x = parse_element("x", f3, K)
        assert (x * x).in_k() == RatFunc.from_poly(Poly(f3, (0, 2)))

    def test_ext_var_requires_field(self, f3):
        with pytest.raises(ElementParseError):
            parse_element("x+1", f3)

    def test_garbage(self, f3):
        with pytest.raises(ElementParseError):
            parse_poly("theta$", f3)
        with pytest.raises(ElementParseError):
            parse_poly("theta+", f3)


class TestCLI:
    def test_zeta_trivial(self):
        proc = run_cli(
            "zeta", "--q", "3", "--n", "2", "--deg-bound", "0",
            "--place", "inf", "--prec", "-10",
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["value"]["val"] == 0
        assert data["value"]["coeffs"][0] == [1]
        assert all(c == [0] for c in data["value"]["coeffs"][1:])

    def test_lambda_check_golden(self):
        proc = run_cli(
            "check", "--q", "3", "--s", "1", "--u", "x",
            "--ext-minpoly", "x^2-2*theta", "--v", "theta+1",
            "--prec", "12", "--deg-bound", "4",
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["flag"] == "CONSISTENT"
        assert data["iii"] == "t"
        assert data["i"] and data["ii"]

    def test_eval_alias_and_determinism(self):
        args = (
            "eval", "cmpl", "--q", "3", "--s", "1", "--u", "theta",
            "--v", "theta", "--prec", "6",
        )
        a = run_cli(*args)
        b = run_cli(*args)
        assert a.returncode == 0
        assert a.stdout == b.stdout  # byte-identical
        data = json.loads(a.stdout)
        assert data["value"]["val"] == 1
        assert data["value"]["unit"] == [[1], [1], [0], [1]]

    def test_domain_error_exit_code(self):
        proc = run_cli(
            "cmpl", "--q", "3", "--s", "1", "--u", "1/(theta+1)",
            "--v", "theta", "--prec", "6",
        )
        assert proc.returncode == 2

    def test_parse_error_exit_code(self):
        proc = run_cli(
            "cmpl", "--q", "3", "--s", "1", "--u", "theta$",
            "--v", "theta", "--prec", "6",
        )
        assert proc.returncode == 4

    def test_torsion_inconclusive(self):
        proc = run_cli(
            "torsion", "--q", "3", "--s", "1", "--u", "theta", "--deg-bound", "4",
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["certificate"] == "inconclusive"

    def test_tmodule_show(self):
        proc = run_cli("tmodule-show", "--q", "3", "--s", "1,1", "--u", "theta;theta")
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["module"]["dimension"] == 3
        assert data["module"]["block_dims"] == [2, 1]

    def test_continue_values(self):
        proc = run_cli(
            "continue", "--q", "3", "--s", "1,1", "--u", "theta+1;theta+2",
            "--v", "theta", "--prec", "10",
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert set(data["li_suffixes"]) == {"1", "2"}

    def test_euler_zeta2(self):
        proc = run_cli(
            "euler", "--q", "3", "--s", "2", "--u", "1",
            "--prec", "-50", "--height", "4", "--place", "inf",
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["eulerian"] is True
        assert data["witness"] is not None

    def test_selftest_filter(self):
        proc = run_cli("selftest", "--filter", "period")
        assert proc.returncode == 0
        assert "period-fixture" in proc.stdout
        assert "PASS" in proc.stdout

    def test_out_file(self, tmp_path):
        out = tmp_path / "res.json"
        proc = run_cli(
            "zeta", "--q", "3", "--n", "1", "--deg-bound", "1",
            "--place", "inf", "--prec", "-8", "--out", str(out),
        )
        assert proc.returncode == 0
        data = json.loads(out.read_text())
        assert data["n"] == 1

    def test_log_coeffs_json(self):
        proc = run_cli(
            "log-coeffs", "--q", "3", "--s", "1,1", "--u", "theta;theta",
            "--imax", "2",
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert len(data["log"]) == 3
        assert len(data["exp"]) == 3
        # P_0 = identity
        p0 = data["log"][0]
        assert p0[0][0]["num"] == [[1]]

    def test_config_file(self, tmp_path):
        cfg = tmp_path / "carlitz.cfg"
        cfg.write_text("prec=8\n# comment\n")
        proc = run_cli(
            "cmpl", "--q", "3", "--s", "1", "--u", "theta", "--v", "theta",
            "--prec", "0", "--config", str(cfg),
        )
        assert proc.returncode == 0

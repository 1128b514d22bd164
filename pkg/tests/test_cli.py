from __future__ import annotations

import io
import json

import pytest

from hitf2 import cli, hitproblem
from hitf2.report import Report


def run(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def fresh_memo():
    hitproblem.clear_memo()
    yield
    hitproblem.clear_memo()


class TestCommands:
    def test_sq(self):
        assert run("sq", "--r", "1", "x1x2") == (0, "x1^2x2 + x1x2^2\n")
        assert run("sq", "--r", "1", "x1^2") == (0, "0\n")

    def test_sq_json(self):
        code, text = run("sq", "--r", "1", "x1x2", "--json")
        assert code == 0
        assert json.loads(text) == {"k": 2, "result": [[2, 1], [1, 2]]}

    def test_hit_test(self):
        assert run("hit-test", "x1^2x2 + x1x2^2") == (0, "HIT\n")
        assert run("hit-test", "x1x2^2") == (0, "NOT HIT\n")
        assert run("hit-test", "[2,1]", "--k", "2") == (0, "NOT HIT\n")

    def test_dim(self):
        assert run("dim", "--k", "1", "--degree", "3") == (0, "1\n")
        assert run("dim", "--k", "2", "--degree", "3") == (0, "3\n")
        assert run("dim", "--k", "3", "--degree", "10", "--full") == (0, "14\n")
        assert run("dim", "--k", "4", "--weight", "4,4,4,4,3") == (0, "4\n")
        code, text = run("dim", "--k", "3", "--degree", "10", "--json")
        d = json.loads(text)
        assert code == 0 and d["total"] == 14 and d["k"] == 3

    def test_basis(self):
        assert run("basis", "--k", "2", "--degree", "3") == (0, "[3,0]\n[1,2]\n[0,3]\n")
        assert run("basis", "--k", "2", "--degree", "3", "--style", "x") == (0, "x1^3\nx1x2^2\nx2^3\n")

    def test_reduce(self):
        assert run("reduce", "x1^2x2") == (0, "[1,2]\n")
        code, text = run("reduce", "x1^2x2", "--json")
        assert json.loads(text)["coordinates"] == [[1, 2]]

    def test_kameko(self):
        assert run("kameko", "down", "[3,15,5,23,63]") == (0, "x1x2^7x3^2x4^11x5^31\n")
        assert run("kameko", "up", "x1") == (0, "x1^3\n")

    def test_invariants(self):
        code, text = run("invariants", "--k", "2", "--degree", "3")
        assert code == 0 and text.splitlines()[0] == "dim 1"

    def test_file_input(self, tmp_path):
        f = tmp_path / "p.txt"
        f.write_text("x1x2\n", encoding="utf-8")
        assert run("sq", "--r", "1", "--file", str(f)) == (0, "x1^2x2 + x1x2^2\n")


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ("dim", "--k", "0", "--degree", "3"),
        ("dim", "--k", "2"),
        ("sq", "--r", "1", "x1 +* x2"),
        ("sq", "--r", "-1", "x1"),
        ("sq", "--r", "1"),
        ("frobnicate",),
        ("dim", "--k", "2", "--degree", "3", "--threads", "0"),
        ("reduce", "--weight", "2,1", "x1^5"),
    ])
    def test_usage(self, argv):
        assert run(*argv)[0] == 1

    def test_budget(self):
        code, _ = run("dim", "--k", "4", "--weight", "3,3,2,1", "--mem-budget", "64", "--cache-dir", "none")
        assert code == 2

    def test_failed_check(self, monkeypatch):
        from hitf2 import verification

        rep = Report("t")
        rep.add("x", False, "forced")
        monkeypatch.setattr(verification, "run", lambda quick=True: rep)
        code, text = run("verify-paper", "--quick")
        assert code == 3 and text.startswith("CHECK x FAIL")
        code, text = run("verify-paper", "--json")
        assert code == 3 and json.loads(text)["ok"] is False


class TestDeterminism:
    def test_repeatable_output(self):
        first = run("basis", "--k", "4", "--weight", "3,3,1,1", "--json")
        hitproblem.clear_memo()
        assert run("basis", "--k", "4", "--weight", "3,3,1,1", "--json") == first

    def test_warm_equals_cold(self, tmp_path):
        argv = ("basis", "--k", "4", "--weight", "3,3,2,1", "--cache-dir", str(tmp_path))
        cold = run(*argv)
        assert list(tmp_path.glob("*.hitf2"))
        hitproblem.clear_memo()
        assert run(*argv) == cold
        hitproblem.clear_memo()
        assert run("basis", "--k", "4", "--weight", "3,3,2,1", "--cache-dir", "none") == cold

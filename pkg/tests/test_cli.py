import json

import pytest

from laguerre_lab import cli
from laguerre_lab.defaults import EXIT_CHECK_FAILED, EXIT_CONFIG_ERROR, EXIT_NUMERIC_ERROR, EXIT_OK
from laguerre_lab.errors import NumericError, ParameterError
from laguerre_lab.weights import WeightParams


@pytest.fixture
def out(tmp_path):
    return tmp_path / "report.json"


def run_cli(*argv):
    return cli.main([str(a) for a in argv])


class TestVerify:
    def test_classical_s1(self, out):
        code = run_cli("--preset", "classical", "--quad-m", 40, "--out", out, "verify", "--identities", "s1", "--n", 3)
        assert code == EXIT_OK
        report = json.loads(out.read_text())
        assert report["schema"] == 1
        assert report["command"] == "verify"
        assert report["data"]["columns"] == ["identity", "absolute", "relative", "pass"]
        assert all(":S1" in row[0] for row in report["data"]["rows"])

    def test_unreachable_tolerance(self, out):
        # a 40-node rule cannot resolve the non-integer exponents to 1e-30
        code = run_cli("--preset", "N2", "--quad-m", 40, "--tol", "1e-30", "--out", out, "verify", "--nmax", 4)
        assert code == EXIT_CHECK_FAILED
        entries = json.loads(out.read_text())["report"]
        assert any(not e.get("pass", True) for e in entries.values())

    def test_unknown_identity(self, out):
        assert run_cli("--out", out, "verify", "--identities", "s7") == EXIT_CONFIG_ERROR
        assert not out.exists()


class TestIterate:
    def test_compare_quadrature(self, out):
        code = run_cli("--quad-m", 40, "--out", out, "iterate", "--nmax", 8, "--compare-quadrature")
        assert code == EXIT_OK
        report = json.loads(out.read_text())
        assert report["report"]["max-diff"]["pass"]
        assert report["config"]["options"]["nmax"] == 8


class TestTable:
    def test_csv_header(self, tmp_path):
        out = tmp_path / "table.csv"
        code = run_cli("--quad-m", 40, "--out", out, "--format", "csv", "table", "--nmax", 5)
        assert code == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# ")
        assert json.loads(lines[0][2:])["command"] == "table"
        assert lines[1] == "n,h,alpha_rec,beta_rec,p1,D"
        assert len(lines) == 8


class TestDensity:
    def test_negative_lambda(self, tmp_path, out):
        config = tmp_path / "weight.json"
        config.write_text(WeightParams("1", [("1", "-0.5")]).to_json())
        assert run_cli("--config", config, "--out", out, "density", "--n", 4) == EXIT_CONFIG_ERROR

    def test_convex(self, out):
        code = run_cli("--precision-bits", 200, "--out", out, "density", "--n", 6, "--samples", 3)
        assert code == EXIT_OK
        report = json.loads(out.read_text())
        assert len(report["data"]["rows"]) == 5
        assert report["data"]["rows"][0][1].strip("0.") == ""


class TestConfig:
    def test_default_out(self, n1):
        config = cli.RunConfig("table", n1, options={"nmax": 4})
        assert config.out == "laguerre-lab-table.json"

    def test_point_length(self, n1):
        args = cli.build_parser().parse_args(["residuals", "--point", "[0.5, 1.5]"])
        with pytest.raises(ParameterError):
            cli.RunConfig.from_args(args)

    def test_bad_json(self):
        with pytest.raises(SystemExit):
            cli.build_parser().parse_args(["scale", "--s", "[1,"])


class TestExitCodes:
    def test_numeric_error(self, out, monkeypatch):
        def broken(config):
            raise NumericError("overflow in test")

        monkeypatch.setitem(cli._COMMANDS, "table", broken)
        assert run_cli("--out", out, "table") == EXIT_NUMERIC_ERROR

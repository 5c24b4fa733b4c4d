import json

import pytest
import mpmath as mp

from laguerre_lab.report import ResidualReport, decimal


class TestResidualReport:
    def test_check_pass(self):
        report = ResidualReport(tolerance="1e-30")
        res = report.check("S1", mp.mpf(2), mp.mpf(2))
        assert res.passed
        assert res.absolute == 0
        assert report.passed

    def test_check_fail(self):
        report = ResidualReport(tolerance="1e-30")
        report.check("S1", mp.mpf(1), mp.mpf("1.000001"))
        assert not report.passed
        assert [r.name for r in report.failures()] == ["S1"]

    def test_relative_uses_terms(self):
        report = ResidualReport(tolerance="1e-10")
        res = report.check("big", mp.mpf("1e-5"), 0, terms=[mp.mpf("1e6")])
        assert float(res.relative) == pytest.approx(1e-11)
        assert res.passed

    def test_missing_tolerance(self):
        with pytest.raises(AssertionError):
            ResidualReport().check("x", 1, 1)

    def test_skip_counts_as_pass(self):
        report = ResidualReport(tolerance="1e-30")
        report.skip("beta_n[1]", "guard")
        assert report.passed
        assert report["beta_n[1]"].as_dict() == {"skipped": True, "pass": True, "note": "guard"}
        assert report.worst() is None

    def test_merge_prefix(self):
        a = ResidualReport(tolerance="1e-30")
        b = ResidualReport(tolerance="1e-30")
        b.check("te1", 1, 1)
        b.record_info("margin", 3)
        a.merge(b, prefix="@0:")
        assert "@0:te1" in a
        assert a.info["@0:margin"] == 3
        assert len(a) == 1

    def test_merge_renames_entries(self):
        a = ResidualReport(tolerance="1e-30")
        b = ResidualReport(tolerance="1e-30")
        b.check("S1", 1, 1)
        a.merge(b, prefix="n=3:")
        assert a["n=3:S1"].name == "n=3:S1"
        assert b["S1"].name == "S1"
        assert a.worst().name == "n=3:S1"

    def test_json(self):
        report = ResidualReport(tolerance="1e-30")
        report.check("S1", 1, 1)
        report.check("emp", 1, 1, tolerance="1e-3", empirical=True)
        report.record_info("A", "0.5")
        d = json.loads(report.to_json())
        assert d["S1"]["pass"] is True
        assert d["emp"]["empirical"] is True
        assert d["info"]["A"] == "0.5"

    def test_worst(self):
        report = ResidualReport(tolerance="1")
        report.check("small", 1, "1.001")
        report.check("large", 1, "1.1")
        assert report.worst().name == "large"


class TestDecimal:
    def test_decimal(self):
        assert decimal(None) == "nan"
        assert decimal(mp.mpf(1) / 4) == "0.25"

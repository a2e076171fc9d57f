import re

import pytest

from kepler_stieltjes import kepler
from kepler_stieltjes.scripts.ks.ks import main
from kepler_stieltjes.verify import SuiteLevel, SuiteOutcome, SuiteRegistry, suite_registry
from kepler_stieltjes.verify.resummation import truncates_to

QUICK_SUITES = {
    "kepler_residual",
    "kepler_monotonicity",
    "kepler_symmetry",
    "lambda_identity",
    "phase_monotonicity",
    "siegel_bound",
    "bessel_asymptotics",
    "circular_limit",
    "moment_identity_small",
    "rho_monotonicity",
    "polylog_dual",
    "s_integral_symmetry",
    "complex_form",
    "continuation_series",
    "wynn_geometric",
    "pade_correspondence",
    "table_one",
}
FULL_SUITES = {
    "bessel_oracle",
    "moment_identity",
    "carleman_proxy",
    "s_integral_oracle",
    "branch_continuity",
    "route_equivalence",
    "ke_acceleration",
}


class TestRegistry:
    def test_names(self):
        assert set(suite_registry.get_suite_names()) == QUICK_SUITES | FULL_SUITES

    def test_levels(self):
        quick = {s.name for s in suite_registry.get_suites("quick")}
        full = {s.name for s in suite_registry.get_suites(SuiteLevel.full)}
        assert quick == QUICK_SUITES
        assert full == QUICK_SUITES | FULL_SUITES

    def test_suite_metadata(self):
        suite = suite_registry.get_suite("table_one")
        assert suite.level == SuiteLevel.quick
        assert suite.description

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            suite_registry.run("no_such_suite")

    def test_exception_is_a_failure(self):
        registry = SuiteRegistry()

        @registry.register(name="broken", description="raises")
        def broken():
            raise RuntimeError("boom")

        outcome = registry.run("broken")
        assert not outcome.passed
        assert "RuntimeError: boom" in outcome.detail


class TestSuites:
    def test_lambda_identity(self):
        outcome = suite_registry.run("lambda_identity")
        assert outcome.passed, outcome.detail

    def test_lambda_identity_detects_sign_error(self, monkeypatch):
        decay_exponent = kepler._decay_exponent
        monkeypatch.setattr(kepler, "_decay_exponent", lambda eps, chi: -decay_exponent(eps, chi))
        outcome = suite_registry.run("lambda_identity")
        assert not outcome.passed

    @pytest.mark.parametrize("name", ["wynn_geometric", "pade_correspondence", "kepler_symmetry"])
    def test_cheap_suites(self, name):
        outcome = suite_registry.run(name)
        assert outcome.passed, outcome.detail

    def test_table_one(self):
        outcome = suite_registry.run("table_one")
        assert outcome.passed, outcome.detail

    def test_truncated_printing(self):
        continued = complex(-1.0018389817, 1.2387652423)
        assert truncates_to(continued, complex(-1.001838, 1.238765))
        assert not truncates_to(continued, complex(-1.001839, 1.238765))
        assert not truncates_to(complex(-1.0018371, 1.2387652), complex(-1.001838, 1.238765))

    @pytest.mark.slow
    def test_quick_level(self):
        outcomes = suite_registry.run_level("quick")
        failed = [o.to_line() for o in outcomes if not o.passed]
        assert not failed


class TestOutcome:
    def test_line_format(self):
        outcome = SuiteOutcome(name="table_one", passed=True, elapsed=1.23456, detail="max_abs=1e-07\nmore")
        line = outcome.to_line()
        assert line == "suite=table_one status=pass elapsed=1.235 detail=max_abs=1e-07 more"
        failed = SuiteOutcome(name="x", passed=False, elapsed=0.0, detail="").to_line()
        assert re.match(r"^suite=x status=fail elapsed=0\.000 detail=$", failed)


class TestVerifyCommand:
    @pytest.fixture
    def only_lambda_identity(self, monkeypatch):
        suites = {"lambda_identity": suite_registry._suites["lambda_identity"]}
        monkeypatch.setattr(suite_registry, "_suites", suites)

    def test_pass(self, only_lambda_identity, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert len(out) == 1
        assert out[0].startswith("suite=lambda_identity status=pass elapsed=")

    def test_fail(self, only_lambda_identity, monkeypatch, capsys):
        decay_exponent = kepler._decay_exponent
        monkeypatch.setattr(kepler, "_decay_exponent", lambda eps, chi: -decay_exponent(eps, chi))
        assert main(["verify", "--level", "full"]) == 1
        out = capsys.readouterr().out.splitlines()
        assert "status=fail" in out[0]
        assert out[-1] == "failed=lambda_identity"

    def test_bad_level(self, capsys):
        assert main(["verify", "--level", "medium"]) == 2
        assert capsys.readouterr().err.startswith("error:")

import pytest

from errors import ConfigurationError
from suites import SUITES, SuiteConfig, collect_checks, run_suite


def _names(report):
    return [c.name for c in report.checks]


@pytest.mark.parametrize("kwargs", [{"suite": "bogus"}, {"suite": "coxeter", "jobs": 0},
                                    {"suite": "coxeter", "group": "gl:2"}, {"suite": "coxeter", "coeff": "fp:6"}])
def test_bad_configuration(kwargs):
    with pytest.raises(ConfigurationError):
        SuiteConfig(**kwargs)


def test_configuration_defaults():
    config = SuiteConfig("frobenius", group="gl:2:4")
    assert config.field.describe() == "fp:2"
    assert config.affine_kind == "gl2"
    assert config.affine_p == 2
    assert SuiteConfig("affine-presentation", group="sl:2:3", p=5).affine_p == 5
    assert config.to_json()["coeff"] == "fp:2"


def test_affine_suite_needs_a_supported_type():
    with pytest.raises(ConfigurationError):
        collect_checks(SuiteConfig("affine-presentation", group="sl:3:2"))


def test_checks_carry_the_suite_name():
    checks = collect_checks(SuiteConfig("coxeter", group="gl:3:2"))
    assert {c.params["suite"] for c in checks} == {"coxeter"}
    assert len(checks) == 5


def test_coxeter_suite():
    report = run_suite(SuiteConfig("coxeter", group="gl:3:2"))
    assert report.ok
    assert report.summary["total"] == 5


def test_runs_are_deterministic():
    first = run_suite(SuiteConfig("coxeter", group="gl:3:2", jobs=1))
    second = run_suite(SuiteConfig("coxeter", group="gl:3:2", jobs=3))
    assert first.comparable()["checks"] == second.comparable()["checks"]


def test_frobenius_suite():
    report = run_suite(SuiteConfig("frobenius", group="gl:2:2", coeff="fp:2"))
    assert report.summary == {"total": 3, "passed": 3, "failed": 0}
    assert _names(report) == ["frobenius_form", "alternative_lift", "bimodule_iso"]


def test_finite_oracle_suite_in_char_p():
    report = run_suite(SuiteConfig("finite-oracle", group="gl:2:2", coeff="fp:2"))
    assert report.ok, [c.to_json() for c in report.failures]
    assert {"projectivity_defect", "q3_witness", "trivial_tensor"} <= set(_names(report))


def test_finite_oracle_suite_over_q():
    report = run_suite(SuiteConfig("finite-oracle", group="gl:2:3", coeff="q"))
    assert report.ok, [c.to_json() for c in report.failures]
    assert "projectivity_defect" not in _names(report)


def test_finite_diagram_suite():
    report = run_suite(SuiteConfig("finite-diagrams", group="gl:2:2", coeff="fp:2"))
    assert report.ok, [c.to_json() for c in report.failures]
    assert "diag_q3" not in _names(report)


def test_finite_diagrams_cover_every_torus_character():
    checks = collect_checks(SuiteConfig("finite-diagrams", group="gl:2:3", coeff="fp:3"))
    twists = {c.params["m"] for c in checks if c.name == "ind_coind_twist"}
    assert twists == {"Triv", "chi01", "chi10", "chi11"}
    adjunctions = [c for c in checks if c.name == "hecke_adjunction"]
    assert {(c.params["m"], c.params["n"]) for c in adjunctions} >= {("chi11", "Triv"), ("chi11", "Sign")}


def test_affine_presentation_suite():
    report = run_suite(SuiteConfig("affine-presentation", group="gl:2:2", triples=50))
    assert report.ok, [c.to_json() for c in report.failures]
    assert "theta_compare" not in _names(report)


@pytest.mark.slow
def test_affine_presentation_suite_over_q():
    report = run_suite(SuiteConfig("affine-presentation", group="gl:2:3", coeff="q", triples=50))
    assert report.ok, [c.to_json() for c in report.failures]
    assert "theta_compare" in _names(report)


@pytest.mark.slow
@pytest.mark.parametrize("group", ["gl:2:2", "sl:2:3"])
def test_affine_functor_suite(group):
    report = run_suite(SuiteConfig("affine-functors", group=group, grid_limit=8))
    assert report.ok, [c.to_json() for c in report.failures]
    assert "ses_nonsplit" in _names(report)


def test_supersingular_suite():
    report = run_suite(SuiteConfig("supersingular", group="gl:2:2"))
    assert report.ok, [c.to_json() for c in report.failures]
    assert _names(report) == ["induced_factors", "supersingular_characters", "round_trip", "classify_simple"]


def test_supersingular_suite_over_q_only_checks_factors():
    report = run_suite(SuiteConfig("supersingular", group="gl:2:2", coeff="q"))
    assert _names(report) == ["induced_factors"]
    assert report.ok


@pytest.mark.slow
def test_all_suites():
    report = run_suite(SuiteConfig("all", group="gl:2:2", triples=50, grid_limit=8))
    assert report.ok, [c.to_json() for c in report.failures]
    assert {c.params["suite"] for c in report.checks} == set(SUITES)

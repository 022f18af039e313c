import json
from fractions import Fraction

import pytest

from affine_functors import affine_induct, torus_character
from errors import PreconditionError, SchemaError
from reports import (
    CheckResult, MetricsSampler, Report, algebra_from_identifier, deserialize, dumps, jsonable, run_check, serialize,
)


def test_jsonable():
    assert jsonable({"a": Fraction(1, 2), "b": Fraction(4, 2), "c": {3, 1}, 4: (1, 2)}) == \
        {"a": "1/2", "b": 2, "c": [1, 3], "4": [1, 2]}
    assert jsonable(None) is None


def test_run_check_records_a_pass():
    result = run_check("double", {"x": 2}, lambda: {"value": 4}, lambda v: v["value"] == 4)
    assert result.verdict
    assert result.to_json()["verdict"] == "pass"
    assert result.error is None


def test_run_check_turns_library_errors_into_failures():
    def compute():
        raise PreconditionError("outside the domain")

    result = run_check("broken", {}, compute, lambda v: True)
    assert not result.verdict
    assert result.error == "PreconditionError: outside the domain"
    assert result.to_json()["error"] == result.error


def test_report_summary():
    report = Report("demo", {}, [CheckResult("a", {}, True, {}), CheckResult("b", {}, False, {})])
    assert report.summary == {"total": 2, "passed": 1, "failed": 1}
    assert not report.ok
    assert [c.name for c in report.failures] == ["b"]


def test_metrics_summary():
    summary = MetricsSampler().summary()
    assert summary["peak_rss_mb"] > 0
    assert summary["threads"] >= 1


def test_report_round_trip():
    report = Report("demo", {"seed": 0}, [CheckResult("a", {"n": 2}, True, {"dim": 3}, 0.5)], {"elapsed": 1.0})
    back = deserialize(json.dumps(report.to_json()))
    assert back.comparable() == report.comparable()


def test_report_summary_mismatch():
    document = Report("demo", {}, [CheckResult("a", {}, True, {})]).to_json()
    document["summary"]["failed"] = 3
    with pytest.raises(SchemaError) as excinfo:
        deserialize(document)
    assert excinfo.value.field == "summary"


def test_unipotent_algebra_round_trip(finite_algebra):
    H = finite_algebra("gl:2:3", "fp:3")
    back = deserialize(dumps(H))
    assert back.to_json() == H.to_json()


def test_unipotent_table_mismatch(finite_algebra):
    document = serialize(finite_algebra("gl:2:2", "fp:2"))
    document["table"] = document["table"][1:]
    with pytest.raises(SchemaError) as excinfo:
        deserialize(document)
    assert excinfo.value.field == "table"


def test_affine_algebra_round_trip(affine):
    H = affine("gl2", 3, "fp:3")
    assert deserialize(serialize(H)).identifier() == H.identifier()


def test_module_round_trip(affine):
    H = affine("gl2", 3, "fp:3")
    module = affine_induct(torus_character(H), H, ())
    back = deserialize(dumps(module))
    assert back.rank == 2
    assert back.generators == module.generators


def test_algebra_identifiers(finite_algebra):
    assert algebra_from_identifier("gl:2:3/J=-/fp:3").dimension == 4
    assert algebra_from_identifier("gl2:2/J=1/q").identifier() == "gl2:2/J=1/q"
    with pytest.raises(SchemaError):
        algebra_from_identifier("gl2:2")


@pytest.mark.parametrize("document, field", [
    ("{", "document"),
    ({"kind": "mystery"}, "kind"),
    ({"name": "no kind"}, "kind"),
    ({"kind": "hecke_module"}, "algebra_id"),
    ({"kind": "hecke_module", "algebra_id": "gl2:3/J=1/fp:3", "rank": 1}, "generators"),
])
def test_schema_errors(document, field):
    with pytest.raises(SchemaError) as excinfo:
        deserialize(document)
    assert excinfo.value.field == field


def test_serialize_rejects_other_values():
    with pytest.raises(TypeError):
        serialize(42)

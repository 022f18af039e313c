"""Check records, suite reports, JSON interchange and process metrics."""

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Union

import psutil

from coxeter import StandardLevi
from errors import HeckelabError, SchemaError
from exact_linalg import CoefficientField
from finite_group import build_group, parse_group
from hecke_affine import ProPIwahoriAlgebra, affine_algebra
from hecke_core import UnipotentHeckeAlgebra, levi_algebra
from hecke_modules import HeckeModule, module_from_json

Algebra = Union[UnipotentHeckeAlgebra, ProPIwahoriAlgebra]


def jsonable(value):
    """Measured values as plain JSON: exact fractions become strings, sets become sorted lists."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


# ----------------------------------------------------------------------
# Records
# ----------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    params: Dict[str, object]
    verdict: bool
    values: Dict[str, object]
    wall_time: float = 0.0
    error: Optional[str] = None

    def to_json(self) -> dict:
        document = {"name": self.name, "params": self.params, "verdict": "pass" if self.verdict else "fail",
                    "values": self.values, "wall_time": round(self.wall_time, 6)}
        if self.error is not None:
            document["error"] = self.error
        return document


def run_check(name: str, params: Dict[str, object], compute: Callable[[], Dict[str, object]],
              verdict: Callable[[Dict[str, object]], bool]) -> CheckResult:
    """Time one check; a HeckelabError raised inside it becomes a failing record."""
    start = time.perf_counter()
    try:
        values = jsonable(compute())
        passed = bool(verdict(values))
        error = None
    except HeckelabError as exc:
        values, passed, error = {}, False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, jsonable(params), passed, values, time.perf_counter() - start, error)


class MetricsSampler:
    """Peak resident set size and CPU load of this process, sampled between checks."""

    def __init__(self) -> None:
        self._process = psutil.Process()
        self._process.cpu_percent(interval=None)
        self._started = time.time()
        self.peak_rss = self._process.memory_info().rss

    def sample(self) -> None:
        self.peak_rss = max(self.peak_rss, self._process.memory_info().rss)

    def summary(self) -> Dict[str, object]:
        self.sample()
        memory_info = psutil.virtual_memory()
        return {"peak_rss_mb": round(self.peak_rss / 2 ** 20, 1),
                "cpu_percent": self._process.cpu_percent(interval=None),
                "system_memory_percent": memory_info.percent,
                "threads": self._process.num_threads(),
                "elapsed": round(time.time() - self._started, 3)}


@dataclass
class Report:
    suite: str
    config: Dict[str, object]
    checks: List[CheckResult] = field(default_factory=list)
    metrics: Dict[str, object] = field(default_factory=dict)

    @property
    def summary(self) -> Dict[str, int]:
        passed = sum(1 for c in self.checks if c.verdict)
        return {"total": len(self.checks), "passed": passed, "failed": len(self.checks) - passed}

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.verdict]

    @property
    def ok(self) -> bool:
        return self.summary["failed"] == 0

    def to_json(self) -> dict:
        return {"kind": "report", "suite": self.suite, "config": self.config, "summary": self.summary,
                "checks": [c.to_json() for c in self.checks], "metrics": self.metrics}

    def comparable(self) -> dict:
        """The report without wall times and process metrics."""
        document = self.to_json()
        document.pop("metrics")
        for check in document["checks"]:
            check.pop("wall_time")
        return document


# ----------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------

def serialize(value) -> dict:
    if isinstance(value, (UnipotentHeckeAlgebra, ProPIwahoriAlgebra, HeckeModule, Report)):
        return value.to_json()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(value, indent: Optional[int] = 2) -> str:
    return json.dumps(serialize(value), indent=indent, ensure_ascii=False)


def _require(document: dict, *names: str) -> None:
    if not isinstance(document, dict):
        raise SchemaError("document", "expected a JSON object")
    for name in names:
        if name not in document:
            raise SchemaError(name, "missing")


def algebra_from_identifier(identifier: str) -> Algebra:
    """Rebuild an algebra from ``gl:2:3/J=1/fp:3`` (finite) or ``gl2:3/J=-/fp:3`` (affine)."""
    parts = identifier.split("/")
    if len(parts) != 3 or not parts[1].startswith("J="):
        raise SchemaError("algebra_id", f"cannot parse {identifier!r}")
    head, levi, coeff = parts
    J = frozenset() if levi == "J=-" else frozenset(int(k) for k in levi[2:])
    field_ = CoefficientField.parse(coeff)
    if head.count(":") == 2:
        group = build_group(*parse_group(head))
        algebra = UnipotentHeckeAlgebra.from_presentation(group, field_)
        return levi_algebra(algebra, StandardLevi.of(group.datum, J))
    try:
        kind, p = head.split(":")
        return affine_algebra(kind, int(p), field_, J)
    except ValueError:
        raise SchemaError("algebra_id", f"cannot parse {identifier!r}") from None


def _unipotent_from_json(document: dict) -> UnipotentHeckeAlgebra:
    _require(document, "group", "levi", "coeff", "source", "table")
    group = build_group(*parse_group(document["group"]))
    field_ = CoefficientField.parse(document["coeff"])
    levi = StandardLevi.of(group.datum, document["levi"])
    if levi.is_full:
        algebra = UnipotentHeckeAlgebra(group.bn, field_, document["source"], group)
    else:
        algebra = UnipotentHeckeAlgebra(group.levi_bn(levi), field_, document["source"], group)
    if algebra.to_json()["table"] != document["table"]:
        raise SchemaError("table", "structure constants do not match the rebuilt algebra")
    return algebra


def _affine_from_json(document: dict) -> ProPIwahoriAlgebra:
    _require(document, "type", "p", "coeff", "J")
    algebra = affine_algebra(document["type"], document["p"], CoefficientField.parse(document["coeff"]),
                             frozenset(document["J"]))
    for name in ("q", "c"):
        if name in document and algebra.to_json()[name] != document[name]:
            raise SchemaError(name, "quadratic data do not match the rebuilt algebra")
    return algebra


def _check_from_json(document: dict, index: int) -> CheckResult:
    for name in ("name", "params", "verdict", "values", "wall_time"):
        if not isinstance(document, dict) or name not in document:
            raise SchemaError(f"checks[{index}].{name}", "missing")
    if document["verdict"] not in ("pass", "fail"):
        raise SchemaError(f"checks[{index}].verdict", f"expected pass or fail, got {document['verdict']!r}")
    return CheckResult(document["name"], document["params"], document["verdict"] == "pass", document["values"],
                       document["wall_time"], document.get("error"))


def _report_from_json(document: dict) -> Report:
    _require(document, "suite", "config", "checks", "summary")
    if not isinstance(document["checks"], list):
        raise SchemaError("checks", "expected a list")
    report = Report(document["suite"], document["config"],
                    [_check_from_json(c, i) for i, c in enumerate(document["checks"])],
                    document.get("metrics", {}))
    if report.summary != document["summary"]:
        raise SchemaError("summary", "counts do not match the check records")
    return report


def deserialize(document: Union[str, dict]):
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError("document", f"malformed JSON: {exc}") from None
    _require(document, "kind")
    kind = document["kind"]
    if kind == "unipotent_hecke_algebra":
        return _unipotent_from_json(document)
    if kind == "pro_p_iwahori_hecke_algebra":
        return _affine_from_json(document)
    if kind == "hecke_module":
        _require(document, "algebra_id")
        return module_from_json(algebra_from_identifier(document["algebra_id"]), document)
    if kind == "report":
        return _report_from_json(document)
    raise SchemaError("kind", f"unknown document kind {kind!r}")

import pytest

import settings
from errors import (
    ConfigurationError, DomainError, HeckelabError, InternalConsistencyError, PreconditionError, SchemaError,
    UnsupportedCaseError,
)


def test_log_writes_tagged_lines_to_stderr(monkeypatch, capsys):
    monkeypatch.setattr(settings, "HECKELAB_LOG_LEVEL", "info")
    settings.log("Suite", "3 checks")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err == "[Suite] 3 checks\n"


def test_quiet_log_level_silences_progress(monkeypatch, capsys):
    monkeypatch.setattr(settings, "HECKELAB_LOG_LEVEL", "quiet")
    settings.log("Suite", "3 checks")
    assert capsys.readouterr().err == ""


def test_default_limits_are_positive():
    assert settings.HECKELAB_SIZE_LIMIT > 0
    assert settings.HECKELAB_SAMPLE_PAIRS > 0
    assert settings.HECKELAB_ASSOC_TRIPLES > 0
    assert settings.HECKELAB_LOCALIZATION_CAP > 0


@pytest.mark.parametrize("error", [ConfigurationError, PreconditionError, DomainError, UnsupportedCaseError,
                                   InternalConsistencyError])
def test_library_errors_share_a_base(error):
    with pytest.raises(HeckelabError):
        raise error("boom")


def test_schema_error_names_the_field():
    error = SchemaError("checks[0].verdict", "expected pass or fail")
    assert isinstance(error, HeckelabError)
    assert error.field == "checks[0].verdict"
    assert str(error) == "checks[0].verdict: expected pass or fail"

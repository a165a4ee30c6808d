# infrastructure/test_settings.py
import pytest

from infrastructure.errors import BoundViolationError, CertificateError, LabError
from infrastructure.settings import load_settings


def test_defaults_without_environment(monkeypatch):
    for name in ("LAB_OUTPUT_DIR", "LAB_LOG_LEVEL", "LAB_LOG_JSON", "LAB_MAX_CONCURRENT", "LAB_SEED"):
        monkeypatch.delenv(name, raising=False)
    settings = load_settings()
    assert str(settings.output_dir) == "lab_output"
    assert settings.max_concurrent == 8
    assert settings.seed == 42


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("LAB_OUTPUT_DIR", str(tmp_path))
    monkeypatch.setenv("LAB_LOG_LEVEL", "debug")
    monkeypatch.setenv("LAB_LOG_JSON", "1")
    monkeypatch.setenv("LAB_SEED", "7")
    settings = load_settings()
    assert settings.output_dir == tmp_path
    assert settings.log_level == "DEBUG"
    assert settings.log_json is True
    assert settings.seed == 7


def test_exit_codes():
    assert LabError("x").exit_code == 1
    assert CertificateError("x").exit_code == 1
    err = BoundViolationError("margin", bundle={"s": 0})
    assert err.exit_code == 2
    assert err.bundle == {"s": 0}
    with pytest.raises(LabError):
        raise err

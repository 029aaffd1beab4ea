import logging
import os
from pathlib import Path

import hypothesis
import pytest

from utils.config import reset_settings
from utils.db import reset_engine
from utils.decision_log import reset_decision_log

# isolated_settings resets process state only
_SHARED = dict(deadline=None, suppress_health_check=[hypothesis.HealthCheck.function_scoped_fixture])
hypothesis.settings.register_profile("dev", max_examples=25, **_SHARED)
hypothesis.settings.register_profile("ci", max_examples=200, **_SHARED)
hypothesis.settings.register_profile("debugger", max_examples=5, report_multiple_bugs=False, **_SHARED)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "samples"
GOLDEN = Path(__file__).resolve().parent / "golden"

_ENV_KEYS = (
    "LINKHOM_CACHE_DIR",
    "LINKHOM_BUDGET",
    "LINKHOM_WORKERS",
    "LINKHOM_MAX_EXPONENT",
    "LINKHOM_LOG_LEVEL",
    "LINKHOM_DECISION_LOG",
    "LINKHOM_ADMIN_TOKEN",
    "LINKHOM_CONFIG_PATH",
    "DATABASE_URL",
)


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Every test starts from defaults, no config file and a fresh in-memory database."""
    for key in _ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("LINKHOM_CONFIG_PATH", str(tmp_path / "no-config.json"))
    monkeypatch.setenv("DATABASE_URL", "sqlite://")
    reset_settings()
    reset_engine("sqlite://")
    reset_decision_log()
    yield
    reset_settings()
    reset_engine()
    reset_decision_log()
    root = logging.getLogger()
    for handler in [h for h in root.handlers if getattr(h, "_linkhom", False)]:
        root.removeHandler(handler)


@pytest.fixture
def cache_dir(monkeypatch, tmp_path):
    path = tmp_path / "cache"
    monkeypatch.setenv("LINKHOM_CACHE_DIR", str(path))
    reset_settings()
    return path


@pytest.fixture
def samples():
    return SAMPLES


@pytest.fixture
def golden():
    return GOLDEN

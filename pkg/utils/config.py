"""Runtime settings: environment first, then ``config/linkhom.json``, then defaults."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from typing import Optional

logger = logging.getLogger(__name__)

_CACHE: Optional["Settings"] = None


@dataclass(frozen=True)
class Settings:
    cache_dir: Optional[str] = None
    budget: int = 10_000
    workers: int = 1
    max_exponent: int = 1000
    log_level: Optional[str] = None
    decision_log: bool = False
    database_url: str = "sqlite:///linkhom.db"
    admin_token: Optional[str] = None


def _config_path() -> str:
    # Allow override via env var; default to config/linkhom.json in CWD
    return os.environ.get("LINKHOM_CONFIG_PATH", os.path.join(os.getcwd(), "config", "linkhom.json"))


def _load_file() -> dict:
    p = _config_path()
    if not os.path.exists(p):
        return {}
    try:
        with open(p, "r", encoding="utf-8") as f:
            data = json.load(f) or {}
    except (OSError, ValueError) as exc:
        logger.warning("Ignoring unreadable config file %s: %s", p, exc)
        return {}
    if not isinstance(data, dict):
        logger.warning("Ignoring config file %s: top level is not an object", p)
        return {}
    return data


def _raw(env: str, file_data: dict, key: str) -> Optional[str]:
    value = os.environ.get(env)
    if value is not None and value.strip():
        return value.strip()
    value = file_data.get(key)
    if value is None:
        return None
    return str(value).strip() or None


def _env_int(name: str, default: int, file_data: Optional[dict] = None, key: str = "", minimum: int = 0) -> int:
    raw = _raw(name, file_data or {}, key)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Invalid integer %r for %s; using %d", raw, name, default)
        return default
    if value < minimum:
        logger.warning("%s=%d is below %d; using %d", name, value, minimum, default)
        return default
    return value


def _flag(raw: Optional[str]) -> bool:
    return (raw or "").lower() in ("1", "true", "yes", "on")


def get_settings() -> Settings:
    global _CACHE
    if _CACHE is not None:
        return _CACHE
    data = _load_file()
    _CACHE = Settings(
        cache_dir=_raw("LINKHOM_CACHE_DIR", data, "cache_dir"),
        budget=_env_int("LINKHOM_BUDGET", 10_000, data, "budget"),
        workers=_env_int("LINKHOM_WORKERS", 1, data, "workers", minimum=1),
        max_exponent=_env_int("LINKHOM_MAX_EXPONENT", 1000, data, "max_exponent", minimum=1),
        log_level=_raw("LINKHOM_LOG_LEVEL", data, "log_level"),
        decision_log=_flag(_raw("LINKHOM_DECISION_LOG", data, "decision_log")),
        database_url=_raw("DATABASE_URL", data, "database_url") or "sqlite:///linkhom.db",
        admin_token=_raw("LINKHOM_ADMIN_TOKEN", data, "admin_token"),
    )
    return _CACHE


def reset_settings() -> None:
    global _CACHE
    _CACHE = None

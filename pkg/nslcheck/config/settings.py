from __future__ import annotations

import json
import os
import shutil
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Any, Dict, Optional

try:
    import tomllib  # type: ignore[attr-defined]
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib  # type: ignore[import]

try:
    from platformdirs import user_config_dir
except ModuleNotFoundError:  # pragma: no cover
    def user_config_dir(app_name: str) -> str:
        return str(Path.home() / f".{app_name.lower()}")


APP_NAME = "nslcheck"
CONFIG_DIR = Path(user_config_dir(APP_NAME))
SETTINGS_PATH = CONFIG_DIR / "settings.json"
DEFAULTS_PATH = Path(__file__).with_name("defaults.toml")
ASP_SOLVER_ENV = "NSLCHECK_ASP_SOLVER"
_DEFAULTS_CACHE: Dict[str, Any] | None = None


def _load_defaults() -> Dict[str, Any]:
    global _DEFAULTS_CACHE
    if _DEFAULTS_CACHE is not None:
        return _DEFAULTS_CACHE
    if not DEFAULTS_PATH.exists():
        _DEFAULTS_CACHE = {}
        return _DEFAULTS_CACHE
    try:
        with DEFAULTS_PATH.open("rb") as fh:
            _DEFAULTS_CACHE = tomllib.load(fh)
    except Exception:
        _DEFAULTS_CACHE = {}
    return _DEFAULTS_CACHE


def _int_default(key: str, fallback: int) -> int:
    value = _load_defaults().get(key)
    try:
        return int(value)
    except (TypeError, ValueError):
        return fallback


def default_cap(fallback: int = 10_000) -> int:
    return _int_default("model_cap", fallback)


def default_max_iterations(fallback: int = 100) -> int:
    return _int_default("repair_max_iterations", fallback)


def report_schema_version(fallback: str = "1.0") -> str:
    value = _load_defaults().get("schema_version")
    return str(value) if value else fallback


_GUARD_FALLBACKS = {
    "minimal_repair_max_subsets": 1_000_000,
    "sharp_sat_max_vars": 20,
    "min_cover_max_sets": 20,
}


def guard_limit(name: str, fallback: int | None = None) -> int:
    if fallback is None:
        fallback = _GUARD_FALLBACKS[name]
    return _int_default(name, fallback)


@dataclass
class Settings:
    asp_solver: str = ""
    default_mode: str = "bij"
    default_cap: Optional[int] = None

    @classmethod
    def load(cls, path: Path | None = None) -> "Settings":
        target = path or SETTINGS_PATH
        try:
            if target.exists():
                data = json.loads(target.read_text("utf-8"))
                known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
                return cls(**known)
        except Exception:
            pass
        return cls()

    def save(self, path: Path | None = None) -> Path:
        target = path or SETTINGS_PATH
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(asdict(self), indent=2), encoding="utf-8")
        return target

    def effective_cap(self) -> int:
        return self.default_cap if self.default_cap and self.default_cap > 0 else default_cap()


def resolve_asp_solver(settings: Settings | None = None) -> Optional[str]:
    """Environment first, then saved settings, then ``clingo`` on PATH."""
    env = os.environ.get(ASP_SOLVER_ENV, "").strip()
    if env:
        return env
    if settings is None:
        settings = Settings.load()
    if settings.asp_solver:
        return settings.asp_solver
    return shutil.which("clingo")

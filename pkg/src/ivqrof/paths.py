from __future__ import annotations

import os
import uuid
from pathlib import Path
from typing import Iterable

HOME_ENV = "IVQROF_HOME"
FIXTURE_DIR = "fixtures"
CASE_STUDY = "case_study.json"


def _user_data_base() -> Path:
    if os.name == "nt":
        base = os.getenv("LOCALAPPDATA")
        if base:
            return Path(base) / "ivqrof"
        return Path.home() / "AppData" / "Local" / "ivqrof"
    data_home = os.getenv("XDG_DATA_HOME")
    if data_home:
        return Path(data_home) / "ivqrof"
    return Path.home() / ".local" / "share" / "ivqrof"


def _project_root(start: Path) -> Path:
    cur = start
    for _ in range(6):
        if (cur / "pyproject.toml").exists() or (cur / ".git").exists():
            return cur
        cur = cur.parent
    return start


def _uniquify(paths: Iterable[Path]) -> list[Path]:
    seen: set[Path] = set()
    ordered: list[Path] = []
    for p in paths:
        if p in seen:
            continue
        seen.add(p)
        ordered.append(p)
    return ordered


def _dir_is_writable(path: Path) -> bool:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError:
        return False
    marker = path / f".permcheck-{uuid.uuid4().hex}"
    try:
        marker.write_bytes(b"")
        marker.unlink()
        return True
    except OSError:
        return False


def resolve_data_home(explicit: Path | str | None = None, *, ensure_exists: bool = True) -> Path:
    """Directory for logs and run outputs: explicit, then $IVQROF_HOME, then the user data dir."""
    if explicit:
        resolved = Path(explicit).expanduser()
    elif os.getenv(HOME_ENV):
        resolved = Path(os.environ[HOME_ENV]).expanduser()
    else:
        resolved = _user_data_base()
        if not _dir_is_writable(resolved):
            resolved = Path.cwd() / ".ivqrof"
    if ensure_exists:
        resolved.mkdir(parents=True, exist_ok=True)
    return resolved


def resolve_log_path(filename: str = "ivqrof.log") -> Path:
    log_dir = resolve_data_home() / "logs"
    log_dir.mkdir(parents=True, exist_ok=True)
    return log_dir / filename


def _candidate_fixture_dirs() -> list[Path]:
    root = _project_root(Path(__file__).resolve().parent)
    candidates = [
        Path.cwd() / FIXTURE_DIR,
        root / FIXTURE_DIR,
        _user_data_base() / FIXTURE_DIR,
    ]
    home = os.getenv(HOME_ENV)
    if home:
        candidates.insert(0, Path(home).expanduser() / FIXTURE_DIR)
    return _uniquify(candidates)


def find_fixture(name: str = CASE_STUDY) -> Path:
    """Locate a bundled problem file; raises FileNotFoundError listing the places tried."""
    tried = []
    for folder in _candidate_fixture_dirs():
        path = folder / name
        if path.is_file():
            return path
        tried.append(str(path))
    raise FileNotFoundError(f"fixture {name!r} not found; tried {', '.join(tried)}")


__all__ = [
    "HOME_ENV",
    "CASE_STUDY",
    "resolve_data_home",
    "resolve_log_path",
    "find_fixture",
]

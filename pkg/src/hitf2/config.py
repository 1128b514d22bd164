"""Runtime settings: cache directory, memory budget and worker count.

Precedence is explicit argument, then environment (``HITF2_CACHE_DIR``,
``HITF2_MEM_BUDGET``, ``HITF2_THREADS``), then built-in defaults.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping

__all__ = ["Settings", "parse_size", "from_env", "current", "use", "DEFAULT_MEM_BUDGET"]

DEFAULT_MEM_BUDGET = 8 << 30

_UNITS = {"": 1, "B": 1, "K": 1 << 10, "M": 1 << 20, "G": 1 << 30, "T": 1 << 40}


def parse_size(text: str) -> int:
    """Parse ``8G``, ``512M``, ``1.5GiB`` or a plain byte count."""
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([KMGT]?)(?:i?B)?\s*", text, re.I)
    if not m:
        raise ValueError(f"cannot parse size {text!r}")
    return int(float(m.group(1)) * _UNITS[m.group(2).upper()])


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_DATA_HOME") or os.path.join(os.path.expanduser("~"), ".local", "share")
    return Path(base) / "hitf2"


@dataclass(frozen=True)
class Settings:
    cache_dir: Path | None
    mem_budget: int
    threads: int

    def with_(self, **changes) -> "Settings":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def from_env(env: Mapping[str, str] | None = None) -> Settings:
    env = os.environ if env is None else env
    cache = env.get("HITF2_CACHE_DIR")
    if cache is not None and cache.strip().lower() in ("", "none", "off"):
        cache_dir = None
    else:
        cache_dir = Path(cache) if cache else default_cache_dir()
    budget = parse_size(env["HITF2_MEM_BUDGET"]) if env.get("HITF2_MEM_BUDGET") else DEFAULT_MEM_BUDGET
    threads = int(env["HITF2_THREADS"]) if env.get("HITF2_THREADS") else (os.cpu_count() or 1)
    if threads < 1:
        raise ValueError("HITF2_THREADS must be at least 1")
    return Settings(cache_dir, budget, threads)


_override: Settings | None = None


def current() -> Settings:
    """Settings in force: an explicit override if one was installed, else the environment."""
    return _override if _override is not None else from_env()


def use(settings: Settings | None) -> None:
    """Install (or with ``None`` clear) a process-wide override."""
    global _override
    _override = settings

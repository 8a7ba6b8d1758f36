"""Optional on-disk memo tables.

When ``HITKIT_CACHE_DIR`` is set, named tables (the Adem normal forms and
the subspace lattices) are loaded from ``<dir>/<name>.pkl`` on first use and
written back at interpreter exit.  Without the variable every table lives in
memory only.
"""

from __future__ import annotations

import atexit
import logging
import os
import pickle
from pathlib import Path

log = logging.getLogger(__name__)

_TABLES: dict[str, dict] = {}
_DIRTY: set[str] = set()


def cache_dir() -> Path | None:
    raw = os.environ.get("HITKIT_CACHE_DIR")
    return Path(raw) if raw else None


def table(name: str) -> dict:
    """The memo dict called ``name``, loading it from disk if possible."""
    if name in _TABLES:
        return _TABLES[name]
    data: dict = {}
    d = cache_dir()
    if d is not None:
        path = d / f"{name}.pkl"
        if path.exists():
            try:
                with path.open("rb") as fh:
                    data = pickle.load(fh)
            except (OSError, pickle.UnpicklingError, EOFError) as exc:
                log.warning("ignoring unreadable cache %s: %s", path, exc)
                data = {}
    _TABLES[name] = data
    return data


def mark_dirty(name: str) -> None:
    _DIRTY.add(name)


def flush() -> None:
    d = cache_dir()
    if d is None:
        return
    d.mkdir(parents=True, exist_ok=True)
    for name in sorted(_DIRTY):
        tmp = d / f"{name}.pkl.tmp"
        with tmp.open("wb") as fh:
            pickle.dump(_TABLES[name], fh, protocol=pickle.HIGHEST_PROTOCOL)
        tmp.replace(d / f"{name}.pkl")
    _DIRTY.clear()


def reset() -> None:
    """Drop every in-memory table (tests use this between runs)."""
    _TABLES.clear()
    _DIRTY.clear()


atexit.register(flush)

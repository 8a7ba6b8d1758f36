from __future__ import annotations

import os
import pickle
import subprocess
import sys

import pytest

from hitkit import cache

SCRIPT = """
from hitkit.steenrod2 import adem_normalize
from hitkit.invariants import subspaces
from hitkit.field import get_field
print(sorted(adem_normalize((2, 3)).support), len(subspaces(3, 1, get_field(2))))
"""


def _run(env):
    return subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True).stdout


def test_tables_written_and_reused(tmp_path):
    env = dict(os.environ, HITKIT_CACHE_DIR=str(tmp_path))
    first = _run(env)
    assert first.strip() == "[(4, 1), (5,)] 7"
    adem = pickle.loads((tmp_path / "adem.pkl").read_bytes())
    assert adem[(2, 3)] == frozenset({(5,), (4, 1)})
    assert (3, 1, 2) in pickle.loads((tmp_path / "subspaces.pkl").read_bytes())
    assert _run(env) == first
    assert not list(tmp_path.glob("*.tmp"))


def test_no_dir_means_memory_only(monkeypatch, tmp_path):
    monkeypatch.delenv("HITKIT_CACHE_DIR", raising=False)
    cache.reset()
    cache.table("adem")[(9,)] = frozenset({(9,)})
    cache.mark_dirty("adem")
    cache.flush()
    assert cache.cache_dir() is None
    cache.reset()


def test_corrupt_file_is_ignored(monkeypatch, tmp_path):
    (tmp_path / "adem.pkl").write_bytes(b"not a pickle")
    monkeypatch.setenv("HITKIT_CACHE_DIR", str(tmp_path))
    cache.reset()
    try:
        assert cache.table("adem") == {}
    finally:
        cache.reset()

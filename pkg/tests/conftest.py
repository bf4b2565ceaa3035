from __future__ import annotations

import pytest

from cayley import config


@pytest.fixture(autouse=True)
def _log_dir(tmp_path, monkeypatch):
    # CLI tests must not write logs into the working tree
    monkeypatch.setattr(config, "CAYLEY_LOG_DIR", tmp_path / "logs")

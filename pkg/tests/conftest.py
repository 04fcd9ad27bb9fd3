from __future__ import annotations

import os
import subprocess
from pathlib import Path

import pytest

from sl2ext.specseq import dumps, witness

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture(autouse=True)
def clear_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep the caller's SL2EXT_* settings out of the tests."""
    for name in list(os.environ):
        if name.startswith("SL2EXT_"):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture
def workspace(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    root = tmp_path / "project"
    root.mkdir()
    (root / "pyproject.toml").write_text("[project]\nname = 'scratch'\n", encoding="utf-8")
    monkeypatch.chdir(root)
    return root


@pytest.fixture
def run_cli(workspace: Path):
    def _run(*args: str, check: bool = True, env_extra: dict | None = None) -> subprocess.CompletedProcess[str]:
        env = {key: value for key, value in os.environ.items() if not key.startswith("SL2EXT_")}
        env["PYTHONPATH"] = f"{Path(__file__).resolve().parents[1]}:{env.get('PYTHONPATH', '')}".rstrip(":")
        env.update(env_extra or {})
        cmd = [os.sys.executable, "-m", "sl2ext.cli", *args]
        return subprocess.run(
            cmd,
            capture_output=True,
            text=True,
            check=check,
            env=env,
            cwd=workspace,
        )

    return _run


@pytest.fixture
def witness_text() -> str:
    return dumps(witness())


@pytest.fixture
def golden() -> Path:
    return GOLDEN_DIR

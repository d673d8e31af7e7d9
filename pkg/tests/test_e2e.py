from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

pytestmark = pytest.mark.slow


def _dagdeg(tmp_path: Path, *argv: str) -> subprocess.CompletedProcess[str]:
    """Run ``python -m dagdeg`` in a clean environment with an isolated config home."""
    env = {**os.environ, "XDG_CONFIG_HOME": str(tmp_path / "xdg")}
    env.pop("DAGDEG_WORKERS", None)
    return subprocess.run(
        [sys.executable, "-m", "dagdeg", *argv],
        cwd=tmp_path,
        env=env,
        capture_output=True,  # UP022-compliant
        text=True,
    )


def test_version(tmp_path: Path):
    proc = _dagdeg(tmp_path, "--version")
    assert proc.returncode == 0
    assert proc.stdout.startswith("dagdeg v")


def test_init_config_then_verify(tmp_path: Path):
    proc = _dagdeg(tmp_path, "--init-config")
    assert proc.returncode == 0
    assert (tmp_path / "xdg" / "dagdeg" / "config.toml").exists()

    proc = _dagdeg(tmp_path, "--workers", "2", "verify", "g2")
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "1/1 fixtures match" in proc.stdout


def test_verify_a3_and_e6(tmp_path: Path):
    for name in ("a3", "e6"):
        proc = _dagdeg(tmp_path, "--workers", "2", "--format", "json", "verify", name)
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert json.loads(proc.stdout)["failures"] == {}


def test_poly_reports_pipeline(tmp_path: Path):
    proc = _dagdeg(tmp_path, "poly", "--system", "B2", "--weight=-1,-1")
    assert proc.returncode == 0
    assert "pipeline: extremal" in proc.stderr
    assert proc.stdout.splitlines()[0] == "1"


def test_usage_error_exit_code(tmp_path: Path):
    proc = _dagdeg(tmp_path, "degrees", "--system", "A2", "--weight", "1")
    assert proc.returncode == 2
    assert "coordinates" in proc.stderr

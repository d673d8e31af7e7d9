#!/usr/bin/env python3

"""Development task runner for dagdeg."""

import inspect
import json
import os
import shutil
import subprocess
import sys
import tomllib
import zipfile
from collections.abc import Callable, Mapping
from pathlib import Path
from textwrap import dedent
from typing import NoReturn

# Expected project name (validated against pyproject.toml on startup)
PROJECT_NAME = "dagdeg"

DIST = Path("dist")
META_FILE = Path(f"src/{PROJECT_NAME}/_meta.py")
DEV_SCRIPT = Path(sys.argv[0]).name if sys.argv[0] else "dev.py"
DEV_SCRIPT_REAL_FILE = Path(os.path.realpath(__file__)).name
LINT_PATHS = ("src/", "tests/", "scripts/")

project_config: dict = {}


def esc(s: str | None) -> str:
    """JSON-escape a string without the surrounding quotes."""
    return json.dumps(s or "")[1:-1]


def fail(msg: str, code: int = 1) -> NoReturn:
    print(f"Error: {msg}", file=sys.stderr)
    sys.exit(code)


def load_project_config() -> dict:
    """Load pyproject.toml, making sure we run from the root of this project."""
    path = Path("pyproject.toml")
    if not path.exists():
        fail(f"pyproject.toml not found. Run {DEV_SCRIPT} from the project root.")

    config = tomllib.loads(path.read_text(encoding="utf-8"))
    name = config.get("project", {}).get("name", "")
    if name != PROJECT_NAME:
        fail(f"pyproject.toml defines project.name='{name}' but '{PROJECT_NAME}' expected")
    return config


def run(*args: str) -> int:
    print(f"+ {' '.join(args)}", file=sys.stderr)
    return subprocess.run(args).returncode


def uv(*args: str) -> int:
    return run("uv", "run", *args)


def _min_python() -> str:
    """Lowest MAJOR.MINOR named by requires-python (best effort)."""
    requires = (project_config.get("project") or {}).get("requires-python") or ""
    for clause in (c.strip() for c in requires.split(",")):
        if clause.startswith((">=", "==")):
            major, _, rest = clause[2:].strip().partition(".")
            minor = rest.split(".")[0]
            if major.isdigit() and minor.isdigit():
                return f"{major}.{minor}"
            break
    return "3.11"


# ---- _meta.py ----


def build_meta_content() -> str:
    project = project_config.get("project") or {}
    license = project.get("license")
    if isinstance(license, dict):
        license = license.get("text") or ""
    urls = project.get("urls") or {}
    homepage = urls.get("Homepage") or urls.get("Repository") or ""

    return dedent(f"""\
        # Auto-generated from pyproject.toml by `{DEV_SCRIPT_REAL_FILE} emit-meta` - do not edit manually.

        APP_NAME = "{esc(PROJECT_NAME)}"
        APP_DESCRIPTION = "{esc(project.get("description"))}"
        VERSION = "{esc(str(project.get("version") or ""))}"
        LICENSE = "{esc(license or "")}"
        HOMEPAGE = "{esc(homepage)}"
        MIN_PYTHON = "{esc(_min_python())}"
        """)  # noqa


def emit_meta() -> int:
    """Generate src/dagdeg/_meta.py from pyproject.toml"""
    META_FILE.write_text(build_meta_content(), encoding="utf-8")
    print(f"✓ Generated {META_FILE}", file=sys.stderr)
    return 0


def check_meta() -> int:
    """Check that _meta.py is in sync with pyproject.toml"""
    if not META_FILE.exists() or META_FILE.read_text(encoding="utf-8") != build_meta_content():
        print(f"ERROR: {META_FILE} is stale. Run: `{DEV_SCRIPT} emit-meta`", file=sys.stderr)
        return 1
    print(f"✓ {META_FILE} is in sync", file=sys.stderr)
    return 0


# ---- quality gates ----


def fix() -> int:
    """Format + auto-fix"""
    return uv("ruff", "format", *LINT_PATHS) or uv("ruff", "check", "--fix", *LINT_PATHS)


def test_slow() -> int:
    """Run only slow tests (full fixture recomputation, e2e)"""
    return uv("pytest", f"--cov={PROJECT_NAME}", "--cov-report=xml", "-m", "slow")


def check() -> int:
    """Format check + lint + typecheck + test (exclude slow tests)"""
    rc = check_meta()
    hint = ""
    if rc == 0:
        rc = uv("ruff", "format", "--check", *LINT_PATHS) or uv("ruff", "check", *LINT_PATHS)
        if rc != 0:
            hint = f" (try to run `{DEV_SCRIPT} fix`)"
    if rc == 0:
        rc = uv("mypy", f"--python-version={_min_python()}", *LINT_PATHS) or uv(
            "pytest", f"--cov={PROJECT_NAME}", "--cov-report=xml", "-m", "not slow"
        )

    if rc != 0:
        print(f"\n✗ Checks failed{hint}.", file=sys.stderr)
        return rc
    print("\n✓ All checks passed!", file=sys.stderr)
    return 0


def check_all() -> int:
    """Run full checks (including slow tests)"""
    return check() or test_slow()


def verify() -> int:
    """Recompute every shipped golden fixture through the CLI"""
    return uv(PROJECT_NAME, "--workers", "0", "verify", "all")


# ---- packaging ----


def build() -> int:
    """Build wheel and sdist, then list what went into the wheel"""
    if check_meta() != 0:
        return 1
    if DIST.exists():
        shutil.rmtree(DIST)
    if run("uv", "build") != 0:
        return 1

    wheel = next(DIST.glob("*.whl"), None)
    if wheel:
        print(f"\n--- {wheel.name} ---", file=sys.stderr)
        with zipfile.ZipFile(wheel) as zf:
            fixtures = [i for i in zf.infolist() if "/_fixtures/" in i.filename]
            for info in zf.infolist():
                if info.filename.endswith(".py"):
                    print(f"{info.file_size:>8}  {info.filename}")
            print(f"{len(fixtures):>8}  golden fixture files", file=sys.stderr)
    return 0


def clean() -> int:
    """Remove build artifacts and caches"""
    patterns = ["dist", "build", "*.egg-info", "**/__pycache__", ".cache", ".pytest_cache"]
    found: set[Path] = set()
    for pattern in patterns:
        found.update(Path(".").glob(pattern))

    # files before their parent directories
    for path in sorted(found, key=lambda p: (p.is_dir(), len(p.as_posix())), reverse=True):
        if not path.exists():
            continue
        print(f"Removing {path}", file=sys.stderr)
        if path.is_dir():
            shutil.rmtree(path)
        else:
            path.unlink()
    return 0


Task = Callable[[], int]


def print_usage(tasks: Mapping[str, Task]) -> None:
    print(f"Usage: {DEV_SCRIPT} {{{'|'.join(sorted(tasks))}}}", file=sys.stderr)
    width = max(len(name) for name in tasks) + 2
    for name, func in tasks.items():
        doc = (inspect.getdoc(func) or "").splitlines()
        print(f"  {name:<{width}}{doc[0] if doc else ''}", file=sys.stderr)


def main() -> int:
    global project_config
    project_config = load_project_config()

    tasks: dict[str, Task] = {
        "emit-meta": emit_meta,
        "check-meta": check_meta,
        "fix": fix,
        "check": check,
        "test-slow": test_slow,
        "check-all": check_all,
        "verify": verify,
        "build": build,
        "clean": clean,
    }

    if len(sys.argv) < 2 or sys.argv[1] in {"-h", "--help", "help"}:
        print_usage(tasks)
        return 0 if len(sys.argv) >= 2 else 1

    task = tasks.get(sys.argv[1])
    if task is None:
        print(f"Unknown task: {sys.argv[1]}", file=sys.stderr)
        print(f"Available: {', '.join(tasks)}", file=sys.stderr)
        return 1
    return task()


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface: exit codes, output formats and verification."""

import json
from importlib import resources

import pytest

from dagdeg import VERSION
from dagdeg.cli import main, parse_weight
from dagdeg.config import WORKERS_ENV
from dagdeg.rootsystem import build_root_system


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    """Call main() against an empty config; returns (code, stdout, stderr)."""
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    config = tmp_path / "config.toml"

    def _run(*argv):
        code = main(["--config", str(config), *argv])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


@pytest.fixture
def fixture_copy(tmp_path):
    """The shipped golden data copied to a writable directory."""
    target = tmp_path / "golden"
    target.mkdir()
    for entry in resources.files("dagdeg._fixtures").iterdir():
        if entry.name.endswith((".txt", ".toml")):
            (target / entry.name).write_text(entry.read_text(encoding="utf-8"), encoding="utf-8")
    return target


# ---------------------------------------------------------------------------
# global flags
# ---------------------------------------------------------------------------


def test_version(run):
    code, out, _ = run("--version")
    assert code == 0
    assert out.strip() == f"dagdeg v{VERSION}"


def test_no_arguments_prints_help(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_flag(run):
    code, _, err = run("--bogus")
    assert code == 2
    assert "unrecognized" in err


def test_missing_command(run):
    code, _, err = run("--verbose")
    assert code == 2
    assert "usage" in err


def test_init_config(run, tmp_path):
    code, out, _ = run("--init-config")
    assert code == 0
    assert (tmp_path / "config.toml").exists()
    assert "Created config" in out
    code, out, _ = run("--init-config")
    assert "already exists" in out


def test_bad_config_is_a_usage_error(run, tmp_path):
    (tmp_path / "config.toml").write_text("[options]\nworkers = -3\n", encoding="utf-8")
    code, _, err = run("counterexamples")
    assert code == 2
    assert "Error loading config" in err


def test_bad_worker_environment(run, monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "abc")
    code, _, err = run("verify", "g2")
    assert code == 2
    assert WORKERS_ENV in err


def test_parse_weight():
    system = build_root_system("A2")
    assert parse_weight("-1,0", system) == (-1, 0)
    with pytest.raises(ValueError, match="coordinates"):
        parse_weight("1", system)
    with pytest.raises(ValueError, match="Malformed"):
        parse_weight("1,x", system)


# ---------------------------------------------------------------------------
# fundamental / poly
# ---------------------------------------------------------------------------


def test_fundamental_type_a(run):
    code, out, _ = run("fundamental", "--system", "A2", "--index", "1")
    assert code == 0
    assert out.splitlines()[0] == "1"
    assert len(out.splitlines()) == 3


def test_fundamental_json(run):
    code, out, _ = run("--format", "json", "fundamental", "--system", "A3", "--index", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["system"] == "A3"
    assert payload["base"] == [0, -1, 0]
    assert payload["part"] == "full"
    assert len(payload["terms"]) == 6
    assert payload["terms"][0] == {"c": [0, 0, 0], "e": 0, "k": 1}


def test_fundamental_singular_part_can_be_zero(run):
    code, out, _ = run("fundamental", "--system", "A3", "--index", "2", "--part", "singular")
    assert code == 0
    assert out.strip() == "0"


def test_fundamental_index_out_of_range(run):
    code, _, err = run("fundamental", "--system", "B3", "--index", "0")
    assert code == 2
    assert "out of range" in err


def test_unknown_system(run):
    code, _, err = run("fundamental", "--system", "Q7", "--index", "1")
    assert code == 2
    assert "Error" in err


@pytest.mark.slow
def test_fundamental_matches_shipped_f4_file(run):
    code, out, _ = run("fundamental", "--system", "F4", "--setting", "twisted", "--index", "4")
    assert code == 0
    text = resources.files("dagdeg._fixtures").joinpath("f4_twisted_4.txt").read_text()
    assert out.strip() == text.strip()


def test_poly_antidominant(run):
    code, out, err = run("poly", "--system", "A1", "--weight=-1")
    assert code == 0
    assert out == "1\n+ A[1]/q\n"
    assert "pipeline: extremal" in err


def test_poly_dominant_is_a_single_monomial(run):
    code, out, err = run("poly", "--system", "A1", "--weight", "1")
    assert code == 0
    assert out.strip() == "1"
    assert "pipeline: general" in err


def test_poly_rank_mismatch(run):
    code, _, err = run("poly", "--system", "A2", "--weight=-1")
    assert code == 2
    assert "coordinates" in err


# ---------------------------------------------------------------------------
# degrees
# ---------------------------------------------------------------------------


def test_degrees_g2_second_fundamental(run):
    code, out, _ = run("--format", "json", "degrees", "--system", "G2", "--weight", "0,1")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert {row["word"]: row["n"] for row in rows} == {
        "id": 0,
        "2": 1,
        "12": 1,
        "212": 2,
        "1212": 2,
        "21212": 2,
    }
    assert all(row["e"] == row["n"] and not row["singular"] for row in rows)
    assert all("d" in row for row in rows)


def test_degrees_text_marks_singular_rows(run):
    code, out, _ = run(
        "degrees", "--system", "G2", "--setting", "twisted", "--weight", "0,1", "--which", "all"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["w", "e", "n"]
    assert len(lines) == 7
    assert any(line.endswith("*") for line in lines[1:])


def test_degrees_pbw_twisted_is_rejected(run):
    code, _, err = run(
        "degrees", "--system", "B3", "--setting", "twisted", "--weight", "1,0,0", "--which", "pbw"
    )
    assert code == 2
    assert "twisted" in err


def test_degrees_requires_dominant_weight(run):
    code, _, err = run("degrees", "--system", "A2", "--weight=-1,0")
    assert code == 2
    assert "dominant" in err


# ---------------------------------------------------------------------------
# counterexamples / verify
# ---------------------------------------------------------------------------


def test_counterexamples(run):
    code, out, _ = run("--workers", "1", "counterexamples")
    assert code == 0
    assert "G2 untwisted λ=(2, 1) w=w0: 5 < 6" in out
    assert "MISMATCH" not in out
    assert len(out.splitlines()) == 5


@pytest.mark.slow
def test_counterexamples_json_with_sweep(run):
    code, out, _ = run("--workers", "1", "--format", "json", "counterexamples", "--box", "1")
    assert code == 0
    payload = json.loads(out)
    assert all(case["matches"] for case in payload["cases"])
    sweep = {(row["system"], row["setting"]): row["strict_cases"] for row in payload["sweep"]}
    assert sweep[("A2", "untwisted")] == 0
    assert sweep[("B3", "untwisted")] > 0


def test_verify_g2(run):
    code, out, _ = run("--workers", "1", "verify", "g2")
    assert code == 0
    assert "ok   g2_table" in out
    assert "1/1 fixtures match" in out


def test_verify_detects_a_corrupted_term(run, fixture_copy):
    path = fixture_copy / "a3_bicharacters.toml"
    text = path.read_text(encoding="utf-8")
    path.write_text(
        text.replace('"A[2,2,2]" = "t**2"', '"A[2,2,2]" = "t**3"', 1), encoding="utf-8"
    )
    code, out, _ = run("--workers", "1", "--fixtures-dir", str(fixture_copy), "verify", "a3")
    assert code == 1
    assert "FAIL a3_untwisted_bicharacter_1" in out
    assert "~ A[2,2,2]: A[2,2,2]/q^3 -> A[2,2,2]/q^2" in out


def test_verify_json_reports_failures(run, fixture_copy):
    path = fixture_copy / "g2_table.toml"
    text = path.read_text(encoding="utf-8")
    path.write_text(text.replace("a_tilde_nu = [2, 6]", "a_tilde_nu = [2, 5]", 1), encoding="utf-8")
    code, out, _ = run(
        "--workers", "1", "--format", "json", "--fixtures-dir", str(fixture_copy), "verify", "g2"
    )
    assert code == 1
    failures = json.loads(out)["failures"]["g2_table"]
    assert {entry["key"] for entry in failures} >= {"21212:a_tilde_nu"}


def test_verify_missing_directory(run, tmp_path):
    code, _, err = run("--fixtures-dir", str(tmp_path / "nowhere"), "verify", "g2")
    assert code == 2
    assert "not found" in err

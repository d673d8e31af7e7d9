"""Unit coverage for Config loading and the embedded template."""

import os

import pytest

from dagdeg.config import DEFAULT_OPTIONS, Config, _get_embedded_file, default_config_dir

# ---------------------------------------------------------------------------
# load
# ---------------------------------------------------------------------------


def test_missing_file_keeps_defaults(tmp_path):
    cfg = Config(str(tmp_path / "absent.toml"))
    cfg.load()
    assert cfg.options == DEFAULT_OPTIONS
    assert cfg.fixtures_dir is None


def test_options_are_parsed(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text(
        '[options]\nworkers = 3\noutput_format = "JSON"\nsetting = "twisted"\n'
        'log_level = "debug"\nfixtures_dir = "~/golden"\n',
        encoding="utf-8",
    )
    cfg = Config(str(path))
    cfg.load()
    assert cfg.options["workers"] == 3
    assert cfg.options["output_format"] == "json"
    assert cfg.options["setting"] == "twisted"
    assert cfg.fixtures_dir is not None
    assert cfg.fixtures_dir.name == "golden"


def test_partial_options_fall_back(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("[options]\nworkers = 2\n", encoding="utf-8")
    cfg = Config(str(path))
    cfg.load()
    assert cfg.options == {**DEFAULT_OPTIONS, "workers": 2}


def test_invalid_toml(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("[options\n", encoding="utf-8")
    with pytest.raises(ValueError, match="Invalid TOML in config"):
        Config(str(path)).load()


@pytest.mark.parametrize(
    "body, name",
    [
        ("workers = -1", "workers"),
        ("workers = true", "workers"),
        ("workers = 'many'", "workers"),
        ("setting = 'affine'", "setting"),
        ("output_format = 'yaml'", "output_format"),
        ("log_level = 'loud'", "log_level"),
    ],
)
def test_bad_option_values(tmp_path, body, name):
    path = tmp_path / "config.toml"
    path.write_text(f"[options]\n{body}\n", encoding="utf-8")
    with pytest.raises(ValueError, match=name):
        Config(str(path)).load()


def test_options_must_be_a_table(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text('options = "nope"\n', encoding="utf-8")
    with pytest.raises(ValueError, match="must be a table"):
        Config(str(path)).load()


# ---------------------------------------------------------------------------
# create_default
# ---------------------------------------------------------------------------


def test_create_default_writes_embedded_template(tmp_path, capsys):
    path = tmp_path / "nested" / "config.toml"
    cfg = Config(str(path))
    cfg.create_default()
    assert path.read_text(encoding="utf-8") == _get_embedded_file("config.toml")
    assert "Created config" in capsys.readouterr().out
    cfg.load()
    assert cfg.options == DEFAULT_OPTIONS


def test_create_default_keeps_existing(tmp_path, capsys):
    path = tmp_path / "config.toml"
    path.write_text("# mine\n", encoding="utf-8")
    Config(str(path)).create_default()
    assert path.read_text(encoding="utf-8") == "# mine\n"
    assert "--force" in capsys.readouterr().out
    Config(str(path)).create_default(force=True)
    assert "[options]" in path.read_text(encoding="utf-8")


@pytest.mark.skipif(os.name == "nt", reason="XDG layout only")
def test_default_config_dir_follows_xdg(monkeypatch, tmp_path):
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path))
    assert default_config_dir() == tmp_path / "dagdeg"

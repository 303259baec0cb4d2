#!/usr/bin/env python3
"""
Tests for the command line interface
"""

import json
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

sys.path.insert(0, str(Path(__file__).parent / "src"))

import main as main_module
import src.cli as cli_module
from src.cli import cli
from src.config import Config
from src.errors import HarnessError
from src.logger import logger
from src.harness import FIXTURE_DIR

QUINTIC = str(FIXTURE_DIR / "x5_general.json")


def test_run_one_family():
    result = CliRunner().invoke(cli, ["run", QUINTIC])
    assert result.exit_code == 0
    assert "x5-general" in result.output


def test_run_json_report(tmp_path):
    out = tmp_path / "report.json"
    result = CliRunner().invoke(cli, ["run", QUINTIC, "--format", "json", "-o", str(out)])
    assert result.exit_code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["reports"][0]["case_id"] == "x5-general"
    assert data["reports"][0]["verdict"]["tag"] == "LinkCandidate"


def test_missing_file_exits_with_input_error(tmp_path):
    result = CliRunner().invoke(cli, ["run", str(tmp_path / "absent.json")])
    assert result.exit_code == 2


def test_catalog_passes():
    result = CliRunner().invoke(cli, ["catalog"])
    assert result.exit_code == 0
    assert "All verdicts match the catalog" in result.output


def test_text_diagram():
    result = CliRunner().invoke(cli, ["diagram", QUINTIC])
    assert result.exit_code == 0
    assert "case x5-general\n" in result.output
    assert "verdict: LinkCandidate" in result.output


def test_svg_diagram_file(tmp_path):
    out = tmp_path / "x5.svg"
    result = CliRunner().invoke(cli, ["diagram", QUINTIC, "--format", "svg", "-o", str(out)])
    assert result.exit_code == 0
    assert "<svg" in out.read_text(encoding="utf-8")


def test_show_config():
    result = CliRunner().invoke(cli, ["show-config"])
    assert result.exit_code == 0
    assert "Max unprojections" in result.output


def test_log_file_from_configuration(monkeypatch, tmp_path):
    log_file = tmp_path / "run.log"
    monkeypatch.setenv("LOG_FILE", str(log_file))
    monkeypatch.setattr(cli_module, "config", Config())
    try:
        result = CliRunner().invoke(cli, ["run", QUINTIC])
        assert result.exit_code == 0
    finally:
        logger.close()
        logger.configure("INFO", None)
    assert "x5-general" in log_file.read_text(encoding="utf-8")


def test_main_reports_the_error_code(monkeypatch, capsys):
    def broken():
        raise HarnessError("fixture directory is empty", code="SchemaError")

    monkeypatch.setattr(main_module, "cli", broken)
    with pytest.raises(SystemExit) as e:
        main_module.main()
    assert e.value.code == 2
    assert "SchemaError: fixture directory is empty" in capsys.readouterr().out

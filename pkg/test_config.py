#!/usr/bin/env python3
"""
Tests for configuration, logging and the error hierarchy
"""

import sys
from pathlib import Path

import pytest
from pydantic import ValidationError

sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.config import Config, EngineConfig
from src.errors import BlowupError, EngineError, GameError
from src.logger import EngineLogger
from src.models import GameStep, StepKind


def test_engine_defaults():
    engine = EngineConfig()
    assert engine.max_unprojections == 3
    assert engine.substitution_depth == 2
    assert engine.alpha_iterations == 50
    assert engine.strict is False


def test_engine_bounds():
    with pytest.raises(ValidationError):
        EngineConfig(max_unprojections=11)
    with pytest.raises(ValidationError):
        EngineConfig(alpha_iterations=0)


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("KBLOWUP_MAX_UNPROJECTIONS", "5")
    monkeypatch.setenv("KBLOWUP_STRICT", "yes")
    monkeypatch.setenv("KBLOWUP_FORMAT", "json")
    cfg = Config()
    assert cfg.engine.max_unprojections == 5
    assert cfg.engine.strict is True
    assert cfg.output.default_format == "json"
    assert cfg.validate()


def test_invalid_settings_fail_validation(monkeypatch):
    monkeypatch.setenv("KBLOWUP_FORMAT", "pdf")
    assert not Config().validate()
    monkeypatch.setenv("KBLOWUP_FORMAT", "text")
    monkeypatch.setenv("LOG_LEVEL", "LOUD")
    assert not Config().validate()


def test_error_codes():
    e = BlowupError("germ is not terminal", code="NonTerminalCentre")
    assert isinstance(e, EngineError)
    assert e.code == "NonTerminalCentre"
    assert str(e) == "NonTerminalCentre: germ is not terminal"
    assert GameError("x").code == "GameError"


def test_logger_writes_file(tmp_path):
    log_file = tmp_path / "logs" / "engine.log"
    log = EngineLogger(name="kblowup-test", log_level="DEBUG", log_file=str(log_file))
    log.case_started("toy")
    log.step_resolved("toy", GameStep(wall=(1, 0), kind=StepKind.ISOMORPHISM, witness="c in f"))
    log.verdict_reached("toy", "BadLink", "BadLink")
    for handler in log.logger.handlers:
        handler.flush()
    text = log_file.read_text(encoding="utf-8")
    assert "toy" in text
    assert "BadLink" in text


def test_log_file_setting_reaches_the_logger(monkeypatch, tmp_path):
    """📝 LOG_FILE from the environment attaches a file handler"""
    log_file = tmp_path / "engine.log"
    monkeypatch.setenv("LOG_FILE", str(log_file))
    monkeypatch.setenv("LOG_LEVEL", "DEBUG")
    cfg = Config()
    assert cfg.logging.log_file == str(log_file)

    log = EngineLogger(name="kblowup-config-test")
    log.configure(cfg.logging.log_level, cfg.logging.log_file)
    log.fake_divisor_found("toy", ["u", "s"])
    log.close()
    assert "fake divisor (u,s)" in log_file.read_text(encoding="utf-8")


def test_no_log_file_means_console_only(monkeypatch):
    monkeypatch.delenv("LOG_FILE", raising=False)
    log = EngineLogger(name="kblowup-console-test")
    log.configure(Config().logging.log_level, Config().logging.log_file)
    assert len(log.logger.handlers) == 1

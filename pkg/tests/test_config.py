import logging

import pytest

from remez_lab.config import DEFAULT_ENUMERATION_CAP, check_cap, default_log_level, enumeration_cap
from remez_lab.exceptions import CapExceededError, ConfigurationError


def test_default_cap(monkeypatch):
    monkeypatch.delenv("REMEZ_LAB_CAP", raising=False)
    assert enumeration_cap() == DEFAULT_ENUMERATION_CAP


def test_cap_override(monkeypatch):
    monkeypatch.setenv("REMEZ_LAB_CAP", "100")
    assert enumeration_cap() == 100
    with pytest.raises(CapExceededError):
        check_cap(101)
    check_cap(100)


@pytest.mark.parametrize("raw", ["zero", "0", "-5"])
def test_bad_cap_rejected(monkeypatch, raw):
    monkeypatch.setenv("REMEZ_LAB_CAP", raw)
    with pytest.raises(ConfigurationError):
        enumeration_cap()


def test_explicit_cap_wins(monkeypatch):
    monkeypatch.setenv("REMEZ_LAB_CAP", "1")
    check_cap(50, cap=64)


def test_log_level(monkeypatch):
    monkeypatch.setenv("REMEZ_LAB_LOG_LEVEL", "warning")
    assert default_log_level() == logging.WARNING
    monkeypatch.setenv("REMEZ_LAB_LOG_LEVEL", "chatty")
    assert default_log_level() == logging.INFO

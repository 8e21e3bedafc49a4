"""
Tests for settings, the error hierarchy and logger construction.

Tests cover:
- Defaults and environment overrides
- Field bounds
- Error messages carrying structured details
- Bound logger context
"""

import json
import re

import pytest
from pydantic import ValidationError
from structlog.testing import capture_logs

from src.config import Settings, get_settings
from src.exceptions import ApproximationError, CapExceeded, UsageError
from src.logging_config import configure_logging, get_logger


class TestSettings:
    """Test configuration loading."""

    def test_defaults(self):
        """Test the documented defaults."""
        settings = get_settings()
        assert settings.n_max == 256
        assert settings.quad_order == 272
        assert settings.seed == 42
        assert settings.log_level == "INFO"

    def test_environment_override(self, monkeypatch: pytest.MonkeyPatch):
        """Test variables are read case-insensitively."""
        monkeypatch.setenv("n_max", "64")
        monkeypatch.setenv("THREADS", "2")
        settings = get_settings()
        assert settings.n_max == 64
        assert settings.threads == 2
        assert settings.quad_order == 80

    def test_cached(self):
        """Test get_settings returns one instance."""
        assert get_settings() is get_settings()

    def test_every_field_documented(self):
        """Test the class docstring lists every setting."""
        doc = Settings.__doc__ or ""
        missing = [n for n in Settings.model_fields if not re.search(rf"^\s+{n}:", doc, re.M)]
        assert missing == []

    def test_bounds(self):
        """Test out-of-range values are refused."""
        with pytest.raises(ValidationError):
            Settings(n_max=4)
        with pytest.raises(ValidationError):
            Settings(panel_tol=0.0)
        with pytest.raises(ValidationError):
            Settings(log_level="LOUD")


class TestErrors:
    """Test the exception hierarchy."""

    def test_message_only(self):
        """Test errors without details print their message."""
        assert str(UsageError("bad flag")) == "bad flag"

    def test_details_sorted(self):
        """Test details are appended in key order."""
        error = CapExceeded("Degree too large", n=300, cap=256)
        assert str(error) == "Degree too large (cap=256, n=300)"
        assert error.details == {"n": 300, "cap": 256}

    def test_common_base(self):
        """Test every library error shares one base class."""
        assert isinstance(CapExceeded("x"), ApproximationError)
        assert isinstance(UsageError("x"), ApproximationError)


class TestLogger:
    """Test bound loggers."""

    def test_initial_context(self):
        """Test context passed at construction appears on every event."""
        with capture_logs() as logs:
            get_logger("tests", suite="h-norm").info("Suite started")
        assert logs[0]["event"] == "Suite started"
        assert logs[0]["suite"] == "h-norm"

    def test_configured_output_on_stderr(self, capsys: pytest.CaptureFixture):
        """Test configured entries are sorted JSON on stderr with stdout left clean."""
        configure_logging()
        get_logger("tests").info("Suite started", suite="quadrature")
        captured = capsys.readouterr()
        assert captured.out == ""
        line = captured.err.strip().splitlines()[-1]
        entry = json.loads(line)
        assert (entry["event"], entry["suite"], entry["level"]) == (
            "Suite started",
            "quadrature",
            "info",
        )
        assert line == json.dumps(entry, sort_keys=True)

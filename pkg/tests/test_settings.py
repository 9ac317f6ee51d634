"""
Unit tests for environment-driven settings.
"""
import pytest

from src.cli.app import EXIT_USAGE, main
from src.components.errors import ConfigurationError
from src.components.settings import Settings


class TestSettings:
    """Test cases for Settings."""

    def test_environment_defaults(self, monkeypatch):
        """Test that unset arguments come from the environment."""
        monkeypatch.setenv('QSERIES_DENOMINATOR', '6')
        monkeypatch.setenv('QSERIES_WORKERS', '3')
        settings = Settings()
        assert settings.denominator == 6
        assert settings.workers == 3
        assert settings.as_dict()['default_order'] == 40

    def test_explicit_wins(self, monkeypatch):
        """Test that explicit arguments override the environment."""
        monkeypatch.setenv('QSERIES_DENOMINATOR', '6')
        assert Settings(denominator=4).denominator == 4

    def test_explicit_zero_denominator(self):
        """Test that an explicit zero is rejected instead of replaced by the environment."""
        with pytest.raises(ConfigurationError):
            Settings(denominator=0)

    def test_explicit_zero_workers(self):
        """Test lower bounds on the other knobs."""
        with pytest.raises(ConfigurationError):
            Settings(workers=0)
        with pytest.raises(ConfigurationError):
            Settings(shell_margin=0)
        assert Settings(default_order=0).default_order == 0

    def test_bad_environment_value(self, monkeypatch):
        """Test malformed environment values."""
        monkeypatch.setenv('QSERIES_DEFAULT_ORDER', 'forty')
        with pytest.raises(ConfigurationError):
            Settings()

    def test_cli_zero_denominator(self, capsys):
        """Test that --denominator 0 is a usage error."""
        assert main(['--denominator', '0', 'list']) == EXIT_USAGE
        assert 'denominator' in capsys.readouterr().err

    def test_cli_zero_workers(self, capsys):
        """Test that --workers 0 is a usage error."""
        assert main(['verify-all', '--order', '1', '--workers', '0', '--no-checks']) == EXIT_USAGE

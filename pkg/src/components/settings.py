"""
Runtime settings read from the environment (optionally populated from a .env file).
"""
import logging
import os
from typing import Optional

from src.components.errors import ConfigurationError

logger = logging.getLogger(__name__)


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    return value


def _pick(value: Optional[int], label: str, name: str, default: int, minimum: int) -> int:
    if value is None:
        return _int_from_env(name, default, minimum)
    if value < minimum:
        raise ConfigurationError(f"{label} must be >= {minimum}, got {value}")
    return value


class Settings:
    """Engine-wide knobs. Explicit arguments win over environment variables."""

    def __init__(
        self,
        denominator: Optional[int] = None,
        default_order: Optional[int] = None,
        workers: Optional[int] = None,
        shell_margin: Optional[int] = None,
    ):
        """
        Initialize the settings.

        Args:
            denominator: Global exponent denominator D
            default_order: Truncation order (whole powers of q) for records without one
            workers: Worker processes for verify-all (1 = sequential)
            shell_margin: Consecutive shells above the order before lattice sums stop
        """
        self.denominator = _pick(denominator, 'denominator', 'QSERIES_DENOMINATOR', 2, 1)
        self.default_order = _pick(default_order, 'default_order', 'QSERIES_DEFAULT_ORDER', 40, 0)
        self.workers = _pick(workers, 'workers', 'QSERIES_WORKERS', 1, 1)
        self.shell_margin = _pick(shell_margin, 'shell_margin', 'QSERIES_SHELL_MARGIN', 3, 1)

        logger.debug(
            f"Settings: denominator={self.denominator}, "
            f"default_order={self.default_order}, workers={self.workers}, "
            f"shell_margin={self.shell_margin}"
        )

    def as_dict(self) -> dict:
        return {
            'denominator': self.denominator,
            'default_order': self.default_order,
            'workers': self.workers,
            'shell_margin': self.shell_margin,
        }

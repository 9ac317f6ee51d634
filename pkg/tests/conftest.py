"""
Pytest configuration and fixtures.
"""
import pytest
import sys
from pathlib import Path

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.components.settings import Settings  # noqa: E402


def count_partitions(n: int, modulus: int, residues) -> int:
    """Partitions of n into parts whose residue mod ``modulus`` lies in ``residues``."""
    parts = [p for p in range(1, n + 1) if p % modulus in residues]
    ways = [1] + [0] * n
    for part in parts:
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def naive_product(factors, order):
    """
    Coefficients of prod (1 - c q^e) up to q^order for integer exponents e >= 0.

    ``factors`` is an iterable of (c, e) pairs.
    """
    coeffs = [1] + [0] * order
    for c, e in factors:
        updated = list(coeffs)
        for k in range(order + 1 - e):
            updated[k + e] -= c * coeffs[k]
        coeffs = updated
    return coeffs


@pytest.fixture
def partition_oracle():
    """Brute-force partition counter with congruence conditions."""
    return count_partitions


@pytest.fixture
def product_oracle():
    """Brute-force expansion of finite products of (1 - c q^e)."""
    return naive_product


@pytest.fixture
def settings():
    """Engine settings with the default denominator."""
    return Settings(denominator=2, default_order=40, workers=1, shell_margin=3)


@pytest.fixture(autouse=True)
def env_setup(monkeypatch):
    """Set up environment variables for testing."""
    monkeypatch.setenv('QSERIES_DENOMINATOR', '2')
    monkeypatch.setenv('QSERIES_DEFAULT_ORDER', '40')
    monkeypatch.setenv('QSERIES_WORKERS', '1')
    monkeypatch.setenv('QSERIES_SHELL_MARGIN', '3')
    monkeypatch.delenv('QSERIES_LOG_LEVEL', raising=False)

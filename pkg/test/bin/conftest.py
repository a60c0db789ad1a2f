"""Pytest configuration and the shared bases, algebras and generators for the jetspace tests."""

import random
import sys
from pathlib import Path

import pytest

# Put the bin directory on the path at conftest import time - BEFORE test modules are collected - so a
# test can `import witt_core` (etc.) at module top, not only inside a function where a fixture has run.
_BIN_DIR = Path(__file__).parent.parent.parent / "bin"
if str(_BIN_DIR) not in sys.path:
    sys.path.insert(0, str(_BIN_DIR))

from finite_algebras import make_algebra  # noqa: E402
from padic_base import standard_base  # noqa: E402


@pytest.fixture
def base3():
    """Z_3: p = 3, unramified."""
    return standard_base(3, 1)


@pytest.fixture
def base2():
    return standard_base(2, 1)


@pytest.fixture
def base5():
    """Z_5[√5]: p = 5, e = 2, E = T² − 5."""
    return standard_base(5, 2)


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def z9(base3):
    return make_algebra(base3, 2)


@pytest.fixture
def dual3(base3):
    """F_3[t]/(t²)."""
    return make_algebra(base3, 1, [("t", 2)])


@pytest.fixture(autouse=True)
def _quiet(monkeypatch):
    """No progress on stderr and no stray JETSPACE_* settings from the developer's shell."""
    monkeypatch.setenv("JETSPACE_VERBOSITY", "0")
    for name in ("JETSPACE_P", "JETSPACE_E", "JETSPACE_D", "JETSPACE_N", "JETSPACE_SEED", "JETSPACE_FORMAT",
                 "JETSPACE_WORKERS", "JETSPACE_SIZE_LIMIT"):
        monkeypatch.delenv(name, raising=False)

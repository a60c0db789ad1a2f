"""
Progress lines on stderr, gated by JETSPACE_VERBOSITY (0 silent, 1 suite and case lines, 2 per-sample detail).

Reports go to stdout; nothing here ever does. The variable is read on every call so a test can raise
it with monkeypatch, and a `.env` loaded by the entry point counts the same as the real environment.
"""

import os
import sys

VERBOSITY_VARIABLE = "JETSPACE_VERBOSITY"


def verbosity() -> int:
    try:
        return int(os.environ.get(VERBOSITY_VARIABLE) or "0")
    except ValueError:
        return 0


def info1(message: str) -> None:
    """A progress line shown only at raised verbosity."""
    if verbosity() >= 1:
        sys.stderr.write(message + "\n")


def info2(message: str) -> None:
    if verbosity() >= 2:
        sys.stderr.write(message + "\n")

"""Run the acceptance suite and print one line per criterion.

    python scripts/run_acceptance.py [-k EXPR]

A thin wrapper around ``pytest tests/test_acceptance.py``; the summary lines
come from the hook in tests/conftest.py.  Exit status is pytest's.
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(pytest.main([str(ROOT / "tests" / "test_acceptance.py"), "-q", *sys.argv[1:]]))

"""
Shared fixtures: an inspector writing to memory, and a line runner
"""

import io
from pathlib import Path

import pytest

from interface import Inspector, InspectorConfig

BOOKS = Path(__file__).parent / "interface" / "books"


@pytest.fixture
def console():
    return io.StringIO()


@pytest.fixture
def inspector(console):
    """A fresh inspector over the bundled books, console captured"""
    config = InspectorConfig(show_banner=False, book_dir=str(BOOKS))
    return Inspector(config, console=console, stdin=io.StringIO(""))


@pytest.fixture
def run_lines(inspector):
    """Execute command lines in order; the breakout flag is left for the test"""
    def run(*lines):
        for line in lines:
            inspector.execute_line(line)
        return inspector
    return run

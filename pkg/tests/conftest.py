import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from draftcoach.textcore import build_document

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


def make_sentence(text: str, index: int = 0):
    """Single tagged sentence from raw text."""
    return build_document(text).sentences[index]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for outcome, tag in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" in nodeid and "::" in nodeid:
                lines.append((nodeid.split("::")[-1], tag))
    if lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for name, tag in sorted(set(lines)):
            terminalreporter.write_line(f"  {tag}: {name}")


@pytest.fixture(scope="session")
def fig2_edu_texts() -> list[str]:
    return [
        "Compare the past eight five-year plans with actual appropriations.",
        "The Pentagon's strategists produce budgets",
        "that simply cannot be executed",
        "because they assume",
        "a defense strategy depends only on goals and threats.",
        "Strategy, however, is about possibilities, not hopes and dreams.",
    ]

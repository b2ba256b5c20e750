import sys
from pathlib import Path

import pytest

from bautq.dsl import parse_model

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "fixtures"
FIXTURE_FILES = sorted(FIXTURE_DIR.glob("*.mm"))


def load(name: str):
    return parse_model((FIXTURE_DIR / f"{name}.mm").read_text(encoding="utf-8"))


def valid_fixture_models():
    """Every fixture model that passes validation (the corrupted variants are skipped)."""
    out = []
    for path in FIXTURE_FILES:
        mf = parse_model(path.read_text(encoding="utf-8"))
        if mf.model.validation().ok:
            out.append((path.stem, mf.model))
    return out


@pytest.fixture
def fixture_dir():
    return FIXTURE_DIR


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])

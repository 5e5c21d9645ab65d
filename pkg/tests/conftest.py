import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracle import from_text, ring_from_text  # noqa: E402

from idemring.rings import build_ring  # noqa: E402

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(number: int, passed: bool, detail: str):
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE[number] = (passed, detail)
    print(line)
    return passed


@pytest.fixture
def acceptance():
    return record


class Mirror:
    """A package ring alongside its oracle, with codes mapped to oracle elements."""

    def __init__(self, text):
        self.R = build_ring(text)
        self.O = ring_from_text(text)
        self.el = [from_text(self.O, self.R.render(c)) for c in range(self.R.card)]
        self.code = {x: c for c, x in enumerate(self.el)}

    def __getitem__(self, code):
        return self.el[int(code)]


@pytest.fixture(scope="session")
def mirror():
    cache = {}

    def get(text):
        if text not in cache:
            cache[text] = Mirror(text)
        return cache[text]
    return get


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[n]
        tr.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'} - {detail}")
    tr.write_line(f"{sum(p for p, _ in ACCEPTANCE.values())}/{len(ACCEPTANCE)} criteria pass")

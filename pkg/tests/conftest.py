import pytest

from kleininv.coeff import F2L, GF4
from kleininv.rep import parse_selector

# one line per acceptance criterion, filled in by test_acceptance.py
CRITERIA: dict[int, tuple[bool, str]] = {}

OMEGA = GF4("t")
LAMBDA = F2L("l")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, text = CRITERIA[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {text}")


@pytest.fixture(scope="session")
def rep():
    """Selector -> Representation, cached for the session."""
    cache = {}

    def get(selector: str):
        if selector not in cache:
            cache[selector] = parse_selector(selector)
        return cache[selector]

    return get

"""Shared fixtures and the acceptance report printed at the end of the run."""
from collections import OrderedDict

import pytest

_ACCEPTANCE: "OrderedDict[str, list]" = OrderedDict()


class AcceptanceRecorder:
    """Collects one line per checked quantity, grouped by criterion number."""

    def __call__(self, criterion: int, label: str, value: float, bound: str, ok: bool) -> bool:
        _ACCEPTANCE.setdefault(criterion, []).append((label, value, bound, bool(ok)))
        return bool(ok)


@pytest.fixture(scope="session")
def acceptance():
    return AcceptanceRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE):
        for label, value, bound, ok in _ACCEPTANCE[crit]:
            tr.write_line(f"  [{crit:>2}] {'PASS' if ok else 'FAIL'}  {label}: {value} (need {bound})")
    for crit in sorted(_ACCEPTANCE):
        ok = all(r[3] for r in _ACCEPTANCE[crit])
        tr.write_line(f"CRITERION {crit}: {'PASS' if ok else 'FAIL'}")

import re

import pytest

# criterion id -> [status, text, details from each test sharing the criterion]
_RESULTS: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(cid, text): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    cid, text = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = "SKIP" if rep.skipped else ("PASS" if rep.passed else "FAIL")
        entry = _RESULTS.setdefault(cid, [status, text, []])
        # several tests may share a criterion: any failure wins
        if status == "FAIL" or entry[0] == "SKIP":
            entry[0] = status
        detail = getattr(item, "_criterion_detail", "")
        if detail:
            entry[2].append(detail)


@pytest.fixture
def detail(request):
    """Attach a one-line measurement to the criterion summary line."""

    def put(text: str) -> None:
        request.node._criterion_detail = text

    return put


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_RESULTS, key=lambda c: (int(re.match(r"\d+", c).group()), c)):
        status, text, details = _RESULTS[cid]
        suffix = " | " + "; ".join(details) if details else ""
        terminalreporter.write_line(f"{status} [{cid}] {text}{suffix}")

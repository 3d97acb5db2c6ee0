import pytest

_RESULTS_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one criterion line: ``acceptance(n, label, ok, detail)``."""
    results = request.config.stash[_RESULTS_KEY]

    def record(number, label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:<3} {label}: {detail}"
        results.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS_KEY, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in results:
        terminalreporter.write_line(line)
    failed = sum(line.startswith("[FAIL]") for line in results)
    terminalreporter.write_line(f"{len(results) - failed} passed, {failed} failed")

import random

import pytest


@pytest.fixture
def rng():
    return random.Random(1234)


def rand_int_matrix(rng, rows, cols, bound=5):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


# ----------------------------------------------------- acceptance summary lines

_criteria: dict[int, dict] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when not in ("setup", "call"):
        return
    num, desc = marker.args
    entry = _criteria.setdefault(num, {"desc": desc, "ok": True, "seconds": 0.0, "notes": []})
    entry["seconds"] += call.duration
    if call.excinfo is not None:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status}  ({e['seconds']:.2f} s)  {e['desc']}")
        for line in e.get("notes", []):
            terminalreporter.write_line(f"               {line}")


@pytest.fixture
def note(request):
    """Attach an informational line to the summary of the current criterion."""
    marker = request.node.get_closest_marker("criterion")
    num, desc = marker.args
    entry = _criteria.setdefault(num, {"desc": desc, "ok": True, "seconds": 0.0, "notes": []})
    return entry["notes"].append

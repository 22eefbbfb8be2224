import json
import subprocess
import sys
import time

import pytest

SWEEP_ARGS = ["verify", "--all-q", "16", "--trials", "1000", "--seed", "42"]

# filled by the acceptance module, printed after the run
ACCEPTANCE_LINES: list[str] = []


def run_sweep(path):
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "affine_inductive", *SWEEP_ARGS, "--output", str(path)],
        capture_output=True,
        text=True,
    )
    seconds = time.perf_counter() - t0
    return proc, seconds, path.read_bytes() if path.exists() else b""


@pytest.fixture(scope="session")
def grid_sweep(tmp_path_factory):
    """One full-grid verification run in a fresh process."""
    proc, seconds, raw = run_sweep(tmp_path_factory.mktemp("sweep") / "first.json")
    return {"proc": proc, "seconds": seconds, "raw": raw, "data": json.loads(raw) if raw else None}


@pytest.fixture(scope="session")
def grid_reports(grid_sweep):
    data = grid_sweep["data"]
    assert data is not None, grid_sweep["proc"].stderr
    return {r["params"]["q"]: r for r in data["reports"]}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

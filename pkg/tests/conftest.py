from pathlib import Path

import numpy as np
import pytest

from netrisk import load_panel

ROOT = Path(__file__).resolve().parents[1]
FIXTURE_DIR = ROOT / "fixtures" / "synthetic"
FIXTURE_FILES = {
    "exposures": FIXTURE_DIR / "exposures.csv",
    "risk_inputs": FIXTURE_DIR / "risk_inputs.csv",
    "transitions": FIXTURE_DIR / "transitions.csv",
}

# filled by test_acceptance.py, printed at the end of the session
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def fixture_files():
    return FIXTURE_FILES


@pytest.fixture(scope="session")
def fixture_panel():
    return load_panel(FIXTURE_FILES["exposures"], FIXTURE_FILES["risk_inputs"], FIXTURE_FILES["transitions"])


def random_adjacency(rng: np.random.Generator, n: int, p: float | None = None) -> np.ndarray:
    p = rng.uniform(0.1, 0.7) if p is None else p
    a = (rng.random((n, n)) < p).astype(int)
    np.fill_diagonal(a, 0)
    return a


def node_names(n: int) -> tuple[str, ...]:
    return tuple(f"N{chr(ord('A') + k)}" for k in range(n))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS, key=lambda k: (int(k.rstrip("abcdefg")), k)):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}")

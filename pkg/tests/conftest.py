import functools
import importlib.util
from pathlib import Path

import numpy as np
import pytest

from octant import build_preset, evolve, make_pure

MIXED_EXAMPLE = np.array(
    [
        [1.0, 0.75 * np.exp(0.5j * np.pi), 0.5 * np.exp(0.75j * np.pi)],
        [0.75 * np.exp(-0.5j * np.pi), 1.0, np.exp(0.25j * np.pi)],
        [0.5 * np.exp(-0.75j * np.pi), np.exp(-0.25j * np.pi), 1.0],
    ]
) / 3.0

PRESET_RUNS = (
    ("rabi", None),
    ("two-pulse", "omega2-off"),
    ("two-pulse", "omega2-on"),
    ("eit", "resonant"),
    ("eit", "detuned"),
    ("fwm", None),
)


@functools.lru_cache(maxsize=None)
def preset_trajectory(name, variant=None, samples=1201):
    schedule = build_preset(name, variant)
    times = np.linspace(0.0, schedule.duration, samples)
    return evolve(make_pure(1, 0, 0), schedule, times)


def _load_golden():
    path = Path(__file__).parent / "golden" / "regenerate.py"
    spec = importlib.util.spec_from_file_location("golden_regenerate", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


golden = _load_golden()


def random_density(rng, rank=3):
    a = rng.normal(size=(3, rank)) + 1j * rng.normal(size=(3, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_pure(rng):
    v = rng.normal(size=3) + 1j * rng.normal(size=3)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20230425)


# -- acceptance reporting ---------------------------------------------------------

ACCEPTANCE_RESULTS = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    label = report.nodeid.split("::")[-1]
    detail = dict(report.user_properties).get("measured", "")
    ACCEPTANCE_RESULTS.append((label, report.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"{status}  {label}"
        terminalreporter.write_line(f"{line}  [{detail}]" if detail else line)

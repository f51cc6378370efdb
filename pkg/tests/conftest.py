import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("pdde", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("pdde")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_points(rng, dim, count=20, radius=2.0):
    mod = rng.uniform(0, radius, size=(count, dim))
    return mod * np.exp(1j * rng.uniform(0, 2 * np.pi, size=(count, dim)))


# acceptance criteria report one line each; the summary hook prints them at the end
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[number] = (passed, detail)
    print(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")

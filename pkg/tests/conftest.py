import contextlib

import pytest
from hypothesis import HealthCheck, settings

from intlattice.a15 import build_A15_plus, named_lattices
from intlattice.shortvec import vectors_up_to

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def record(number: int, title: str):
        _ACCEPTANCE[number] = (title, "FAIL")
        yield
        _ACCEPTANCE[number] = (title, "PASS")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")


@pytest.fixture(scope="session")
def a15p():
    return build_A15_plus()


@pytest.fixture(scope="session")
def named():
    return named_lattices()


@pytest.fixture(scope="session")
def roots(a15p):
    return vectors_up_to(a15p, 2).with_norm(2)

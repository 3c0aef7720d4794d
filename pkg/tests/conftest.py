import os

import pytest
from hypothesis import settings

from pluscodes import _kernels
from pluscodes.registry import Registry

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per kernel backend."""
    monkeypatch.setattr(_kernels, "BACKEND", request.param)
    return request.param


@pytest.fixture(scope="session")
def registry():
    return Registry.load()


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance lines so they show without -s."""
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)

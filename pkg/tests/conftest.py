import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(params=["python", "cython"])
def backend(request, monkeypatch):
    """Run a test once per available multiplication kernel."""
    from wronskpi import kernels
    impls = kernels.available_backends()
    if request.param not in impls:
        pytest.skip(f"{request.param} kernel not built")
    monkeypatch.setattr(kernels, "mul_trunc", impls[request.param])
    return request.param


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])

import warnings

import pytest
from hypothesis import HealthCheck, settings

from qcrypta.params import ParameterWarning
from qcrypta.xof import SeedExpander, derive_seed

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _quiet_table_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ParameterWarning)
        yield


@pytest.fixture
def rng():
    return SeedExpander(derive_seed(b"tests", "rng"), "tests")


def expander(label, idx=0):
    return SeedExpander(derive_seed(b"tests", label, idx), "tests")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])

import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, derandomize=True, deadline=None)
settings.register_profile("thorough", max_examples=2000, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full acceptance-scale sweeps (run with -m slow)")


def pytest_collection_modifyitems(config, items):
    if "slow" in (config.getoption("markexpr") or ""):
        return
    skip = pytest.mark.skip(reason="acceptance sweep, run with -m slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)

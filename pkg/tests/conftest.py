import os
import sys
from pathlib import Path

import hypothesis as hyp
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.depth_api import DepthEngine  # noqa: E402

# Exact arithmetic on Fractions is slow enough to trip the default deadline.
hyp.settings.register_profile("default", deadline=None, max_examples=100)
hyp.settings.register_profile("ci", deadline=None, max_examples=1000)
hyp.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

DEPTH_ENV = ("DEPTH_HEADLINE", "DEPTH_DEBUG_CHECKS", "DEPTH_LOG_LEVEL", "DEPTH_COORD_BOUND")


@pytest.fixture(scope="session")
def engine():
    """Closed-headline engine with full tree checks after every mutation"""
    for name in DEPTH_ENV:
        os.environ.pop(name, None)
    return DepthEngine(overrides={"headline": "closed", "debug_checks": True})


@pytest.fixture
def clean_env(monkeypatch):
    for name in DEPTH_ENV:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: timing checks, skipped unless DEPTH_RUN_SLOW=1")

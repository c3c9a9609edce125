"""Shared pytest setup: project root on sys.path, small fixtures."""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from config import CLOUDS_DIR


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale run (deselect with -m 'not slow')")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def clouds_dir():
    return CLOUDS_DIR

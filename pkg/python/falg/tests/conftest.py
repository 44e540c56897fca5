"""Shared fixtures: charts, small bundles and the shipped corpus specs."""

import os
import sys

import pytest

MEMBER_DIR = os.path.join(os.path.dirname(__file__), "..")
REPO_ROOT = os.path.join(MEMBER_DIR, "..", "..")
sys.path.insert(0, os.path.abspath(MEMBER_DIR))
sys.path.insert(0, os.path.abspath(REPO_ROOT))

from algebra.scalars import Chart, parse_scalar  # noqa: E402
from problem_spec import load_spec  # noqa: E402


@pytest.fixture(scope="session")
def xy():
    return Chart.create(["x", "y"])


@pytest.fixture(scope="session")
def xyz():
    return Chart.create(["x", "y", "z"])


@pytest.fixture(scope="session")
def chi_chart():
    return Chart.create(["x", "y"], {"chi": {"x": "2*x^-3*chi", "y": "0"}})


@pytest.fixture(scope="session")
def chi_spec():
    return load_spec("chi_plane")


@pytest.fixture(scope="session")
def euclid_spec():
    return load_spec("euclidean_rotations")


@pytest.fixture(scope="session")
def noncartan_spec():
    return load_spec("noncartan_rank2")


@pytest.fixture
def scalar():
    """scalar(text, chart) shorthand."""
    return lambda text, chart: parse_scalar(text, chart)

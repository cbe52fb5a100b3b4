from __future__ import annotations

from pathlib import Path

import pytest

from evplant.aging import load_calendar_coeffs, load_cycle_coeffs
from evplant.params import default_data_dir, load_parameter_set

TESTS_DIR = Path(__file__).parent


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return default_data_dir()


@pytest.fixture(scope="session")
def pset(data_dir):
    return load_parameter_set(data_dir)


@pytest.fixture(scope="session")
def cal_coeffs(data_dir):
    return load_calendar_coeffs(data_dir)


@pytest.fixture(scope="session")
def cyc_coeffs(data_dir):
    return load_cycle_coeffs(data_dir)

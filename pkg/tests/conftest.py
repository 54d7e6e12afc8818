"""Shared fixtures for the daywatch test suite."""

from pathlib import Path

import pytest

from daywatch import InputParameters

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def baseline():
    """Reference record: degrades with two grid-analysis errors."""
    return InputParameters(
        t6_1=6.0, t6_2=6.0, t16=16.0, t24=24.0, k_c=4.0, c_0=50.0, delta=0.035
    )


@pytest.fixture
def clean():
    """Record chosen so every pipeline quantity is defined."""
    return InputParameters(
        t6_1=5.7, t6_2=5.7, t16=15.2, t24=22.8, k_c=1.0, c_0=38.0, delta=1.0
    )


@pytest.fixture
def records_csv():
    return (DATA_DIR / "records.csv").read_text(encoding="utf-8")

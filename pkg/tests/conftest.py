from __future__ import annotations

from pathlib import Path

import pytest

from polyrep.chartspec import parse_spec
from polyrep.dataset import parse_csv

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def penguins():
    return parse_csv((FIXTURES / "penguins.csv").read_bytes())


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


def load_fixture_spec(name: str):
    return parse_spec((FIXTURES / name).read_bytes())

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tnlab.sieve import build_spf_table
from tnlab.tn import ParitySupplier


@pytest.fixture(scope="session")
def table():
    return build_spf_table(1 << 16)


@pytest.fixture(scope="session")
def supplier(table):
    return ParitySupplier(table)

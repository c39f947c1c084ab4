import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for tests.oracles as `oracles`

from wdiv.cache import load_or_sieve

CACHE_DIR = Path(os.environ.get("WDIV_TABLE_CACHE", "/tmp/wdiv-table-cache"))


@pytest.fixture(scope="session")
def table10k():
    return load_or_sieve(10_000, CACHE_DIR)


@pytest.fixture(scope="session")
def table100k():
    return load_or_sieve(100_000, CACHE_DIR)


@pytest.fixture(scope="session")
def table4m():
    return load_or_sieve(4_000_000, CACHE_DIR)

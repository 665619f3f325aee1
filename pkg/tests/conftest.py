from functools import lru_cache
from pathlib import Path

import pytest

from zetabound.arithmetic import required_limit, sieve_mangoldt
from zetabound.extremal import ExtremalParams
from zetabound.zeros import find_zeros, load_zeros

DATA = Path(__file__).parent / "data"
ZEROS_HEIGHT = 75_000.0


@pytest.fixture(scope="session")
def zeros_75k():
    """Every zero below 7.5e4 (about 1e5 ordinates), computed once per session."""
    return find_zeros(ZEROS_HEIGHT)


@pytest.fixture(scope="session")
def zeros_75k_file(zeros_75k, tmp_path_factory):
    from zetabound.zeros import save_zeros

    path = tmp_path_factory.mktemp("zeros") / "zeros_75k.txt"
    save_zeros(zeros_75k, path)
    return path


@pytest.fixture(scope="session")
def reference_zeros():
    """First 29 ordinates from mpmath.zetazero, frozen to 16 digits."""
    return load_zeros(DATA / "reference_zeros.txt")


@lru_cache(maxsize=None)
def _table(delta):
    return sieve_mangoldt(max(2, required_limit(ExtremalParams(delta))))


@pytest.fixture(scope="session")
def mangoldt():
    """mangoldt(delta) -> a table long enough for that delta."""
    return _table

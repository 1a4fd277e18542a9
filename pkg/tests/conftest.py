import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture(scope="session")
def census3():
    """Every relabeling class of solutions with n <= 3, as BraidedMaps."""
    from braidlab.census import _from_key, search_canonical
    return [_from_key(n, key) for n in (1, 2, 3) for key in search_canonical(n)]

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from mcatt.TT_oracle import D0, D1, D2, COMP_PS, ASSOC_PS, STOCK
from mcatt.TT_kernel import clear_cache

DATA = Path(__file__).resolve().parents[1] / 'data'


@pytest.fixture(autouse=True)
def fresh_kernel():
    clear_cache()
    yield


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def disks():
    return {'D0': D0, 'D1': D1, 'D2': D2, 'comp': COMP_PS, 'assoc': ASSOC_PS}


@pytest.fixture
def stock():
    return STOCK

import json
from pathlib import Path

import numpy as np
import pytest

from dotchain import ChainState, DeviceParams


@pytest.fixture(scope="session")
def golden():
    return json.loads((Path(__file__).parent / "golden_values.json").read_text())


@pytest.fixture(scope="session")
def dev():
    return DeviceParams()


def random_state(n: int, rng: np.random.Generator) -> ChainState:
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    amps /= np.linalg.norm(amps)
    return ChainState(n, amps)

import math
from pathlib import Path

import pytest

from nanocontour import Gains, PlantParams

REPO_ROOT = Path(__file__).resolve().parent.parent
CONFIG_DIR = REPO_ROOT / "configs"


@pytest.fixture
def plant_x() -> PlantParams:
    return PlantParams(natural_frequency=2 * math.pi * 120.0, damping_ratio=0.7, dc_gain=1.0)


@pytest.fixture
def plant_y() -> PlantParams:
    return PlantParams(natural_frequency=2 * math.pi * 100.0, damping_ratio=0.6, dc_gain=1.0)


@pytest.fixture
def tuned_gains() -> Gains:
    # grid-swept values shipped in the bundled configs
    return Gains(k_px=1.0, k_ix=200.0, k_py=1.0, k_iy=200.0, k_dx=32.0, k_dy=32.0)


@pytest.fixture
def config_dir() -> Path:
    return CONFIG_DIR

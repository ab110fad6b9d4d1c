import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from irsbeam import IrsArray, NearFieldGeometry, WidebandConfig


@pytest.fixture
def cfg200():
    """Reference wideband setup: 200 GHz carrier, 6 GHz band, 128 subcarriers."""
    return WidebandConfig(carrier_hz=200e9, bandwidth_hz=6e9, n_subcarriers=128)


@pytest.fixture
def array64(cfg200):
    return IrsArray.half_wavelength(cfg200, 64)


@pytest.fixture
def geometry64(cfg200, array64):
    """Reference near-field layout: BS (0,0), user (3,0), first element (1,1)."""
    return NearFieldGeometry(
        bs_xy=(0.0, 0.0), user_xy=(3.0, 0.0), irs_origin_xy=(1.0, 1.0), array=array64
    )


def make_geometry(cfg, n_elements):
    return NearFieldGeometry(
        bs_xy=(0.0, 0.0),
        user_xy=(3.0, 0.0),
        irs_origin_xy=(1.0, 1.0),
        array=IrsArray.half_wavelength(cfg, n_elements),
    )

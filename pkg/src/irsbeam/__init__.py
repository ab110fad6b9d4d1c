"""Wideband THz IRS link simulator.

Models far-field and near-field cascaded BS-IRS-user channels over an OFDM
subcarrier grid, quantifies the per-subcarrier gain loss caused by beam
squint, and synthesizes delay-adjustable-metasurface phase/delay profiles
that restore the full beam gain across the band.
"""

from .cli import fraunhofer_distance
from .farfield import (
    FarDamDesign,
    far_beam_gain,
    far_beam_gain_profile,
    far_dam_design,
    far_optimal_phases,
    far_squint_direction,
)
from .model import (
    SPEED_OF_LIGHT,
    Axis,
    CascadedPath,
    DelayProfile,
    FarFieldTarget,
    GainMap,
    IrsArray,
    NearFieldGeometry,
    PhaseProfile,
    WidebandConfig,
    cascaded_far_response,
    far_steering_vector,
    near_steering_vector,
    subcarrier_frequencies,
    subcarrier_frequency,
)
from .nearfield import (
    NearDamDesign,
    element_distances,
    near_beam_gain,
    near_dam_design,
    near_gain_row,
    near_optimal_phases,
    near_squint_distance,
)
from .scan import (
    angle_sweep,
    grid_points,
    location_heatmap,
    squint_metrics,
    subcarrier_sweep_far,
    subcarrier_sweep_near,
)
from .scenario import Scenario, ScenarioError, SweepSpec, load_scenario, scenario_from_dict

__version__ = "0.1.0"

__all__ = [
    "SPEED_OF_LIGHT",
    "Axis",
    "CascadedPath",
    "DelayProfile",
    "FarDamDesign",
    "FarFieldTarget",
    "GainMap",
    "IrsArray",
    "NearDamDesign",
    "NearFieldGeometry",
    "PhaseProfile",
    "Scenario",
    "ScenarioError",
    "SweepSpec",
    "WidebandConfig",
    "angle_sweep",
    "cascaded_far_response",
    "element_distances",
    "far_beam_gain",
    "far_beam_gain_profile",
    "far_dam_design",
    "far_optimal_phases",
    "far_squint_direction",
    "far_steering_vector",
    "fraunhofer_distance",
    "grid_points",
    "load_scenario",
    "location_heatmap",
    "near_beam_gain",
    "near_dam_design",
    "near_gain_row",
    "near_optimal_phases",
    "near_squint_distance",
    "near_steering_vector",
    "scenario_from_dict",
    "squint_metrics",
    "subcarrier_frequencies",
    "subcarrier_frequency",
    "subcarrier_sweep_far",
    "subcarrier_sweep_near",
]

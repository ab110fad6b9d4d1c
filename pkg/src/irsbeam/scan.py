"""Sweep and metric engine: gain-vs-angle curves, gain-vs-subcarrier curves,
2-D near-field heatmaps, and scalar squint metrics.

All sweeps emit normalized gain (divided by the element count R, so the
analytic peak is 1) packed into a :class:`~irsbeam.model.GainMap`. Rows are
evaluated one at a time, keeping memory proportional to a single grid row.
Subcarrier selectors are 1-based; index 0 means the exact carrier frequency.
"""

from __future__ import annotations

import numpy as np

from .farfield import far_beam_gain_profile, far_dam_design, far_optimal_phases
from .model import (
    Axis,
    DelayProfile,
    GainMap,
    IrsArray,
    NearFieldGeometry,
    PhaseProfile,
    WidebandConfig,
    subcarrier_frequencies,
    subcarrier_frequency,
)
from .nearfield import near_dam_design, near_gain_row, near_optimal_phases

DEFAULT_NU_GRID = (-1.0, 1.0, 1e-3)
DEFAULT_HEATMAP_HALF_SPAN_M = 0.5
DEFAULT_HEATMAP_STEP_M = 0.005
DEFAULT_THRESHOLD = 0.5


def grid_points(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive uniform grid; the step must be positive and divide the span."""
    if not np.isfinite(step) or step <= 0:
        raise ValueError(f"grid step must be positive, got {step}")
    n = int(round((stop - start) / step))
    if n < 0 or abs(start + n * step - stop) > 1e-9 * max(abs(stop), abs(start), step):
        raise ValueError(f"step {step} does not divide the span [{start}, {stop}]")
    return start + step * np.arange(n + 1)


def angle_sweep(
    array: IrsArray,
    cfg: WidebandConfig,
    phases: PhaseProfile,
    delays: DelayProfile | None = None,
    subcarriers=(1, 0, -1),
    nu_grid=DEFAULT_NU_GRID,
) -> GainMap:
    """Normalized far-field gain over a (subcarrier x direction) grid.

    ``subcarriers`` lists 1-based indices (0 = carrier); -1 is shorthand for
    the highest subcarrier. ``nu_grid`` is (start, stop, step).
    """
    subcarriers = [cfg.n_subcarriers if s == -1 else s for s in subcarriers]
    if not subcarriers:
        raise ValueError("at least one subcarrier row is required")
    freqs = np.array([subcarrier_frequency(cfg, s) for s in subcarriers])
    nu = grid_points(*nu_grid)
    values = far_beam_gain_profile(array, cfg, freqs, nu, phases, delays) / array.n_elements
    return GainMap(
        axes=(
            Axis("subcarrier", "index (0 = carrier)", np.array(subcarriers)),
            Axis("direction", "sin(chi) - sin(psi)", nu),
        ),
        values=values,
        normalized=True,
    )


def subcarrier_sweep_far(
    array: IrsArray, cfg: WidebandConfig, design_direction: float, use_dam: bool = False
) -> GainMap:
    """Normalized gain at the design direction across all M subcarriers.

    ``use_dam`` switches from the phase-only profile to the joint phase/delay
    design, which holds the value at 1 for every subcarrier.
    """
    if use_dam:
        design = far_dam_design(array, cfg, design_direction)
        phases, delays = design.phases, design.delays
    else:
        phases, delays = far_optimal_phases(array, design_direction), None
    freqs = subcarrier_frequencies(cfg)
    values = (
        far_beam_gain_profile(
            array, cfg, freqs, np.array([design_direction]), phases, delays
        )[:, 0]
        / array.n_elements
    )
    return GainMap(
        axes=(Axis("subcarrier", "index", np.arange(1, cfg.n_subcarriers + 1)),),
        values=values,
        normalized=True,
    )


def subcarrier_sweep_near(
    geom: NearFieldGeometry, cfg: WidebandConfig, use_dam: bool = False
) -> GainMap:
    """Normalized gain at the user across all M subcarriers (near-field)."""
    if use_dam:
        design = near_dam_design(geom, cfg)
        phases, delays = design.phases, design.delays
    else:
        phases, delays = near_optimal_phases(geom, cfg), None
    target = np.array([geom.user_xy])
    values = np.array(
        [
            near_gain_row(geom, cfg, f, target, phases, delays)[0]
            for f in subcarrier_frequencies(cfg)
        ]
    ) / geom.array.n_elements
    return GainMap(
        axes=(Axis("subcarrier", "index", np.arange(1, cfg.n_subcarriers + 1)),),
        values=values,
        normalized=True,
    )


def location_heatmap(
    geom: NearFieldGeometry,
    cfg: WidebandConfig,
    subcarrier: int = 0,
    use_dam: bool = False,
    half_span_m: float = DEFAULT_HEATMAP_HALF_SPAN_M,
    step_m: float = DEFAULT_HEATMAP_STEP_M,
) -> GainMap:
    """Normalized near-field gain over a 2-D grid centered on the user.

    The grid spans user +/- half_span in x and y with uniform spacing, so the
    user sits exactly on the center cell. The argmax cell is available via
    :meth:`GainMap.argmax_cell` (ties break row-major to the lowest index).
    """
    if use_dam:
        design = near_dam_design(geom, cfg)
        phases, delays = design.phases, design.delays
    else:
        phases, delays = near_optimal_phases(geom, cfg), None
    freq = subcarrier_frequency(cfg, subcarrier)
    ux, uy = geom.user_xy
    xs = ux + grid_points(-half_span_m, half_span_m, step_m)
    ys = uy + grid_points(-half_span_m, half_span_m, step_m)
    values = np.empty((xs.size, ys.size))
    row = np.empty((ys.size, 2))
    for i, x in enumerate(xs):
        row[:, 0] = x
        row[:, 1] = ys
        values[i] = near_gain_row(geom, cfg, freq, row, phases, delays)
    values /= geom.array.n_elements
    return GainMap(
        axes=(Axis("x", "m", xs), Axis("y", "m", ys)),
        values=values,
        normalized=True,
    )


def squint_metrics(gain_map: GainMap, threshold: float = DEFAULT_THRESHOLD) -> dict:
    """Scalar squint summary of a normalized gain map.

    Returns the fraction of grid points with value >= threshold, and the
    minimum and mean values. The fraction is non-increasing in the threshold.
    """
    if not gain_map.normalized:
        raise ValueError("squint metrics require a normalized gain map")
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    values = gain_map.values
    return {
        "fraction_above": float(np.mean(values >= threshold)),
        "min_gain": float(values.min()),
        "mean_gain": float(values.mean()),
    }

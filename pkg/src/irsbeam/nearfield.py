"""Near-field (spherical wavefront) beam gain, focusing phases, the per-element
focal-shift diagnostic, and the DAM co-design with exact band-wide refocusing.

Distances are computed in double precision straight from coordinates; no
Fresnel or Taylor approximation is ever substituted.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .model import (
    SPEED_OF_LIGHT,
    TWO_PI,
    DelayProfile,
    NearFieldGeometry,
    PhaseProfile,
    WidebandConfig,
)


@dataclass(frozen=True)
class NearDamDesign:
    """Joint phase/delay profile focusing every subcarrier on one point.

    delays[r] = T - (d_r^BR + d_r^RU) / c with the common delay T chosen
    minimally (the largest per-element propagation sum), so all delays are
    >= 0 and at least one is exactly zero. phases[r] is the one-way wavenumber
    times the propagation sum, wrapped into [0, 2*pi).
    """

    phases: PhaseProfile
    delays: DelayProfile
    common_delay_s: float
    focus_xy: tuple[float, float]


def element_distances(geom: NearFieldGeometry, point_xy) -> np.ndarray:
    """Euclidean distance from each IRS element to a 2-D point (length R).

    Raises on a point coincident with any element.
    """
    d = geom.element_distances(point_xy)
    if np.any(d <= 0.0):
        raise ValueError(f"point {tuple(point_xy)} coincides with an IRS element")
    return d


def near_beam_gain(
    geom: NearFieldGeometry,
    cfg: WidebandConfig,
    freq_hz: float,
    target_xy,
    phases: PhaseProfile,
    delays: DelayProfile | None = None,
) -> float:
    """Beam gain at a 2-D target point for one frequency; lies in [0, R].

    |sum_r exp(j [phi_r - (2 pi / lambda_c)(1 + f/f_c)(d_r^BR + d_r^RU')
    - 2 pi f tau_r])| with tau_r = 0 when ``delays`` is omitted.
    """
    d_target = element_distances(geom, target_xy)
    return float(_near_gain_from_distances(geom, cfg, freq_hz, d_target, phases, delays))


def _near_gain_from_distances(geom, cfg, freq_hz, d_target, phases, delays):
    R = geom.array.n_elements
    if len(phases) != R:
        raise ValueError(f"phase profile length {len(phases)} does not match array R={R}")
    if delays is not None and len(delays) != R:
        raise ValueError(f"delay profile length {len(delays)} does not match array R={R}")
    if not np.isfinite(freq_hz) or freq_hz <= 0:
        raise ValueError(f"freq_hz must be positive and finite, got {freq_hz}")
    d_bs = geom.element_distances(geom.bs_xy)
    k = TWO_PI / cfg.wavelength_m
    # d_target may be (R,) for one point or (N, R) for a row of points
    exponent = phases.phases - k * (1.0 + freq_hz / cfg.carrier_hz) * (d_bs + d_target)
    if delays is not None:
        exponent = exponent - TWO_PI * freq_hz * delays.delays
    return np.abs(np.exp(1j * exponent).sum(axis=-1))


def near_gain_row(
    geom: NearFieldGeometry,
    cfg: WidebandConfig,
    freq_hz: float,
    targets_xy: np.ndarray,
    phases: PhaseProfile,
    delays: DelayProfile | None = None,
) -> np.ndarray:
    """Vectorized gain over an (N, 2) row of target points.

    Memory stays proportional to one row; 2-D sweeps call this per grid row.
    """
    targets_xy = np.asarray(targets_xy, dtype=np.float64)
    pos = geom.element_positions()
    d_target = np.hypot(
        targets_xy[:, 0, None] - pos[None, :, 0], targets_xy[:, 1, None] - pos[None, :, 1]
    )
    if np.any(d_target <= 0.0):
        raise ValueError("a target point coincides with an IRS element")
    return _near_gain_from_distances(geom, cfg, freq_hz, d_target, phases, delays)


def near_optimal_phases(geom: NearFieldGeometry, cfg: WidebandConfig) -> PhaseProfile:
    """Focusing phases (4 pi / lambda_c)(d_r^BR + d_r^RU), wrapped.

    Cancels the carrier-frequency propagation phase exactly, so the gain at
    (f_c, user) is R.
    """
    d_bs = geom.element_distances(geom.bs_xy)
    d_user = element_distances(geom, geom.user_xy)
    return PhaseProfile((2.0 * TWO_PI / cfg.wavelength_m) * (d_bs + d_user))


def near_squint_distance(
    geom: NearFieldGeometry, cfg: WidebandConfig, freq_hz: float, element: int
) -> float:
    """Element-to-target distance where subcarrier f's phase term is stationary.

    Returns 2 (d_r^BR + d_r^RU) / (1 + f/f_c) - d_r^BR for the 1-based element
    index r. This is a per-element diagnostic: the R conditions are generally
    not simultaneously satisfiable by a single point, so the empirical focus
    of a whole array is defined as a gain-map argmax instead. For f
    sufficiently above the carrier the value can go negative (no physical
    point); that case is reported as a warning, not clamped.
    """
    if not 1 <= element <= geom.array.n_elements:
        raise ValueError(f"element must lie in 1..{geom.array.n_elements}, got {element}")
    if not np.isfinite(freq_hz) or freq_hz <= 0:
        raise ValueError(f"freq_hz must be positive and finite, got {freq_hz}")
    d_bs = float(geom.element_distances(geom.bs_xy)[element - 1])
    d_user = float(geom.element_distances(geom.user_xy)[element - 1])
    value = 2.0 * (d_bs + d_user) / (1.0 + freq_hz / cfg.carrier_hz) - d_bs
    if value < 0.0:
        warnings.warn(
            f"stationary distance for element {element} at {freq_hz} Hz is negative "
            f"({value} m): no physical focus point exists at this frequency",
            stacklevel=2,
        )
    return value


def near_dam_design(geom: NearFieldGeometry, cfg: WidebandConfig) -> NearDamDesign:
    """Joint phase/delay design refocusing every subcarrier on the user.

    The frequency-dependent part of the propagation phase is absorbed by the
    per-element delay (d_r^BR + d_r^RU) / c, made causal by the minimal common
    delay T = max_r (d_r^BR + d_r^RU) / c; the frequency-flat remainder goes
    into the phase profile. The residual exponent at the user then vanishes at
    every frequency, so the gain equals R across the whole band.
    """
    d_bs = geom.element_distances(geom.bs_xy)
    d_user = element_distances(geom, geom.user_xy)
    propagation_s = (d_bs + d_user) / SPEED_OF_LIGHT
    common = float(propagation_s.max())
    delays = DelayProfile(common - propagation_s)
    phases = PhaseProfile((TWO_PI / cfg.wavelength_m) * (d_bs + d_user))
    return NearDamDesign(
        phases=phases, delays=delays, common_delay_s=common, focus_xy=geom.user_xy
    )

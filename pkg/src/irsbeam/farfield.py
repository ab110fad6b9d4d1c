"""Far-field beam gain, optimal phases, the squint-direction law, and the
delay-adjustable-metasurface (DAM) co-design that restores full gain band-wide.

Directions are the normalized quantity nu = sin(chi) - sin(psi) and the phase
progression uses the half-wavelength convention, i.e. the per-element exponent
is pi (r-1) (1 + f/f_c) nu. That matches the default array geometry; the gain
therefore depends on the array only through its element count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import TWO_PI, DelayProfile, IrsArray, PhaseProfile, WidebandConfig


@dataclass(frozen=True)
class FarDamDesign:
    """Joint phase/delay profile steering every subcarrier toward one direction.

    Delays are affine in the element index with slope -nu0 / (2 f_c), shifted
    on the nu0 > 0 branch so the whole profile stays non-negative; phases are
    pi (r-1) nu0 wrapped into [0, 2*pi).
    """

    phases: PhaseProfile
    delays: DelayProfile
    design_direction: float


def _check_direction(direction: float) -> None:
    if not np.isfinite(direction) or abs(direction) > 2.0:
        raise ValueError(f"direction must lie in [-2, 2], got {direction}")


def far_beam_gain(
    array: IrsArray,
    cfg: WidebandConfig,
    freq_hz: float,
    direction: float,
    phases: PhaseProfile,
    delays: DelayProfile | None = None,
) -> float:
    """Beam gain |sum_r exp(j [phi_r - pi (r-1) (1 + f/f_c) nu - 2 pi f tau_r])|.

    With ``delays`` omitted, tau_r = 0 (phase-shift-only IRS). The result lies
    in [0, R].
    """
    if not np.isfinite(freq_hz) or freq_hz <= 0:
        raise ValueError(f"freq_hz must be positive and finite, got {freq_hz}")
    _check_direction(direction)
    grid = far_beam_gain_profile(
        array, cfg, np.array([freq_hz]), np.array([direction]), phases, delays
    )
    return float(grid[0, 0])


def far_beam_gain_profile(
    array: IrsArray,
    cfg: WidebandConfig,
    freqs_hz: np.ndarray,
    directions: np.ndarray,
    phases: PhaseProfile,
    delays: DelayProfile | None = None,
) -> np.ndarray:
    """Vectorized gain over a (frequency x direction) grid; shape (F, N).

    One row is evaluated at a time so memory stays proportional to a single
    direction grid row. Same formula as :func:`far_beam_gain`.
    """
    if len(phases) != array.n_elements:
        raise ValueError(
            f"phase profile length {len(phases)} does not match array R={array.n_elements}"
        )
    if delays is not None and len(delays) != array.n_elements:
        raise ValueError(
            f"delay profile length {len(delays)} does not match array R={array.n_elements}"
        )
    freqs_hz = np.asarray(freqs_hz, dtype=np.float64)
    directions = np.asarray(directions, dtype=np.float64)
    r = np.arange(array.n_elements, dtype=np.float64)
    out = np.empty((freqs_hz.size, directions.size))
    for i, f in enumerate(freqs_hz):
        # (N, R) exponent for this frequency row
        exponent = phases.phases[None, :] - np.pi * np.outer(
            directions, r * (1.0 + f / cfg.carrier_hz)
        )
        if delays is not None:
            exponent = exponent - TWO_PI * f * delays.delays[None, :]
        out[i] = np.abs(np.exp(1j * exponent).sum(axis=1))
    return out


def far_optimal_phases(array: IrsArray, direction: float) -> PhaseProfile:
    """Phase profile 2 pi (r-1) nu0 that maximizes the gain at (f_c, nu0)."""
    _check_direction(direction)
    r = np.arange(array.n_elements, dtype=np.float64)
    return PhaseProfile(TWO_PI * r * direction)


def far_squint_direction(design_direction: float, freq_hz: float, carrier_hz: float) -> float:
    """Direction where the beam designed for nu0 actually peaks at frequency f.

    Returns 2 nu0 / (1 + f/f_c); equals nu0 exactly at the carrier, and drifts
    away from it as f departs from f_c (the far-field beam squint law).
    """
    if freq_hz <= 0 or carrier_hz <= 0:
        raise ValueError("freq_hz and carrier_hz must be positive")
    return 2.0 * design_direction / (1.0 + freq_hz / carrier_hz)


def far_dam_design(array: IrsArray, cfg: WidebandConfig, direction: float) -> FarDamDesign:
    """Joint phase/delay design with exact gain restoration at every frequency.

    delays[r] = -(r-1) nu0 / (2 f_c) for nu0 <= 0, mirrored from the far end
    for nu0 > 0 so every delay is >= 0 with at least one exact zero;
    phases[r] = pi (r-1) nu0. At nu = nu0 the residual exponent vanishes for
    every subcarrier, so the gain equals R across the whole band.
    """
    _check_direction(direction)
    r = np.arange(array.n_elements, dtype=np.float64)
    if direction <= 0:
        delays = -r * direction / (2.0 * cfg.carrier_hz)
    else:
        delays = (array.n_elements - 1 - r) * direction / (2.0 * cfg.carrier_hz)
    phases = PhaseProfile(np.pi * r * direction)
    return FarDamDesign(
        phases=phases, delays=DelayProfile(delays), design_direction=float(direction)
    )

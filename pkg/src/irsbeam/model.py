"""Shared domain types, the subcarrier grid, geometry, and steering vectors.

Conventions used throughout the package:

* element indices are 1-based in formulas and 0-based in storage, so every
  phase progression carries an explicit ``(r - 1)`` offset;
* angles are radians, the normalized direction ``nu = sin(chi) - sin(psi)``
  is dimensionless, frequencies are Hz, distances are meters, delays are
  seconds -- no implicit unit conversion anywhere;
* the ULA lies along the +x axis and all geometry is 2-D;
* every type is immutable after construction and every operation is a pure
  function, so concurrent use needs no synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0
"""Speed of light in m/s (exact SI value)."""

TWO_PI = 2.0 * np.pi


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class WidebandConfig:
    """OFDM-style wideband configuration around a carrier.

    Attributes:
        carrier_hz: carrier frequency f_c > 0, Hz.
        bandwidth_hz: total bandwidth B > 0, Hz; must satisfy B < 2 f_c so the
            lowest subcarrier stays positive.
        n_subcarriers: number of subcarriers M >= 1.
    """

    carrier_hz: float
    bandwidth_hz: float
    n_subcarriers: int

    def __post_init__(self):
        if not (np.isfinite(self.carrier_hz) and self.carrier_hz > 0):
            raise ValueError(f"carrier_hz must be positive, got {self.carrier_hz}")
        if not (np.isfinite(self.bandwidth_hz) and self.bandwidth_hz > 0):
            raise ValueError(f"bandwidth_hz must be positive, got {self.bandwidth_hz}")
        if self.bandwidth_hz >= 2 * self.carrier_hz:
            raise ValueError(
                "bandwidth_hz must be < 2 * carrier_hz so the lowest subcarrier "
                f"frequency stays positive (B={self.bandwidth_hz}, f_c={self.carrier_hz})"
            )
        if int(self.n_subcarriers) != self.n_subcarriers or self.n_subcarriers < 1:
            raise ValueError(f"n_subcarriers must be an integer >= 1, got {self.n_subcarriers}")

    @property
    def wavelength_m(self) -> float:
        """Carrier wavelength, derived so wavelength * carrier == c identically."""
        return SPEED_OF_LIGHT / self.carrier_hz

    @property
    def subcarrier_spacing_hz(self) -> float:
        return self.bandwidth_hz / self.n_subcarriers


@dataclass(frozen=True)
class IrsArray:
    """Uniform linear IRS: element count and inter-element spacing."""

    n_elements: int
    spacing_m: float

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise ValueError(f"n_elements must be an integer >= 1, got {self.n_elements}")
        if not (np.isfinite(self.spacing_m) and self.spacing_m > 0):
            raise ValueError(f"spacing_m must be positive, got {self.spacing_m}")

    @classmethod
    def half_wavelength(cls, cfg: WidebandConfig, n_elements: int) -> "IrsArray":
        """Default construction: spacing of half the carrier wavelength."""
        return cls(n_elements=n_elements, spacing_m=cfg.wavelength_m / 2.0)


@dataclass(frozen=True)
class FarFieldTarget:
    """Far-field link direction: AoA chi, AoD psi, and nu = sin(chi) - sin(psi).

    Either representation may be populated; when both are, they must agree to
    1e-12. ``direction`` (nu) is the quantity every far-field operation
    consumes.
    """

    direction: float
    arrival_rad: float | None = None
    departure_rad: float | None = None

    def __post_init__(self):
        if not np.isfinite(self.direction) or abs(self.direction) > 2.0:
            raise ValueError(f"direction must lie in [-2, 2], got {self.direction}")
        if (self.arrival_rad is None) != (self.departure_rad is None):
            raise ValueError("arrival_rad and departure_rad must be given together")
        if self.arrival_rad is not None:
            nu = np.sin(self.arrival_rad) - np.sin(self.departure_rad)
            if abs(nu - self.direction) > 1e-12:
                raise ValueError(
                    f"direction {self.direction} inconsistent with angles "
                    f"(sin(chi) - sin(psi) = {nu})"
                )

    @classmethod
    def from_angles(cls, arrival_rad: float, departure_rad: float) -> "FarFieldTarget":
        nu = float(np.sin(arrival_rad) - np.sin(departure_rad))
        return cls(direction=nu, arrival_rad=arrival_rad, departure_rad=departure_rad)


@dataclass(frozen=True)
class NearFieldGeometry:
    """BS, user and IRS element coordinates for the near-field (spherical) model.

    Element r (1-based) sits at ``(x_origin + (r-1) * spacing, y_origin)``.
    Construction rejects a BS or user coincident with any element.
    """

    bs_xy: tuple[float, float]
    user_xy: tuple[float, float]
    irs_origin_xy: tuple[float, float]
    array: IrsArray

    def __post_init__(self):
        object.__setattr__(self, "bs_xy", (float(self.bs_xy[0]), float(self.bs_xy[1])))
        object.__setattr__(self, "user_xy", (float(self.user_xy[0]), float(self.user_xy[1])))
        object.__setattr__(
            self, "irs_origin_xy", (float(self.irs_origin_xy[0]), float(self.irs_origin_xy[1]))
        )
        for label, point in (("BS", self.bs_xy), ("user", self.user_xy)):
            d = self.element_distances(point)
            if np.any(d <= 0.0):
                raise ValueError(f"{label} at {point} coincides with an IRS element")

    def element_positions(self) -> np.ndarray:
        """(R, 2) element coordinates along the +x axis."""
        x0, y0 = self.irs_origin_xy
        r = np.arange(self.array.n_elements)
        return np.column_stack((x0 + r * self.array.spacing_m, np.full(r.shape, y0)))

    def element_distances(self, point_xy) -> np.ndarray:
        """Euclidean distance from every element to ``point_xy`` (length R)."""
        pos = self.element_positions()
        return np.hypot(pos[:, 0] - point_xy[0], pos[:, 1] - point_xy[1])


@dataclass(frozen=True)
class PhaseProfile:
    """Per-element reflection phase shifts, canonicalized into [0, 2*pi)."""

    phases: np.ndarray

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=np.float64)
        if phases.ndim != 1 or phases.size < 1:
            raise ValueError("phases must be a non-empty 1-D vector")
        if not np.all(np.isfinite(phases)):
            raise ValueError("phases must be finite")
        wrapped = np.mod(phases, TWO_PI)
        # mod can round up to exactly 2*pi for tiny negative inputs
        wrapped[wrapped >= TWO_PI] = 0.0
        object.__setattr__(self, "phases", _readonly(wrapped))

    def __len__(self) -> int:
        return self.phases.size


@dataclass(frozen=True)
class DelayProfile:
    """Per-element true-time delays in seconds; all entries must be >= 0."""

    delays: np.ndarray

    def __post_init__(self):
        delays = np.asarray(self.delays, dtype=np.float64)
        if delays.ndim != 1 or delays.size < 1:
            raise ValueError("delays must be a non-empty 1-D vector")
        if not np.all(np.isfinite(delays)):
            raise ValueError("delays must be finite")
        if np.any(delays < 0.0):
            raise ValueError("delays must be non-negative (physical realizability)")
        object.__setattr__(self, "delays", _readonly(delays))

    def __len__(self) -> int:
        return self.delays.size


@dataclass(frozen=True)
class CascadedPath:
    """One BS-IRS-user path: complex gain, equivalent normalized cascade angle
    in (-1, 1), and equivalent delay in seconds."""

    gain: complex
    cascade_angle: float
    delay_s: float

    def __post_init__(self):
        if not np.isfinite(self.cascade_angle) or abs(self.cascade_angle) >= 1.0:
            raise ValueError(f"cascade_angle must lie in (-1, 1), got {self.cascade_angle}")
        if not np.isfinite(self.delay_s) or self.delay_s < 0.0:
            raise ValueError(f"delay_s must be >= 0, got {self.delay_s}")


@dataclass(frozen=True)
class Axis:
    """One named, unit-carrying axis of a GainMap."""

    name: str
    unit: str
    points: np.ndarray

    def __post_init__(self):
        points = np.asarray(self.points)
        if points.ndim != 1 or points.size < 1:
            raise ValueError(f"axis '{self.name}' must have a non-empty 1-D point list")
        object.__setattr__(self, "points", _readonly(points))


NORMALIZED_GAIN_SLACK = 1e-9


@dataclass(frozen=True)
class GainMap:
    """Sampled beam-gain surface over one or more axes.

    ``normalized`` records whether values were divided by the element count R
    (so the analytic peak is 1) or left as raw magnitudes.
    """

    axes: tuple[Axis, ...]
    values: np.ndarray
    normalized: bool = field(default=True)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        shape = tuple(ax.points.size for ax in self.axes)
        if values.shape != shape:
            raise ValueError(f"values shape {values.shape} does not match axes {shape}")
        if np.any(values < 0.0):
            raise ValueError("gain values must be non-negative")
        if self.normalized and np.any(values > 1.0 + NORMALIZED_GAIN_SLACK):
            raise ValueError("normalized gain values must not exceed 1")
        object.__setattr__(self, "axes", tuple(self.axes))
        object.__setattr__(self, "values", _readonly(values))

    def argmax_cell(self) -> tuple[int, ...]:
        """Index of the maximum value; ties break to the lowest row-major index."""
        return tuple(int(i) for i in np.unravel_index(np.argmax(self.values), self.values.shape))


def subcarrier_frequencies(cfg: WidebandConfig) -> np.ndarray:
    """All M subcarrier frequencies, symmetric about the carrier.

    f_m = f_c + (B/M) * (m - 1 - (M-1)/2) for m = 1..M; the spacing is exactly
    B/M and f_m + f_{M+1-m} = 2 f_c.
    """
    m = np.arange(1, cfg.n_subcarriers + 1, dtype=np.float64)
    return _readonly(
        cfg.carrier_hz + cfg.subcarrier_spacing_hz * (m - 1 - (cfg.n_subcarriers - 1) / 2.0)
    )


def subcarrier_frequency(cfg: WidebandConfig, index: int) -> float:
    """Frequency of subcarrier ``index`` (1-based).

    Index 0 selects the exact carrier f_c, which for even M is not itself a
    grid point; sweeps use it for their center row.
    """
    if index == 0:
        return cfg.carrier_hz
    if not 1 <= index <= cfg.n_subcarriers:
        raise ValueError(
            f"subcarrier index must be 0 (carrier) or 1..{cfg.n_subcarriers}, got {index}"
        )
    return float(subcarrier_frequencies(cfg)[index - 1])


def far_steering_vector(
    array: IrsArray, cfg: WidebandConfig, freq_hz: float, direction: float
) -> np.ndarray:
    """Far-field (planar wavefront) steering vector at one frequency.

    Entry r is exp(-j 2 pi (r-1) (d / lambda_c) (1 + f/f_c) nu); entry 1 is
    exactly 1+0j and every entry has unit modulus.
    """
    if not np.isfinite(freq_hz) or freq_hz <= 0:
        raise ValueError(f"freq_hz must be positive and finite, got {freq_hz}")
    if not np.isfinite(direction) or abs(direction) > 2.0:
        raise ValueError(f"direction must lie in [-2, 2], got {direction}")
    r = np.arange(array.n_elements, dtype=np.float64)
    slope = (array.spacing_m / cfg.wavelength_m) * (1.0 + freq_hz / cfg.carrier_hz) * direction
    return np.exp(-1j * TWO_PI * r * slope)


def near_steering_vector(
    geom: NearFieldGeometry, cfg: WidebandConfig, freq_hz: float, target_xy
) -> np.ndarray:
    """Near-field (spherical wavefront) steering vector toward a 2-D point.

    Entry r is exp(-j (2 pi / lambda_c) (1 + f/f_c) (d_r^BR + d_r^RU')) with
    d_r^RU' the element-to-target distance; all entries have unit modulus.
    """
    if not np.isfinite(freq_hz) or freq_hz <= 0:
        raise ValueError(f"freq_hz must be positive and finite, got {freq_hz}")
    d_bs = geom.element_distances(geom.bs_xy)
    d_target = geom.element_distances(target_xy)
    if np.any(d_target <= 0.0):
        raise ValueError(f"target {tuple(target_xy)} coincides with an IRS element")
    k = TWO_PI / cfg.wavelength_m
    return np.exp(-1j * k * (1.0 + freq_hz / cfg.carrier_hz) * (d_bs + d_target))


def cascaded_far_response(
    paths, array: IrsArray, cfg: WidebandConfig, freq_hz: float
) -> np.ndarray:
    """Per-element frequency response of a multipath cascaded BS-IRS-user channel.

    Entry r sums gain * exp(-j 2 pi (r-1) angle (1 + f/f_c)) * exp(-j 2 pi f delay)
    over all cascaded paths. A single unit-gain zero-delay path reduces to the
    far-field steering vector at nu = 2 * cascade_angle (half-wavelength spacing).
    """
    paths = list(paths)
    if not paths:
        raise ValueError("at least one cascaded path is required")
    if not np.isfinite(freq_hz) or freq_hz <= 0:
        raise ValueError(f"freq_hz must be positive and finite, got {freq_hz}")
    r = np.arange(array.n_elements, dtype=np.float64)
    scale = 1.0 + freq_hz / cfg.carrier_hz
    out = np.zeros(array.n_elements, dtype=np.complex128)
    for p in paths:
        out += (
            p.gain
            * np.exp(-1j * TWO_PI * r * p.cascade_angle * scale)
            * np.exp(-1j * TWO_PI * freq_hz * p.delay_s)
        )
    return out

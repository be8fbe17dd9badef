"""Uniform linear array geometry: steering vectors, group channels, angle errors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "ArrayConfig",
    "GroupLayout",
    "AngleErrorModel",
    "steering_vector",
    "channel_matrix",
    "stacked_desired_channel",
    "build_channels",
    "perturb_angles",
    "perturb_layout",
]

# Perturbed design angles are clipped into the physical broadside sector.
_ANGLE_CLIP_DEG = 1e-9


@dataclass(frozen=True)
class ArrayConfig:
    """N-element uniform linear array; only the spacing-to-wavelength ratio matters."""

    n_antennas: int
    spacing_wavelengths: float = 0.5

    def __post_init__(self) -> None:
        if self.n_antennas < 2:
            raise ValueError("n_antennas must be >= 2")
        if self.spacing_wavelengths <= 0:
            raise ValueError("spacing_wavelengths must be > 0")

    @property
    def beam_width_rad(self) -> float:
        """Main-lobe width 2*lambda/(N*d) in radians."""
        return 2.0 / (self.n_antennas * self.spacing_wavelengths)

    @property
    def beam_width_deg(self) -> float:
        return math.degrees(self.beam_width_rad)


@dataclass(frozen=True)
class GroupLayout:
    """Direction angles (degrees) of the desired user groups and the eavesdroppers.

    Group k holds T_k single-antenna users; the eavesdropper group holds M.
    All angles must lie strictly inside the broadside sector (0, 180) degrees.
    """

    desired_angles: tuple[tuple[float, ...], ...]
    eavesdropper_angles: tuple[float, ...]

    def __post_init__(self) -> None:
        groups = tuple(tuple(float(a) for a in g) for g in self.desired_angles)
        eves = tuple(float(a) for a in self.eavesdropper_angles)
        object.__setattr__(self, "desired_angles", groups)
        object.__setattr__(self, "eavesdropper_angles", eves)
        if not groups:
            raise ValueError("need at least one desired group")
        if any(len(g) == 0 for g in groups):
            raise ValueError("every desired group needs at least one user")
        if not eves:
            raise ValueError("need at least one eavesdropper angle")
        for a in [a for g in groups for a in g] + list(eves):
            if not 0.0 < a < 180.0:
                raise ValueError(f"layout angle {a} deg must lie strictly inside (0, 180)")

    @property
    def n_groups(self) -> int:
        return len(self.desired_angles)

    @property
    def group_sizes(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.desired_angles)

    @property
    def total_desired(self) -> int:
        return sum(self.group_sizes)

    @property
    def n_eavesdroppers(self) -> int:
        return len(self.eavesdropper_angles)


def steering_vector(theta_deg: float, cfg: ArrayConfig) -> np.ndarray:
    """Unit-norm array response toward ``theta_deg``.

    Entry n (1-based) is exp(j*2*pi*(n-(N+1)/2)*(d/lambda)*cos(theta))/sqrt(N),
    i.e. the phase center sits at the array midpoint. Accepts the closed
    sector [0, 180] so beam patterns can be probed at the endpoints.
    """
    if not 0.0 <= theta_deg <= 180.0:
        raise ValueError(f"angle {theta_deg} deg outside [0, 180]")
    idx = np.arange(1, cfg.n_antennas + 1, dtype=np.float64)
    psi = (idx - 0.5 * (cfg.n_antennas + 1)) * cfg.spacing_wavelengths
    psi = psi * math.cos(math.radians(theta_deg))
    return np.exp(2j * np.pi * psi) / math.sqrt(cfg.n_antennas)


def channel_matrix(angles_deg: Sequence[float], cfg: ArrayConfig) -> np.ndarray:
    """N x T matrix whose column i is the steering vector of direction i."""
    angles = np.atleast_1d(np.asarray(angles_deg, dtype=np.float64))
    if angles.size == 0:
        raise ValueError("need at least one direction angle")
    if np.any(angles < 0.0) or np.any(angles > 180.0):
        raise ValueError("direction angles must lie in [0, 180] degrees")
    idx = np.arange(1, cfg.n_antennas + 1, dtype=np.float64)
    centered = idx - 0.5 * (cfg.n_antennas + 1)
    psi = np.outer(centered, np.cos(np.radians(angles))) * cfg.spacing_wavelengths
    return np.exp(2j * np.pi * psi) / math.sqrt(cfg.n_antennas)


def stacked_desired_channel(layout: GroupLayout, cfg: ArrayConfig) -> np.ndarray:
    """All desired groups' channels side by side: group order, then user order."""
    return np.hstack([channel_matrix(g, cfg) for g in layout.desired_angles])


def build_channels(layout: GroupLayout, cfg: ArrayConfig):
    """Per-group desired channel matrices plus the eavesdropper matrix."""
    desired = tuple(channel_matrix(g, cfg) for g in layout.desired_angles)
    return desired, channel_matrix(layout.eavesdropper_angles, cfg)


@dataclass(frozen=True)
class AngleErrorModel:
    """Uniform direction-measurement error, at most ``max_error_deg`` per angle.

    ``beam_width_rad`` is carried along purely so reports can normalize the
    error spread by the array's main-lobe width.
    """

    max_error_deg: float
    beam_width_rad: float = 0.0

    def __post_init__(self) -> None:
        if self.max_error_deg < 0:
            raise ValueError("max_error_deg must be >= 0")

    @classmethod
    def for_array(cls, max_error_deg: float, cfg: ArrayConfig) -> "AngleErrorModel":
        return cls(max_error_deg, cfg.beam_width_rad)


def perturb_angles(angles_deg, model: AngleErrorModel, rng: np.random.Generator) -> np.ndarray:
    """Each angle plus an independent error drawn uniformly from [-max, +max] degrees."""
    angles = np.asarray(angles_deg, dtype=np.float64)
    eps = rng.uniform(-model.max_error_deg, model.max_error_deg, size=angles.shape)
    return np.clip(angles + eps, _ANGLE_CLIP_DEG, 180.0 - _ANGLE_CLIP_DEG)


def perturb_layout(layout: GroupLayout, model: AngleErrorModel, rng: np.random.Generator) -> GroupLayout:
    """Layout as measured by the transmitter: every direction gets its own error."""
    groups = tuple(tuple(perturb_angles(g, model, rng)) for g in layout.desired_angles)
    eves = tuple(perturb_angles(layout.eavesdropper_angles, model, rng))
    return GroupLayout(groups, eves)

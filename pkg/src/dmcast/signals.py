"""QPSK symbol chain, power normalization, and the transmit/receive models."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .precoding import NoiseLoading

__all__ = [
    "PowerProfile",
    "NormFactors",
    "norm_factors",
    "scheme_loadings",
    "qpsk_modulate",
    "qpsk_demodulate",
    "transmit_signal",
    "receive",
    "complex_normal",
    "random_bits",
]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class PowerProfile:
    """Total transmit budget and its split between message power and AN."""

    total_power: float
    beta1: float
    beta2: float
    sigma_d2: float
    sigma_e2: float
    sigma_z2: float = 1.0

    def __post_init__(self) -> None:
        if self.total_power <= 0:
            raise ValueError("total_power must be > 0")
        if self.beta1 < 0 or self.beta2 < 0:
            raise ValueError("power split factors must be >= 0")
        if abs(self.beta1 ** 2 + self.beta2 ** 2 - 1.0) > 1e-12:
            raise ValueError("beta1^2 + beta2^2 must equal 1")
        for name in ("sigma_d2", "sigma_e2", "sigma_z2"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")

    @classmethod
    def from_snr_db(
        cls,
        snr_db: float,
        beta1_sq: float = 0.9,
        total_power: float = 1.0,
        sigma_z2: float = 1.0,
    ) -> "PowerProfile":
        """Profile at a given SNR, defined as total power over receiver noise
        variance (desired and eavesdropper noise alike)."""
        sigma2 = total_power / 10.0 ** (snr_db / 10.0)
        b1 = math.sqrt(beta1_sq)
        b2 = math.sqrt(max(0.0, 1.0 - beta1_sq))
        return cls(total_power, b1, b2, sigma2, sigma2, sigma_z2)


@dataclass(frozen=True)
class NormFactors:
    """Scale factors making the summed message and the projected AN unit power."""

    alpha1: float
    alpha2: float

    def __post_init__(self) -> None:
        if self.alpha1 <= 0 or self.alpha2 <= 0:
            raise ValueError("normalization factors must be positive")


def norm_factors(profile: PowerProfile, n_groups: int, an_dim: int) -> NormFactors:
    """alpha1 = 1/sqrt(K) for unit-energy symbols; alpha2 = 1/sqrt(sigma_z^2 * L)
    for an orthonormal-column AN basis of width L."""
    if n_groups < 1:
        raise ValueError("need at least one group")
    if an_dim < 1:
        raise ValueError("AN dimension must be at least 1")
    return NormFactors(1.0 / math.sqrt(n_groups), 1.0 / math.sqrt(profile.sigma_z2 * an_dim))


def scheme_loadings(profile: PowerProfile, factors: NormFactors, an_dim: int) -> NoiseLoading:
    """Noise-over-power ratios entering the leakage designs."""
    cm_power = (factors.alpha1 * profile.beta1) ** 2 * profile.total_power
    an_power = (factors.alpha2 * profile.beta2) ** 2 * profile.total_power * an_dim
    desired = profile.sigma_d2 / cm_power if cm_power > 0 else math.inf
    eve = profile.sigma_e2 / an_power if an_power > 0 else math.inf
    return NoiseLoading(desired, eve)


def qpsk_modulate(bits) -> np.ndarray:
    """Gray-mapped unit-energy QPSK.

    Consecutive bit pairs (b0, b1) map to ((1 - 2*b1) + 1j*(1 - 2*b0))/sqrt(2),
    so 00 -> (+1+j)/sqrt(2), 01 -> (-1+j)/sqrt(2), 11 -> (-1-j)/sqrt(2),
    10 -> (+1-j)/sqrt(2).
    """
    b = np.asarray(bits)
    if b.ndim != 1 or b.size % 2:
        raise ValueError("need a flat bit array of even length")
    b0 = b[0::2].astype(np.float64)
    b1 = b[1::2].astype(np.float64)
    return _INV_SQRT2 * ((1.0 - 2.0 * b1) + 1j * (1.0 - 2.0 * b0))


def qpsk_demodulate(observations, channel_gain: complex, rng: np.random.Generator | None = None) -> np.ndarray:
    """Coherent quadrant slicing after derotating by the known complex gain.

    Boundary samples resolve toward the positive half-planes. A zero gain
    leaves nothing to detect: with an rng the receiver guesses uniformly
    (expected error ratio 0.5), otherwise it is an error.
    """
    y = np.atleast_1d(np.asarray(observations))
    if channel_gain == 0:
        if rng is None:
            raise ValueError("zero channel gain and no guessing source provided")
        return rng.integers(0, 2, size=2 * y.size, dtype=np.int8)
    r = y * (np.conj(channel_gain) / abs(channel_gain))
    out = np.empty(2 * y.size, dtype=np.int8)
    out[0::2] = r.imag < 0
    out[1::2] = r.real < 0
    return out


def transmit_signal(
    vectors: Sequence[np.ndarray],
    symbols,
    an_projector: np.ndarray,
    an_sample,
    profile: PowerProfile,
    factors: NormFactors,
) -> np.ndarray:
    """Superpose the per-group beams and the projected AN at configured powers."""
    beams = np.column_stack(list(vectors))
    x = np.asarray(symbols)
    z = np.asarray(an_sample)
    if x.shape != (beams.shape[1],):
        raise ValueError("need exactly one symbol per group")
    if an_projector.shape[0] != beams.shape[0]:
        raise ValueError("AN projector row count must match antenna count")
    if z.shape != (an_projector.shape[1],):
        raise ValueError("AN sample length must match projector width")
    amp = math.sqrt(profile.total_power)
    cm = factors.alpha1 * profile.beta1 * amp * (beams @ x)
    an = factors.alpha2 * profile.beta2 * amp * (an_projector @ z)
    return cm + an


def receive(H: np.ndarray, s: np.ndarray, noise) -> np.ndarray:
    """Per-user observations y = H^H s + n for a group channel H."""
    n = np.asarray(noise)
    if s.shape != (H.shape[0],):
        raise ValueError("transmit vector length must match antenna count")
    if n.shape != (H.shape[1],):
        raise ValueError("noise length must match the group's user count")
    return H.conj().T @ s + n


def complex_normal(rng: np.random.Generator, shape=(), var: float = 1.0) -> np.ndarray:
    """Circularly symmetric complex Gaussian samples with the given variance."""
    scale = math.sqrt(var / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def random_bits(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.integers(0, 2, size=n, dtype=np.int8)

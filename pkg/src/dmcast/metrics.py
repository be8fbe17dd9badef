"""Link-quality metrics: per-user SINR, Monte-Carlo BER, secrecy sum-rate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .arrays import ArrayConfig, channel_matrix, steering_vector
from .precoding import SchemeDesign
from .signals import NormFactors, PowerProfile, complex_normal, qpsk_modulate

__all__ = [
    "LinkTerms",
    "SinrReport",
    "BerPoint",
    "SsrPoint",
    "desired_link_terms",
    "eve_link_terms",
    "sinr_desired",
    "sinr_eve",
    "sinr_report",
    "secrecy_sum_rate",
    "ber_at_angle",
    "simulate_stream_ber",
    "simulate_stream_ber_batch",
]


@dataclass(frozen=True)
class LinkTerms:
    """Power decomposition of one receive chain: wanted signal, other groups'
    message interference, artificial noise, thermal noise."""

    signal: float
    interference: float
    an: float
    noise: float

    @property
    def sinr(self) -> float:
        return self.signal / (self.interference + self.an + self.noise)


@dataclass(frozen=True)
class SinrReport:
    """Linear SINRs: one array per desired group, and an (M, K) matrix of
    eavesdropper SINRs per confidential stream."""

    desired: tuple[np.ndarray, ...]
    eve: np.ndarray


@dataclass(frozen=True)
class BerPoint:
    sweep_value: float
    group: int
    scheme: str
    ber: float
    trials: int
    zero_gain: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.ber <= 1.0:
            raise ValueError("ber must lie in [0, 1]")
        if self.trials <= 0:
            raise ValueError("trials must be positive")


@dataclass(frozen=True)
class SsrPoint:
    snr_db: float
    group: int
    scheme: str
    ssr: float

    def __post_init__(self) -> None:
        if self.ssr < 0:
            raise ValueError("secrecy sum-rate is non-negative by definition")


def _cm_power(profile: PowerProfile, factors: NormFactors) -> float:
    return (factors.alpha1 * profile.beta1) ** 2 * profile.total_power


def _an_power(profile: PowerProfile, factors: NormFactors) -> float:
    return (factors.alpha2 * profile.beta2) ** 2 * profile.total_power * profile.sigma_z2


def _link_terms(
    h: np.ndarray,
    design: SchemeDesign,
    profile: PowerProfile,
    factors: NormFactors,
    stream: int,
    noise_var: float,
) -> LinkTerms:
    cm = _cm_power(profile, factors)
    gains = np.abs(np.array([np.vdot(h, v) for v in design.vectors])) ** 2
    an = _an_power(profile, factors) * float(
        np.linalg.norm(design.an_projector.conj().T @ h) ** 2
    )
    signal = cm * float(gains[stream])
    interference = cm * float(gains.sum() - gains[stream])
    return LinkTerms(signal, interference, an, noise_var)


def desired_link_terms(
    design: SchemeDesign,
    desired: Sequence[np.ndarray],
    profile: PowerProfile,
    factors: NormFactors,
    k: int,
    i: int,
) -> LinkTerms:
    """Receive-power decomposition at user i of desired group k."""
    return _link_terms(desired[k][:, i], design, profile, factors, k, profile.sigma_d2)


def eve_link_terms(
    design: SchemeDesign,
    eve: np.ndarray,
    profile: PowerProfile,
    factors: NormFactors,
    m: int,
    k: int,
) -> LinkTerms:
    """Receive-power decomposition at eavesdropper m for group k's stream."""
    return _link_terms(eve[:, m], design, profile, factors, k, profile.sigma_e2)


def sinr_desired(design, desired, profile, factors, k: int, i: int) -> float:
    return desired_link_terms(design, desired, profile, factors, k, i).sinr


def sinr_eve(design, eve, profile, factors, m: int, k: int) -> float:
    return eve_link_terms(design, eve, profile, factors, m, k).sinr


def sinr_report(
    design: SchemeDesign,
    desired: Sequence[np.ndarray],
    eve: np.ndarray,
    profile: PowerProfile,
    factors: NormFactors,
) -> SinrReport:
    per_group = tuple(
        np.array([
            sinr_desired(design, desired, profile, factors, k, i)
            for i in range(desired[k].shape[1])
        ])
        for k in range(len(desired))
    )
    eve_sinr = np.array([
        [sinr_eve(design, eve, profile, factors, m, k) for k in range(len(desired))]
        for m in range(eve.shape[1])
    ])
    return SinrReport(per_group, eve_sinr)


def secrecy_sum_rate(
    design: SchemeDesign,
    desired: Sequence[np.ndarray],
    eve: np.ndarray,
    profile: PowerProfile,
    factors: NormFactors,
    k: int,
    eavesdropper_model: str = "colluding",
) -> float:
    """Group k's achievable sum rate minus the eavesdroppers' rate on its
    stream, floored at zero.

    The default treats the eavesdropper group as one colluding multi-antenna
    receiver (log-det of the whitened rank-one stream covariance);
    ``per-eve`` instead charges the strongest individual eavesdropper.
    """
    rate_d = 0.0
    for i in range(desired[k].shape[1]):
        rate_d += math.log2(1.0 + sinr_desired(design, desired, profile, factors, k, i))

    cm = _cm_power(profile, factors)
    if eavesdropper_model == "colluding":
        Ae = eve.conj().T
        b = Ae @ design.vectors[k]
        m = eve.shape[1]
        C = profile.sigma_e2 * np.eye(m, dtype=complex)
        for j, v in enumerate(design.vectors):
            if j != k:
                bj = Ae @ v
                C += cm * np.outer(bj, bj.conj())
        G = Ae @ design.an_projector
        C += _an_power(profile, factors) * (G @ G.conj().T)
        quad = float(np.real(np.vdot(b, np.linalg.solve(C, b))))
        rate_e = math.log2(1.0 + cm * quad)
    elif eavesdropper_model == "per-eve":
        rate_e = max(
            math.log2(1.0 + sinr_eve(design, eve, profile, factors, m, k))
            for m in range(eve.shape[1])
        )
    else:
        raise ValueError("eavesdropper_model must be 'colluding' or 'per-eve'")
    return max(0.0, rate_d - rate_e)


def _scheme_gains(
    h_or_mat: np.ndarray,
    design: SchemeDesign,
    profile: PowerProfile,
    factors: NormFactors,
):
    """Composite message gains and AN-plus-thermal variance at probe responses.

    Accepts a single steering vector (returns gains of shape (K,) and a scalar
    variance) or an N x P matrix of probe responses (shapes (P, K) and (P,)).
    """
    amp = factors.alpha1 * profile.beta1 * math.sqrt(profile.total_power)
    beams = np.column_stack(list(design.vectors))
    gains = amp * (h_or_mat.conj().T @ beams)
    an = _an_power(profile, factors) * np.linalg.norm(
        design.an_projector.conj().T @ h_or_mat, axis=0
    ) ** 2
    return gains, an


def simulate_stream_ber(
    theta_deg: float,
    k: int,
    designs: Mapping[str, SchemeDesign],
    profile: PowerProfile,
    factors: NormFactors,
    n_symbols: int,
    rng: np.random.Generator,
    cfg: ArrayConfig,
) -> dict[str, BerPoint]:
    """Error ratio of group k's stream at a single-antenna probe, per scheme.

    All schemes share the same symbol and base-noise draws, so curve
    differences come from the designs rather than Monte-Carlo noise. The
    projected AN seen by the probe is an exact zero-mean complex Gaussian with
    variance ||h^H T||^2 times the AN power factor, and is drawn directly at
    that variance together with the thermal noise.
    """
    h = steering_vector(theta_deg, cfg)
    n_groups = next(iter(designs.values())).n_groups
    bits = rng.integers(0, 2, size=(n_groups, 2 * n_symbols), dtype=np.int8)
    x = np.vstack([qpsk_modulate(bits[j]) for j in range(n_groups)])
    w = complex_normal(rng, n_symbols)
    out = {}
    for name, design in designs.items():
        gains, an_var = _scheme_gains(h, design, profile, factors)
        y = gains @ x + math.sqrt(float(an_var) + profile.sigma_d2) * w
        gain = complex(gains[k])
        zero = gain == 0
        # A zero composite gain leaves only noise; slicing it is equivalent to
        # guessing uniformly, which is the declared fallback.
        r = y * (np.conj(gain) / abs(gain)) if not zero else y
        errs = int(np.count_nonzero((r.imag < 0) != bits[k, 0::2]))
        errs += int(np.count_nonzero((r.real < 0) != bits[k, 1::2]))
        out[name] = BerPoint(theta_deg, k, name, errs / (2 * n_symbols), n_symbols, zero)
    return out


def ber_at_angle(
    theta_deg: float,
    k: int,
    design: SchemeDesign,
    profile: PowerProfile,
    factors: NormFactors,
    n_symbols: int,
    rng: np.random.Generator,
    cfg: ArrayConfig,
) -> BerPoint:
    """Single-scheme Monte-Carlo BER of group k's stream at a probe angle."""
    return simulate_stream_ber(
        theta_deg, k, {design.scheme: design}, profile, factors, n_symbols, rng, cfg
    )[design.scheme]


def simulate_stream_ber_batch(
    thetas_deg: np.ndarray,
    k: int,
    designs: Mapping[str, SchemeDesign],
    profile: PowerProfile,
    factors: NormFactors,
    n_symbols: int,
    rng: np.random.Generator,
    cfg: ArrayConfig,
) -> dict[str, np.ndarray]:
    """Bit-error counts of group k's stream at many probe angles in one pass.

    Symbol draws are shared across angles and schemes; noise is fresh per
    angle. Returns integer error counts (out of 2 * n_symbols bits per angle)
    so aggregation over realizations stays exact.
    """
    probes = channel_matrix(thetas_deg, cfg)
    n_points = probes.shape[1]
    n_groups = next(iter(designs.values())).n_groups
    bits = rng.integers(0, 2, size=(n_groups, 2 * n_symbols), dtype=np.int8)
    x = np.vstack([qpsk_modulate(bits[j]) for j in range(n_groups)])
    w = complex_normal(rng, (n_points, n_symbols))
    b0 = bits[k, 0::2][None, :]
    b1 = bits[k, 1::2][None, :]
    out = {}
    for name, design in designs.items():
        gains, an_var = _scheme_gains(probes, design, profile, factors)
        y = gains @ x + np.sqrt(an_var + profile.sigma_d2)[:, None] * w
        gk = gains[:, k]
        rot = np.where(gk == 0, 1.0 + 0j, np.conj(gk) / np.where(gk == 0, 1.0, np.abs(gk)))
        r = y * rot[:, None]
        errs = ((r.imag < 0) != b0).sum(axis=1) + ((r.real < 0) != b1).sum(axis=1)
        out[name] = errs.astype(np.int64)
    return out

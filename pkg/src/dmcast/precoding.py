"""Confidential-message precoders and artificial-noise projection matrices.

Three transmit schemes live here. ``max-grp-nsp`` maximizes each group's
receive-power sum under hard nulls toward every other desired group and
projects AN into the joint null space of all desired users. ``leakage``
replaces the hard constraints with noise-aware ratios: the message beams
maximize signal-to-leakage-and-noise, and the AN basis maximizes the share of
AN power landing on the eavesdroppers. ``bd`` is a block-diagonalization
baseline that spends the per-group null-space budget on the strongest
receive directions and repeats the group symbol on every column.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

__all__ = [
    "SCHEMES",
    "NoiseLoading",
    "SchemeDesign",
    "canonical_phase",
    "null_space_basis",
    "max_grp_precoder",
    "nsp_an_projector",
    "slnr_precoder",
    "slnr_value",
    "anlnr_projector",
    "anlnr_value",
    "bd_precoder",
    "design_scheme",
]

SCHEMES = ("max-grp-nsp", "leakage", "bd")

# Singular values below this relative threshold count as zero.
_RANK_RTOL = 1e-10


def canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its largest-modulus entry is real positive."""
    i = int(np.argmax(np.abs(v)))
    pivot = v[i]
    if pivot == 0:
        return np.array(v, copy=True)
    return v * (np.conj(pivot) / abs(pivot))


def null_space_basis(H: np.ndarray, rtol: float = _RANK_RTOL) -> np.ndarray:
    """Orthonormal basis F of the left null space: H^H F = 0 and F^H F = I.

    The basis has N - rank(H) columns. A rank-deficient H (coincident
    directions) widens the basis beyond N - T, which is flagged because it
    usually signals a degenerate layout.
    """
    H = np.asarray(H)
    n = H.shape[0]
    if H.ndim != 2:
        raise ValueError("expected a 2-D channel matrix")
    if H.shape[1] == 0:
        return np.eye(n, dtype=complex)
    u, s, _ = np.linalg.svd(H, full_matrices=True)
    rank = int(np.count_nonzero(s > rtol * s[0]))
    if rank < min(H.shape):
        warnings.warn(
            "rank-deficient channel stack; null-space basis widened",
            RuntimeWarning,
            stacklevel=2,
        )
    return u[:, rank:]


def _stack_excluding(desired: Sequence[np.ndarray], k: int) -> np.ndarray:
    mats = [desired[i] for i in range(len(desired)) if i != k]
    if not mats:
        n = desired[k].shape[0]
        return np.zeros((n, 0), dtype=complex)
    return np.hstack(mats)


def max_grp_precoder(desired: Sequence[np.ndarray], k: int) -> np.ndarray:
    """Unit-norm beam for group k: maximal receive-power sum with exact zeros
    at every user of every other desired group."""
    F = null_space_basis(_stack_excluding(desired, k))
    if F.shape[1] == 0:
        raise ValueError("no null space left; need more antennas than constrained users")
    G = F.conj().T @ desired[k]
    _, vecs = np.linalg.eigh(G @ G.conj().T)
    v = F @ vecs[:, -1]
    v /= np.linalg.norm(v)
    return canonical_phase(v)


def nsp_an_projector(stacked_desired: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the joint null space of all desired users.

    Spans the range of I - H (H^H H)^{-1} H^H for a full-column-rank stack H,
    returned as explicit columns so the AN vector has the expected
    N - sum(T_k) entries and trace(T^H T) equals that dimension exactly.
    """
    H = np.asarray(stacked_desired)
    n, total = H.shape
    if total >= n:
        raise ValueError("AN null space is empty; need n_antennas > total desired users")
    u, s, _ = np.linalg.svd(H, full_matrices=True)
    if s[-1] <= _RANK_RTOL * s[0]:
        raise ValueError("stacked desired channel is rank deficient (coincident directions)")
    return u[:, total:]


@dataclass(frozen=True)
class NoiseLoading:
    """Receiver-noise variance over effective per-stream transmit power.

    ``desired_load`` regularizes the leakage beam design, ``eve_load`` the AN
    basis design; both must be positive so the loaded Gram matrices stay
    invertible.
    """

    desired_load: float
    eve_load: float

    def __post_init__(self) -> None:
        if self.desired_load <= 0 or self.eve_load <= 0:
            raise ValueError("noise loadings must be positive")


def _gram(mat: np.ndarray) -> np.ndarray:
    return mat @ mat.conj().T


def slnr_precoder(
    desired: Sequence[np.ndarray],
    eve: np.ndarray,
    k: int,
    loading: NoiseLoading,
) -> np.ndarray:
    """Unit-norm beam for group k maximizing signal-to-leakage-and-noise ratio.

    Solved as a Hermitian generalized eigenproblem (numerator Gram against
    loaded leakage Gram) instead of forming the explicit inverse; the noise
    loading keeps the denominator matrix positive definite.
    """
    n = desired[k].shape[0]
    denom = loading.desired_load * np.eye(n, dtype=complex)
    for i, H in enumerate(desired):
        if i != k:
            denom += _gram(H)
    denom += _gram(eve)
    _, vecs = scipy.linalg.eigh(_gram(desired[k]), denom)
    v = vecs[:, -1]
    v = v / np.linalg.norm(v)
    return canonical_phase(v)


def slnr_value(
    v: np.ndarray,
    desired: Sequence[np.ndarray],
    eve: np.ndarray,
    k: int,
    loading: NoiseLoading,
) -> float:
    """Signal-to-leakage-and-noise ratio of a unit-norm beam for group k."""
    num = float(np.linalg.norm(desired[k].conj().T @ v) ** 2)
    den = loading.desired_load * float(np.linalg.norm(v) ** 2)
    for i, H in enumerate(desired):
        if i != k:
            den += float(np.linalg.norm(H.conj().T @ v) ** 2)
    den += float(np.linalg.norm(eve.conj().T @ v) ** 2)
    return num / den


def anlnr_projector(
    desired: Sequence[np.ndarray],
    eve: np.ndarray,
    loading: NoiseLoading,
    an_dim: int | None = None,
) -> np.ndarray:
    """AN basis steering noise power into the eavesdropper subspace.

    Takes the dominant generalized eigendirections of the eavesdropper Gram
    against the desired-plus-loading Gram. The eavesdropper Gram has rank at
    most M, so the remaining eigenvalues tie at zero; that tie is resolved by
    completing with the zero-numerator directions of least leakage-plus-noise,
    which keeps the achieved ratio maximal and the output deterministic.
    Columns are re-orthonormalized, so trace(T^H T) equals the AN dimension.
    """
    n = eve.shape[0]
    L = an_dim if an_dim is not None else n - sum(H.shape[1] for H in desired)
    if L < 1:
        raise ValueError("AN dimension must be at least 1")
    if not math.isfinite(loading.eve_load):
        # No AN power is transmitted in this regime; any orthonormal basis of the
        # desired null space is equivalent.
        return nsp_an_projector(np.hstack(list(desired)))
    numer = _gram(eve)
    denom = loading.eve_load * np.eye(n, dtype=complex)
    for H in desired:
        denom += _gram(H)
    w, V = scipy.linalg.eigh(numer, denom)
    n_sig = int(np.count_nonzero(w > w[-1] * 1e-9)) if w[-1] > 0 else 0
    n_sig = min(n_sig, L)
    blocks = [V[:, ::-1][:, :n_sig]] if n_sig else []
    if n_sig < L:
        # Euclidean-orthonormal basis of the eavesdropper Gram's null space,
        # then keep the directions with the smallest denominator energy.
        ew, EV = np.linalg.eigh(numer)
        n_null = int(np.count_nonzero(ew <= ew[-1] * 1e-9)) if ew[-1] > 0 else n
        Z = EV[:, :n_null]
        bw, BY = np.linalg.eigh(Z.conj().T @ denom @ Z)
        del bw
        blocks.append(Z @ BY[:, : L - n_sig])
    q, _ = np.linalg.qr(np.hstack(blocks))
    return q[:, :L]


def anlnr_value(
    T: np.ndarray,
    desired: Sequence[np.ndarray],
    eve: np.ndarray,
    loading: NoiseLoading,
) -> float:
    """AN-to-leakage-and-noise trace ratio of an orthonormal-column AN basis."""
    num = float(np.linalg.norm(eve.conj().T @ T) ** 2)
    den = loading.eve_load * float(np.linalg.norm(T) ** 2)
    for H in desired:
        den += float(np.linalg.norm(H.conj().T @ T) ** 2)
    return num / den


def _balance_phases(gains: np.ndarray, grid: int) -> np.ndarray:
    """Column phases maximizing the weakest user's power from a summed beam.

    ``gains[u, j]`` is user u's complex gain from beam column j. The first
    column's phase is pinned; the rest are optimized by coordinate ascent on
    a phase grid, which is deterministic and ample for small group sizes.
    """
    t = gains.shape[1]
    phases = np.ones(t, dtype=complex)
    if t == 1:
        return phases
    cand = np.exp(2j * np.pi * np.arange(grid) / grid)
    for _ in range(3):
        for j in range(1, t):
            rest = gains @ phases - gains[:, j] * phases[j]
            trial = rest[:, None] + np.outer(gains[:, j], cand)
            score = np.min(np.abs(trial) ** 2, axis=0)
            phases[j] = cand[int(np.argmax(score))]
    return phases


def bd_precoder(desired: Sequence[np.ndarray], k: int, phase_grid: int = 720) -> np.ndarray:
    """Block-diagonalization baseline matrix for group k, Frobenius norm 1.

    Columns are the T_k strongest receive directions inside the inter-group
    null space, scaled by 1/sqrt(T_k); the group's single symbol rides on all
    columns at once. Column phases are aligned to maximize the weakest user's
    share of the combined beam: with raw eigensolver phases the summed beam
    lands on one arbitrary user, making the baseline an accident of LAPACK
    conventions rather than a multicast design.
    """
    Hk = desired[k]
    t_k = Hk.shape[1]
    F = null_space_basis(_stack_excluding(desired, k))
    if F.shape[1] < t_k:
        raise ValueError("null space too small for the requested stream count")
    G = F.conj().T @ Hk
    _, vecs = np.linalg.eigh(G @ G.conj().T)
    beams = F @ vecs[:, ::-1][:, :t_k]
    phases = _balance_phases(Hk.conj().T @ beams, phase_grid)
    V = beams * phases[None, :] / math.sqrt(t_k)
    eff = V.sum(axis=1)
    i = int(np.argmax(np.abs(eff)))
    return V * (np.conj(eff[i]) / abs(eff[i]))


@dataclass(frozen=True)
class SchemeDesign:
    """Per-scheme transmit design: one effective unit-norm beam per group plus
    the AN basis. ``group_matrices`` carries the per-group matrices for the
    baseline that transmits over several columns."""

    scheme: str
    vectors: tuple[np.ndarray, ...]
    an_projector: np.ndarray
    group_matrices: tuple[np.ndarray, ...] | None = None

    @property
    def n_groups(self) -> int:
        return len(self.vectors)

    @property
    def an_dim(self) -> int:
        return self.an_projector.shape[1]


def design_scheme(
    scheme: str,
    desired: Sequence[np.ndarray],
    eve: np.ndarray,
    loading: NoiseLoading,
) -> SchemeDesign:
    """Build the full transmit design of one scheme for a fixed channel set."""
    n_groups = len(desired)
    stacked = np.hstack(list(desired))
    if scheme == "max-grp-nsp":
        vectors = tuple(max_grp_precoder(desired, k) for k in range(n_groups))
        return SchemeDesign(scheme, vectors, nsp_an_projector(stacked))
    if scheme == "leakage":
        vectors = tuple(slnr_precoder(desired, eve, k, loading) for k in range(n_groups))
        return SchemeDesign(scheme, vectors, anlnr_projector(desired, eve, loading))
    if scheme == "bd":
        mats = tuple(bd_precoder(desired, k) for k in range(n_groups))
        vectors = tuple(m.sum(axis=1) for m in mats)
        return SchemeDesign(scheme, vectors, nsp_an_projector(stacked), mats)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")

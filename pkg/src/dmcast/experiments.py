"""Experiment drivers: sweep orchestration, substream seeding, CSV output.

Every run writes a CSV whose leading '#' comment lines record the fully
resolved configuration and the master seed, so any row can be reproduced from
the file alone. Sweep points draw from counter-derived substreams of the
master seed, which makes results independent of worker-thread count.
"""

from __future__ import annotations

import csv
import itertools
import json
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Iterable, Sequence

import numpy as np

from .arrays import AngleErrorModel, build_channels, perturb_layout
from .complexity import (
    DEFAULT_EXPONENT_BASES,
    METHODS,
    FlopsQuery,
    flops,
    scaling_exponent,
)
from .config import ExperimentConfig
from .metrics import (
    secrecy_sum_rate,
    simulate_stream_ber,
    simulate_stream_ber_batch,
)
from .precoding import SchemeDesign, design_scheme
from .signals import norm_factors, scheme_loadings

__all__ = ["run_ber_angle", "run_ssr_snr", "run_robust_ber", "run_flops"]

# Substream domain tags; a new experiment family must claim a fresh tag.
_DOM_BER = 0
_DOM_ROBUST_PERTURB = 1
_DOM_ROBUST_SIM = 2


def _substream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(int(x) for x in key)))


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def _header(kind: str, config: ExperimentConfig) -> list[str]:
    resolved = json.dumps(config.to_json_dict(), sort_keys=True, separators=(",", ":"))
    return [f"# dmcast {kind}", f"# config: {resolved}", f"# seed: {config.seed}"]


def _write_csv(path: str, comments: Sequence[str], fieldnames: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in comments:
            fh.write(line + "\n")
        writer = csv.writer(fh)
        writer.writerow(fieldnames)
        writer.writerows(rows)


def _map_keyed(fn: Callable, keys: Sequence, threads: int) -> dict:
    """Apply fn to every key; results keyed so assembly order is fixed."""
    if threads <= 1:
        return {key: fn(key) for key in keys}
    out = {}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {pool.submit(fn, key): key for key in keys}
        for fut in as_completed(futures):
            out[futures[fut]] = fut.result()
    return out


def _designs_for(config: ExperimentConfig, layout, profile) -> dict[str, SchemeDesign]:
    desired, eve = build_channels(layout, config.array)
    an_dim = config.array.n_antennas - layout.total_desired
    factors = norm_factors(profile, layout.n_groups, an_dim)
    loading = scheme_loadings(profile, factors, an_dim)
    designs = {s: design_scheme(s, desired, eve, loading) for s in config.schemes}
    return designs


def run_ber_angle(config: ExperimentConfig, out_path: str, threads: int = 1) -> str:
    """Monte-Carlo BER of every scheme and group across the probe-angle sweep."""
    profile = config.profile()
    an_dim = config.array.n_antennas - config.layout.total_desired
    factors = norm_factors(profile, config.layout.n_groups, an_dim)
    designs = _designs_for(config, config.layout, profile)
    angles = config.sweep_angles()
    keys = [(g, ai) for g in range(config.layout.n_groups) for ai in range(angles.size)]

    def task(key):
        g, ai = key
        rng = _substream(config.seed, _DOM_BER, g, ai)
        return simulate_stream_ber(
            float(angles[ai]), g, designs, profile, factors, config.trials, rng, config.array
        )

    results = _map_keyed(task, keys, threads)
    rows = []
    for scheme in config.schemes:
        for g in range(config.layout.n_groups):
            for ai in range(angles.size):
                point = results[(g, ai)][scheme]
                rows.append([scheme, g + 1, _fmt(angles[ai]), _fmt(point.ber), point.trials])
    _write_csv(out_path, _header("ber-angle", config), ["scheme", "group", "angle_deg", "ber", "trials"], rows)
    return out_path


def run_ssr_snr(config: ExperimentConfig, out_path: str, threads: int = 1) -> str:
    """Deterministic secrecy sum-rate per scheme and group across the SNR grid."""
    del threads  # closed-form evaluation; nothing worth scheduling
    desired, eve = build_channels(config.layout, config.array)
    an_dim = config.array.n_antennas - config.layout.total_desired
    rows = []
    per_snr = {}
    for snr_db in config.snr_grid_db:
        profile = config.profile(snr_db)
        factors = norm_factors(profile, config.layout.n_groups, an_dim)
        loading = scheme_loadings(profile, factors, an_dim)
        per_snr[snr_db] = {
            s: (design_scheme(s, desired, eve, loading), profile, factors)
            for s in config.schemes
        }
    for scheme in config.schemes:
        for g in range(config.layout.n_groups):
            for snr_db in config.snr_grid_db:
                design, profile, factors = per_snr[snr_db][scheme]
                ssr = secrecy_sum_rate(
                    design, desired, eve, profile, factors, g,
                    eavesdropper_model=config.ssr_eavesdropper_model,
                )
                rows.append([scheme, g + 1, _fmt(snr_db), _fmt(ssr)])
    _write_csv(out_path, _header("ssr-snr", config), ["scheme", "group", "snr_db", "ssr"], rows)
    return out_path


def run_robust_ber(config: ExperimentConfig, out_path: str, threads: int = 1) -> str:
    """BER sweep under direction-measurement errors.

    Each realization perturbs every measured angle, re-derives all precoders
    from the perturbed layout, and probes at the true sweep angles; the
    per-point symbol budget is split evenly across realizations and error
    counts are summed exactly.
    """
    profile = config.profile()
    an_dim = config.array.n_antennas - config.layout.total_desired
    factors = norm_factors(profile, config.layout.n_groups, an_dim)
    model = AngleErrorModel.for_array(config.max_error_deg, config.array)
    angles = config.sweep_angles()
    n_groups = config.layout.n_groups
    n_real = config.error_realizations
    n_per = config.trials // n_real

    def task(r):
        rng_design = _substream(config.seed, _DOM_ROBUST_PERTURB, r)
        measured = perturb_layout(config.layout, model, rng_design)
        designs = _designs_for(config, measured, profile)
        errors = {}
        for g in range(n_groups):
            rng = _substream(config.seed, _DOM_ROBUST_SIM, r, g)
            errors[g] = simulate_stream_ber_batch(
                angles, g, designs, profile, factors, n_per, rng, config.array
            )
        return errors

    results = _map_keyed(task, list(range(n_real)), threads)
    totals = {
        (scheme, g): np.zeros(angles.size, dtype=np.int64)
        for scheme in config.schemes
        for g in range(n_groups)
    }
    for r in range(n_real):
        for g in range(n_groups):
            for scheme in config.schemes:
                totals[(scheme, g)] += results[r][g][scheme]
    bits_per_point = 2 * n_per * n_real
    rows = []
    for scheme in config.schemes:
        for g in range(n_groups):
            for ai in range(angles.size):
                ber = totals[(scheme, g)][ai] / bits_per_point
                rows.append([
                    scheme, g + 1, _fmt(angles[ai]), _fmt(ber), n_per * n_real, n_real,
                ])
    _write_csv(
        out_path,
        _header("robust-ber", config),
        ["scheme", "group", "angle_deg", "ber", "trials", "realizations"],
        rows,
    )
    return out_path


def run_flops(config: ExperimentConfig, out_path: str, threads: int = 1) -> str:
    """FLOP counts over the size sweep plus log-ratio scaling exponents.

    Size combinations violating N >= K*T + M are skipped and flagged in a
    trailing comment; scaling exponents probe the raw polynomials at the
    degree-dominant bases and are appended as comment rows.
    """
    del threads
    sweep = config.flops_sweep
    rows = []
    skipped = []
    for K, T, N, M in itertools.product(sweep["K"], sweep["T"], sweep["N"], sweep["M"]):
        if N < K * T + M:
            skipped.append((K, T, N, M))
            continue
        for method in METHODS:
            count = flops(FlopsQuery(method, K, T, N, M))
            rows.append([method, K, T, N, M, count])
    trailer = [
        f"# skipped: K={K},T={T},N={N},M={M} violates N >= K*T + M"
        for K, T, N, M in skipped
    ]
    for method in METHODS:
        for variable, base in DEFAULT_EXPONENT_BASES.items():
            value = scaling_exponent(method, variable, base)
            base_txt = ",".join(f"{k}={v}" for k, v in base.items())
            trailer.append(
                f"# scaling-exponent: method={method} variable={variable} factor=2 "
                f"base=({base_txt}) exponent={_fmt(value)}"
            )
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        for line in _header("flops", config):
            fh.write(line + "\n")
        writer = csv.writer(fh)
        writer.writerow(["method", "K", "T", "N", "M", "flops"])
        writer.writerows(rows)
        for line in trailer:
            fh.write(line + "\n")
    return out_path

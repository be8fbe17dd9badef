"""JSON experiment configuration: parsing, validation, resolved serialization.

A config file is a single JSON document; every field is optional and defaults
to the reference setup (16-element half-wavelength array, two 2-user groups at
{30, 45} and {120, 135} degrees, two eavesdroppers, beta1^2 = 0.9, QPSK,
SNR 14 dB). Angles are degrees, SNR is dB.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .arrays import ArrayConfig, GroupLayout
from .precoding import SCHEMES
from .signals import PowerProfile

__all__ = ["ConfigError", "ExperimentConfig", "default_config", "load_config", "parse_config"]

MIN_TRIALS = 10_000

_DEFAULTS: dict[str, Any] = {
    "array": {"n_antennas": 16, "spacing_wavelengths": 0.5},
    "layout": {
        "desired_groups_deg": [[30.0, 45.0], [120.0, 135.0]],
        "eavesdroppers_deg": [80.0, 98.0],
    },
    "power": {
        "total": 1.0,
        "beta1_sq": 0.9,
        "snr_db": 14.0,
        "snr_grid_db": [0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0],
        "sigma_z_sq": 1.0,
    },
    "schemes": list(SCHEMES),
    "sweep": {"angle_start_deg": 0.0, "angle_stop_deg": 180.0, "angle_step_deg": 0.5},
    "error_model": {"max_error_deg": 5.0, "realizations": 100},
    "trials": 200_000,
    "seed": 20240901,
    "ssr_eavesdropper_model": "colluding",
    "flops_sweep": {"K": [1, 2, 4, 8], "T": [1, 2, 4], "N": [16, 32, 64], "M": [2]},
}


class ConfigError(ValueError):
    """Configuration rejection carrying the JSON field path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class ExperimentConfig:
    array: ArrayConfig
    layout: GroupLayout
    total_power: float
    beta1_sq: float
    snr_db: float
    snr_grid_db: tuple[float, ...]
    sigma_z_sq: float
    schemes: tuple[str, ...]
    angle_start_deg: float
    angle_stop_deg: float
    angle_step_deg: float
    angles_deg: tuple[float, ...] | None
    max_error_deg: float
    error_realizations: int
    trials: int
    seed: int
    ssr_eavesdropper_model: str
    flops_sweep: dict[str, tuple[int, ...]]

    def sweep_angles(self) -> np.ndarray:
        if self.angles_deg is not None:
            return np.asarray(self.angles_deg, dtype=np.float64)
        # Tolerate spans like 180 / 0.5 landing a hair under an integer.
        span = (self.angle_stop_deg - self.angle_start_deg) / self.angle_step_deg
        count = int(np.floor(span + 1e-9)) + 1
        return self.angle_start_deg + self.angle_step_deg * np.arange(count)

    def profile(self, snr_db: float | None = None) -> PowerProfile:
        return PowerProfile.from_snr_db(
            self.snr_db if snr_db is None else snr_db,
            beta1_sq=self.beta1_sq,
            total_power=self.total_power,
            sigma_z2=self.sigma_z_sq,
        )

    def with_seed(self, seed: int) -> "ExperimentConfig":
        return dataclasses.replace(self, seed=int(seed))

    def to_json_dict(self) -> dict[str, Any]:
        """Round-trippable resolved view; written into every CSV header."""
        sweep: dict[str, Any]
        if self.angles_deg is not None:
            sweep = {"angles_deg": list(self.angles_deg)}
        else:
            sweep = {
                "angle_start_deg": self.angle_start_deg,
                "angle_stop_deg": self.angle_stop_deg,
                "angle_step_deg": self.angle_step_deg,
            }
        return {
            "array": {
                "n_antennas": self.array.n_antennas,
                "spacing_wavelengths": self.array.spacing_wavelengths,
            },
            "layout": {
                "desired_groups_deg": [list(g) for g in self.layout.desired_angles],
                "eavesdroppers_deg": list(self.layout.eavesdropper_angles),
            },
            "power": {
                "total": self.total_power,
                "beta1_sq": self.beta1_sq,
                "snr_db": self.snr_db,
                "snr_grid_db": list(self.snr_grid_db),
                "sigma_z_sq": self.sigma_z_sq,
            },
            "schemes": list(self.schemes),
            "sweep": sweep,
            "error_model": {
                "max_error_deg": self.max_error_deg,
                "realizations": self.error_realizations,
            },
            "trials": self.trials,
            "seed": self.seed,
            "ssr_eavesdropper_model": self.ssr_eavesdropper_model,
            "flops_sweep": {k: list(v) for k, v in self.flops_sweep.items()},
        }


def default_config() -> ExperimentConfig:
    return parse_config({})


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "config must be a JSON object")
    return parse_config(raw)


def _section(raw: dict, name: str) -> dict:
    value = raw.get(name, {})
    if not isinstance(value, dict):
        raise ConfigError(name, "must be a JSON object")
    merged = dict(_DEFAULTS[name])
    for key in value:
        if key not in merged and not (name == "sweep" and key == "angles_deg"):
            raise ConfigError(f"{name}.{key}", "unknown field")
    merged.update(value)
    return merged


def _number(section: dict, path: str, key: str, lo=None, hi=None, strict_lo=False) -> float:
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}", "must be a number")
    x = float(value)
    if lo is not None and (x <= lo if strict_lo else x < lo):
        raise ConfigError(f"{path}.{key}", f"must be {'>' if strict_lo else '>='} {lo}")
    if hi is not None and x > hi:
        raise ConfigError(f"{path}.{key}", f"must be <= {hi}")
    return x


def parse_config(raw: dict) -> ExperimentConfig:
    for key in raw:
        if key not in _DEFAULTS:
            raise ConfigError(key, "unknown field")

    arr_raw = _section(raw, "array")
    try:
        array = ArrayConfig(
            int(_number(arr_raw, "array", "n_antennas", lo=2)),
            _number(arr_raw, "array", "spacing_wavelengths", lo=0, strict_lo=True),
        )
    except ValueError as exc:
        raise ConfigError("array", str(exc)) from exc

    lay_raw = _section(raw, "layout")
    groups = lay_raw["desired_groups_deg"]
    eves = lay_raw["eavesdroppers_deg"]
    if not isinstance(groups, list) or not all(isinstance(g, list) for g in groups):
        raise ConfigError("layout.desired_groups_deg", "must be a list of angle lists")
    if not isinstance(eves, list):
        raise ConfigError("layout.eavesdroppers_deg", "must be a list of angles")
    for gi, g in enumerate(groups):
        for ai, a in enumerate(g):
            if isinstance(a, bool) or not isinstance(a, (int, float)) or not 0 < float(a) < 180:
                raise ConfigError(
                    f"layout.desired_groups_deg[{gi}][{ai}]",
                    "must be an angle strictly inside (0, 180) degrees",
                )
    for ai, a in enumerate(eves):
        if isinstance(a, bool) or not isinstance(a, (int, float)) or not 0 < float(a) < 180:
            raise ConfigError(
                f"layout.eavesdroppers_deg[{ai}]",
                "must be an angle strictly inside (0, 180) degrees",
            )
    try:
        layout = GroupLayout(tuple(tuple(g) for g in groups), tuple(eves))
    except ValueError as exc:
        raise ConfigError("layout", str(exc)) from exc
    if array.n_antennas <= layout.total_desired:
        raise ConfigError(
            "layout.desired_groups_deg",
            f"need n_antennas > total desired users ({array.n_antennas} <= {layout.total_desired})",
        )

    pow_raw = _section(raw, "power")
    total_power = _number(pow_raw, "power", "total", lo=0, strict_lo=True)
    beta1_sq = _number(pow_raw, "power", "beta1_sq", lo=0, hi=1.0, strict_lo=True)
    snr_db = _number(pow_raw, "power", "snr_db")
    sigma_z_sq = _number(pow_raw, "power", "sigma_z_sq", lo=0, strict_lo=True)
    grid = pow_raw["snr_grid_db"]
    if not isinstance(grid, list) or not grid:
        raise ConfigError("power.snr_grid_db", "must be a non-empty list of dB values")
    for i, v in enumerate(grid):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"power.snr_grid_db[{i}]", "must be a number")
    snr_grid = tuple(float(v) for v in grid)

    schemes_raw = raw.get("schemes", _DEFAULTS["schemes"])
    if not isinstance(schemes_raw, list) or not schemes_raw:
        raise ConfigError("schemes", "must be a non-empty list")
    for i, s in enumerate(schemes_raw):
        if s not in SCHEMES:
            raise ConfigError(f"schemes[{i}]", f"unknown scheme {s!r}; expected one of {SCHEMES}")
    schemes = tuple(dict.fromkeys(schemes_raw))

    sweep_raw = _section(raw, "sweep")
    angles_deg: tuple[float, ...] | None = None
    if "angles_deg" in sweep_raw:
        angle_list = sweep_raw["angles_deg"]
        if not isinstance(angle_list, list) or not angle_list:
            raise ConfigError("sweep.angles_deg", "must be a non-empty list of angles")
        for i, a in enumerate(angle_list):
            if isinstance(a, bool) or not isinstance(a, (int, float)) or not 0 <= float(a) <= 180:
                raise ConfigError(f"sweep.angles_deg[{i}]", "must be an angle in [0, 180]")
        angles_deg = tuple(float(a) for a in angle_list)
        start, stop, step = 0.0, 180.0, 0.5
    else:
        start = _number(sweep_raw, "sweep", "angle_start_deg", lo=0.0, hi=180.0)
        stop = _number(sweep_raw, "sweep", "angle_stop_deg", lo=0.0, hi=180.0)
        step = _number(sweep_raw, "sweep", "angle_step_deg", lo=0.0, strict_lo=True)
        if stop < start:
            raise ConfigError("sweep.angle_stop_deg", "must be >= angle_start_deg")

    err_raw = _section(raw, "error_model")
    max_error_deg = _number(err_raw, "error_model", "max_error_deg", lo=0.0)
    realizations = err_raw["realizations"]
    if isinstance(realizations, bool) or not isinstance(realizations, int) or realizations < 1:
        raise ConfigError("error_model.realizations", "must be a positive integer")

    trials = raw.get("trials", _DEFAULTS["trials"])
    if isinstance(trials, bool) or not isinstance(trials, int):
        raise ConfigError("trials", "must be an integer")
    if trials < MIN_TRIALS:
        raise ConfigError("trials", f"must be >= {MIN_TRIALS}")
    if trials < realizations:
        raise ConfigError("trials", "must be >= error_model.realizations")

    seed = raw.get("seed", _DEFAULTS["seed"])
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2 ** 64:
        raise ConfigError("seed", "must be an unsigned 64-bit integer")

    ssr_model = raw.get("ssr_eavesdropper_model", _DEFAULTS["ssr_eavesdropper_model"])
    if ssr_model not in ("colluding", "per-eve"):
        raise ConfigError("ssr_eavesdropper_model", "must be 'colluding' or 'per-eve'")

    fs_raw = raw.get("flops_sweep", _DEFAULTS["flops_sweep"])
    if not isinstance(fs_raw, dict):
        raise ConfigError("flops_sweep", "must be an object with K/T/N/M lists")
    flops_sweep: dict[str, tuple[int, ...]] = {}
    for name in ("K", "T", "N", "M"):
        values = fs_raw.get(name, _DEFAULTS["flops_sweep"][name])
        if not isinstance(values, list) or not values:
            raise ConfigError(f"flops_sweep.{name}", "must be a non-empty list of integers")
        for i, v in enumerate(values):
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ConfigError(f"flops_sweep.{name}[{i}]", "must be a positive integer")
        flops_sweep[name] = tuple(values)
    for key in fs_raw:
        if key not in ("K", "T", "N", "M"):
            raise ConfigError(f"flops_sweep.{key}", "unknown field")

    return ExperimentConfig(
        array=array,
        layout=layout,
        total_power=total_power,
        beta1_sq=beta1_sq,
        snr_db=snr_db,
        snr_grid_db=snr_grid,
        sigma_z_sq=sigma_z_sq,
        schemes=schemes,
        angle_start_deg=start,
        angle_stop_deg=stop,
        angle_step_deg=step,
        angles_deg=angles_deg,
        max_error_deg=max_error_deg,
        error_realizations=realizations,
        trials=trials,
        seed=seed,
        ssr_eavesdropper_model=ssr_model,
        flops_sweep=flops_sweep,
    )

"""Render simulator CSV results into publication-style figures.

Consumes only the documented CSV schemas ('#' lines are comments, first real
row is the header). The renderer never reorders, interpolates, or drops data
rows; curves join raw points in file order. BER axes are logarithmic and
clipped to [1e-5, 1]; exact zeros are drawn at the clip floor with a distinct
marker since a log axis cannot show them.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

__all__ = ["KINDS", "PlotSpec", "SchemaError", "render"]

BER_FLOOR = 1e-5

KINDS = {
    "ber-angle": ["scheme", "group", "angle_deg", "ber", "trials"],
    "robust-ber": ["scheme", "group", "angle_deg", "ber", "trials", "realizations"],
    "ssr-snr": ["scheme", "group", "snr_db", "ssr"],
    "flops": ["method", "K", "T", "N", "M", "flops"],
}

_AXIS_LABELS = {
    "ber-angle": ("direction angle (deg)", "bit error rate"),
    "robust-ber": ("direction angle (deg)", "bit error rate"),
    "ssr-snr": ("SNR (dB)", "secrecy sum-rate (bits/s/Hz)"),
    "flops": ("N (transmit antennas)", "FLOPs"),
}


class SchemaError(ValueError):
    """CSV columns do not match the declared figure kind."""

    def __init__(self, kind: str, expected: list[str], found: list[str]):
        missing = [c for c in expected if c not in found]
        unexpected = [c for c in found if c not in expected]
        super().__init__(
            f"CSV schema does not match kind {kind!r}: "
            f"missing columns {missing}, unexpected columns {unexpected}"
        )
        self.missing = missing
        self.unexpected = unexpected


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    kind: str
    out_path: str
    group: int | None = None
    log_ber: bool = True

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; expected one of {sorted(KINDS)}")


def _read_rows(path: str, kind: str) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        reader = csv.DictReader(line for line in fh if not line.startswith("#"))
        rows = list(reader)
        found = list(reader.fieldnames or [])
    expected = KINDS[kind]
    if sorted(found) != sorted(expected):
        raise SchemaError(kind, expected, found)
    if not rows:
        raise ValueError(f"{path}: no data rows to plot")
    return rows


def _out_path_for_group(base: str, group: str, single: bool) -> Path:
    path = Path(base)
    if single:
        return path
    return path.with_name(f"{path.stem}-group{group}{path.suffix or '.png'}")


def _draw_ber(ax, rows: list[dict], x_key: str, log_ber: bool) -> None:
    schemes = list(dict.fromkeys(r["scheme"] for r in rows))
    for scheme in schemes:
        xs = [float(r[x_key]) for r in rows if r["scheme"] == scheme]
        ys = [float(r["ber"]) for r in rows if r["scheme"] == scheme]
        clipped = [max(y, BER_FLOOR) for y in ys]
        (line,) = ax.plot(xs, clipped, lw=1.2, label=scheme)
        zeros_x = [x for x, y in zip(xs, ys) if y == 0.0]
        if zeros_x:
            ax.plot(
                zeros_x, [BER_FLOOR] * len(zeros_x), "v",
                color=line.get_color(), ms=4, mew=0, linestyle="none",
            )
    if log_ber:
        ax.set_yscale("log")
        ax.set_ylim(BER_FLOOR, 1.0)


def _draw_ssr(ax, rows: list[dict]) -> None:
    for scheme in dict.fromkeys(r["scheme"] for r in rows):
        xs = [float(r["snr_db"]) for r in rows if r["scheme"] == scheme]
        ys = [float(r["ssr"]) for r in rows if r["scheme"] == scheme]
        ax.plot(xs, ys, marker="o", ms=3, lw=1.2, label=scheme)


def _draw_flops(ax, rows: list[dict]) -> None:
    for method in dict.fromkeys(r["method"] for r in rows):
        xs = [int(r["N"]) for r in rows if r["method"] == method]
        ys = [int(r["flops"]) for r in rows if r["method"] == method]
        ax.plot(xs, ys, marker="s", ms=3, lw=1.0, label=method)
    ax.set_yscale("log")


def render(spec: PlotSpec) -> list[str]:
    """Write one image per group (or a single image) and return the paths."""
    rows = _read_rows(spec.csv_path, spec.kind)
    written: list[str] = []

    if spec.kind == "flops":
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        _draw_flops(ax, rows)
        _finish(fig, ax, spec.kind, None, Path(spec.out_path), written)
        return written

    groups = list(dict.fromkeys(r["group"] for r in rows))
    if spec.group is not None:
        wanted = str(spec.group)
        if wanted not in groups:
            raise ValueError(f"group {spec.group} not present in {spec.csv_path}")
        groups = [wanted]
    single = len(groups) == 1
    for group in groups:
        sub = [r for r in rows if r["group"] == group]
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        if spec.kind in ("ber-angle", "robust-ber"):
            _draw_ber(ax, sub, "angle_deg", spec.log_ber)
        else:
            _draw_ssr(ax, sub)
        _finish(fig, ax, spec.kind, group, _out_path_for_group(spec.out_path, group, single), written)
    return written


def _finish(fig, ax, kind: str, group: str | None, path: Path, written: list[str]) -> None:
    xlabel, ylabel = _AXIS_LABELS[kind]
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if group is not None:
        ax.set_title(f"group {group}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata={"Software": "figkit"})
    plt.close(fig)
    written.append(str(path))

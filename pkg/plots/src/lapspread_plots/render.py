"""Render figure datasets (manifest.json + CSVs) into PNG images.

Strictly presentational: no mathematical quantity is computed here.  Curves
are styled by their curve_id (dotted black pairing line, solid red bound
curve, dashed purple weak bound, dashed green extremal curve, dash-dot blue
hyperbola) and points are drawn as a scatter.  Output is a 200 dpi PNG with
stripped metadata, so re-rendering identical inputs with a pinned matplotlib
yields byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

DPI = 200

CURVE_STYLE = {
    "LINE_X_PLUS_Y_1": {"color": "black", "linestyle": ":", "label": "x + y = 1"},
    "RED_FN": {"color": "red", "linestyle": "-", "label": "paired bound curve"},
    "PURPLE_WEAK": {"color": "purple", "linestyle": "--", "label": "weak bound curve"},
    "GREEN_EMP": {"color": "green", "linestyle": "--", "label": "extremal curve"},
    "BLUE_SE": {"color": "blue", "linestyle": "-.", "label": "weighted hyperbola"},
}

# draw order, lowest layer first
_CURVE_ORDER = ["LINE_X_PLUS_Y_1", "BLUE_SE", "RED_FN", "GREEN_EMP", "PURPLE_WEAK"]


@dataclass(frozen=True)
class PlotSpec:
    """One render request: which figure, where its manifest lives, where the
    image goes, and an optional axis-window override."""

    figure_id: int
    manifest_dir: Path
    output_path: Path
    window: tuple[float, float, float, float] | None = None


def load_manifest(manifest_dir: str | Path) -> dict:
    """Read and validate a dataset manifest; all referenced CSVs must exist."""
    d = Path(manifest_dir)
    path = d / "manifest.json"
    if not path.exists():
        raise FileNotFoundError(f"no manifest.json in {d}")
    manifest = json.loads(path.read_text())
    for key in ("figure_id", "n", "curves", "points", "window"):
        if key not in manifest:
            raise ValueError(f"manifest missing key {key!r}")
    for entry in manifest["curves"]:
        if not (d / entry["file"]).exists():
            raise FileNotFoundError(f"curve file {entry['file']} missing from {d}")
    if manifest["points"] is not None and not (d / manifest["points"]["file"]).exists():
        raise FileNotFoundError(f"points file {manifest['points']['file']} missing from {d}")
    return manifest


def _read_xy(path: Path, xcol: str, ycol: str) -> tuple[list[float], list[float]]:
    xs, ys = [], []
    with path.open() as fh:
        for row in csv.DictReader(fh):
            x, y = float(row[xcol]), float(row[ycol])
            if math.isfinite(x) and math.isfinite(y):
                xs.append(x)
                ys.append(y)
    return xs, ys


def _scatter_figure(manifest: dict, d: Path, window) -> tuple[plt.Figure, int]:
    fig, ax = plt.subplots(figsize=(6, 6))
    drawn = 0
    if manifest["points"] is not None:
        xs, ys = _read_xy(d / manifest["points"]["file"], "x", "y")
        if window:
            keep = [(x, y) for x, y in zip(xs, ys)
                    if window[0] <= x <= window[1] and window[2] <= y <= window[3]]
            xs, ys = [p[0] for p in keep], [p[1] for p in keep]
        if not xs:
            warnings.warn("points file contributed no drawable points; rendering curves only")
        else:
            ax.scatter(xs, ys, s=12, color="#1f3d7a", zorder=5)
            drawn = len(xs)
    by_id = {c["curve_id"]: c for c in manifest["curves"]}
    for cid in _CURVE_ORDER:
        if cid not in by_id:
            continue
        xs, ys = _read_xy(d / by_id[cid]["file"], "x", "y")
        ax.plot(xs, ys, zorder=3, linewidth=1.4, **CURVE_STYLE[cid])
    if window:
        ax.set_xlim(window[0], window[1])
        ax.set_ylim(window[2], window[3])
    if manifest.get("transform") == "cluster_fraction":
        ax.set_xlabel("s")
        ax.set_ylabel("t")
    else:
        ax.set_xlabel("algebraic connectivity of G")
        ax.set_ylabel("algebraic connectivity of the complement")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title(f"n = {manifest['n']}")
    return fig, drawn


def _bound_panels_figure(manifest: dict, d: Path, window) -> tuple[plt.Figure, int]:
    rows: dict[str, tuple[list[float], list[float]]] = {}
    drawn = 0
    with (d / manifest["points"]["file"]).open() as fh:
        for row in csv.DictReader(fh):
            xs, ys = rows.setdefault(row["bound_id"], ([], []))
            xs.append(float(row["lambda2"]))
            ys.append(float(row["bound"]))
            drawn += 1
    if not rows:
        warnings.warn("points file contributed no drawable points")
    fig, axes = plt.subplots(1, 2, figsize=(11, 5.5), sharex=True, sharey=True)
    for ax, bound_id, label in zip(axes, ("F_N", "LU"),
                                   ("eccentricity bound", "diameter-size bound")):
        xs, ys = rows.get(bound_id, ([], []))
        ax.scatter(xs, ys, s=12, color="#1f3d7a", zorder=5)
        lim = max(xs + ys, default=1.0)
        ax.plot([0, lim], [0, lim], color="grey", linestyle="--", linewidth=0.8, zorder=2)
        ax.set_title(label)
        ax.set_xlabel("algebraic connectivity")
        ax.set_ylabel("bound value")
        if window:
            ax.set_xlim(window[0], window[1])
            ax.set_ylim(window[2], window[3])
    fig.suptitle(f"n = {manifest['n']}")
    return fig, drawn


def build_figure(spec: PlotSpec) -> tuple[plt.Figure, int]:
    """Build the matplotlib figure; returns it with the drawn point count."""
    manifest = load_manifest(spec.manifest_dir)
    if manifest["figure_id"] != spec.figure_id:
        raise ValueError(f"manifest holds figure {manifest['figure_id']}, "
                         f"requested {spec.figure_id}")
    window = spec.window if spec.window is not None else tuple(manifest["window"])
    d = Path(spec.manifest_dir)
    if spec.figure_id == 5:
        return _bound_panels_figure(manifest, d, window)
    return _scatter_figure(manifest, d, window)


def render(spec: PlotSpec) -> Path:
    """Render one dataset to a PNG file and return the output path."""
    fig, _ = build_figure(spec)
    out = Path(spec.output_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    try:
        fig.savefig(out, dpi=DPI, metadata={"Software": None})
    finally:
        plt.close(fig)
    return out

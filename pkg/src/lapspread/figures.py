"""Figure dataset emission: scatter points and analytic curves as CSV + manifest.

Four datasets are supported:

* figure 1: the both-diameter-3 census scatter with the pairing line, the
  eccentricity-bound curve, the extremal (green) curve and the weighted
  hyperbola;
* figure 3: curve-only comparison of the strong and weak bounds;
* figure 5: per-graph bound-versus-connectivity scatter for the diameter-3
  census, one row per (graph, bound);
* figure 9: the figure-1 dataset with the cluster-fraction rescaling applied
  to both axes, which straightens the extremal curve onto s + t = 1.

Every emitted curve sample is verified against its defining equation within
1e-10 before writing.  Output is deterministic: fixed sample counts, 17
significant digit rendering, and a sorted-key manifest.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from . import bounds
from .enumeration import Filter, GraphClassIter, PointRecord, enumerate_masks, \
    evaluate_point, mask_to_graph
from .families import thick_stem_cubic
from .spectra import bisect_root

FIGURE_IDS = (1, 3, 5, 9)
FIGURE_DEFAULT_N = {1: 7, 3: 20, 5: 7, 9: 7}
CURVE_SAMPLES = 512
CURVE_RESIDUAL_TOL = 1e-10

_CURVE_FILES = {
    "LINE_X_PLUS_Y_1": "curve_line_x_plus_y_1.csv",
    "RED_FN": "curve_red_fn.csv",
    "PURPLE_WEAK": "curve_purple_weak.csv",
    "GREEN_EMP": "curve_green_emp.csv",
    "BLUE_SE": "curve_blue_se.csv",
}


def _fmt(v: float) -> str:
    return format(v, ".17g")


def _check(label: str, err: float) -> None:
    if not (abs(err) <= CURVE_RESIDUAL_TOL):
        raise AssertionError(f"curve sample failed residual check ({label}: {err!r})")


def sample_curve(curve_id: str, n: int, samples: int = CURVE_SAMPLES) -> list[tuple[float, float, float]]:
    """(param, x, y) samples of one named curve, residual-checked."""
    pts: list[tuple[float, float, float]] = []
    if curve_id == "LINE_X_PLUS_Y_1":
        for t in range(samples):
            x = t / (samples - 1)
            y = 1.0 - x
            _check("line", x + y - 1.0)
            pts.append((x, x, y))
    elif curve_id == "RED_FN":
        for t in range(samples):
            k = (t + 0.5) * (n / 2) / samples
            x = bounds.f_bound(n, k)
            y = bounds.f_bound(n, (n - 2 * k) / 2)
            _check("red", x + y - 1.0 - bounds.g_bound(n, k))
            pts.append((k, x, y))
    elif curve_id == "PURPLE_WEAK":
        for t in range(samples):
            k = (t + 0.5) * (n / 2) / samples
            x = bounds.weak_bound(n, k)
            y = bounds.weak_bound(n, (n - 2 * k) / 2)
            _check("purple", (1 - (k + 1) / (n - k + 1)) - x)
            pts.append((k, x, y))
    elif curve_id == "GREEN_EMP":
        for t in range(samples):
            s = (t + 0.5) / samples
            x = bisect_root(thick_stem_cubic(n, s), 0.0, 1.0)
            y = bisect_root(thick_stem_cubic(n, 1.0 - s), 0.0, 1.0)
            _check("green", bounds.green_residual(n, x, y))
            _check("green-rsum", bounds.cluster_fraction(n, x) + bounds.cluster_fraction(n, y) - 1.0)
            pts.append((s, x, y))
    elif curve_id == "BLUE_SE":
        for t in range(samples):
            x = t / (samples - 1)
            y = n / 2 + (n / 4) * (n - 2) / (x - n / 2)
            _check("blue", bounds.se_residual(n, x, y))
            pts.append((x, x, y))
    else:
        raise ValueError(f"unknown curve id {curve_id!r}")
    return pts


def _rescale(n: int, v: float) -> float:
    try:
        return bounds.cluster_fraction(n, v)
    except ZeroDivisionError:
        return math.inf


def _census_records(n: int, filt: Filter, threads: int | None) -> list[PointRecord]:
    masks = enumerate_masks(GraphClassIter(n, filt, dedup=True), threads)
    return [evaluate_point(mask_to_graph(n, m)) for m in masks]


def _write_curve(path: Path, pts: list[tuple[float, float, float]]) -> None:
    lines = ["param,x,y"]
    lines += [f"{_fmt(p)},{_fmt(x)},{_fmt(y)}" for p, x, y in pts]
    path.write_text("\n".join(lines) + "\n")


def emit_figure(figure_id: int, out_dir: str | Path, n: int | None = None,
                threads: int | None = None) -> dict:
    """Write the dataset of one figure into `out_dir`; returns the manifest."""
    if figure_id not in FIGURE_IDS:
        raise ValueError(f"figure id must be one of {FIGURE_IDS}, got {figure_id}")
    n = FIGURE_DEFAULT_N[figure_id] if n is None else n
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest: dict = {"figure_id": figure_id, "n": n, "transform": None,
                      "points": None, "curves": []}

    if figure_id in (1, 9):
        curve_ids = ("LINE_X_PLUS_Y_1", "RED_FN", "GREEN_EMP", "BLUE_SE")
        records = _census_records(n, Filter("both-diam3"), threads)
        if figure_id == 1:
            lines = [PointRecord.csv_header()]
            lines += [r.to_csv_row() for r in records]
            (out / "points.csv").write_text("\n".join(lines) + "\n")
            manifest["points"] = {"file": "points.csv", "count": len(records),
                                  "columns": list(PointRecord.csv_header().split(","))}
        else:
            manifest["transform"] = "cluster_fraction"
            lines = ["graph6,n,x,y"]
            for r in records:
                lines.append(f"{r.graph6},{r.n},{_fmt(_rescale(n, r.x))},{_fmt(_rescale(n, r.y))}")
            (out / "points.csv").write_text("\n".join(lines) + "\n")
            manifest["points"] = {"file": "points.csv", "count": len(records),
                                  "columns": ["graph6", "n", "x", "y"]}
        max_x = max([r.x for r in records], default=1.0)
        max_y = max([r.y for r in records], default=1.0)
    elif figure_id == 3:
        curve_ids = ("LINE_X_PLUS_Y_1", "RED_FN", "PURPLE_WEAK")
        max_x = max_y = 1.0
    else:  # figure 5
        curve_ids = ()
        records = _census_records(n, Filter("diam", 3), threads)
        lines = ["graph6,n,bound_id,bound,lambda2"]
        for r in records:
            for bound_id, key in (("F_N", "f_bound"), ("LU", "lu")):
                lines.append(f"{r.graph6},{r.n},{bound_id},{_fmt(r.bound_values[key])},{_fmt(r.x)}")
        (out / "points.csv").write_text("\n".join(lines) + "\n")
        manifest["points"] = {"file": "points.csv", "count": 2 * len(records),
                              "columns": ["graph6", "n", "bound_id", "bound", "lambda2"]}
        max_x = max([r.x for r in records], default=1.0)
        max_y = max([max(r.bound_values["f_bound"], r.bound_values["lu"]) for r in records],
                    default=1.0)

    for cid in curve_ids:
        pts = sample_curve(cid, n)
        if figure_id == 9:
            pts = [(p, _rescale(n, x), _rescale(n, y)) for p, x, y in pts]
        _write_curve(out / _CURVE_FILES[cid], pts)
        manifest["curves"].append({"curve_id": cid, "file": _CURVE_FILES[cid],
                                   "samples": len(pts), "columns": ["param", "x", "y"]})

    if figure_id == 9:
        window = [-0.02, 1.02, -0.02, 1.02]
    else:
        window = [-0.02, round(max(1.0, max_x) + 0.05, 3),
                  -0.02, round(max(1.0, max_y) + 0.05, 3)]
    manifest["window"] = window
    (out / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")
    return manifest

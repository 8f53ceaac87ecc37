"""Rendering of lapspread figure datasets into raster images."""

__version__ = "0.1.0"

from .render import PlotSpec, load_manifest, render  # noqa: F401

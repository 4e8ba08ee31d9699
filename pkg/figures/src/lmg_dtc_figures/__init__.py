"""Render figures from lmg-dtc sweep data files.

Pure consumers of the comma-separated sweep outputs: three figure kinds
(curves, heatmap, dft-density), one script per kind, sharing one schema
reader.  Nothing here runs a simulation.
"""

import matplotlib

matplotlib.use("Agg")

__version__ = "0.1.0"

from .render import FigureSpec, render
from .schema import SchemaError, SweepData, read_sweep_file

__all__ = ["FigureSpec", "render", "SchemaError", "SweepData", "read_sweep_file", "__version__"]

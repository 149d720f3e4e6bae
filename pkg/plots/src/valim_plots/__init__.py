"""Figure rendering for valim CSV artifacts."""

from .csvio import Table, load_table
from .render import FigureJob, render

__version__ = "0.1.0"

__all__ = ["Table", "load_table", "FigureJob", "render", "__version__"]

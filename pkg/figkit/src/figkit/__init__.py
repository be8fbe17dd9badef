"""Figure rendering for the multicast precoding simulator's CSV outputs."""

from .render import KINDS, PlotSpec, SchemaError, render

__version__ = "0.1.0"

"""Edge-coloring toolkit for large colorable subgraphs of multigraphs."""

__version__ = "0.1.0"

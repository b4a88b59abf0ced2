"""Maximum minimal blocking sets of graphs and minimal hitting sets of hypergraphs."""

__version__ = "0.1.0"

"""Graph minor categories: minor morphisms, matching complexes, homology and scans."""

__version__ = "0.1.0"

from .errors import GraphMinorError  # noqa: E402,F401
from .graphs import Arrow, Graph, SimpleGraph, make_graph, point, standard_graph  # noqa: E402,F401
from .minors import STAR, MinorMorphism, compose, enumerate_minor_morphisms, identity, validate  # noqa: E402,F401

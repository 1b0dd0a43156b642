"""Censuses of induced-C5-free, perfect and generalised split graphs at fixed edge density."""

__version__ = "0.1.0"

from .graphcore import Graph, Partition, complement, parse_graph, format_graph  # noqa: E402
from .census import exact_census, monte_carlo_census, exponent_curve, dangerous_pair_probability  # noqa: E402
from .recognizers import (  # noqa: E402
    ALL_GRAPHS,
    CLUSTER,
    GENERALISED_SPLIT,
    INDUCED_C5_FREE,
    PERFECT,
    is_generalised_split,
    is_induced_c5_free,
    is_perfect,
)

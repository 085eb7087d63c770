"""drdkit: decide whether a simple strongly connected digraph is
distance-regular by running every known characterization independently and
checking that all verdicts coincide."""

from .characterize import (
    CHECK_IDS,
    CharacterizationVerdict,
    CheckConfig,
    Report,
    check_all,
    check_single,
)
from .digraph import Digraph, DistanceTable, converse, distance_table, parse_digraph, regularity, strongly_connected

__all__ = [
    "CHECK_IDS",
    "CharacterizationVerdict",
    "CheckConfig",
    "Digraph",
    "DistanceTable",
    "Report",
    "check_all",
    "check_single",
    "converse",
    "distance_table",
    "parse_digraph",
    "regularity",
    "strongly_connected",
]

__version__ = "0.1.0"

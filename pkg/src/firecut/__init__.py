"""Exact solvers for saving a critical set in the firefighting game."""

from .game import (
    EMPTY_STRATEGY,
    GameModel,
    GameTrace,
    Instance,
    InvalidPlacement,
    Strategy,
    saves,
    simulate,
    validate_partial,
)
from .graph import Graph, bfs_distances, reachable_set
from .oracle import OracleCapExceeded, oracle_solve
from .separators import (
    SeparatorSequence,
    enumerate_important_separators,
    min_separator,
    smallest_important_separator,
    tight_sequence,
)

__all__ = [
    "EMPTY_STRATEGY",
    "GameModel",
    "GameTrace",
    "Graph",
    "Instance",
    "InvalidPlacement",
    "OracleCapExceeded",
    "SeparatorSequence",
    "Strategy",
    "bfs_distances",
    "enumerate_important_separators",
    "min_separator",
    "oracle_solve",
    "reachable_set",
    "saves",
    "simulate",
    "smallest_important_separator",
    "tight_sequence",
    "validate_partial",
]

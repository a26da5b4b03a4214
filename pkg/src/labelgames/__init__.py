"""Exact solver for two-player labeling games played on graphs."""

from .games import (
    Convention,
    GameSpec,
    Move,
    Outcome,
    Player,
    Position,
    RepeatPolicy,
    Scope,
    Variant,
    canned_spec,
)
from .graphcore import Graph, generate, graph_from_graph6, graph_to_graph6
from .solver import Limits, SolveResult, Unsolved, solve, solve_plain

__all__ = [
    "Convention", "GameSpec", "Graph", "Limits", "Move", "Outcome", "Player", "Position",
    "RepeatPolicy", "Scope", "SolveResult", "Unsolved", "Variant", "canned_spec", "generate",
    "graph_from_graph6", "graph_to_graph6", "solve", "solve_plain",
]

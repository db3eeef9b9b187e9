"""Matrices of words for synchronizing automata."""
from .automaton import (
    Dfa,
    DfaError,
    NotSynchronizing,
    StateSet,
    apply,
    greedy_sync_word,
    image_of_all,
    is_synchronizing,
    parse_word,
    format_word,
    shortest_sync_word,
    validate,
)
from .wordmatrix import WordMatrix, matrix_of_word, multiply, nonzero_columns, q_equivalent, q_subsumes
from .series import SeriesContext, evaluate, evaluate_linear_combination
from .exactla import Basis, RationalMatrix, canonical_basis, in_span, rank_of_family
from .lmatrix import LMatrix, canonical_L, independent_chain, solve_min

__all__ = [
    "Basis", "Dfa", "DfaError", "LMatrix", "NotSynchronizing", "RationalMatrix",
    "SeriesContext", "StateSet", "WordMatrix", "apply", "canonical_L", "canonical_basis",
    "evaluate", "evaluate_linear_combination", "format_word", "greedy_sync_word",
    "image_of_all", "in_span", "independent_chain", "is_synchronizing", "matrix_of_word",
    "multiply", "nonzero_columns", "parse_word", "q_equivalent", "q_subsumes",
    "rank_of_family", "shortest_sync_word", "solve_min", "validate",
]
__version__ = "0.1.0"

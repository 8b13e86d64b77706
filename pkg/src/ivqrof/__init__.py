"""Interval-valued q-rung orthopair fuzzy numbers and Hamacher-Heronian group ranking."""

from .fuzzy_core import AggParams, IVqROFN, WeightVector, compare, score
from .heronian import hhmga, hhmwa, hmm
from .mcgdm import DecisionProblem, ProblemParams, RankingReport, solve
from .problem_io import load_problem, parse_problem

__all__ = [
    "IVqROFN",
    "AggParams",
    "WeightVector",
    "score",
    "compare",
    "hmm",
    "hhmwa",
    "hhmga",
    "DecisionProblem",
    "ProblemParams",
    "RankingReport",
    "solve",
    "load_problem",
    "parse_problem",
]

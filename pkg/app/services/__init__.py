from .regex_parser import RegexParserService
from .matcher import MatcherService
from .solver import SolverService
from .generator import GeneratorService
from .baselines import BaselineService
from .scoring import ScoringService
from .dataset_io import DatasetIOService

__all__ = [
    "RegexParserService",
    "MatcherService",
    "SolverService",
    "GeneratorService",
    "BaselineService",
    "ScoringService",
    "DatasetIOService",
]

from .regex import Op, Regex, OperatorSet, CostFunction, REDUCED, FULL, UNIFORM
from .instance import PNSet, Instance, GenParams, Scheme

__all__ = [
    "Op",
    "Regex",
    "OperatorSet",
    "CostFunction",
    "REDUCED",
    "FULL",
    "UNIFORM",
    "PNSet",
    "Instance",
    "GenParams",
    "Scheme"
]

from .instance import InstanceRecord, SolutionRecord
from .prediction import Prediction
from .recipe import DatasetRecipe
from .manifest import RunManifest

__all__ = [
    "InstanceRecord",
    "SolutionRecord",
    "Prediction",
    "DatasetRecipe",
    "RunManifest",
]

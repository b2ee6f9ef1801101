"""rigidlab: exact experiments on rigidity, distality and equicontinuity of cascades."""

from .errors import ConfigurationError, ConsistencyError, DomainError, PrecisionError
from .precision import Angle1, make_constants, ring_distance, working_precision
from .systems import (
    CircleFamilySystem,
    FiniteMapSystem,
    ProductSystem,
    RotationSystem,
    SkewProductSystem,
    TimeSet,
    TorusPoint,
    CirclePoint,
)
from .hyperspace import FiniteSubset, hausdorff_distance
from .envsemi import FiniteSystem, TransformMap, closure

__version__ = "0.1.0"

__all__ = [
    "Angle1", "CircleFamilySystem", "CirclePoint", "ConfigurationError", "ConsistencyError",
    "DomainError", "FiniteMapSystem", "FiniteSubset", "FiniteSystem", "PrecisionError",
    "ProductSystem", "RotationSystem", "SkewProductSystem", "TimeSet", "TorusPoint",
    "TransformMap", "closure", "hausdorff_distance", "make_constants", "ring_distance",
    "working_precision",
]

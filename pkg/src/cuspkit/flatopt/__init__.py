from .objective import InvalidConfig, PackingConfig, ObjectiveValue, objective, density, hexagonal_config
from .optimizer import OptimizationResult, optimize
from .search import SearchResult, random_search
from .surgery import BandIntersectsCriticalSet, SurgeryReport, surgery_expansion_check, surgery_slope_survey

__all__ = [
    "InvalidConfig",
    "PackingConfig",
    "ObjectiveValue",
    "objective",
    "density",
    "hexagonal_config",
    "OptimizationResult",
    "optimize",
    "SearchResult",
    "random_search",
    "BandIntersectsCriticalSet",
    "SurgeryReport",
    "surgery_expansion_check",
    "surgery_slope_survey",
]

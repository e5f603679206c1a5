from .dim3 import DomainError, loxodromic_case_bound, parabolic_positive_case, parabolic_negative_case, multi_cusp_negative_case
from .dimn import successive_minima_bound, dim_n_theorem, volume_ratio_bounds
from .inradius import inradius_bound, flat_surface_bound, random_search_bound
from .suite import CertificateSuite, certificate_suite

__all__ = [
    "DomainError",
    "loxodromic_case_bound",
    "parabolic_positive_case",
    "parabolic_negative_case",
    "multi_cusp_negative_case",
    "successive_minima_bound",
    "dim_n_theorem",
    "volume_ratio_bounds",
    "inradius_bound",
    "flat_surface_bound",
    "random_search_bound",
    "CertificateSuite",
    "certificate_suite",
]

from .domain import INFINITY, CuspkitError, DomainError, H3Point, is_infinity
from .isom3 import Isometry, Kind, ClassificationReport, classify, compose, inverse, act, act_boundary, dist_H3
from .horoball import Horoball, CuspVolumeInput, VolumeBound, image_horoball, are_tangent, cusp_volume, volume_lower_bound
from .euclat import Lattice2, KleinGroup, Torus, Klein, gauss_reduce, quotient_distance
from .densities import nu3, d_inf_closed, d_inf_product, systole_coefficient, constants_table
from .limits import ResourceLimit, LimitConfig, ResourceBudget
from .reports import BoundReport, ReportSink, JsonLineSink, LoggingSink, CollectingSink, make_report, render, render_reports
from .engine import CertificateEngine

__all__ = [
    "INFINITY",
    "CuspkitError",
    "DomainError",
    "H3Point",
    "is_infinity",
    "Isometry",
    "Kind",
    "ClassificationReport",
    "classify",
    "compose",
    "inverse",
    "act",
    "act_boundary",
    "dist_H3",
    "Horoball",
    "CuspVolumeInput",
    "VolumeBound",
    "image_horoball",
    "are_tangent",
    "cusp_volume",
    "volume_lower_bound",
    "Lattice2",
    "KleinGroup",
    "Torus",
    "Klein",
    "gauss_reduce",
    "quotient_distance",
    "nu3",
    "d_inf_closed",
    "d_inf_product",
    "systole_coefficient",
    "constants_table",
    "ResourceLimit",
    "LimitConfig",
    "ResourceBudget",
    "BoundReport",
    "ReportSink",
    "JsonLineSink",
    "LoggingSink",
    "CollectingSink",
    "make_report",
    "render",
    "render_reports",
    "CertificateEngine",
]

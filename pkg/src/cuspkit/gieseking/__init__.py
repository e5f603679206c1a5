from .group import ConstructionMismatch, Word, SpectrumEntry, generators, evaluate, length_spectrum
from .cusp import CuspSection, HoroballOrbit, cusp_group, horoball_orbit
from .certificates import (
    InradiusCertificate,
    SystoleCertificate,
    inradius_certificate,
    normal_form_certificates,
    polyhedron_metrics,
    systole_certificate,
)

__all__ = [
    "ConstructionMismatch",
    "Word",
    "SpectrumEntry",
    "generators",
    "evaluate",
    "length_spectrum",
    "CuspSection",
    "HoroballOrbit",
    "cusp_group",
    "horoball_orbit",
    "InradiusCertificate",
    "SystoleCertificate",
    "inradius_certificate",
    "normal_form_certificates",
    "polyhedron_metrics",
    "systole_certificate",
]

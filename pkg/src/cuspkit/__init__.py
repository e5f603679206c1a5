from .cli import main
from .context import Tolerance, tolerance_context, get_tolerance
from .config import ConfigLoader, RunConfig
from .core import BoundReport, CertificateEngine, CuspkitError, Isometry, classify
from .gieseking import systole_certificate, inradius_certificate, cusp_group
from .flatopt import PackingConfig, objective, optimize
from .bounds import certificate_suite

__all__ = [
    "main",
    "Tolerance",
    "tolerance_context",
    "get_tolerance",
    "ConfigLoader",
    "RunConfig",
    "BoundReport",
    "CertificateEngine",
    "CuspkitError",
    "Isometry",
    "classify",
    "systole_certificate",
    "inradius_certificate",
    "cusp_group",
    "PackingConfig",
    "objective",
    "optimize",
    "certificate_suite",
]

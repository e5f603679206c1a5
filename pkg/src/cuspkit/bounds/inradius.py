import math
from typing import List, Optional

from ..core.reports import BoundReport, make_report
from ..flatopt.objective import OBJECTIVE_BOUND, THUE_DENSITY, PackingConfig, density, objective
from ..flatopt.search import SearchResult
from ..gieseking.certificates import INRADIUS, InradiusCertificate, SystoleCertificate, inradius_certificate
from ..gieseking.group import SYSTOLE

INRADIUS_COSH = math.sqrt(5) / 2


def inradius_bound(
    certificate: Optional[InradiusCertificate] = None,
    systole: Optional[SystoleCertificate] = None,
) -> List[BoundReport]:
    """
    cosh R(M) ≥ √5/2, with the Gieseking manifold as equality case.

    The certificate is computed when not supplied. The comparison sys/2 > R
    uses the searched systole when a certificate is given and the closed form
    2 arccosh((1+√13)/4) otherwise.
    """
    certificate = certificate or inradius_certificate()
    witness = [certificate.witness[0].z, certificate.witness[0].t, certificate.witness[1].z, certificate.witness[1].t]
    reports = [
        make_report(
            "cosh R(Gieseking) = sqrt5/2",
            "inradius theorem, equality case",
            math.cosh(certificate.radius), INRADIUS_COSH, kind="equality",
            witness=witness, inputs={"lifts": certificate.lift_count},
        ),
        make_report(
            "r_inj(P) = arccosh(sqrt5/2)",
            "injectivity radius at the cusp tangency point",
            certificate.radius, INRADIUS, kind="equality", witness=witness,
        ),
        make_report(
            "inradius of the regular ideal simplex < r_inj(P)",
            "in-ball of the ideal simplex",
            certificate.simplex_inradius, certificate.radius,
        ),
    ]
    length, source = (systole.systole, "word search") if systole is not None else (SYSTOLE, "closed form")
    reports.append(make_report(
        "R < sys/2 for the Gieseking manifold",
        "systole and inradius comparison",
        certificate.radius, length / 2, inputs={"systoleSource": source},
    ))
    return reports


def flat_surface_bound(cfg: PackingConfig) -> List[BoundReport]:
    """h√(4h²+d²)/vol(N) ≤ √5/√3 and the two-disk density ≤ π/√12 for one configuration."""
    value = objective(cfg)
    inputs = {"h": cfg.h, "d": value.d, "area": value.area, "c1": cfg.c1, "c2": cfg.c2}
    return [
        make_report(
            "h sqrt(4h^2+d^2)/vol(N) <= sqrt5/sqrt3",
            "two-disk packings of closed flat surfaces",
            value.value, OBJECTIVE_BOUND, inputs=inputs,
        ),
        make_report(
            "two-disk density <= pi/sqrt12",
            "Thue bound",
            density(cfg), THUE_DENSITY, inputs=inputs,
        ),
    ]


def random_search_bound(result: SearchResult) -> List[BoundReport]:
    """The largest objective and density met by a random search, against √5/√3 and π/√12."""
    inputs = {"family": result.family, "samples": result.samples, "seed": result.seed}
    witness = {"c1": result.best.c1, "c2": result.best.c2, "h": result.best.h}
    return [
        make_report(
            "random configurations stay below sqrt5/sqrt3",
            "two-disk packings of closed flat surfaces",
            result.max_objective, OBJECTIVE_BOUND, witness=witness, inputs=inputs,
        ),
        make_report(
            "random two-disk densities stay below pi/sqrt12",
            "Thue bound",
            result.max_density, THUE_DENSITY, inputs=inputs,
        ),
    ]

"""
The certificate registry run by `verify all`.
"""
import math
from functools import cached_property
from typing import List, Optional, Tuple

from .dim3 import (
    CITED_THRESHOLD,
    MULTI_CUSP_SWITCH,
    loxodromic_case_bound,
    multi_cusp_negative_case,
    parabolic_negative_case,
    parabolic_negative_constraints,
    parabolic_positive_case,
)
from .dimn import dim_n_theorem, successive_minima_bound, volume_ratio_bounds
from .inradius import flat_surface_bound, inradius_bound, random_search_bound
from ..config.loader import RunConfig
from ..core.densities import d_inf_closed, d_inf_product, nu3, systole_coefficient
from ..core.engine import Certificate
from ..core.horoball import CuspVolumeInput, volume_lower_bound
from ..core.reports import BoundReport, make_report
from ..flatopt.objective import OBJECTIVE_BOUND, THUE_DENSITY, density, hexagonal_config
from ..flatopt.optimizer import optimize
from ..flatopt.search import random_search
from ..flatopt.surgery import surgery_slope_survey
from ..gieseking.certificates import (
    EDGE_LENGTH,
    INRADIUS,
    S_VERTEX_DISTANCE,
    SIMPLEX_INRADIUS,
    SYSTOLE_RATIO,
    InradiusCertificate,
    SystoleCertificate,
    inradius_certificate,
    normal_form_certificates,
    polyhedron_metrics,
    systole_certificate,
)
from ..gieseking.cusp import cusp_group, horoball_orbit
from ..gieseking.group import NEGATIVE_LOXODROMIC_LENGTH, SYSTOLE, SpectrumEntry, length_spectrum

NU3 = 1.0149416064096536
SNAPPEA_SYSTOLE = 1.087
FULL_SAMPLES = 1_000_000


class CertificateSuite:
    """
    Every certificate of `verify all`, sharing the systole and inradius
    computations between them.

    Quick mode shrinks the word depth, the optimizer restarts, the random
    search and the surgery survey.
    """

    def __init__(
        self,
        depth: int = 10,
        restarts: int = 64,
        seed: int = 0,
        samples: int = FULL_SAMPLES,
        surgery_samples: int = 100,
        min_diameter: float = 1e-3,
        threads: Optional[int] = None,
    ):
        self.depth = depth
        self.restarts = restarts
        self.seed = seed
        self.samples = samples
        self.surgery_samples = surgery_samples
        self.min_diameter = min_diameter
        self.threads = threads

    @cached_property
    def inradius(self) -> InradiusCertificate:
        return inradius_certificate()

    @cached_property
    def spectrum(self) -> List[SpectrumEntry]:
        return length_spectrum(self.depth, threads=self.threads)

    @cached_property
    def systole(self) -> SystoleCertificate:
        return systole_certificate(self.depth, threads=self.threads, inradius=self.inradius.radius)

    def certificates(self) -> List[Tuple[str, Certificate]]:
        return [
            ("densities", self.densities),
            ("gieseking.systole", self.gieseking_systole),
            ("gieseking.cusp", self.gieseking_cusp),
            ("gieseking.inradius", self.gieseking_inradius),
            ("gieseking.polyhedra", self.gieseking_polyhedra),
            ("gieseking.normal-forms", self.normal_forms),
            ("bounds.dim3", self.dim3),
            ("bounds.dimn", self.dimn),
            ("flatpack.hexagonal", self.flat_hexagonal),
            ("flatpack.optimize", self.flat_optimize),
            ("flatpack.search", self.flat_search),
            ("flatpack.surgery", self.flat_surgery),
        ]

    def densities(self) -> List[BoundReport]:
        nu = nu3()
        worst = max(
            abs(d_inf_product(n, numerator_only=True) - d_inf_closed(n, numerator_only=True)) / d_inf_closed(n, numerator_only=True)
            for n in range(3, 31)
        )
        return [
            make_report("nu_3 = 3 L(pi/3)", "volume of the regular ideal tetrahedron", nu, NU3, kind="equality"),
            make_report(
                "d_3(inf) = sqrt3/(2 nu_3)", "simplicial horoball density",
                d_inf_closed(3), math.sqrt(3) / (2 * nu), kind="equality",
            ),
            make_report(
                "product and closed forms of d_n(inf) agree for 3 <= n <= 30",
                "simplicial horoball density in dimension n",
                worst, 1e-12, tolerance=0.0, inputs={"maxDim": 30},
            ),
        ]

    def gieseking_systole(self) -> List[BoundReport]:
        cert = self.systole
        negative = min(
            (abs(e.length - NEGATIVE_LOXODROMIC_LENGTH) for e in self.spectrum if e.orientation == -1),
            default=math.inf,
        )
        witness = {"word": str(cert.witness.witness), "orientation": cert.witness.orientation}
        inputs = {"depth": self.depth}
        return [
            make_report(
                "sys(Gieseking) = 2 arccosh((1+sqrt13)/4)", "shortest closed geodesic of the Gieseking manifold",
                cert.systole, SYSTOLE, kind="equality", witness=witness, inputs=inputs,
            ),
            make_report(
                "sys(Gieseking) = 1.087 (SnapPea)", "shortest closed geodesic of the Gieseking manifold",
                cert.systole, SNAPPEA_SYSTOLE, kind="equality", witness=witness, inputs=inputs, tolerance=1e-3,
            ),
            make_report(
                "cosh(sys/2)/vol_simplicial = (1+sqrt13)/4", "systole theorem in dimension 3, equality case",
                cert.ratio, SYSTOLE_RATIO, kind="equality", witness=witness,
                inputs={"depth": self.depth, "simplicialVolume": cert.simplicial_volume},
            ),
            make_report(
                "a negative loxodromic class of length 2 arccosh(sqrt(3/2)) is found",
                "orientation-reversing closed geodesics",
                min(negative, 1.0), 0.0, kind="equality", inputs=inputs,
            ),
        ]

    def gieseking_cusp(self) -> List[BoundReport]:
        section = cusp_group()
        data = CuspVolumeInput(
            covol_gamma_inf=section.covol_gamma_inf,
            covol_lambda_inf=section.covol_lambda_inf,
            index=section.index,
            h=1.0,
        )
        bound = volume_lower_bound(data, manifold_volume=nu3())
        orbit = horoball_orbit(min_diameter=self.min_diameter)
        largest = max(ball.size for ball, _ in orbit.representatives)
        citation = "maximal cusp of the Gieseking manifold"
        return [
            make_report("covol(Gamma_inf) = sqrt3", citation, section.covol_gamma_inf, math.sqrt(3), kind="equality"),
            make_report("vol(C) = sqrt3/2", citation, bound.cusp_volume, math.sqrt(3) / 2, kind="equality"),
            make_report(
                "cusp density = d_3(inf)", "the cusp attains the simplicial horoball density",
                bound.density, bound.d_inf, kind="equality", tolerance=1e-6,
            ),
            make_report(
                "vol(C)/d_3(inf) = nu_3", "cusp volume minorant, equality case",
                bound.bound, nu3(), kind="equality",
            ),
            make_report(
                "the largest horoballs below B_inf have diameter 1", citation,
                largest, 1.0, kind="equality",
                inputs={"minDiameter": self.min_diameter, "classes": len(orbit.representatives)},
            ),
        ]

    def gieseking_inradius(self) -> List[BoundReport]:
        # the searched systole is reused only when another certificate already ran it
        return inradius_bound(self.inradius, systole=self.__dict__.get("systole"))

    def gieseking_polyhedra(self) -> List[BoundReport]:
        metrics = polyhedron_metrics()
        citation = "polyhedra around the in-ball center and the tangency point"
        inputs = {"sVertices": metrics.s_vertices, "tVertices": metrics.t_vertices, "tEdges": metrics.t_edges}
        return [
            make_report("in-ball radius of the ideal simplex = arccosh(3/(2 sqrt2))", citation,
                        metrics.simplex_inradius, SIMPLEX_INRADIUS, kind="equality", inputs=inputs),
            make_report("S vertex distance = arccosh(sqrt(6/5))", citation,
                        metrics.s_vertex_distance, S_VERTEX_DISTANCE, kind="equality", inputs=inputs),
            make_report("T vertex distance = arccosh(sqrt5/2)", citation,
                        metrics.t_vertex_distance, INRADIUS, kind="equality", inputs=inputs),
            make_report("edge length = arccosh(11/10)", citation,
                        metrics.edge_length, EDGE_LENGTH, kind="equality", inputs=inputs),
        ]

    def normal_forms(self) -> List[BoundReport]:
        reports = []
        for cert in normal_form_certificates():
            nf = cert.normal_form
            for report in parabolic_negative_constraints(nf.h, cert.d, nf.theta):
                reports.append(make_report(
                    f"{cert.word}: {report.claim}", report.citation, report.lhs, report.rhs,
                    kind=report.kind, witness={"fixedPoint": cert.fixed_point}, inputs=report.inputs,
                ))
        return reports

    def dim3(self) -> List[BoundReport]:
        length = self.systole.systole
        reports = loxodromic_case_bound(1.0, math.sqrt(3), length=length)
        reports += successive_minima_bound(1.0, 2 * math.sqrt(3), 1.0, length=length)
        for h in (1.0, CITED_THRESHOLD, 0.3):
            reports += parabolic_positive_case(h)
        reports += parabolic_negative_case()
        reports += multi_cusp_negative_case(MULTI_CUSP_SWITCH)
        return reports

    def dimn(self) -> List[BoundReport]:
        reports = dim_n_theorem(3, 1) + dim_n_theorem(3, 2)
        largest = max(systole_coefficient(n, 1, "asymptotic").normalized for n in range(3, 41))
        reports.append(make_report(
            "c_n 5^(n-1)/i_C <= 25 for 3 <= n <= 40",
            "size of the dimension-n systole constant",
            largest, 25.0, inputs={"maxDim": 40, "gammaMode": "asymptotic"},
        ))
        reports += volume_ratio_bounds(3)
        return reports

    def flat_hexagonal(self) -> List[BoundReport]:
        return flat_surface_bound(hexagonal_config())

    def flat_optimize(self) -> List[BoundReport]:
        result = optimize("torus", restarts=self.restarts, seed=self.seed, threads=self.threads)
        citation = "two-disk packings of closed flat surfaces, optimum"
        inputs = {"restarts": self.restarts, "seed": self.seed}
        witness = {"tau": result.tau, "c2": result.config.c2, "h": result.config.h}
        reports = [
            make_report("optimized objective reaches sqrt5/sqrt3", citation,
                        result.value, OBJECTIVE_BOUND, kind="equality", witness=witness, inputs=inputs, tolerance=1e-4),
            make_report("d/h = 1 at the optimum", citation,
                        result.d_over_h, 1.0, kind="equality", witness=witness, inputs=inputs, tolerance=1e-3),
            make_report("the optimum is the hexagonal packing", citation,
                        float(result.hexagonal), 1.0, kind="equality", witness=witness, inputs=inputs),
            make_report("two-disk density at the optimum is pi/sqrt12", citation,
                        density(result.config), THUE_DENSITY, kind="equality", witness=witness, inputs=inputs, tolerance=1e-3),
        ]
        # the Klein bottle maximum is recorded as data under the general bound
        klein = optimize("klein", restarts=self.restarts, seed=self.seed, threads=self.threads)
        reports.append(make_report(
            "Klein bottle optimum <= sqrt5/sqrt3", citation, klein.value, OBJECTIVE_BOUND,
            witness={"c1": klein.config.c1, "c2": klein.config.c2, "h": klein.config.h, "gap": OBJECTIVE_BOUND - klein.value},
            inputs={"family": "klein", **inputs},
        ))
        return reports

    def flat_search(self) -> List[BoundReport]:
        reports = []
        for family in ("torus", "klein"):
            reports += random_search_bound(random_search(family, samples=self.samples, seed=self.seed))
        return reports

    def flat_surgery(self) -> List[BoundReport]:
        survey = surgery_slope_survey(self.surgery_samples, seed=self.seed)
        return [make_report(
            "band surgery slope matches 1/b - v/(4h^2+d^2)", "first-order expansion under band surgery",
            survey.max_relative_error, 1e-4, tolerance=0.0,
            inputs={"count": survey.count, "seed": survey.seed, "epsilon": survey.epsilon},
        )]


def certificate_suite(config: Optional[RunConfig] = None, quick: bool = False) -> List[Tuple[str, Certificate]]:
    """
    Named certificates in their fixed order.

    The full run searches 10^6 random configurations; quick mode caps the word
    depth at 8 and the restarts at 16, and uses config.samples random
    configurations and 20 surgery samples.
    """
    config = config or RunConfig()
    if quick:
        suite = CertificateSuite(
            depth=min(config.depth, 8),
            restarts=min(config.restarts, 16),
            seed=config.seed,
            samples=config.samples,
            surgery_samples=20,
            min_diameter=max(config.min_diameter, 0.01),
            threads=config.threads,
        )
    else:
        suite = CertificateSuite(
            depth=config.depth,
            restarts=config.restarts,
            seed=config.seed,
            samples=max(config.samples, FULL_SAMPLES),
            min_diameter=config.min_diameter,
            threads=config.threads,
        )
    return suite.certificates()

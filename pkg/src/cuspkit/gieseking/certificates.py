"""
Certified invariants of the Gieseking manifold: systole, inradius at the
cusp tangency point, the polyhedra around it, and the normal form of the
elements sending B_0 to B_∞.
"""
import cmath
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

from .cusp import HoroballOrbit, horoball_orbit
from .group import OMEGA, SYSTOLE, ConstructionMismatch, SpectrumEntry, Word, evaluate, generators, length_spectrum
from ..core.densities import nu3
from ..core.domain import H3Point
from ..core.horoball import InjectivityCertificate, tangency_orbit_injectivity
from ..core.isom3 import (
    Isometry,
    Kind,
    NormalForm,
    act_boundary,
    classify,
    compose,
    dist_H3,
    horospherical_translation,
    inverse,
    midpoint,
    normal_form_parameters,
    parabolic_negative_fixed_point,
)
from ..core.limits import LimitConfig

logger = logging.getLogger(__name__)

INRADIUS = math.acosh(math.sqrt(5) / 2)
SIMPLEX_INRADIUS = math.acosh(3 / (2 * math.sqrt(2)))
S_VERTEX_DISTANCE = math.acosh(math.sqrt(6 / 5))
EDGE_LENGTH = math.acosh(11 / 10)
SYSTOLE_RATIO = (1 + math.sqrt(13)) / 4

_GEOMETRY_TOL = 1e-8


@dataclass(frozen=True)
class InradiusCertificate:
    radius: float
    witness: Tuple[H3Point, H3Point]
    lift_count: int
    simplex_inradius: float


@dataclass(frozen=True)
class PolyhedronMetrics:
    """Distances in the polyhedra S (around the in-ball center) and T (around the tangency point)."""
    simplex_inradius: float
    s_vertex_distance: float
    t_vertex_distance: float
    edge_length: float
    s_vertices: int
    t_vertices: int
    t_edges: int


@dataclass(frozen=True)
class NormalFormCertificate:
    word: str
    normal_form: NormalForm
    kind: Kind
    fixed_point: complex
    cos_theta: float
    d: float  # 1/(2|cos θ|)


@dataclass(frozen=True)
class SystoleCertificate:
    systole: float
    witness: SpectrumEntry
    ratio: float  # cosh(sys/2)/vol_△
    simplicial_volume: float
    inradius: float
    half_systole_exceeds_inradius: bool


def gieseking_volume() -> float:
    """The Gieseking manifold is glued from one regular ideal tetrahedron."""
    return nu3()


def _check(what: str, value: float, expected: float) -> None:
    if abs(value - expected) > _GEOMETRY_TOL:
        raise ConstructionMismatch(what, value, expected)


def tangency_lifts(orbit: HoroballOrbit, radius: float = 2.0) -> List[H3Point]:
    """
    Tangency points of the packing {t > 1} ∪ Γ-images lying above the disk of `radius`.

    Sorted by decreasing height, then modulus and argument.
    """
    balls = [ball for ball, _ in orbit.window(radius + 1.0)]
    centers = np.array([complex(b.center) for b in balls])
    sizes = np.array([b.size for b in balls])

    points = [H3Point(complex(c), 1.0) for c, s in zip(centers, sizes) if abs(s - 1) <= 1e-9 and abs(c) <= radius]
    product = sizes[:, None] * sizes[None, :]
    gap = (np.abs(centers[:, None] - centers[None, :]) ** 2 - product) / product
    rows, cols = np.nonzero(np.triu(np.abs(gap) <= 1e-9, k=1))
    for i, j in zip(rows, cols):
        weight = sizes[i] / (sizes[i] + sizes[j])
        z = complex(centers[i] + (centers[j] - centers[i]) * weight)
        if abs(z) <= radius:
            points.append(H3Point(z, float(sizes[i] * sizes[j] / (sizes[i] + sizes[j]))))

    points.sort(key=lambda p: (-round(p.t, 9), round(abs(p.z), 9), round(cmath.phase(p.z) % (2 * math.pi), 9)))
    unique: List[H3Point] = []
    for p in points:
        if not unique or abs(p.z - unique[-1].z) > 1e-9 or abs(p.t - unique[-1].t) > 1e-9:
            unique.append(p)
    return unique


def inradius_certificate(
    orbit: Optional[HoroballOrbit] = None,
    radius: float = 2.0,
    limits: Optional[LimitConfig] = None,
) -> InradiusCertificate:
    """
    Injectivity radius at the tangency point P of the maximal cusp.

    Every tangency point of the packing lifts P, so half the minimal distance
    between the collected lifts is r_inj(P). Lifts are gathered above a disk
    of the given radius, which contains all lifts within 2 r_inj of (0, 1).
    """
    orbit = orbit or horoball_orbit(min_diameter=0.2, limits=limits)
    lifts = tangency_lifts(orbit, radius)
    result: InjectivityCertificate = tangency_orbit_injectivity(lifts)
    logger.info("Inradius certificate from %d tangency lifts: %.12f", len(lifts), result.radius)
    return InradiusCertificate(
        radius=result.radius,
        witness=result.witness,
        lift_count=len(lifts),
        simplex_inradius=simplex_inradius(),
    )


def _foot_on_vertical_plane(p: H3Point, origin: complex, direction: complex) -> H3Point:
    w = (p.z - origin) * direction.conjugate()
    return H3Point(origin + w.real * direction, math.hypot(p.t, w.imag))


def simplex_inradius() -> float:
    """Radius of the ball inscribed in the ideal simplex (0, 1, ω, ∞), checked on all four faces."""
    center = H3Point((1 + OMEGA) / 3, math.sqrt(2 / 3))
    feet = [
        _foot_on_vertical_plane(center, 0j, 1 + 0j),
        _foot_on_vertical_plane(center, 0j, OMEGA),
        _foot_on_vertical_plane(center, 1 + 0j, OMEGA - 1),
        H3Point((1 + OMEGA) / 3, 1 / math.sqrt(3)),
    ]
    distances = [dist_H3(center, foot) for foot in feet]
    for i, d in enumerate(distances):
        _check(f"distance to face {i}", d, SIMPLEX_INRADIUS)
    return distances[0]


def _simplex_faces() -> List[Tuple[H3Point, H3Point, H3Point]]:
    """The lifts of P on each face of the simplex (0, 1, ω, ∞): midpoints of its edges."""
    top = [H3Point(0j, 1.0), H3Point(1 + 0j, 1.0), H3Point(OMEGA, 1.0)]
    low = [H3Point(0.5 + 0j, 0.5), H3Point(OMEGA / 2, 0.5), H3Point((1 + OMEGA) / 2, 0.5)]
    return [
        (top[0], top[1], low[0]),
        (top[0], top[2], low[1]),
        (top[1], top[2], low[2]),
        (low[0], low[1], low[2]),
    ]


def polyhedron_metrics() -> PolyhedronMetrics:
    """
    Rebuilds S and T from explicit coordinates and measures them.

    S has a vertex at the midpoint of each pair of lifts of P on a common face;
    T has a vertex at the midpoint of (0, 1) and each of its twelve nearest lifts.

    Raises:
        ConstructionMismatch: if a measured distance is off by more than 1e-8.
    """
    center = H3Point((1 + OMEGA) / 3, math.sqrt(2 / 3))

    s_vertices = []
    s_edges = []
    for face in _simplex_faces():
        mids = [midpoint(p, q) for p, q in itertools.combinations(face, 2)]
        s_vertices.extend(mids)
        s_edges.extend(dist_H3(a, b) for a, b in itertools.combinations(mids, 2))
    for d in (dist_H3(center, v) for v in s_vertices):
        _check("S vertex distance", d, S_VERTEX_DISTANCE)
    for d in s_edges:
        _check("S edge length", d, EDGE_LENGTH)

    p0 = H3Point(0j, 1.0)
    units = [cmath.exp(1j * k * math.pi / 3) for k in range(6)]
    neighbours = [H3Point(x, 1.0) for x in units] + [H3Point(x / 2, 0.5) for x in units]
    t_vertices = [midpoint(p0, q) for q in neighbours]
    for d in (dist_H3(p0, v) for v in t_vertices):
        _check("T vertex distance", d, INRADIUS)

    pairs = [dist_H3(a, b) for a, b in itertools.combinations(t_vertices, 2)]
    shortest = min(pairs)
    _check("T edge length", shortest, EDGE_LENGTH)
    t_edges = sum(1 for d in pairs if abs(d - shortest) <= _GEOMETRY_TOL)

    return PolyhedronMetrics(
        simplex_inradius=simplex_inradius(),
        s_vertex_distance=dist_H3(center, s_vertices[0]),
        t_vertex_distance=dist_H3(p0, t_vertices[0]),
        edge_length=shortest,
        s_vertices=len(s_vertices),
        t_vertices=len(t_vertices),
        t_edges=t_edges,
    )


def cusp_horosphere_translation(word: Union[Word, Iterable[str]], h: float = 1.0) -> float:
    """Displacement of a cusp element on the horosphere of height h."""
    g = word.isometry if isinstance(word, Word) else evaluate(tuple(word))
    return horospherical_translation(g, h)


def b0_to_binf_elements() -> List[Tuple[str, Isometry]]:
    """g⁻¹τ_ω and τ_{-ω}g⁻¹τ_ω, both sending B_0 to B_∞."""
    _, g = generators()
    first = compose(inverse(g), Isometry.translation(OMEGA))
    second = compose(Isometry.translation(-OMEGA), first)
    return [("g^-1 t_w", first), ("t_-w g^-1 t_w", second)]


def normal_form_certificates() -> List[NormalFormCertificate]:
    """
    Checks both elements against the parabolic-negative relations.

    Raises:
        ConstructionMismatch: if an element is not parabolic negative, or violates
            |b| = 2h|cos θ| or |cos θ| ≥ 1/2, or its fixed point disagrees with the closed form.
    """
    certificates = []
    for name, element in b0_to_binf_elements():
        report = classify(element)
        if report.kind != Kind.PARABOLIC or report.orientation != -1:
            raise ConstructionMismatch(f"type of {name}", report.kind.value, "negative parabolic")
        nf = normal_form_parameters(element)
        cos = math.cos(nf.theta)
        _check(f"|b| of {name}", abs(nf.b), 2 * nf.h * abs(cos))
        if abs(cos) < 0.5 - _GEOMETRY_TOL:
            raise ConstructionMismatch(f"|cos θ| of {name}", abs(cos), "at least 1/2")
        fixed = parabolic_negative_fixed_point(nf.b, nf.h, nf.theta)
        image = complex(act_boundary(element, fixed))
        if abs(image - fixed) > _GEOMETRY_TOL:
            raise ConstructionMismatch(f"fixed point of {name}", image, fixed)
        certificates.append(NormalFormCertificate(
            word=name,
            normal_form=nf,
            kind=report.kind,
            fixed_point=fixed,
            cos_theta=cos,
            d=1 / (2 * abs(cos)),
        ))
    return certificates


def systole_certificate(
    depth: int = 10,
    threads: Optional[int] = None,
    inradius: Optional[float] = None,
    limits: Optional[LimitConfig] = None,
) -> SystoleCertificate:
    """
    Shortest closed geodesic from the bounded word search, with the ratio
    cosh(sys/2)/vol_△ (vol_△ = vol/ν₃ = 1) and the comparison sys/2 > R.

    Raises:
        ConstructionMismatch: if the shortest length found is not 2 arccosh((1+√13)/4).
        ResourceLimit: if the search exceeds its budget.
    """
    spectrum = length_spectrum(depth, threads=threads, limits=limits)
    if not spectrum:
        raise ConstructionMismatch("length spectrum", "empty", "at least one loxodromic word")
    shortest = spectrum[0]
    if abs(shortest.length - SYSTOLE) > 1e-9:
        raise ConstructionMismatch("systole", shortest.length, SYSTOLE)
    simplicial_volume = gieseking_volume() / nu3()
    radius = inradius_certificate(limits=limits).radius if inradius is None else inradius
    return SystoleCertificate(
        systole=shortest.length,
        witness=shortest,
        ratio=math.cosh(shortest.length / 2) / simplicial_volume,
        simplicial_volume=simplicial_volume,
        inradius=radius,
        half_systole_exceeds_inradius=shortest.length / 2 > radius,
    )

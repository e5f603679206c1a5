"""
Horoballs, tangencies, cusp volumes and the inradius geometry of a maximal cusp.

Horoballs carry Euclidean diameters: a horoball centered at x ∈ C is the
Euclidean ball of diameter D tangent to C at x, and the one centered at ∞
is {t > h}.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .densities import d_inf_closed
from .domain import INFINITY, BoundaryPoint, CuspkitError, H3Point, is_infinity
from .isom3 import Isometry, act, act_boundary
from ..context import get_tolerance

logger = logging.getLogger(__name__)


class OverlappingHoroballs(CuspkitError):
    pass


class FewerThanTwoLifts(CuspkitError):
    pass


@dataclass(frozen=True)
class Horoball:
    """A horoball: center in C ∪ {∞} and diameter (height when centered at ∞)."""
    center: BoundaryPoint
    size: float

    def __post_init__(self):
        if not self.size > 0:
            raise ValueError(f"Horoball size must be positive, got {self.size}")

    @classmethod
    def at_infinity(cls, h: float = 1.0) -> "Horoball":
        return cls(INFINITY, h)

    @property
    def is_at_infinity(self) -> bool:
        return is_infinity(self.center)

    @property
    def top(self) -> H3Point:
        """A point on the bounding horosphere."""
        if self.is_at_infinity:
            return H3Point(0j, self.size)
        return H3Point(complex(self.center), self.size)


@dataclass(frozen=True)
class CuspVolumeInput:
    """Data of a cusp: covolumes of Γ_∞ and its translation lattice Λ_∞, index, height, dimension."""
    covol_gamma_inf: float
    covol_lambda_inf: float
    index: int
    h: float
    n: int = 3

    def __post_init__(self):
        if self.covol_gamma_inf <= 0 or self.covol_lambda_inf <= 0 or self.h <= 0:
            raise ValueError("Covolumes and height must be positive")
        if self.index < 1:
            raise ValueError("Index must be a positive integer")
        if self.n < 3:
            raise ValueError("Dimension must be at least 3")
        if abs(self.covol_lambda_inf - self.index * self.covol_gamma_inf) > 1e-9 * self.covol_lambda_inf:
            raise ValueError(
                f"covol(Λ_∞) = {self.covol_lambda_inf} is not {self.index} × covol(Γ_∞) = {self.covol_gamma_inf}"
            )


@dataclass(frozen=True)
class VolumeBound:
    """Volume minorant vol(M) ≥ vol(C)/d_n(∞), with the optional density check."""
    bound: float
    cusp_volume: float
    d_inf: float
    density: Optional[float] = None
    density_within_bound: Optional[bool] = None


@dataclass(frozen=True)
class InjectivityCertificate:
    """Half the minimal distance between lifts, with the pair realizing it."""
    radius: float
    witness: Tuple[H3Point, H3Point]


def image_horoball(g: Isometry, ball: Horoball) -> Horoball:
    """Exact image of a horoball: map the center and one point of the horosphere."""
    center = act_boundary(g, ball.center)
    p = act(g, ball.top)
    if is_infinity(center):
        return Horoball(INFINITY, p.t)
    center = complex(center)
    diameter = (abs(p.z - center) ** 2 + p.t ** 2) / p.t
    return Horoball(center, diameter)


def _gap(b1: Horoball, b2: Horoball) -> float:
    """Relative separation of two horoballs: 0 when tangent, negative when overlapping."""
    if b1.is_at_infinity and b2.is_at_infinity:
        return -1.0
    if b1.is_at_infinity or b2.is_at_infinity:
        top, ball = (b1, b2) if b1.is_at_infinity else (b2, b1)
        return (top.size - ball.size) / max(top.size, ball.size)
    product = b1.size * b2.size
    return (abs(complex(b1.center) - complex(b2.center)) ** 2 - product) / product


def are_tangent(b1: Horoball, b2: Horoball, atol: Optional[float] = None) -> bool:
    """
    True iff the bounding horospheres touch.

    Raises:
        OverlappingHoroballs: if the interiors intersect beyond tolerance.
    """
    atol = get_tolerance().atol if atol is None else atol
    gap = _gap(b1, b2)
    if gap < -atol:
        raise OverlappingHoroballs(f"Horoballs at {b1.center} and {b2.center} overlap")
    return abs(gap) <= atol


def tangency_point(b1: Horoball, b2: Horoball, atol: Optional[float] = None) -> H3Point:
    if not are_tangent(b1, b2, atol):
        raise ValueError("Horoballs are not tangent")
    if b1.is_at_infinity or b2.is_at_infinity:
        top, ball = (b1, b2) if b1.is_at_infinity else (b2, b1)
        return H3Point(complex(ball.center), top.size)
    x1, x2 = complex(b1.center), complex(b2.center)
    weight = b1.size / (b1.size + b2.size)
    return H3Point(x1 + (x2 - x1) * weight, b1.size / 2 + (b2.size - b1.size) / 2 * weight)


def cusp_volume(data: CuspVolumeInput) -> float:
    """vol(C) = covol(Γ_∞)/((n-1) h^{n-1})."""
    return data.covol_gamma_inf / ((data.n - 1) * data.h ** (data.n - 1))


def volume_lower_bound(data: CuspVolumeInput, manifold_volume: Optional[float] = None) -> VolumeBound:
    """
    vol(M) ≥ covol(Γ_∞)/((n-1) d_n(∞) h^{n-1}).

    Args:
        data: The cusp data.
        manifold_volume: When given, the density vol(C)/vol(M) is checked against d_n(∞).
    """
    d_inf = d_inf_closed(data.n)
    volume = cusp_volume(data)
    bound = volume / d_inf
    if manifold_volume is None:
        return VolumeBound(bound=bound, cusp_volume=volume, d_inf=d_inf)
    density = volume / manifold_volume
    return VolumeBound(
        bound=bound,
        cusp_volume=volume,
        d_inf=d_inf,
        density=density,
        density_within_bound=density <= d_inf + get_tolerance().atol,
    )


def packing_density_ratio(volume_of_cusp: float, manifold_volume: float, n: int = 3) -> Tuple[float, bool]:
    """Density of the cusp in the manifold and whether it stays below d_n(∞)."""
    density = volume_of_cusp / manifold_volume
    return density, density <= d_inf_closed(n) + get_tolerance().atol


def section_covolume_lower_bound(n: int, h: float, flat_density: float) -> float:
    """covol(Γ_∞) ≥ ω_{n-1} h^{n-1}/(2^{n-2} d_{n-1}): two disjoint diameter-h balls in the section."""
    omega = math.pi ** ((n - 1) / 2) / math.gamma((n - 1) / 2 + 1)
    return omega * h ** (n - 1) / (2 ** (n - 2) * flat_density)


def rogers_volume_bound(n: int, flat_density: float) -> float:
    """vol(M) ≥ ω_{n-1}/(2^{n-2}(n-1) d_{n-1} d_n(∞)), with d_{n-1} the flat ball-packing density."""
    omega = math.pi ** ((n - 1) / 2) / math.gamma((n - 1) / 2 + 1)
    return omega / (2 ** (n - 2) * (n - 1) * flat_density * d_inf_closed(n))


def simplex_volume_lower_bound(n: int) -> float:
    """vol(M^n) > 2^n/(n(n+1)) ν_n, returned in units of ν_n."""
    if n < 3:
        raise ValueError("Dimension must be at least 3")
    return 2 ** n / (n * (n + 1))


def tangency_orbit_injectivity(lifts: Sequence[H3Point], block_size: int = 1024) -> InjectivityCertificate:
    """
    Half the minimal pairwise distance between lifts of one point.

    This is an upper bound for the injectivity radius at that point, and equals
    it once the lifts exhaust a ball of radius larger than twice the result.

    Raises:
        FewerThanTwoLifts: with fewer than two lifts.
    """
    if len(lifts) < 2:
        raise FewerThanTwoLifts(f"Got {len(lifts)} lift(s)")
    z = np.array([p.z for p in lifts], dtype=complex)
    t = np.array([p.t for p in lifts], dtype=float)

    best = math.inf
    witness = (0, 1)
    for start in range(0, len(lifts), block_size):
        rows = slice(start, start + block_size)
        chord = np.sqrt(np.abs(z[rows, None] - z[None, :]) ** 2 + (t[rows, None] - t[None, :]) ** 2)
        dist = 2 * np.arcsinh(chord / (2 * np.sqrt(t[rows, None] * t[None, :])))
        idx = np.arange(start, min(start + block_size, len(lifts)))
        # keep only pairs (i, j) with j > i
        dist[np.arange(len(idx))[:, None] >= (np.arange(len(lifts))[None, :] - start)] = np.inf
        flat = int(np.argmin(dist))
        i, j = divmod(flat, len(lifts))
        if dist[i, j] < best:
            best = float(dist[i, j])
            witness = (int(idx[i]), j)

    if best <= 1e-12:
        raise ValueError("Lifts must be pairwise distinct")
    logger.debug("Injectivity witness %s at distance %.12f", witness, best)
    return InjectivityCertificate(radius=best / 2, witness=(lifts[witness[0]], lifts[witness[1]]))


def _h2_dist(z1: complex, z2: complex) -> float:
    return 2 * math.asinh(abs(z1 - z2) / (2 * math.sqrt(z1.imag * z2.imag)))


def _h2_geodesic_point(p: float, q: float, s: float) -> complex:
    if math.isinf(q):
        return complex(p, math.exp(s))
    center, r = (p + q) / 2, abs(q - p) / 2
    sign = 1.0 if q > p else -1.0
    return complex(center + sign * r * math.tanh(s), r / math.cosh(s))


def distance_to_geodesic_h2(z: complex, p: float, q: float) -> float:
    """Distance in the upper half-plane from z to the complete geodesic with endpoints p, q (q may be ∞)."""
    if math.isinf(q):
        return math.asinh(abs(z.real - p) / z.imag)
    center, r = (p + q) / 2, abs(q - p) / 2
    return math.asinh(abs(abs(z - center) ** 2 - r * r) / (2 * r * z.imag))


def cone_inradius_2d() -> float:
    """
    Distance from i to the boundary of the quadrilateral (0, e^{iπ/3}, ∞, e^{2iπ/3}).

    Each side is a segment of a complete geodesic; the distance to the segment
    is minimized numerically along its arclength parameter.
    """
    half = math.log(math.sqrt(3) / 2)
    big = 20.0
    # (endpoint p, endpoint q, arclength range of the side)
    sides = [
        (0.0, 2.0, (-big, math.atanh(-0.5))),
        (0.5, math.inf, (half, big)),
        (-0.5, math.inf, (half, big)),
        (-2.0, 0.0, (math.atanh(0.5), big)),
    ]
    distances = []
    for p, q, (lo, hi) in sides:
        result = minimize_scalar(
            lambda s: _h2_dist(1j, _h2_geodesic_point(p, q, s)),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12},
        )
        distances.append(float(result.fun))
    return min(distances)

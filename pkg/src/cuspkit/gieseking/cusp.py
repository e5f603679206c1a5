"""
The cusp of the Gieseking manifold: the stabilizer Γ_∞ of ∞, its translation
lattice Λ_∞, and the packing of Γ-images of the maximal horoball {t > 1}.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .group import LETTERS, INVERSE_LETTER, OMEGA, ConstructionMismatch, generator_table, generators
from ..core.domain import INFINITY
from ..core.euclat import KleinGroup, Lattice2
from ..core.horoball import Horoball, are_tangent, image_horoball
from ..core.isom3 import DoesNotStabilizeInfinity, EuclideanMotion, Isometry, compose, euclidean_part, inverse
from ..core.limits import LimitConfig, ResourceBudget

logger = logging.getLogger(__name__)

_CHECK = 1e-9

B0_ORBIT = "B0"
B_OMEGA2_ORBIT = "B_omega2"


@dataclass(frozen=True)
class GlideData:
    """Axis and translation vector of a translation-reflection of C."""
    axis_intercept: float  # where the axis meets the real line
    direction: complex
    glide_vector: complex


@dataclass(frozen=True)
class CuspSection:
    """Γ_∞ as a Klein bottle group, with its translation lattice Λ_∞."""
    generators: Tuple[Isometry, Isometry]
    glides: Tuple[GlideData, GlideData]
    klein: KleinGroup
    lattice: Lattice2
    covol_gamma_inf: float
    covol_lambda_inf: float
    index: int


def _glide(motion: EuclideanMotion) -> GlideData:
    p, u = motion.axis_point, motion.axis_direction
    t = -p.imag / u.imag
    return GlideData(axis_intercept=p.real + t * u.real, direction=u, glide_vector=motion.glide_vector)


def _expect(what: str, value: complex, expected: complex) -> None:
    if abs(value - expected) > _CHECK * max(1.0, abs(expected)):
        raise ConstructionMismatch(what, value, expected)


def cusp_generators() -> Tuple[Isometry, Isometry]:
    """f and (fg²)⁻¹ g (fg²), the translation-reflections generating Γ_∞."""
    f, g = generators()
    fg2 = compose(f, compose(g, g))
    return f, compose(inverse(fg2), compose(g, fg2))


def cusp_group() -> CuspSection:
    """
    Extracts Γ_∞ from the explicit generators and checks it against its closed form.

    Raises:
        ConstructionMismatch: if an axis, vector or covolume is off by more than 1e-9.
    """
    f, k = cusp_generators()
    try:
        mf, mk = euclidean_part(f), euclidean_part(k)
    except DoesNotStabilizeInfinity as e:
        raise ConstructionMismatch("cusp generator", str(e), "fixes ∞")
    glides = (_glide(mf), _glide(mk))

    _expect("axis of f", glides[0].axis_intercept, 0.5)
    _expect("axis of (fg²)⁻¹g(fg²)", glides[1].axis_intercept, -1.5)
    _expect("glide of f", glides[0].glide_vector, -OMEGA / 2)
    _expect("glide of (fg²)⁻¹g(fg²)", glides[1].glide_vector, OMEGA / 2)

    square = euclidean_part(compose(f, f))
    beta = euclidean_part(compose(k, f))
    _expect("f²", square.w, -OMEGA)
    _expect("orthogonal translation", beta.w, 2 * math.sqrt(3) * 1j * OMEGA)

    lattice = Lattice2(square.w, beta.w)
    covol_lambda = lattice.covolume
    _expect("covol(Λ_∞)", covol_lambda, 2 * math.sqrt(3))

    klein = KleinGroup(
        axis_direction=glides[0].direction,
        alpha_shift=abs(glides[0].glide_vector),
        beta_shift=abs(beta.w),
        origin=complex(glides[0].axis_intercept),
    )
    return CuspSection(
        generators=(f, k),
        glides=glides,
        klein=klein,
        lattice=lattice,
        covol_gamma_inf=covol_lambda / 2,
        covol_lambda_inf=covol_lambda,
        index=2,
    )


@dataclass
class HoroballOrbit:
    """Representatives of the Γ_∞-classes of horoballs in Γ·{t > 1}, with orbit labels."""
    representatives: List[Tuple[Horoball, str]]
    lattice: Lattice2
    glide: EuclideanMotion
    min_diameter: float

    def orbit_points(self, x: complex) -> Tuple[complex, complex]:
        """The two Λ_∞-classes making up the Γ_∞-orbit of x."""
        return x, self.glide.apply(x)

    def label_of(self, x: complex, diameter: float) -> Optional[str]:
        for ball, label in self.representatives:
            if abs(ball.size - diameter) > 1e-8 * max(1.0, diameter):
                continue
            if any(_same_class(y, complex(ball.center), self.lattice) for y in self.orbit_points(x)):
                return label
        return None

    def window(self, radius: float) -> List[Tuple[Horoball, str]]:
        """All balls of the packing (above the cutoff) whose centers lie within radius of 0."""
        balls = []
        for ball, label in self.representatives:
            for x in self.orbit_points(complex(ball.center)):
                for v in self.lattice.vectors_near(-x, radius):
                    balls.append((Horoball(x + complex(v), ball.size), label))
        balls.sort(key=lambda item: (-item[0].size, round(abs(item[0].center), 9), round(math.atan2(item[0].center.imag, item[0].center.real) % (2 * math.pi), 9)))
        return balls


def _canonical_coefficients(x: complex, lattice: Lattice2) -> Tuple[float, float]:
    a, b = lattice.coefficients(x)
    a, b = a - math.floor(a + 1e-9), b - math.floor(b + 1e-9)
    return round(a, 8) % 1.0, round(b, 8) % 1.0


def _same_class(x: complex, y: complex, lattice: Lattice2) -> bool:
    a, b = lattice.coefficients(x - y)
    return abs(a - round(a)) < 1e-8 and abs(b - round(b)) < 1e-8


def horoball_orbit(
    min_diameter: float = 1e-3,
    depth: int = 8,
    max_entry: float = 1e3,
    limits: Optional[LimitConfig] = None,
) -> HoroballOrbit:
    """
    Enumerates the Γ-images of B_∞ = {t > 1} with diameter at least min_diameter.

    Images are produced by freely reduced words up to `depth`, reduced modulo
    Γ_∞ and deduplicated. The two classes of tangent balls are labelled by the
    orbits of B_0 and B_{ω²}.

    Raises:
        ResourceLimit: if the word budget is exhausted.
        ConstructionMismatch: if a ball larger than the tangent ones appears or the
            tangency pattern around B_0 is wrong.
    """
    if not 0 < min_diameter <= 1:
        raise ValueError("min_diameter must lie in (0, 1]")
    section = cusp_group()
    lattice = section.lattice
    glide = euclidean_part(section.generators[0])
    table = generator_table()
    budget = ResourceBudget(limits or LimitConfig(), what="horoball words")
    top = Horoball.at_infinity(1.0)

    seen: Dict[Tuple[float, float, float], Horoball] = {}
    frontier = [((), Isometry.identity())]
    for _ in range(depth):
        next_frontier = []
        for letters, g in frontier:
            for x in LETTERS:
                if letters and INVERSE_LETTER[letters[-1]] == x:
                    continue
                budget.consume()
                h = compose(g, table[x])
                ball = image_horoball(h, top)
                if not ball.is_at_infinity and ball.size >= min_diameter:
                    center = complex(ball.center)
                    key = min(
                        _canonical_coefficients(center, lattice),
                        _canonical_coefficients(glide.apply(center), lattice),
                    ) + (round(ball.size, 8),)
                    seen.setdefault(key, ball)
                if max(abs(h.a), abs(h.b), abs(h.c), abs(h.d)) <= max_entry:
                    next_frontier.append((letters + (x,), h))
        frontier = next_frontier

    largest = max(ball.size for ball in seen.values())
    if largest > 1 + _CHECK:
        raise ConstructionMismatch("largest finite horoball", largest, 1.0)

    orbit = HoroballOrbit(representatives=[], lattice=lattice, glide=glide, min_diameter=min_diameter)
    counter = 0
    for key in sorted(seen, key=lambda k: (-k[2], k[0], k[1])):
        ball = seen[key]
        center = complex(ball.center)
        if abs(ball.size - 1) <= _CHECK and orbit.label_of(0j, 1.0) is None and _in_orbit(orbit, center, 0j):
            label = B0_ORBIT
        elif abs(ball.size - 1) <= _CHECK and _in_orbit(orbit, center, OMEGA ** 2):
            label = B_OMEGA2_ORBIT
        else:
            counter += 1
            label = f"orbit-{counter}"
        orbit.representatives.append((ball, label))

    _check_tangent_pattern(orbit)
    logger.info("Horoball orbit: %d classes above diameter %g", len(orbit.representatives), min_diameter)
    return orbit


def _in_orbit(orbit: HoroballOrbit, x: complex, target: complex) -> bool:
    return any(_same_class(y, target, orbit.lattice) for y in orbit.orbit_points(x))


def _check_tangent_pattern(orbit: HoroballOrbit) -> None:
    labels = {label for _, label in orbit.representatives}
    for name in (B0_ORBIT, B_OMEGA2_ORBIT):
        if name not in labels:
            raise ConstructionMismatch("tangent horoball orbits", sorted(labels), name)
    b0 = Horoball(0j, 1.0)
    for x in (OMEGA ** 2, -1 + 0j):
        if orbit.label_of(x, 1.0) != B_OMEGA2_ORBIT or not are_tangent(b0, Horoball(x, 1.0)):
            raise ConstructionMismatch(f"ball at {x}", orbit.label_of(x, 1.0), "tangent to B_0 in Γ_∞·B_ω²")


def tangent_balls(orbit: HoroballOrbit, radius: float) -> List[Tuple[Horoball, str]]:
    """The diameter-1 balls (tangent to B_∞) within radius of 0."""
    return [(ball, label) for ball, label in orbit.window(radius) if abs(ball.size - 1) <= _CHECK]


def infinity_ball() -> Horoball:
    return Horoball(INFINITY, 1.0)

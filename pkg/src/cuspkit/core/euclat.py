"""
Rank-2 Euclidean lattices and closed flat surfaces (tori and Klein bottles).

Quotient distances and injectivity radii are computed by enumerating deck
images of a point in a box of lattice coefficients large enough to contain
every image within the requested radius.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np

from .domain import CuspkitError

logger = logging.getLogger(__name__)


class PointOutOfRange(CuspkitError):
    pass


@dataclass(frozen=True)
class Lattice2:
    """A rank-2 lattice of C given by a basis."""
    b1: complex
    b2: complex

    def __post_init__(self):
        if self.covolume <= 1e-15 * max(1.0, abs(self.b1) * abs(self.b2)):
            raise ValueError("Basis vectors are linearly dependent")

    @property
    def covolume(self) -> float:
        return abs((self.b1.conjugate() * self.b2).imag)

    def coefficients(self, x: complex) -> Tuple[float, float]:
        """Real coordinates of x in the basis."""
        det = (self.b1.conjugate() * self.b2).imag
        return (x.conjugate() * self.b2).imag / det, (self.b1.conjugate() * x).imag / det

    def vectors_near(self, target: complex, radius: float) -> np.ndarray:
        """All lattice vectors within `radius` of `target` (possibly a few more)."""
        i0, j0 = (round(c) for c in self.coefficients(target))
        # Cramer: a vector of length r has coefficients at most r|b_other|/covol
        ki = math.ceil(radius * abs(self.b2) / self.covolume) + 1
        kj = math.ceil(radius * abs(self.b1) / self.covolume) + 1
        ii, jj = np.meshgrid(np.arange(i0 - ki, i0 + ki + 1), np.arange(j0 - kj, j0 + kj + 1), indexing="ij")
        vectors = (ii * self.b1 + jj * self.b2).ravel()
        return vectors[np.abs(vectors - target) <= radius + 1e-12]


@dataclass(frozen=True)
class MinimaReport:
    """
    Successive minima. m1, m2 are squared norms; norm1, norm2 the plain lengths.
    Consumers state which reading they use.
    """
    m1: float
    m2: float
    norm1: float
    norm2: float
    v1: complex
    v2: complex


@dataclass(frozen=True)
class KleinGroup:
    """
    Klein bottle group generated by a translation-reflection α and a translation β.

    α reflects in the line origin + R·u and translates by alpha_shift along it;
    β translates by beta_shift orthogonally, so that αβ = β^{-1}α.
    """
    axis_direction: complex
    alpha_shift: float
    beta_shift: float
    origin: complex = 0j

    def __post_init__(self):
        if abs(abs(self.axis_direction) - 1) > 1e-12:
            raise ValueError("Axis direction must be a unit complex number")
        if self.alpha_shift <= 0 or self.beta_shift <= 0:
            raise ValueError("Shifts must be positive")

    def alpha(self, z: complex) -> complex:
        u = self.axis_direction
        return self.origin + u * u * (z - self.origin).conjugate() + self.alpha_shift * u

    def beta(self, z: complex) -> complex:
        return z + self.beta_shift * 1j * self.axis_direction

    def lattice(self) -> Lattice2:
        u = self.axis_direction
        return Lattice2(2 * self.alpha_shift * u, self.beta_shift * 1j * u)

    @property
    def area(self) -> float:
        return self.alpha_shift * self.beta_shift

    def distance_to_axis(self, z: complex) -> float:
        return abs(((z - self.origin) * self.axis_direction.conjugate()).imag)


@dataclass(frozen=True)
class Torus:
    lattice: Lattice2

    @property
    def area(self) -> float:
        return self.lattice.covolume

    @property
    def diameter_bound(self) -> float:
        return abs(self.lattice.b1) + abs(self.lattice.b2)


@dataclass(frozen=True)
class Klein:
    group: KleinGroup

    @property
    def area(self) -> float:
        return self.group.area

    @property
    def diameter_bound(self) -> float:
        lattice = self.group.lattice()
        return abs(lattice.b1) + abs(lattice.b2)


FlatSurface = Union[Torus, Klein]


@dataclass(frozen=True)
class DiskCheck:
    """Outcome of the two-disk embedding test."""
    valid: bool
    center_distance: float
    injectivity_radii: Tuple[float, float]


def gauss_reduce(lattice: Lattice2) -> Lattice2:
    """Lagrange–Gauss reduction: |b1| ≤ |b2| and |Re(b2 b̄1)| ≤ |b1|²/2."""
    u, v = lattice.b1, lattice.b2
    if abs(u) > abs(v):
        u, v = v, u
    while True:
        mu = round((v * u.conjugate()).real / abs(u) ** 2)
        v = v - mu * u
        if abs(v) < abs(u):
            u, v = v, u
        else:
            return Lattice2(u, v)


def successive_minima(lattice: Lattice2, box: int = 3) -> MinimaReport:
    """Exact minima by exhaustive search over a coefficient box around a reduced basis."""
    reduced = gauss_reduce(lattice)
    coeffs = [(i, j) for i in range(-box, box + 1) for j in range(-box, box + 1) if (i, j) != (0, 0)]
    vectors = np.array([i * reduced.b1 + j * reduced.b2 for i, j in coeffs])
    norms = np.abs(vectors) ** 2
    order = np.argsort(norms, kind="stable")
    v1 = complex(vectors[order[0]])
    for k in order[1:]:
        w = complex(vectors[k])
        if abs((v1.conjugate() * w).imag) > 1e-12 * abs(v1) * abs(w):
            v2 = w
            break
    m1, m2 = abs(v1) ** 2, abs(v2) ** 2
    return MinimaReport(m1=m1, m2=m2, norm1=math.sqrt(m1), norm2=math.sqrt(m2), v1=v1, v2=v2)


def _images(surface: FlatSurface, q: complex, center: complex, radius: float) -> np.ndarray:
    """Deck images of q within `radius` of `center`."""
    if isinstance(surface, Torus):
        lattice = surface.lattice
        return q + lattice.vectors_near(center - q, radius)
    group = surface.group
    lattice = group.lattice()
    q_reflected = group.alpha(q)
    return np.concatenate([
        q + lattice.vectors_near(center - q, radius),
        q_reflected + lattice.vectors_near(center - q_reflected, radius),
    ])


def quotient_distance(surface: FlatSurface, p: complex, q: complex) -> float:
    """Distance between the projections of p and q."""
    images = _images(surface, q, p, 3 * surface.diameter_bound)
    return float(np.min(np.abs(images - p)))


def injectivity_radius(surface: FlatSurface, p: complex) -> float:
    """Half the shortest nontrivial deck displacement of p."""
    images = _images(surface, p, p, 3 * surface.diameter_bound)
    displacements = np.abs(images - p)
    return float(np.min(displacements[displacements > 1e-12])) / 2


def klein_injectivity_radius(group: KleinGroup, y: float) -> float:
    """
    r_inj = ½ min(√(‖α‖² + 4y²), √(‖αβ‖² + 4y'²), ‖α²‖, ‖β‖) at distance y from the α axis.

    Raises:
        PointOutOfRange: if y is outside [0, ‖β‖/2].
    """
    if not 0 <= y <= group.beta_shift / 2:
        raise PointOutOfRange(f"y = {y} outside [0, {group.beta_shift / 2}]")
    a, b = group.alpha_shift, group.beta_shift
    y_prime = b / 2 - y
    return 0.5 * min(math.sqrt(a * a + 4 * y * y), math.sqrt(a * a + 4 * y_prime * y_prime), 2 * a, b)


def flat_systole(surface: FlatSurface) -> float:
    if isinstance(surface, Torus):
        return successive_minima(surface.lattice).norm1
    a, b = surface.group.alpha_shift, surface.group.beta_shift
    # α and αβ have length a, α² has 2a and β has b
    return min(a, b)


def orientation_cover(surface: Klein) -> Torus:
    return Torus(surface.group.lattice())


def two_disk_config_valid(surface: FlatSurface, c1: complex, c2: complex, h: float, atol: float = 1e-9) -> DiskCheck:
    """
    Whether two disks of diameter h centered at c1, c2 embed and are disjoint.
    """
    if h < 0:
        raise ValueError("Diameter must be nonnegative")
    d = quotient_distance(surface, c1, c2)
    radii = (injectivity_radius(surface, c1), injectivity_radius(surface, c2))
    valid = h / 2 <= min(radii) + atol and d >= h - atol
    return DiskCheck(valid=valid, center_distance=d, injectivity_radii=radii)


def is_hexagonal_packing(surface: FlatSurface, c1: complex, c2: complex, tol: float = 1e-3) -> bool:
    """Every lifted center has exactly six nearest neighbours at the common distance."""
    d = quotient_distance(surface, c1, c2)
    for base in (c1, c2):
        lifts = np.concatenate([_images(surface, c1, base, 3 * d), _images(surface, c2, base, 3 * d)])
        distances = np.sort(np.abs(lifts - base))
        distances = distances[distances > 1e-9 * max(d, 1.0)]
        if len(distances) < 7:
            return False
        nearest = distances[0]
        if distances[5] > nearest * (1 + tol) or distances[6] <= nearest * (1 + tol):
            return False
        if abs(nearest - d) > tol * d:
            return False
    return True


def shortest_vector_norm2(basis: np.ndarray) -> float:
    """
    Squared length of a shortest nonzero vector of the lattice spanned by the rows of `basis`.

    The coefficient box is bounded by Cramer's rule, so the search is exact;
    meant for dimensions up to 4.
    """
    basis = np.asarray(basis, dtype=float)
    radius = float(np.min(np.linalg.norm(basis, axis=1)))
    inverse = np.linalg.inv(basis)
    bounds = [int(math.floor(radius * np.linalg.norm(inverse[:, i]) + 1e-9)) for i in range(basis.shape[0])]
    coeffs = np.array(list(itertools.product(*(range(-k, k + 1) for k in bounds))), dtype=float)
    coeffs = coeffs[np.any(coeffs != 0, axis=1)]
    vectors = coeffs @ basis
    return float(np.min(np.sum(vectors * vectors, axis=1)))


def lift_distances(surface: FlatSurface, p: complex, q: complex, radius: float) -> List[float]:
    """Sorted distances from p to the deck images of q within radius."""
    images = _images(surface, q, p, radius)
    return sorted(float(x) for x in np.abs(images - p) if x <= radius)

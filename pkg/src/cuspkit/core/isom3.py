"""
Isometries of hyperbolic 3-space in the upper half-space model.

An isometry is a normalized SL(2,C) lift (a, b, c, d) together with an
orientation sign. Orientation-reversing ("negative") elements act by
z -> (a z̄ + b)/(c z̄ + d), so that the full group is PSL(2,C) ⋊ Z/2 with
(A, -1)(B, e) = (A B̄, -e).
"""
import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from .domain import INFINITY, BoundaryPoint, CuspkitError, H3Point, is_infinity
from ..context import get_tolerance

logger = logging.getLogger(__name__)

# Entries below this are treated as exact zeros when deciding whether a
# point is sent to infinity.
_ZERO = 1e-13


class AmbiguousClassification(CuspkitError):
    """Raised in strict mode when the type is numerically undecidable."""
    pass


class NotLoxodromic(CuspkitError):
    pass


class SharedFixedPoint(CuspkitError):
    pass


class DoesNotStabilizeInfinity(CuspkitError):
    pass


class Kind(str, Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


def _canonical_sign(entries: Tuple[complex, complex, complex, complex]) -> Tuple[complex, ...]:
    scale = max(abs(x) for x in entries)
    for x in entries:
        if abs(x) > 1e-12 * scale:
            phase = cmath.phase(x)
            if -math.pi / 2 < phase <= math.pi / 2:
                return entries
            return tuple(-y for y in entries)
    return entries


@dataclass(frozen=True)
class Isometry:
    """An element of Isom(H^3): a unit-determinant lift plus an orientation sign."""
    a: complex
    b: complex
    c: complex
    d: complex
    orientation: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError(f"Orientation must be +1 or -1, got {self.orientation}")
        for x in (self.a, self.b, self.c, self.d):
            if not cmath.isfinite(complex(x)):
                raise ValueError("Isometry entries must be finite")

    @classmethod
    def from_matrix(cls, a: complex, b: complex, c: complex, d: complex, orientation: int = 1) -> "Isometry":
        """
        Builds the normalized representative of a 2x2 complex matrix.

        Args:
            a, b, c, d: Matrix entries, any nonzero determinant.
            orientation: +1 for orientation-preserving, -1 for reversing.

        Returns:
            The isometry with determinant 1 and canonical global sign.
        """
        det = a * d - b * c
        if det == 0:
            raise ValueError("Matrix is singular")
        s = cmath.sqrt(det)
        entries = _canonical_sign((a / s, b / s, c / s, d / s))
        return cls(*entries, orientation=orientation)

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @classmethod
    def translation(cls, v: complex) -> "Isometry":
        return cls.from_matrix(1, v, 0, 1)

    @property
    def is_positive(self) -> bool:
        return self.orientation == 1

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return compose(self, other)


@dataclass(frozen=True)
class ClassificationReport:
    """Type and metric invariants of an isometry."""
    kind: Kind
    orientation: int
    trace: Optional[complex] = None  # positive elements
    trace_of_square: Optional[float] = None  # negative elements
    translation_length: Optional[float] = None
    rotation_angle: Optional[float] = None
    fixed_points: Tuple[BoundaryPoint, ...] = ()


@dataclass(frozen=True)
class ProductReport:
    """Outcome of multiplying two parabolic elements with distinct fixed points."""
    product_kind: Kind
    common_invariant_line: bool
    m: complex
    m_prime: complex
    trace: complex  # 2 + m m'


@dataclass(frozen=True)
class NormalForm:
    """Parameters of z -> b - h^2 e^{-2iθ}/z (or z̄), sending B_0 to B_∞."""
    b: complex
    h: float
    theta: float
    orientation: int


@dataclass(frozen=True)
class EuclideanMotion:
    """A similarity z -> k z^(±) + w of C induced by an isometry fixing ∞."""
    k: complex
    w: complex
    orientation: int

    def apply(self, z: complex) -> complex:
        if self.orientation == -1:
            z = z.conjugate()
        return self.k * z + self.w

    @property
    def axis_direction(self) -> complex:
        """Unit direction of the reflection axis (negative motions only)."""
        u = cmath.sqrt(self.k)
        return u / abs(u)

    @property
    def glide_vector(self) -> complex:
        """Translation part along the axis; for positive motions the shift itself."""
        if self.orientation == 1:
            return self.w
        u = self.axis_direction
        return (self.w * u.conjugate()).real * u

    @property
    def axis_point(self) -> complex:
        """A point of the glide axis (negative motions only)."""
        return (self.w - self.glide_vector) / 2


def compose(g1: Isometry, g2: Isometry) -> Isometry:
    """Returns g1 ∘ g2 (g2 applied first)."""
    if g1.orientation == -1:
        a2, b2, c2, d2 = g2.a.conjugate(), g2.b.conjugate(), g2.c.conjugate(), g2.d.conjugate()
    else:
        a2, b2, c2, d2 = g2.a, g2.b, g2.c, g2.d
    return Isometry.from_matrix(
        g1.a * a2 + g1.b * c2,
        g1.a * b2 + g1.b * d2,
        g1.c * a2 + g1.d * c2,
        g1.c * b2 + g1.d * d2,
        orientation=g1.orientation * g2.orientation,
    )


def inverse(g: Isometry) -> Isometry:
    if g.is_positive:
        return Isometry.from_matrix(g.d, -g.b, -g.c, g.a)
    # (A, -1)^{-1} = (conj(A^{-1}), -1)
    return Isometry.from_matrix(
        g.d.conjugate(), -g.b.conjugate(), -g.c.conjugate(), g.a.conjugate(), orientation=-1
    )


def conjugate_by(u: Isometry, g: Isometry) -> Isometry:
    """Returns u g u^{-1}."""
    return compose(compose(u, g), inverse(u))


def act_boundary(g: Isometry, z: BoundaryPoint) -> BoundaryPoint:
    """Action on the sphere at infinity C ∪ {∞}."""
    if is_infinity(z):
        if abs(g.c) <= _ZERO:
            return INFINITY
        # ∞ is fixed by conjugation, so both orientations agree here
        return g.a / g.c
    z = complex(z)
    if not g.is_positive:
        z = z.conjugate()
    den = g.c * z + g.d
    if abs(den) <= _ZERO:
        return INFINITY
    return (g.a * z + g.b) / den


def act(g: Isometry, p: H3Point) -> H3Point:
    """Action on upper half-space; negative elements reflect z -> z̄ first."""
    z = p.z if g.is_positive else p.z.conjugate()
    t = p.t
    cz_d = g.c * z + g.d
    den = abs(cz_d) ** 2 + abs(g.c) ** 2 * t * t
    num = (g.a * z + g.b) * cz_d.conjugate() + g.a * g.c.conjugate() * t * t
    return H3Point(num / den, t / den)


def square_trace(g: Isometry) -> float:
    """Tr(γ²) = |a|² + |d|² + 2 Re(b c̄) of a negative element (always ≥ -2)."""
    if g.is_positive:
        raise ValueError("square_trace is defined here for orientation-reversing elements")
    return abs(g.a) ** 2 + abs(g.d) ** 2 + 2 * (g.b * g.c.conjugate()).real


def _is_identity(g: Isometry, atol: float) -> bool:
    return (
        g.is_positive
        and abs(g.b) <= atol
        and abs(g.c) <= atol
        and abs(g.a - g.d) <= atol
    )


def _check_band(discrepancy: float, atol: float, strict: bool, noise_floor: float) -> None:
    if strict and noise_floor < discrepancy <= atol:
        raise AmbiguousClassification(
            f"Parabolic threshold missed by {discrepancy:.3e}, inside the tolerance band"
        )


def _positive_fixed_points(g: Isometry, kind: Kind) -> Tuple[BoundaryPoint, ...]:
    if kind == Kind.IDENTITY:
        return ()
    a, b, c, d = g.a, g.b, g.c, g.d
    if abs(c) <= _ZERO:
        if kind == Kind.PARABOLIC or abs(a - d) <= _ZERO:
            return (INFINITY,)
        return (INFINITY, b / (d - a))
    if kind == Kind.PARABOLIC:
        return ((a - d) / (2 * c),)
    root = cmath.sqrt((a + d) ** 2 - 4)
    return (((a - d) + root) / (2 * c), ((a - d) - root) / (2 * c))


def _same_point(p: BoundaryPoint, q: BoundaryPoint, atol: float) -> bool:
    if is_infinity(p) or is_infinity(q):
        return is_infinity(p) and is_infinity(q)
    return abs(complex(p) - complex(q)) <= atol * max(1.0, abs(complex(p)))


def _wrap_angle(x: float) -> float:
    y = math.remainder(x, 2 * math.pi)
    return math.pi if y <= -math.pi else y


def _positive_length_and_angle(g: Isometry) -> Tuple[float, float]:
    tr = g.a + g.d
    x = abs(tr / 2 - 1) + abs(tr / 2 + 1)
    length = 2 * math.acosh(max(1.0, x / 2))
    root = cmath.sqrt(tr * tr - 4)
    lam = (tr + root) / 2
    if abs(lam) < 1:
        lam = (tr - root) / 2
    return length, _wrap_angle(2 * cmath.phase(lam))


def _normal_form_fixed_point(g: Isometry, atol: float) -> Optional[Tuple[BoundaryPoint]]:
    """Closed-form fixed point of a parabolic negative element sending 0 to ∞, else None."""
    if abs(g.d) > _ZERO * max(1.0, abs(g.c)):
        return None
    try:
        form = normal_form_parameters(g, atol=max(atol, _ZERO))
        return (parabolic_negative_fixed_point(form.b, form.h, form.theta, atol=max(atol, 1e-7)),)
    except ValueError:
        return None


def classify(g: Isometry, atol: Optional[float] = None, strict: Optional[bool] = None) -> ClassificationReport:
    """
    Decides the type of g and computes its invariants.

    Positive elements are classified from their trace, negative ones from
    Tr(γ²), which unlike the trace modulus is a conjugation invariant.

    Args:
        g: A normalized isometry.
        atol: Width of the tolerance band around the parabolic threshold.
        strict: Raise AmbiguousClassification inside the band instead of snapping.
    """
    tol = get_tolerance()
    atol = tol.atol if atol is None else atol
    strict = tol.strict if strict is None else strict

    if g.is_positive:
        tr = g.a + g.d
        if _is_identity(g, atol):
            return ClassificationReport(Kind.IDENTITY, 1, trace=tr)
        disc = abs(tr * tr - 4)
        if disc <= atol:
            _check_band(disc, atol, strict, tol.noise_floor)
            kind = Kind.PARABOLIC
        elif abs(tr.imag) <= atol and abs(tr.real) < 2:
            kind = Kind.ELLIPTIC
        else:
            kind = Kind.LOXODROMIC
        length = angle = None
        if kind == Kind.LOXODROMIC:
            length, angle = _positive_length_and_angle(g)
        return ClassificationReport(
            kind, 1, trace=tr, translation_length=length, rotation_angle=angle,
            fixed_points=_positive_fixed_points(g, kind),
        )

    s = square_trace(g)
    sq = compose(g, g)
    if _is_identity(sq, atol):
        # involutions: plane reflections and the antipodal-type point inversions
        return ClassificationReport(Kind.ELLIPTIC, -1, trace_of_square=s)
    if abs(s - 2) <= atol:
        _check_band(abs(s - 2), atol, strict, tol.noise_floor)
        kind = Kind.PARABOLIC
    elif s < 2:
        kind = Kind.ELLIPTIC
    else:
        kind = Kind.LOXODROMIC

    fixed = _normal_form_fixed_point(g, atol) if kind == Kind.PARABOLIC else None
    if fixed is None:
        candidates = _positive_fixed_points(sq, kind)
        fixed = tuple(
            z for z in candidates
            if _same_point(act_boundary(g, z), z, max(atol, 1e-7))
        )
    length = 2 * math.acosh(math.sqrt(s + 2) / 2) if kind == Kind.LOXODROMIC else None
    return ClassificationReport(
        kind, -1, trace_of_square=s, translation_length=length, fixed_points=fixed,
    )


def translation_length(g: Isometry) -> Tuple[float, Optional[float]]:
    """
    Translation length of a loxodromic element.

    2cosh(ℓ/2) = |Tr/2 - 1| + |Tr/2 + 1| for positive elements and
    2cosh(ℓ/2) = sqrt(Tr(γ²) + 2) for negative ones.

    Returns:
        (ℓ, θ) with θ the rotation angle for positive elements, None otherwise.

    Raises:
        NotLoxodromic: if g is not loxodromic.
    """
    report = classify(g)
    if report.kind != Kind.LOXODROMIC:
        raise NotLoxodromic(f"Element is {report.kind.value}")
    return report.translation_length, report.rotation_angle


def eigenvalue(g: Isometry) -> complex:
    """λ = exp((ℓ + iθ)/2) of a positive loxodromic element, up to sign."""
    length, angle = translation_length(g)
    if angle is None:
        raise ValueError("Eigenvalue data is only defined for orientation-preserving elements")
    return cmath.exp((length + 1j * angle) / 2)


def dist_H3(p: H3Point, q: H3Point) -> float:
    """Hyperbolic distance, cosh d = 1 + (|Δz|² + Δt²)/(2 t1 t2), in its stable asinh form."""
    chord = math.sqrt(abs(p.z - q.z) ** 2 + (p.t - q.t) ** 2)
    return 2 * math.asinh(chord / (2 * math.sqrt(p.t * q.t)))


def _to_hyperboloid(p: H3Point) -> np.ndarray:
    r2 = abs(p.z) ** 2 + p.t ** 2
    return np.array([(r2 + 1) / (2 * p.t), p.z.real / p.t, p.z.imag / p.t, (r2 - 1) / (2 * p.t)])


def _from_hyperboloid(x: np.ndarray) -> H3Point:
    t = 1.0 / (x[0] - x[3])
    return H3Point(complex(x[1] * t, x[2] * t), float(t))


def midpoint(p: H3Point, q: H3Point) -> H3Point:
    s = _to_hyperboloid(p) + _to_hyperboloid(q)
    norm = math.sqrt(s[0] ** 2 - s[1] ** 2 - s[2] ** 2 - s[3] ** 2)
    return _from_hyperboloid(s / norm)


def geodesic_points(p: BoundaryPoint, q: BoundaryPoint, count: int = 200, span: float = 3.0) -> List[H3Point]:
    """Points of the geodesic with ideal endpoints p and q, evenly spaced in arclength."""
    s = np.linspace(-span, span, count)
    if is_infinity(p) or is_infinity(q):
        x = complex(q if is_infinity(p) else p)
        return [H3Point(x, float(math.exp(v))) for v in s]
    p, q = complex(p), complex(q)
    center = (p + q) / 2
    r = abs(q - p) / 2
    u = (q - p) / abs(q - p)
    return [H3Point(center + r * math.tanh(v) * u, r / math.cosh(v)) for v in s]


def _conjugator(pa: BoundaryPoint, pb: BoundaryPoint) -> Isometry:
    """A positive element sending pa to ∞ and pb to 0."""
    if is_infinity(pa):
        return Isometry.from_matrix(1, -complex(pb), 0, 1)
    if is_infinity(pb):
        return Isometry.from_matrix(0, 1, 1, -complex(pa))
    return Isometry.from_matrix(1, -complex(pb), 1, -complex(pa))


def parabolic_product_report(alpha: Isometry, beta: Isometry, atol: Optional[float] = None) -> ProductReport:
    """
    Classifies αβ for two positive parabolic elements.

    After conjugating the fixed points to ∞ and 0, α is z -> z + m and β is
    lower triangular with entry m'; the product has trace 2 + m m' and the
    two elements preserve a common circle iff m m' is real.
    """
    atol = get_tolerance().atol if atol is None else atol
    ra, rb = classify(alpha, atol=atol), classify(beta, atol=atol)
    for report in (ra, rb):
        if report.kind != Kind.PARABOLIC or report.orientation != 1:
            raise ValueError("Both elements must be orientation-preserving parabolics")
    pa, pb = ra.fixed_points[0], rb.fixed_points[0]
    if _same_point(pa, pb, atol):
        raise SharedFixedPoint(f"Both elements fix {pa}")

    u = _conjugator(pa, pb)
    ua, ub = conjugate_by(u, alpha), conjugate_by(u, beta)
    m = ua.b / ua.a
    m_prime = ub.c / ub.a
    mm = m * m_prime

    product = classify(compose(alpha, beta), atol=atol)
    return ProductReport(
        product_kind=product.kind,
        common_invariant_line=abs(mm.imag) <= atol * max(1.0, abs(mm)),
        m=m,
        m_prime=m_prime,
        trace=2 + mm,
    )


def euclidean_part(tau: Isometry, atol: Optional[float] = None) -> EuclideanMotion:
    """The motion of C induced by an isometry fixing ∞."""
    atol = get_tolerance().atol if atol is None else atol
    if abs(tau.c) > atol:
        raise DoesNotStabilizeInfinity(f"Lower-left entry {tau.c} is not zero")
    return EuclideanMotion(k=tau.a / tau.d, w=tau.b / tau.d, orientation=tau.orientation)


def horospherical_translation(tau: Isometry, h: float, atol: Optional[float] = None) -> float:
    """
    Minimal displacement of tau on the horosphere {t = h} with its induced flat metric.

    Args:
        tau: An isometry fixing ∞ and preserving the horosphere.
        h: Height of the horosphere.

    Returns:
        Euclidean displacement along the axis, divided by h.
    """
    if h <= 0:
        raise ValueError("Horosphere height must be positive")
    atol = get_tolerance().atol if atol is None else atol
    motion = euclidean_part(tau, atol)
    if abs(abs(motion.k) - 1) > atol:
        raise ValueError("Element scales the horospheres centered at ∞")
    if motion.orientation == 1 and abs(motion.k - 1) > atol:
        # a rotation fixes a vertical line
        return 0.0
    return abs(motion.glide_vector) / h


def normalize_B0_to_Binf(b: complex, h: float, theta: float, orientation: int = 1) -> Isometry:
    """
    Builds γ: z -> b - h² e^{-2iθ}/z (z̄ for orientation -1).

    γ sends the diameter-h horoball at 0 to {t > h} and {t > h} to the
    diameter-h horoball at b.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    c = cmath.exp(1j * theta) / h
    return Isometry.from_matrix(c * b, -1 / c, c, 0, orientation=orientation)


def normal_form_parameters(g: Isometry, atol: Optional[float] = None) -> NormalForm:
    """Recovers (b, h, θ) from an element sending 0 to ∞."""
    atol = get_tolerance().atol if atol is None else atol
    if abs(g.d) > atol:
        raise ValueError("Element does not send 0 to ∞")
    return NormalForm(b=g.a / g.c, h=1 / abs(g.c), theta=cmath.phase(g.c), orientation=g.orientation)


def parabolic_negative_fixed_point(b: complex, h: float, theta: float, atol: float = 1e-9) -> complex:
    """Fixed point (b/2) e^{iθ}/cosθ of the parabolic negative normal form."""
    cos = math.cos(theta)
    if abs(cos) <= atol:
        raise ValueError("cos θ vanishes; the normal form is not parabolic")
    if abs(abs(b) - 2 * h * abs(cos)) > atol * max(1.0, abs(b)):
        raise ValueError("Parameters violate |b| = 2h|cos θ|")
    return (b / 2) * cmath.exp(1j * theta) / cos

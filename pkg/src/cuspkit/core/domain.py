import cmath
import math
from dataclasses import dataclass
from typing import Union

# Boundary points of upper half-space live in C ∪ {∞}; ∞ is complex infinity.
INFINITY: complex = complex(math.inf, 0.0)

BoundaryPoint = Union[complex, float]


class CuspkitError(Exception):
    """Base class for every error raised by cuspkit."""
    pass


class DomainError(CuspkitError):
    """Raised when an evaluator is called outside the parameter range where its inequality is stated."""
    pass


def is_infinity(z: BoundaryPoint) -> bool:
    """True when the boundary point is the point at infinity."""
    return cmath.isinf(complex(z))


@dataclass(frozen=True)
class H3Point:
    """A point (z, t) of the upper half-space model, t > 0."""
    z: complex
    t: float

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError(f"Height must be positive, got {self.t}")
        if not (cmath.isfinite(complex(self.z)) and math.isfinite(self.t)):
            raise ValueError("H3Point coordinates must be finite")

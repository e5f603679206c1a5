"""
Band surgery on a rectangular torus: removing a strip of width ε between the
two centers, orthogonally to the second lattice vector, shortens the
component v of the center displacement across the strip and the volume.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .objective import PackingConfig
from ..core.domain import CuspkitError
from ..core.euclat import Lattice2, Torus

logger = logging.getLogger(__name__)


class BandIntersectsCriticalSet(CuspkitError):
    """Raised when the strip cannot be removed away from the disks and the segment realizing d."""
    pass


@dataclass(frozen=True)
class SurgeryReport:
    epsilons: List[float]
    ratios: List[float]
    predicted: List[float]  # 1 + ε/b - vε/(4h²+d²)
    max_remainder: float  # max |ratio - predicted|/ε²
    slope_predicted: float
    slope_central: float
    slope_forward: float
    u: float
    v: float


def _rectangle(cfg: PackingConfig):
    if not isinstance(cfg.surface, Torus):
        raise ValueError("Band surgery needs a torus")
    b1, b2 = cfg.surface.lattice.b1, cfg.surface.lattice.b2
    if abs(b1.imag) > 1e-12 * abs(b1) or abs(b2.real) > 1e-12 * abs(b2):
        raise ValueError("Band surgery needs a lattice ⟨a, ib⟩ with a, b real")
    return abs(b1), abs(b2)


def _displacement(cfg: PackingConfig, a: float, b: float) -> complex:
    """Displacement from c1 to the nearest lift of c2."""
    delta = cfg.c2 - cfg.c1
    i, j = np.meshgrid(np.arange(-2, 3), np.arange(-2, 3), indexing="ij")
    base = complex(delta.real - a * round(delta.real / a), delta.imag - b * round(delta.imag / b))
    lifts = (base + i * a + 1j * j * b).ravel()
    return complex(lifts[int(np.argmin(np.abs(lifts)))])


def surgery_expansion_check(cfg: PackingConfig, epsilons: Sequence[float]) -> SurgeryReport:
    """
    Compares the exact objective ratio after removing a strip of width ε with
    1 + ε/b - vε/(4h²+d²), where d_ε² = u² + (v-ε)² and vol_ε = a(b-ε).

    Raises:
        BandIntersectsCriticalSet: if d ≤ h, if the strip is wider than v, or if
            the disks stop embedding once it is removed.
    """
    a, b = _rectangle(cfg)
    shift = _displacement(cfg, a, b)
    u, v = abs(shift.real), abs(shift.imag)
    h, d = cfg.h, cfg.d
    if not epsilons:
        raise ValueError("At least one band width is needed")
    if d <= h:
        raise BandIntersectsCriticalSet(f"d = {d} ≤ h = {h}: the disks touch")
    widest = max(epsilons)
    parallel = v <= 1e-12 * d
    if min(epsilons) <= 0 or (widest > v and not parallel):
        raise BandIntersectsCriticalSet(f"Band widths must lie in (0, v = {v}]")
    if b - widest < h or a < h:
        raise BandIntersectsCriticalSet("The disks no longer embed after surgery")

    base = 4 * h * h + d * d

    def ratio(eps: float) -> float:
        # a strip parallel to the displacement is cut away from the segment
        d_eps2 = d * d if parallel else u * u + (v - eps) ** 2
        return math.sqrt(4 * h * h + d_eps2) / math.sqrt(base) * b / (b - eps)

    ratios = [ratio(e) for e in epsilons]
    predicted = [1 + e / b - v * e / base for e in epsilons]
    remainder = max(abs(r - p) / (e * e) for r, p, e in zip(ratios, predicted, epsilons))

    step = min(epsilons)
    report = SurgeryReport(
        epsilons=list(epsilons),
        ratios=ratios,
        predicted=predicted,
        max_remainder=remainder,
        slope_predicted=1 / b - v / base,
        slope_central=(ratio(step) - ratio(-step)) / (2 * step),
        slope_forward=(ratio(step) - 1) / step,
        u=u,
        v=v,
    )
    logger.debug("Surgery check at v=%g: slope %.3e, remainder %.3e", v, report.slope_central, remainder)
    return report


@dataclass(frozen=True)
class SlopeSurvey:
    count: int
    seed: int
    epsilon: float
    max_relative_error: float
    worst: PackingConfig


def surgery_slope_survey(count: int = 100, seed: int = 0, epsilon: float = 1e-4) -> SlopeSurvey:
    """
    Central-difference slopes against 1/b - v/(4h²+d²) on random admissible
    rectangular tori with c1 = 0.

    Configurations whose predicted slope is within 5% of zero are redrawn.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    worst_error, worst = -1.0, None
    found = 0
    while found < count:
        a, b = rng.uniform(1.0, 3.0, size=2)
        h = rng.uniform(0.2, 0.9) * min(a, b)
        u, v = rng.uniform(0.0, a / 2), rng.uniform(0.0, b / 2)
        if math.hypot(u, v) < 1.05 * h or v < 10 * epsilon:
            continue
        cfg = PackingConfig(Torus(Lattice2(complex(a), complex(0.0, b))), 0j, complex(u, v), float(h))
        try:
            report = surgery_expansion_check(cfg, [epsilon])
        except BandIntersectsCriticalSet:
            continue
        if abs(report.slope_predicted) < 0.05 / b:
            continue
        error = abs(report.slope_central - report.slope_predicted) / abs(report.slope_predicted)
        if error > worst_error:
            worst_error, worst = error, cfg
        found += 1
    logger.info("Surgery slopes on %d configurations: max relative error %.3e", count, worst_error)
    return SlopeSurvey(count, seed, epsilon, worst_error, worst)

"""
The dimension-n systole inequality and the volume minorants it rests on.
"""
import math
from typing import List, Optional

import numpy as np

from ..core.densities import d_inf_closed, systole_coefficient
from ..core.horoball import simplex_volume_lower_bound
from ..core.isom3 import Isometry, Kind, classify, compose
from ..core.reports import BoundReport, make_report
from ..gieseking.certificates import SYSTOLE_RATIO
from .dim3 import DomainError

THUE_DENSITY = math.pi / math.sqrt(12)
READINGS = ("plain", "squared")


def _product_grid_max(m: float, m_i: float, steps: int) -> float:
    """Largest cosh(ℓ/2) of [[1,0],[m_i e^{iφ},1]]·[[1,m],[0,1]] over the phase φ."""
    beta = Isometry.translation(complex(m))
    best = 1.0
    for phi in np.linspace(0.0, 2 * math.pi, steps, endpoint=False):
        alpha = Isometry.from_matrix(1, 0, m_i * complex(math.cos(phi), math.sin(phi)), 1)
        report = classify(compose(alpha, beta))
        if report.kind == Kind.LOXODROMIC:
            best = max(best, math.cosh(report.translation_length / 2))
    return best


def successive_minima_bound(
    m1: float,
    m2: float,
    h: float,
    length: Optional[float] = None,
    phase_steps: int = 720,
) -> List[BoundReport]:
    """
    cosh(sys/2) ≤ 1 + m₁m₂/(2h²), once with m_i the plain norms and once with
    their squares.

    Args:
        m1, m2: Successive minima of Λ_∞ as plain lengths, h ≤ m1 ≤ m2.
        h: Height of B_∞.
        length: Observed systole; otherwise the left side is the largest
            cosh(ℓ/2) of α_i β over the phase of the parabolic α_i.
    """
    if not 0 < h <= m1 <= m2:
        raise DomainError(f"Need 0 < h ≤ m1 ≤ m2, got h={h}, m1={m1}, m2={m2}")
    reports = []
    for reading in READINGS:
        a, b = (m1, m2) if reading == "plain" else (m1 * m1, m2 * m2)
        rhs = 1 + a * b / (2 * h * h)
        if length is not None:
            lhs, witness = math.cosh(length / 2), {"source": "observed length", "length": length}
        else:
            lhs = _product_grid_max(a, b / (h * h), phase_steps)
            witness = {"source": "phase grid", "steps": phase_steps}
        witness["reading"] = reading
        reports.append(make_report(
            "cosh(sys/2) <= 1 + m1 m2/(2h^2)",
            "successive minima lemma",
            lhs, rhs, witness=witness, inputs={"m1": m1, "m2": m2, "h": h, "reading": reading},
        ))
    return reports


def dim_n_theorem(n: int, i_c: int = 1, lhs: Optional[float] = None, gamma_mode: str = "known") -> List[BoundReport]:
    """
    cosh(sys/2)/vol_△ ≤ (3/2)√n(n+1)/(n-1)!·(γ_{n-1}/√2)^{n-1}·i_C.

    The left side defaults to the Gieseking ratio (1+√13)/4 in dimension 3
    and to 0 above. A second report checks that the constant dominates √5/2
    in dimension 3.
    """
    if n < 3:
        raise DomainError(f"Dimension must be at least 3, got {n}")
    coefficient = systole_coefficient(n, i_c, gamma_mode)
    if lhs is None:
        lhs = SYSTOLE_RATIO if n == 3 else 0.0
    inputs = {
        "n": n,
        "iC": i_c,
        "gamma": coefficient.gamma,
        "gammaSource": coefficient.gamma_source,
        "normalized": coefficient.normalized,
    }
    reports = [make_report(
        "cosh(sys/2)/vol_simplicial <= c_n i_C",
        "systole theorem in dimension n",
        lhs, coefficient.value, inputs=inputs,
    )]
    if n == 3:
        reports.append(make_report(
            "sqrt5/2 <= c_3 i_C",
            "the general constant is weaker than the optimal one in dimension 3",
            math.sqrt(5) / 2, coefficient.value, inputs=inputs,
        ))
    return reports


def _unit_ball_volume(k: int) -> float:
    return math.pi ** (k / 2) / math.gamma(k / 2 + 1)


def rogers_bound_in_nu(n: int, flat_density: float) -> float:
    """ω_{n-1}/(2^{n-2}(n-1) d_{n-1} d_n(∞)) in units of ν_n."""
    numerator = d_inf_closed(n, numerator_only=True)
    return _unit_ball_volume(n - 1) / (2 ** (n - 2) * (n - 1) * flat_density * numerator)


def volume_ratio_bounds(n: int = 3, volume: Optional[float] = None, flat_density: Optional[float] = None) -> List[BoundReport]:
    """
    The simplex minorant 2ⁿ/(n(n+1)) and the ball-packing minorant, both in units of ν_n,
    against `volume` (also in units of ν_n; 1 for the Gieseking manifold when n = 3).

    Without a volume only the two minorants are compared with each other.
    """
    if n < 3:
        raise DomainError(f"Dimension must be at least 3, got {n}")
    if volume is None and n == 3:
        volume = 1.0
    if flat_density is None:
        if n != 3:
            raise DomainError("The flat packing density is only built in for n = 3")
        flat_density = THUE_DENSITY
    simplex = simplex_volume_lower_bound(n)
    packing = rogers_bound_in_nu(n, flat_density)
    inputs = {"n": n, "flatDensity": flat_density}
    if volume is None:
        return [make_report(
            "simplex minorant <= ball-packing minorant",
            "volume minorants in dimension n (units of nu_n)",
            simplex, packing, inputs=inputs,
        )]
    inputs["volume"] = volume
    return [
        make_report(
            "2^n/(n(n+1)) <= vol/nu_n",
            "simplex volume minorant",
            simplex, volume, inputs=inputs,
        ),
        make_report(
            "omega_{n-1}/(2^{n-2}(n-1) d_{n-1} d_n(inf)) <= vol/nu_n",
            "ball-packing volume minorant",
            packing, volume, inputs=inputs,
        ),
    ]

"""
Dimension-n constants: the Lobachevsky function and ν₃, the simplicial
horoball density d_n(∞) in product, closed and asymptotic form, Hermite
constant data and the systole coefficient.
"""
import logging
import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional

import mpmath

from .domain import CuspkitError, DomainError

logger = logging.getLogger(__name__)


class NuUnavailable(CuspkitError):
    """Raised when an absolute value needs ν_n for n > 3."""
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"ν_{n} is not available; only the ν_n-free numerator can be computed")


# (γ_k)^k for the dimensions where the Hermite constant is known.
KNOWN_HERMITE_POWERS: Dict[int, float] = {
    1: 1.0,
    2: 4 / 3,
    3: 2.0,
    4: 4.0,
    5: 8.0,
    6: 64 / 3,
    7: 64.0,
    8: 256.0,
    24: 4.0 ** 24,
}

HERMITE_UPPER_FACTOR = 1.744

# Beyond this dimension the closed-form numerator of d_n(∞) is no longer a normal double.
MAX_TABLE_DIM = 150


@dataclass(frozen=True)
class DensityTable:
    """d_n(∞) in its three forms; absolute values only where ν_n is known."""
    n: int
    d_inf_product: float  # numerator, ν_n left symbolic
    d_inf_closed: float  # numerator, ν_n left symbolic
    d_inf_asymptotic: float
    nu_n: Optional[float] = None


@dataclass(frozen=True)
class HermiteData:
    k: int
    lower_asymptotic: float
    upper_asymptotic: float
    known_value: Optional[float] = None


@dataclass(frozen=True)
class BoundParams:
    n: int
    i_c: int
    i_max_bound: float  # 2^{n-1}(n-1)!, inf past the double range

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("Dimension must be at least 3")
        if self.i_c < 1:
            raise ValueError("Cusp index must be a positive integer")


@dataclass(frozen=True)
class SystoleCoefficient:
    value: float
    normalized: float  # value · 5^{n-1}/i_C
    gamma: float
    gamma_source: str  # "known" or "asymptotic"


def lobachevsky(theta: float) -> float:
    """Л(θ) = ½ Cl₂(2θ), the Clausen function evaluated by mpmath."""
    return float(mpmath.clsin(2, 2 * theta)) / 2


@lru_cache(maxsize=None)
def nu3() -> float:
    """Volume of the regular ideal tetrahedron, 3Л(π/3)."""
    return 3 * lobachevsky(math.pi / 3)


def nu_asymptotic(n: int) -> float:
    """ν_n ≃ e√n/n!."""
    return _as_float(mpmath.e * mpmath.sqrt(n) / mpmath.factorial(n), "asymptotic ν_n", n)


def _check_dimension(n: int) -> None:
    if n < 3:
        raise ValueError(f"Dimension must be at least 3, got {n}")


def _as_float(value: mpmath.mpf, what: str, n: int) -> float:
    """
    Converts an mpmath value to a normal double.

    Raises:
        DomainError: if the value overflows or falls below the smallest normal double.
    """
    result = float(value)
    if math.isinf(result) or (value != 0 and abs(result) < sys.float_info.min):
        raise DomainError(f"{what} is not representable as a double for n={n}")
    return result


def d_inf_product(n: int, numerator_only: bool = False) -> float:
    """
    (n+1)/(n-1) · n/2^{n-1} · Π_{k=2}^{n-1} ((k-1)/(k+1))^{(n-k)/2} / ν_n.

    Args:
        n: Dimension.
        numerator_only: Leave ν_n symbolic (required for n > 3).

    Raises:
        NuUnavailable: for absolute values with n > 3.
    """
    _check_dimension(n)
    numerator = mpmath.mpf(n + 1) / (n - 1) * n / mpmath.power(2, n - 1) * mpmath.fprod(
        mpmath.power(mpmath.mpf(k - 1) / (k + 1), mpmath.mpf(n - k) / 2) for k in range(2, n)
    )
    return _absolute(n, _as_float(numerator, "d_n(∞) product numerator", n), numerator_only)


def d_inf_closed(n: int, numerator_only: bool = False) -> float:
    """(n+1)/(n-1) · √n/(n-1)! · 2^{-(n-1)/2} / ν_n."""
    _check_dimension(n)
    numerator = mpmath.mpf(n + 1) / (n - 1) * mpmath.sqrt(n) / mpmath.factorial(n - 1) * mpmath.power(2, mpmath.mpf(1 - n) / 2)
    return _absolute(n, _as_float(numerator, "d_n(∞) closed numerator", n), numerator_only)


def _absolute(n: int, numerator: float, numerator_only: bool) -> float:
    if numerator_only:
        return numerator
    if n != 3:
        raise NuUnavailable(n)
    return numerator / nu3()


def d_inf_asymptotic(n: int) -> float:
    """d_n(∞) ≃ n/(e 2^{(n-1)/2})."""
    _check_dimension(n)
    return _as_float(n / (mpmath.e * mpmath.power(2, mpmath.mpf(n - 1) / 2)), "asymptotic d_n(∞)", n)


def density_table(n: int) -> DensityTable:
    return DensityTable(
        n=n,
        d_inf_product=d_inf_product(n, numerator_only=True),
        d_inf_closed=d_inf_closed(n, numerator_only=True),
        d_inf_asymptotic=d_inf_asymptotic(n),
        nu_n=nu3() if n == 3 else None,
    )


def hermite_data(k: int) -> HermiteData:
    if k < 1:
        raise ValueError("Dimension must be positive")
    base = k / (2 * math.pi * math.e)
    known = KNOWN_HERMITE_POWERS.get(k)
    return HermiteData(
        k=k,
        lower_asymptotic=base,
        upper_asymptotic=HERMITE_UPPER_FACTOR * base,
        known_value=known ** (1 / k) if known is not None else None,
    )


def index_bound(n: int) -> float:
    """i_{n-1} ≤ 2^{n-1}(n-1)!, optimal for crystallographic groups."""
    _check_dimension(n)
    return _as_float(mpmath.power(2, n - 1) * mpmath.factorial(n - 1), "index bound", n)


def bound_params(n: int, i_c: int) -> BoundParams:
    _check_dimension(n)
    # inf once 2^{n-1}(n-1)! leaves the double range; the bound is then vacuous
    return BoundParams(n=n, i_c=i_c, i_max_bound=float(mpmath.power(2, n - 1) * mpmath.factorial(n - 1)))


def systole_coefficient(n: int, i_c: int = 1, gamma_mode: str = "known") -> SystoleCoefficient:
    """
    c = (3/2) · √n(n+1)/(n-1)! · (γ_{n-1}/√2)^{n-1} · i_C.

    Args:
        n: Dimension, at least 3.
        i_c: Index of the cusp translation lattice.
        gamma_mode: "known" uses the tabulated γ_{n-1} when available and the
            upper asymptotic otherwise; "asymptotic" always uses the upper asymptotic.
    """
    params = bound_params(n, i_c)
    if gamma_mode not in ("known", "asymptotic"):
        raise ValueError(f"Unknown gamma mode: {gamma_mode}")
    data = hermite_data(n - 1)
    if gamma_mode == "known" and data.known_value is not None:
        gamma, source = data.known_value, "known"
    else:
        gamma, source = data.upper_asymptotic, "asymptotic"

    value = 1.5 * mpmath.sqrt(n) * (n + 1) / mpmath.factorial(n - 1) * mpmath.power(gamma / mpmath.sqrt(2), n - 1) * params.i_c
    return SystoleCoefficient(
        value=_as_float(value, "c_n", n),
        normalized=_as_float(value * mpmath.power(5, n - 1) / params.i_c, "normalized c_n", n),
        gamma=gamma,
        gamma_source=source,
    )


def constants_table(max_dim: int) -> List[dict]:
    """Rows (n, closed-form numerator of d_n(∞), its asymptotic, c_n with i_C = 1) for 3 ≤ n ≤ max_dim."""
    if max_dim < 3:
        raise ValueError("max_dim must be at least 3")
    if max_dim > MAX_TABLE_DIM:
        raise DomainError(f"max_dim must be at most {MAX_TABLE_DIM}, got {max_dim}")
    rows = []
    for n in range(3, max_dim + 1):
        rows.append({
            "n": n,
            "dInfClosedNumerator": d_inf_closed(n, numerator_only=True),
            "dInfAsymptotic": d_inf_asymptotic(n),
            "cN": systole_coefficient(n, 1).value,
        })
    logger.debug("Built constants table up to n=%d", max_dim)
    return rows

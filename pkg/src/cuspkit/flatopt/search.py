"""
Vectorized random search over two-disk configurations, used to falsify the
objective bound and the Thue density bound.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from .objective import PackingConfig
from ..core.euclat import Klein, KleinGroup, Lattice2, Torus

logger = logging.getLogger(__name__)

_CHUNK = 50_000
_BOX = np.arange(-2, 3)


@dataclass(frozen=True)
class SearchResult:
    family: str
    samples: int
    seed: int
    max_objective: float
    max_density: float
    best: PackingConfig


def _torus_chunk(rng: np.random.Generator, size: int):
    # τ in the standard fundamental domain, so ⟨1, τ⟩ is reduced and the systole is 1
    re = rng.uniform(-0.5, 0.5, size)
    im = rng.uniform(np.sqrt(1 - re * re), 4.0)
    tau = re + 1j * im
    c2 = rng.uniform(0, 1, size) + rng.uniform(0, 1, size) * tau
    shifts = _BOX[None, :, None] + _BOX[None, None, :] * tau[:, None, None]
    d = np.min(np.abs(c2[:, None, None] + shifts), axis=(1, 2))
    h = np.minimum(1.0, d)
    return h, d, im, (tau, c2)


def _klein_chunk(rng: np.random.Generator, size: int):
    # ‖α‖ = 1, axis R; points with imaginary part in [0, b/2] and real part in [0, 2) cover the surface
    b = np.exp(rng.uniform(-1.5, 2.0, size))
    y1 = rng.uniform(0, 1, size) * b / 2
    x2 = rng.uniform(0, 2, size)
    y2 = rng.uniform(0, 1, size) * b / 2
    c1, c2 = 1j * y1, x2 + 1j * y2

    def radius(y):
        y_prime = b / 2 - y
        return 0.5 * np.minimum.reduce([np.sqrt(1 + 4 * y * y), np.sqrt(1 + 4 * y_prime * y_prime), np.full_like(b, 2.0), b])

    shifts = 2 * _BOX[None, :, None] + 1j * _BOX[None, None, :] * b[:, None, None]
    direct = np.abs(c2[:, None, None] + shifts - c1[:, None, None])
    reflected = np.abs(np.conj(c2)[:, None, None] + 1 + shifts - c1[:, None, None])
    d = np.minimum(direct.min(axis=(1, 2)), reflected.min(axis=(1, 2)))
    h = np.minimum.reduce([2 * radius(y1), 2 * radius(y2), d])
    return h, d, b, (b, c1, c2)


def random_search(family: str = "torus", samples: int = 20_000, seed: int = 0) -> SearchResult:
    """
    Samples configurations with h at its largest admissible value and records
    the largest objective and the largest two-disk density met.
    """
    if family not in ("torus", "klein"):
        raise ValueError(f"Unknown family: {family}")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    best_value, best_density, best = -math.inf, -math.inf, None
    remaining = samples
    while remaining > 0:
        size = min(_CHUNK, remaining)
        remaining -= size
        if family == "torus":
            h, d, area, data = _torus_chunk(rng, size)
        else:
            h, d, area, data = _klein_chunk(rng, size)
        values = h * np.sqrt(4 * h * h + d * d) / area
        best_density = max(best_density, float(np.max(2 * np.pi * (h / 2) ** 2 / area)))
        k = int(np.argmax(values))
        if values[k] > best_value:
            best_value = float(values[k])
            best = _rebuild(family, data, k, float(h[k]))

    logger.info("Random search over %d %s configurations: max objective %.9f", samples, family, best_value)
    return SearchResult(family, samples, seed, best_value, best_density, best)


def _rebuild(family: str, data, k: int, h: float) -> PackingConfig:
    if family == "torus":
        tau, c2 = data
        return PackingConfig(Torus(Lattice2(1 + 0j, complex(tau[k]))), 0j, complex(c2[k]), h)
    b, c1, c2 = data
    surface = Klein(KleinGroup(axis_direction=1 + 0j, alpha_shift=1.0, beta_shift=float(b[k])))
    return PackingConfig(surface, complex(c1[k]), complex(c2[k]), h)

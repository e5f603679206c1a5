"""
Multi-start derivative-free maximization of the two-disk objective over the
moduli of flat tori and Klein bottles.

The objective is invariant under scaling, so tori are normalized to ⟨1, τ⟩
and Klein bottles to ‖α‖ = 1. For fixed centers the objective increases with
h, which is therefore set to its largest admissible value.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from .objective import PackingConfig, objective
from ..context import resolve_threads
from ..core.euclat import (
    Klein,
    KleinGroup,
    Lattice2,
    Torus,
    gauss_reduce,
    injectivity_radius,
    is_hexagonal_packing,
    quotient_distance,
)

logger = logging.getLogger(__name__)

FAMILIES = ("torus", "klein")

# Shrinking initial simplices for the successive Nelder-Mead rounds
_SIMPLEX_STEPS = (0.3, 0.05, 0.005)
_LOG_RANGE = 3.0


@dataclass(frozen=True)
class RestartResult:
    index: int
    value: float
    params: Tuple[float, ...]


@dataclass(frozen=True)
class OptimizationResult:
    family: str
    value: float
    config: PackingConfig
    d_over_h: float
    hexagonal: bool
    restarts: int
    seed: int
    tau: Optional[complex] = None  # reduced modulus, torus family only


def _torus_config(x: np.ndarray) -> Optional[PackingConfig]:
    re, log_im, p, q = (float(v) for v in x)
    if abs(log_im) > _LOG_RANGE or abs(re) > 10:
        return None
    tau = complex(re, math.exp(log_im))
    surface = Torus(gauss_reduce(Lattice2(1 + 0j, tau)))
    c2 = (p % 1.0) + (q % 1.0) * tau
    systole = abs(surface.lattice.b1)
    d = quotient_distance(surface, 0j, c2)
    return PackingConfig(surface, 0j, c2, min(systole, d))


def _klein_config(x: np.ndarray) -> Optional[PackingConfig]:
    log_b, y1, x2, y2 = (float(v) for v in x)
    if abs(log_b) > _LOG_RANGE:
        return None
    surface = Klein(KleinGroup(axis_direction=1 + 0j, alpha_shift=1.0, beta_shift=math.exp(log_b)))
    c1, c2 = complex(0.0, y1), complex(x2, y2)
    h = min(2 * injectivity_radius(surface, c1), 2 * injectivity_radius(surface, c2), quotient_distance(surface, c1, c2))
    return PackingConfig(surface, c1, c2, h)


_BUILDERS: dict = {"torus": _torus_config, "klein": _klein_config}


def _negated(build: Callable[[np.ndarray], Optional[PackingConfig]]) -> Callable[[np.ndarray], float]:
    def f(x: np.ndarray) -> float:
        cfg = build(x)
        if cfg is None or cfg.h <= 0:
            return 0.0
        return -cfg.h * math.sqrt(4 * cfg.h ** 2 + cfg.d ** 2) / cfg.area
    return f


def _initial_point(family: str, rng: np.random.Generator) -> np.ndarray:
    if family == "torus":
        re = rng.uniform(-0.5, 0.5)
        log_im = math.log(rng.uniform(math.sqrt(1 - re * re), 3.0))
        return np.array([re, log_im, rng.uniform(0, 1), rng.uniform(0, 1)])
    log_b = rng.uniform(-1.0, 1.5)
    b = math.exp(log_b)
    return np.array([log_b, rng.uniform(0, b / 2), rng.uniform(0, 2), rng.uniform(0, b / 2)])


def _coordinate_polish(f: Callable[[np.ndarray], float], x: np.ndarray, step: float = 1e-3) -> np.ndarray:
    """Coordinate descent with halving steps, down to 1e-10."""
    best = f(x)
    while step > 1e-10:
        improved = False
        for i in range(len(x)):
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[i] += sign * step
                value = f(trial)
                if value < best:
                    x, best, improved = trial, value, True
        if not improved:
            step /= 2
    return x


def _run_restart(family: str, index: int, seed_seq: np.random.SeedSequence) -> RestartResult:
    rng = np.random.default_rng(seed_seq)
    f = _negated(_BUILDERS[family])
    x = _initial_point(family, rng)
    for step in _SIMPLEX_STEPS:
        simplex = np.vstack([x] + [x + step * np.eye(len(x))[i] for i in range(len(x))])
        result = minimize(
            f, x, method="Nelder-Mead",
            options={"initial_simplex": simplex, "xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000},
        )
        if result.fun <= f(x):
            x = result.x
    x = _coordinate_polish(f, x)
    return RestartResult(index=index, value=-f(x), params=tuple(float(v) for v in x))


def optimize(family: str = "torus", restarts: int = 64, seed: int = 0, threads: Optional[int] = None) -> OptimizationResult:
    """
    Best two-disk configuration found over `restarts` independent local searches.

    Each restart draws its start from its own stream of SeedSequence(seed), so
    the result does not depend on the number of worker processes. Ties are
    broken by restart index.
    """
    if family not in FAMILIES:
        raise ValueError(f"Unknown family: {family}")
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    streams = np.random.SeedSequence(seed).spawn(restarts)
    workers = resolve_threads(threads)
    arguments = (repeat(family), range(restarts), streams)
    if workers == 1:
        results: List[RestartResult] = list(map(_run_restart, *arguments))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_restart, *arguments))
    best = min(results, key=lambda r: (-r.value, r.index))
    logger.info("%s family: best objective %.12f at restart %d of %d", family, best.value, best.index, restarts)

    cfg = _BUILDERS[family](np.array(best.params))
    tau = None
    if family == "torus":
        lattice = cfg.surface.lattice
        tau = lattice.b2 / lattice.b1
        if tau.imag < 0:
            tau = tau.conjugate()
    value = objective(cfg).value
    return OptimizationResult(
        family=family,
        value=value,
        config=cfg,
        d_over_h=cfg.d / cfg.h,
        hexagonal=is_hexagonal_packing(cfg.surface, cfg.c1, cfg.c2),
        restarts=restarts,
        seed=seed,
        tau=tau,
    )

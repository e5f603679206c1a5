import math

import pytest

from cuspkit.core.euclat import Klein, KleinGroup, Lattice2, Torus
from cuspkit.flatopt.objective import (
    OBJECTIVE_BOUND,
    THUE_DENSITY,
    InvalidConfig,
    PackingConfig,
    check,
    density,
    hexagonal_config,
    objective,
)
from cuspkit.flatopt.optimizer import optimize
from cuspkit.flatopt.search import random_search
from cuspkit.flatopt.surgery import BandIntersectsCriticalSet, surgery_expansion_check, surgery_slope_survey


def _rectangle(a: float, b: float, c2: complex, h: float) -> PackingConfig:
    return PackingConfig(Torus(Lattice2(complex(a), complex(0.0, b))), 0j, c2, h)


# Objective

def test_hexagonal_configuration_attains_bound():
    """Test that the hexagonal torus reaches √5/√3 and the Thue density."""
    cfg = hexagonal_config()
    value = objective(cfg)
    assert value.value == pytest.approx(OBJECTIVE_BOUND, abs=1e-12)
    assert value.d == pytest.approx(1.0)
    assert value.area == pytest.approx(math.sqrt(3))
    assert density(cfg) == pytest.approx(THUE_DENSITY, abs=1e-12)


def test_invalid_configuration_rejected():
    """Test that oversized disks raise InvalidConfig."""
    cfg = hexagonal_config()
    too_big = PackingConfig(cfg.surface, cfg.c1, cfg.c2, 1.05)
    assert not check(too_big).valid
    with pytest.raises(InvalidConfig):
        objective(too_big)
    with pytest.raises(ValueError):
        PackingConfig(cfg.surface, cfg.c1, cfg.c2, -0.1)


def test_square_configuration_below_bound():
    """Test a valid square arrangement on a Klein bottle and on a torus."""
    torus = _rectangle(2.0, 1.0, 1 + 0j, 1.0)
    assert objective(torus).value == pytest.approx(math.sqrt(5) / 2)
    assert objective(torus).value < OBJECTIVE_BOUND

    klein = PackingConfig(Klein(KleinGroup(1 + 0j, 1.0, 2.0)), 0j, 1j, 1.0)
    assert check(klein).valid
    assert objective(klein).value <= OBJECTIVE_BOUND


# Optimizer

def test_optimize_torus_stays_below_bound():
    """Test that a short optimization run returns a valid configuration under the bound."""
    result = optimize("torus", restarts=2, seed=0, threads=2)
    assert 0 < result.value <= OBJECTIVE_BOUND + 1e-9
    assert check(result.config).valid
    assert result.d_over_h >= 1 - 1e-9
    assert result.tau is not None and result.tau.imag > 0
    assert result.restarts == 2


def test_optimize_is_worker_count_independent():
    """Test that restarts seeded from one SeedSequence ignore the worker count."""
    single = optimize("torus", restarts=2, seed=7, threads=1)
    several = optimize("torus", restarts=2, seed=7, threads=2)
    assert single.value == several.value


def test_optimize_klein():
    """Test one Klein bottle restart."""
    result = optimize("klein", restarts=1, seed=3, threads=1)
    assert 0 < result.value <= OBJECTIVE_BOUND + 1e-9
    assert result.tau is None


@pytest.mark.parametrize("family, seed", [("torus", 0), ("torus", 11), ("klein", 0), ("klein", 5)])
def test_optima_above_threshold_have_touching_disks(family, seed):
    """Test that an optimum above 1.2 has d/h within 1e-3 of 1."""
    result = optimize(family, restarts=3, seed=seed, threads=1)
    if result.value > 1.2:
        assert 1 - 1e-3 <= result.d_over_h <= 1 + 1e-3
    else:
        assert result.d_over_h >= 1 - 1e-9


def test_optimize_rejects_bad_arguments():
    """Test unknown families and empty restart counts."""
    with pytest.raises(ValueError):
        optimize("sphere")
    with pytest.raises(ValueError):
        optimize("torus", restarts=0)


# Random search

def test_random_search_torus():
    """Test that random tori respect both bounds and that the best sample rebuilds."""
    result = random_search("torus", samples=2000, seed=1)
    assert result.max_objective <= OBJECTIVE_BOUND + 1e-9
    assert result.max_density <= THUE_DENSITY + 1e-9
    assert objective(result.best).value == pytest.approx(result.max_objective, rel=1e-9)


def test_random_search_klein():
    """Test that random Klein bottles respect both bounds."""
    result = random_search("klein", samples=2000, seed=2)
    assert result.max_objective <= OBJECTIVE_BOUND + 1e-9
    assert result.max_density <= THUE_DENSITY + 1e-9
    assert isinstance(result.best.surface, Klein)


def test_random_search_is_reproducible():
    """Test that one seed gives one result."""
    assert random_search("torus", samples=500, seed=4) == random_search("torus", samples=500, seed=4)
    with pytest.raises(ValueError):
        random_search("torus", samples=0)
    with pytest.raises(ValueError):
        random_search("cylinder")


# Band surgery

def test_surgery_expansion():
    """Test the first-order expansion 1 + ε/b - vε/(4h²+d²) with a bounded remainder."""
    cfg = _rectangle(2.0, 2.0, 0.8 + 0.6j, 0.5)
    report = surgery_expansion_check(cfg, [1e-3, 1e-2])
    assert report.u == pytest.approx(0.8) and report.v == pytest.approx(0.6)
    assert report.slope_predicted == pytest.approx(0.2)
    assert report.slope_central == pytest.approx(0.2, abs=1e-5)
    assert report.slope_forward == pytest.approx(0.2, abs=1e-3)
    assert report.max_remainder < 1.0


def test_surgery_parallel_band():
    """Test that a displacement along the band changes only the volume."""
    cfg = _rectangle(3.0, 2.0, 1 + 0j, 0.5)
    report = surgery_expansion_check(cfg, [0.1])
    assert report.v == pytest.approx(0.0)
    assert report.slope_predicted == pytest.approx(0.5)
    assert report.slope_central == pytest.approx(2.0 / (4.0 - 0.01))


def test_surgery_rejections():
    """Test touching disks, wide bands and non-rectangular surfaces."""
    with pytest.raises(BandIntersectsCriticalSet):
        surgery_expansion_check(_rectangle(2.0, 2.0, 0.3 + 0j, 0.5), [1e-3])
    with pytest.raises(BandIntersectsCriticalSet):
        surgery_expansion_check(_rectangle(2.0, 2.0, 0.8 + 0.6j, 0.5), [0.7])
    with pytest.raises(ValueError):
        surgery_expansion_check(_rectangle(2.0, 2.0, 0.8 + 0.6j, 0.5), [])
    with pytest.raises(ValueError):
        surgery_expansion_check(hexagonal_config(), [1e-3])
    klein = PackingConfig(Klein(KleinGroup(1 + 0j, 1.0, 2.0)), 0j, 1j, 1.0)
    with pytest.raises(ValueError):
        surgery_expansion_check(klein, [1e-3])


def test_surgery_slope_survey():
    """Test that central slopes match the predicted slope on random rectangles."""
    survey = surgery_slope_survey(count=10, seed=0)
    assert survey.count == 10
    assert 0 <= survey.max_relative_error <= 1e-4
    assert survey.worst is not None
    with pytest.raises(ValueError):
        surgery_slope_survey(count=0)

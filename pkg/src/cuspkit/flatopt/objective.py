"""
Two-disk packings of a closed flat surface and the quantity h√(4h²+d²)/vol.
"""
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from ..context import get_tolerance
from ..core.domain import CuspkitError
from ..core.euclat import DiskCheck, FlatSurface, Lattice2, Torus, quotient_distance, two_disk_config_valid

OBJECTIVE_BOUND = math.sqrt(5) / math.sqrt(3)
THUE_DENSITY = math.pi / math.sqrt(12)


class InvalidConfig(CuspkitError):
    """Raised when the two disks do not embed or overlap."""
    pass


@dataclass(frozen=True)
class PackingConfig:
    """Two disks of diameter h centered at c1 and c2 on a flat torus or Klein bottle."""
    surface: FlatSurface
    c1: complex
    c2: complex
    h: float

    def __post_init__(self):
        if self.h < 0:
            raise ValueError("Disk diameter must be nonnegative")

    @cached_property
    def d(self) -> float:
        """Distance between the two centers on the surface."""
        return quotient_distance(self.surface, self.c1, self.c2)

    @property
    def area(self) -> float:
        return self.surface.area


@dataclass(frozen=True)
class ObjectiveValue:
    value: float
    h: float
    d: float
    area: float


def check(cfg: PackingConfig, atol: Optional[float] = None) -> DiskCheck:
    atol = get_tolerance().atol if atol is None else atol
    return two_disk_config_valid(cfg.surface, cfg.c1, cfg.c2, cfg.h, atol=atol)


def objective(cfg: PackingConfig, atol: Optional[float] = None) -> ObjectiveValue:
    """
    h√(4h² + d²)/vol(N) of a valid configuration.

    Raises:
        InvalidConfig: if a disk does not embed or the disks overlap.
    """
    result = check(cfg, atol)
    if not result.valid:
        raise InvalidConfig(
            f"Disks of diameter {cfg.h} do not fit: center distance {result.center_distance}, "
            f"injectivity radii {result.injectivity_radii}"
        )
    value = cfg.h * math.sqrt(4 * cfg.h ** 2 + cfg.d ** 2) / cfg.area
    return ObjectiveValue(value=value, h=cfg.h, d=cfg.d, area=cfg.area)


def density(cfg: PackingConfig) -> float:
    """Area fraction 2π(h/2)²/vol(N) covered by the two disks."""
    return 2 * math.pi * (cfg.h / 2) ** 2 / cfg.area


def hexagonal_config() -> PackingConfig:
    """C/⟨2, ω⟩ with disks of diameter 1 at 0 and 1: its lifts form the hexagonal packing."""
    omega = complex(0.5, math.sqrt(3) / 2)
    return PackingConfig(Torus(Lattice2(2 + 0j, omega)), 0j, 1 + 0j, 1.0)

import json
import os
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

import yaml

from ..core.densities import MAX_TABLE_DIM
from ..core.euclat import Klein, KleinGroup, Lattice2, Torus
from ..core.reports import FORMATS
from ..flatopt.objective import PackingConfig


@dataclass
class RunConfig:
    """Settings of a CLI run."""
    depth: int = 10  # word length for the spectrum search
    restarts: int = 64  # optimizer restarts
    seed: int = 0
    max_dim: int = 12  # largest dimension in the constants table
    tolerance: float = 1e-9
    min_diameter: float = 1e-3  # horoball enumeration cutoff
    samples: int = 20000  # random search size
    output_format: str = "json"
    output: Optional[str] = None  # stdout when unset
    threads: Optional[int] = None  # CUSPKIT_THREADS or min(4, cpu count) when unset

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.output_format not in FORMATS:
            raise ValueError(f"Unsupported output format: {self.output_format}")
        for name in ("depth", "restarts", "max_dim", "samples"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_dim > MAX_TABLE_DIM:
            raise ValueError(f"max_dim must be at most {MAX_TABLE_DIM}")
        if not 0 < self.min_diameter <= 1:
            raise ValueError("min_diameter must lie in (0, 1]")

    def merged(self, overrides: Dict[str, Any]) -> "RunConfig":
        """A copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _read(path: str) -> Any:
    if not os.path.exists(path):
        raise FileNotFoundError(f"Configuration file not found: {path}")

    _, ext = os.path.splitext(path)

    with open(path, "r", encoding="utf-8") as f:
        if ext.lower() in [".yaml", ".yml"]:
            return yaml.safe_load(f)
        elif ext.lower() == ".json":
            return json.load(f)
        else:
            raise ValueError(f"Unsupported configuration format: {ext}")


def _complex(value: Any, name: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ValueError(f"{name} must be a number or an [re, im] pair, got {value!r}")


class ConfigLoader:
    """
    Loads run settings and packing configurations from YAML or JSON files.
    """

    @staticmethod
    def load(path: str) -> RunConfig:
        """
        Loads a RunConfig.

        Args:
            path: Path to a .yaml, .yml or .json file holding a mapping of RunConfig fields.

        Returns:
            The RunConfig, with defaults for absent keys.
        """
        data = _read(path) or {}
        return ConfigLoader._parse_run(data)

    @staticmethod
    def _parse_run(data: Dict[str, Any]) -> RunConfig:
        if not isinstance(data, dict):
            raise ValueError("Run configuration must be a mapping")
        known = {f.name for f in fields(RunConfig)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {', '.join(unknown)}")
        return RunConfig(**data)

    @staticmethod
    def load_packing(path: str) -> PackingConfig:
        """
        Loads a two-disk configuration for `flatpack check`.

        The mapping holds `family` (torus or klein), then `lattice: [b1, b2]` for a
        torus or `klein: {axis, alpha_shift, beta_shift, origin}` for a Klein bottle,
        and `c1`, `c2`, `h`. Complex numbers are [re, im] pairs.
        """
        data = _read(path)
        return ConfigLoader._parse_packing(data)

    @staticmethod
    def _parse_packing(data: Dict[str, Any]) -> PackingConfig:
        if not isinstance(data, dict):
            raise ValueError("Packing configuration must be a mapping")
        family = data.get("family", "torus")
        try:
            if family == "torus":
                b1, b2 = data["lattice"]
                surface = Torus(Lattice2(_complex(b1, "lattice"), _complex(b2, "lattice")))
            elif family == "klein":
                k = data["klein"]
                surface = Klein(KleinGroup(
                    axis_direction=_complex(k.get("axis", 1), "axis"),
                    alpha_shift=float(k["alpha_shift"]),
                    beta_shift=float(k["beta_shift"]),
                    origin=_complex(k.get("origin", 0), "origin"),
                ))
            else:
                raise ValueError(f"Unknown family: {family}")
            return PackingConfig(
                surface=surface,
                c1=_complex(data.get("c1", 0), "c1"),
                c2=_complex(data["c2"], "c2"),
                h=float(data["h"]),
            )
        except KeyError as e:
            raise ValueError(f"Missing packing field: {e.args[0]}")

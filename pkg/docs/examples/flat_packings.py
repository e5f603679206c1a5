"""
Flat Packings Example

Optimizes two-disk packings of tori and Klein bottles, runs a seeded random
search, and checks the band-surgery expansion on a rectangular torus.
"""

from cuspkit.config import ConfigLoader
from cuspkit.core import Lattice2, Torus
from cuspkit.flatopt import PackingConfig, objective, optimize, random_search
from cuspkit.flatopt.surgery import surgery_expansion_check


def main():
    # 1. The extremal configuration from a file
    hexagonal = ConfigLoader.load_packing("docs/examples/hexagonal_packing.yaml")
    print(f"hexagonal objective: {objective(hexagonal).value:.12f}")

    # 2. Multi-start optimization
    for family in ("torus", "klein"):
        result = optimize(family, restarts=8, seed=0)
        print(f"{family}: best {result.value:.9f}, d/h = {result.d_over_h:.6f}, hexagonal = {result.hexagonal}")

    # 3. Random search
    search = random_search("klein", samples=20_000, seed=1)
    print(f"klein search: max objective {search.max_objective:.6f}, max density {search.max_density:.6f}")

    # 4. Removing a thin strip from a rectangular torus
    cfg = PackingConfig(Torus(Lattice2(2 + 0j, 2j)), 0j, 0.8 + 0.6j, 0.5)
    report = surgery_expansion_check(cfg, [1e-3, 1e-2])
    print(f"surgery slope: predicted {report.slope_predicted:.6f}, central {report.slope_central:.6f}")


if __name__ == "__main__":
    main()

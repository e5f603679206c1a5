"""
Command-line front end.

Exit codes: 0 when every report verified, 1 when a report or construction
check failed, 2 on bad flags or inputs, 3 when a resource limit was hit.
"""
import argparse
import logging
import sys
from functools import partial
from typing import Any, Dict, Optional, Sequence

from .bounds.dim3 import DomainError, loxodromic_case_bound, parabolic_negative_case, parabolic_positive_case
from .bounds.dimn import dim_n_theorem, successive_minima_bound, volume_ratio_bounds
from .bounds.inradius import flat_surface_bound, random_search_bound
from .bounds.suite import CertificateSuite, certificate_suite
from .config.loader import ConfigLoader, RunConfig
from .context import tolerance_context
from .core.densities import constants_table
from .core.domain import CuspkitError
from .core.engine import CertificateEngine
from .core.limits import ResourceLimit
from .core.reports import FORMATS, BoundReport, LoggingSink, render, render_reports
from .flatopt.optimizer import FAMILIES, optimize
from .flatopt.search import random_search
from .gieseking.group import length_spectrum

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the verb from being reset by the verb parser
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=FORMATS, default=argparse.SUPPRESS, help="Report format (default: json)")
    common.add_argument("--json", dest="output_format", action="store_const", const="json", default=argparse.SUPPRESS, help="Shorthand for --format json")
    common.add_argument("--output", default=argparse.SUPPRESS, help="Write the report to this file instead of stdout")
    common.add_argument("--config", default=argparse.SUPPRESS, help="YAML or JSON run configuration")
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS, help="Verification and classification tolerance")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="Worker processes (default: CUSPKIT_THREADS or min(4, cpus))")
    common.add_argument("--log-level", default=argparse.SUPPRESS, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="cuspkit", description="Certified computations for cusped hyperbolic manifolds.", parents=[common])
    verbs = parser.add_subparsers(dest="verb", required=True)

    constants = verbs.add_parser("constants", help="Table of d_n(inf) and c_n", parents=[common])
    constants.add_argument("--max-dim", dest="max_dim", type=int, default=None)

    gieseking = verbs.add_parser("gieseking", help="Certificates for the Gieseking manifold")
    gieseking_verbs = gieseking.add_subparsers(dest="action", required=True)
    for action in ("systole", "spectrum", "inradius"):
        p = gieseking_verbs.add_parser(action, parents=[common])
        p.add_argument("--depth", type=int, default=None, help="Largest word length")
    cusp = gieseking_verbs.add_parser("cusp", parents=[common])
    cusp.add_argument("--min-diameter", dest="min_diameter", type=float, default=None)
    gieseking_verbs.add_parser("polyhedra", parents=[common])

    flatpack = verbs.add_parser("flatpack", help="Two-disk packings of flat surfaces")
    flat_verbs = flatpack.add_subparsers(dest="action", required=True)
    opt = flat_verbs.add_parser("optimize", parents=[common])
    opt.add_argument("--family", choices=FAMILIES, default="torus")
    opt.add_argument("--restarts", type=int, default=None)
    opt.add_argument("--seed", type=int, default=None)
    check = flat_verbs.add_parser("check", parents=[common])
    check.add_argument("packing", help="YAML or JSON packing configuration")
    search = flat_verbs.add_parser("search", parents=[common])
    search.add_argument("--family", choices=FAMILIES, default="torus")
    search.add_argument("--samples", type=int, default=None)
    search.add_argument("--seed", type=int, default=None)

    bounds = verbs.add_parser("bounds", help="Evaluate the bounds of the case analysis")
    bound_verbs = bounds.add_subparsers(dest="action", required=True)
    dim3 = bound_verbs.add_parser("dim3", parents=[common])
    dim3.add_argument("--case", required=True, choices=["loxodromic", "para-pos", "para-neg"])
    dim3.add_argument("--h", type=float, default=None, help="Height of B_inf")
    dim3.add_argument("--b", type=float, default=None, help="|gamma(inf)| (loxodromic case)")
    dim3.add_argument("--covol", type=float, default=None, help="covol of the cusp group (loxodromic case)")
    dim3.add_argument("--length", type=float, default=None, help="Observed translation length (loxodromic case)")
    dim3.add_argument("--grid", type=int, default=10_001, help="Grid size over [1/2, 1] (para-neg case)")
    dimn = bound_verbs.add_parser("dimn", parents=[common])
    dimn.add_argument("--n", type=int, required=True)
    dimn.add_argument("--ic", type=int, default=1)
    dimn.add_argument("--gamma", choices=["known", "asymptotic"], default="known")
    dimn.add_argument("--lhs", type=float, default=None, help="cosh(sys/2)/vol_simplicial of a manifold")
    minima = bound_verbs.add_parser("minima", parents=[common])
    minima.add_argument("--m1", type=float, required=True)
    minima.add_argument("--m2", type=float, required=True)
    minima.add_argument("--h", type=float, required=True)
    minima.add_argument("--length", type=float, default=None)

    verify = verbs.add_parser("verify", help="Run the certificate registry", parents=[common])
    verify.add_argument("target", choices=["all"])
    verify.add_argument("--quick", action="store_true", help="Reduced sizes")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    path = getattr(args, "config", None)
    config = ConfigLoader.load(path) if path else RunConfig()
    names = ("output_format", "output", "tolerance", "threads", "depth", "restarts", "seed", "samples", "max_dim", "min_diameter")
    overrides: Dict[str, Any] = {name: getattr(args, name, None) for name in names}
    return config.merged(overrides)


def _suite(config: RunConfig) -> CertificateSuite:
    return CertificateSuite(
        depth=config.depth,
        restarts=config.restarts,
        seed=config.seed,
        samples=config.samples,
        min_diameter=config.min_diameter,
        threads=config.threads,
    )


def _gieseking(args: argparse.Namespace, config: RunConfig, engine: CertificateEngine):
    if args.action == "spectrum":
        entries = length_spectrum(config.depth, threads=config.threads)
        return [{"length": e.length, "orientation": e.orientation, "word": str(e.witness)} for e in entries]
    suite = _suite(config)
    certificates = {
        "systole": [("gieseking.systole", suite.gieseking_systole)],
        "cusp": [("gieseking.cusp", suite.gieseking_cusp)],
        "inradius": [("gieseking.inradius", suite.gieseking_inradius)],
        "polyhedra": [("gieseking.polyhedra", suite.gieseking_polyhedra), ("gieseking.normal-forms", suite.normal_forms)],
    }
    return engine.run(certificates[args.action])


def _flatpack(args: argparse.Namespace, config: RunConfig, engine: CertificateEngine):
    if args.action == "optimize":
        result = optimize(args.family, restarts=config.restarts, seed=config.seed, threads=config.threads)
        cfg = result.config
        return [{
            "family": result.family,
            "value": result.value,
            "dOverH": result.d_over_h,
            "hexagonal": result.hexagonal,
            "tau": result.tau,
            "h": cfg.h,
            "c1": cfg.c1,
            "c2": cfg.c2,
            "area": cfg.area,
            "restarts": result.restarts,
            "seed": result.seed,
        }]
    if args.action == "check":
        cfg = ConfigLoader.load_packing(args.packing)
        return engine.run([("flatpack.check", partial(flat_surface_bound, cfg))])
    def certificate():
        return random_search_bound(random_search(args.family, samples=config.samples, seed=config.seed))
    return engine.run([("flatpack.search", certificate)])


def _bounds(args: argparse.Namespace, config: RunConfig, engine: CertificateEngine):
    if args.action == "dimn":
        def certificate():
            reports = dim_n_theorem(args.n, args.ic, lhs=args.lhs, gamma_mode=args.gamma)
            if args.n == 3:
                reports += volume_ratio_bounds(3)
            return reports
        return engine.run([("bounds.dimn", certificate)])
    if args.action == "minima":
        return engine.run([("bounds.minima", partial(successive_minima_bound, args.m1, args.m2, args.h, length=args.length))])

    if args.case == "loxodromic":
        if args.h is None or args.b is None:
            raise DomainError("The loxodromic case needs --h and --b")
        certificate = partial(loxodromic_case_bound, args.h, args.b, covol=args.covol, length=args.length)
    elif args.case == "para-pos":
        if args.h is None:
            raise DomainError("The parabolic positive case needs --h")
        certificate = partial(parabolic_positive_case, args.h)
    else:
        certificate = partial(parabolic_negative_case, args.h, grid=args.grid)
    return engine.run([(f"bounds.dim3.{args.case}", certificate)])


def _dispatch(args: argparse.Namespace, config: RunConfig, engine: CertificateEngine):
    if args.verb == "constants":
        return constants_table(config.max_dim)
    if args.verb == "gieseking":
        return _gieseking(args, config, engine)
    if args.verb == "flatpack":
        return _flatpack(args, config, engine)
    if args.verb == "bounds":
        return _bounds(args, config, engine)
    return engine.run(certificate_suite(config, quick=args.quick))


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, getattr(args, "log_level", "WARNING")),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        config = _run_config(args)
    except (ValueError, FileNotFoundError) as e:
        logger.error("Invalid configuration: %s", e)
        return EXIT_USAGE

    engine = CertificateEngine(sinks=[LoggingSink()])
    try:
        with tolerance_context(atol=config.tolerance):
            result = _dispatch(args, config, engine)
    except ResourceLimit as e:
        logger.error("%s", e)
        return EXIT_LIMIT
    except (DomainError, ValueError, FileNotFoundError) as e:
        logger.error("Invalid input: %s", e)
        return EXIT_USAGE
    except CuspkitError as e:
        logger.error("Check failed: %s", e)
        return EXIT_FAILED

    if result and isinstance(result[0], BoundReport):
        _write(render_reports(result, config.output_format), config.output)
        return EXIT_OK if CertificateEngine.all_verified(result) else EXIT_FAILED
    _write(render(result, config.output_format), config.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line entry point: remez-lab {lift|norm|project|decompose|reduce|certify|bh|sweep}.

Exit codes: 0 when every checked assertion holds, 1 when violations were
found, 2 for usage and input errors.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from remez_lab import __version__
from remez_lab.config import configure_logging
from remez_lab.data.poly_io import instance_digest, load_poly, to_document
from remez_lab.exceptions import ConfigurationError, PolyFormatError, RemezLabError
from remez_lab.experiments.config import build_config, load_config
from remez_lab.experiments.reports import write_csv, write_report
from remez_lab.experiments.suites import run_suite
from remez_lab.measures.moment_lift import build_moment_system, lift_measure
from remez_lab.multipliers.certificate import certified_constant, instance_certificate, projection_bound
from remez_lab.multipliers.inseparable import bounded_projection, inseparable_decompose, vandermonde_recover
from remez_lab.multipliers.pseudoprojection import pseudoproject_iter
from remez_lab.multipliers.reduction import reduce_at_maximizer
from remez_lab.norms.norm_oracle import bh_norm, coeff_l1, grid_sup_norm, torus_sup_lower

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2

LIFT_MOMENT_TOL = 1e-10
LIFT_MASS_TOL = 1e-12
LIFT_NONNEG_ATOL = 1e-15


def _complex(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
        logger.info("Saved %s", path)
    else:
        print(text)


def _poly_payload(f) -> dict:
    return to_document(f).model_dump()


def cmd_lift(args: argparse.Namespace) -> int:
    sys_k = build_moment_system(args.K)
    measure = lift_measure(sys_k, complex(args.z_re, args.z_im))
    payload = {
        "K": args.K,
        "z": _complex(measure.z),
        "eps_star": sys_k.eps_star,
        "probs": measure.probs.tolist(),
        "min_probability": measure.min_probability(),
        "mass_residual": measure.total_mass_residual(),
        "moment_residual": measure.moment_residual(),
    }
    _emit(payload, args.out)
    ok = (
        measure.min_probability() >= -LIFT_NONNEG_ATOL
        and measure.total_mass_residual() <= LIFT_MASS_TOL
        and measure.moment_residual() <= LIFT_MOMENT_TOL
    )
    return EXIT_OK if ok else EXIT_VIOLATIONS


def cmd_norm(args: argparse.Namespace) -> int:
    f = load_poly(args.input)
    M = args.grid or f.K
    payload = {"digest": instance_digest(f), "grid_order": M, "grid_norm": grid_sup_norm(f, M), "coeff_l1": coeff_l1(f)}
    ok = True
    if args.torus:
        report = torus_sup_lower(
            f, restarts=args.restarts, samples_per_axis=args.samples, tol=args.tol, seed=args.seed, grid_order=args.grid
        )
        payload["torus"] = report.to_dict()
        ok = report.torus_lower <= report.torus_upper * (1 + 1e-12)
    _emit(payload, args.out)
    return EXIT_OK if ok else EXIT_VIOLATIONS


def _read_index_set(path: str) -> List[List[int]]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise PolyFormatError(f"Failed to load index set {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise PolyFormatError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(data, list):
        raise PolyFormatError(f"{path}: expected a JSON list of multi-indices")
    return data


def cmd_project(args: argparse.Namespace) -> int:
    f = load_poly(args.input)
    if args.S:
        S = _read_index_set(args.S)
        result = bounded_projection(f, S)
        payload = {"operation": "bounded_projection", "part": _poly_payload(result)}
        if f.K >= 3 and not result.is_zero:
            payload["class_bound"] = projection_bound(f, S)
    else:
        result = pseudoproject_iter(f, args.iterate)
        payload = {"operation": "pseudoproject", "iterate": args.iterate, "part": _poly_payload(result)}
    payload["norm_f"] = grid_sup_norm(f, f.K)
    payload["norm_part"] = grid_sup_norm(result, f.K)
    ok = "class_bound" not in payload or payload["norm_part"] <= payload["class_bound"] * payload["norm_f"] * (1 + 1e-9)
    _emit(payload, args.out)
    return EXIT_OK if ok else EXIT_VIOLATIONS


def cmd_decompose(args: argparse.Namespace) -> int:
    f = load_poly(args.input)
    classes = inseparable_decompose(f)
    payload = {
        "digest": instance_digest(f),
        "classes": [
            {
                "support_size": cls.support_size,
                "tau": cls.tau.to_dict(),
                "tau_value": _complex(cls.tau_value),
                "zeta": _complex(cls.zeta),
                "members": [list(alpha) for alpha in cls.members],
                "sigma_hat": {str(k): v for k, v in cls.sigma_hat.items()},
                "part": _poly_payload(cls.part),
            }
            for cls in classes
        ],
    }
    ok = True
    if args.recover and not f.is_zero:
        top = [cls for cls in classes if cls.support_size == f.max_support_size]
        recovered = vandermonde_recover(f, extended=args.extended)
        gap = 0.0
        for cls, part in zip(top, recovered):
            keys = set(cls.part) | set(part)
            gap = max(gap, max(abs(cls.part.coefficient(a) - part.coefficient(a)) for a in keys))
        payload["recovery_gap"] = gap
        ok = gap <= 1e-8 * max(1.0, max(abs(c) for c in f.coeffs))
    _emit(payload, args.out)
    return EXIT_OK if ok else EXIT_VIOLATIONS


def cmd_reduce(args: argparse.Namespace) -> int:
    f = load_poly(args.input)
    reduction = reduce_at_maximizer(f)
    payload = reduction.to_dict()
    payload["g"] = _poly_payload(reduction.g)
    payload["norm_g_k"] = grid_sup_norm(reduction.g, f.K)
    payload["norm_f_k"] = grid_sup_norm(f, f.K)
    scale = max(1.0, reduction.norm_2k)
    ok = (
        abs(payload["g_at_sqrt_omega"] - reduction.norm_2k) <= 1e-10 * scale
        and payload["norm_g_k"] <= payload["norm_f_k"] + 1e-10 * scale
    )
    _emit(payload, args.out)
    return EXIT_OK if ok else EXIT_VIOLATIONS


def cmd_certify(args: argparse.Namespace) -> int:
    if args.input:
        certificate = instance_certificate(load_poly(args.input), args.precision)
    else:
        certificate = certified_constant(args.d, args.K, args.precision)
    _emit(certificate.to_dict(), args.out)
    return EXIT_OK if certificate.sound else EXIT_VIOLATIONS


def cmd_bh(args: argparse.Namespace) -> int:
    f = load_poly(args.input)
    d = args.d if args.d is not None else f.degree
    payload = {"d": d, "p": 2.0 * d / (d + 1), "bh_norm": bh_norm(f, d)}
    if args.torus:
        report = torus_sup_lower(f, seed=args.seed)
        payload["torus_lower"] = report.torus_lower
        payload["bh_ratio"] = payload["bh_norm"] / report.torus_lower if report.torus_lower else 0.0
    _emit(payload, args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    overrides = {"suite": args.suite, "seed": args.seed, "trials": args.trials, "workers": args.workers}
    if args.config:
        config = load_config(args.config, **overrides)
    elif args.suite:
        config = build_config({k: v for k, v in overrides.items() if v is not None}, source="command line")
    else:
        raise ConfigurationError("sweep needs --config or --suite")

    report = run_suite(config, progress=not args.no_progress)
    out = args.out or config.output
    if out:
        write_report(report, out)
    else:
        print(report.model_dump_json(indent=2))
    csv = args.csv or config.csv
    if csv:
        write_csv(report, csv)
    if not report.passed:
        logger.warning(
            "Suite %s: %d violations, growth_ok=%s",
            report.suite,
            report.aggregates.violation_count,
            report.aggregates.growth_ok,
        )
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="remez-lab", description="Remez-type inequalities on the polytorus")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
        if needs_input:
            p.add_argument("--in", dest="input", required=True, help="Polynomial JSON file")
        p.add_argument("--out", help="Write JSON output here instead of stdout")

    p = sub.add_parser("lift", help="Moment lift of a point to a measure on Omega_2K")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--z-re", type=float, default=0.0)
    p.add_argument("--z-im", type=float, default=0.0)
    add_io(p, needs_input=False)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("norm", help="Grid sup norm and torus sandwich")
    add_io(p)
    p.add_argument("--grid", type=int, help="Grid order M (default K)")
    p.add_argument("--torus", action="store_true", help="Also bound the torus sup norm")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("project", help="Pseudoprojection iterate or bounded S-part")
    add_io(p)
    p.add_argument("--iterate", type=int, default=1, help="Pseudoprojection power k")
    p.add_argument("--S", help="JSON list of multi-indices for the S-part")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("decompose", help="Inseparable classes of a polynomial")
    add_io(p)
    p.add_argument("--recover", action="store_true", help="Cross-check the top level by Vandermonde recovery")
    p.add_argument("--extended", action="store_true", help="Extended-precision Vandermonde inversion")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("reduce", help="Selector reduction at the Omega_2K maximizer")
    add_io(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("certify", help="Certified constant C(d, K)")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--K", type=int, default=3)
    p.add_argument("--precision", choices=("double", "extended"), default="double")
    p.add_argument("--in", dest="input", help="Certify only the classes present in this polynomial")
    p.add_argument("--out", help="Write JSON output here instead of stdout")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bh", help="Bohnenblust-Hille coefficient norm")
    add_io(p)
    p.add_argument("--d", type=int, help="Degree for the exponent 2d/(d+1) (default deg f)")
    p.add_argument("--torus", action="store_true", help="Also report the ratio to the torus lower bound")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bh)

    p = sub.add_parser("sweep", help="Run an experiment suite")
    p.add_argument("--config", help="ExperimentConfig JSON file")
    p.add_argument("--suite", help="Suite id (overrides the config)")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="Report JSON path")
    p.add_argument("--csv", help="Summary CSV path")
    p.add_argument("--no-progress", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.func(args)
    except (RemezLabError, ValueError) as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

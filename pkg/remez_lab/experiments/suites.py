"""
Seeded experiment suites.

Every suite compares a sound side against a certified or proven bound:
torus values are lower bounds, grid norms are exact maxima. Trials run in a
thread pool with seeds spawned from the config seed, so replaying a config
reproduces its records.
"""

import cmath
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from math import comb
from typing import Callable, Dict, List, NamedTuple, Optional

import numpy as np
from tqdm import tqdm

from remez_lab.data.poly_io import deserialize, instance_digest, serialize
from remez_lab.exceptions import CapExceededError, NonPrimeModulusError, RemezLabError
from remez_lab.experiments.config import ExperimentConfig
from remez_lab.experiments.reports import Environment, SuiteReport, TrialRecord, aggregate
from remez_lab.measures.moment_lift import build_moment_system, empirical_lift_radius, lift_measure
from remez_lab.multipliers.certificate import certified_constant, instance_bound
from remez_lab.multipliers.inseparable import (
    bijection_pattern_key,
    class_pattern_findings,
    inseparable_decompose,
    is_odd_prime,
    tau_key,
    vandermonde_recover,
)
from remez_lab.multipliers.pseudoprojection import SUPPORT_GROWTH, pseudoproject, transfer_identity_residual
from remez_lab.multipliers.reduction import reduce_at_maximizer
from remez_lab.norms.norm_oracle import bh_norm, grid_sup_norm, torus_sup_lower
from remez_lab.polynomials.fourier import group_dft, inverse_dft
from remez_lab.polynomials.grid import grid_exponents, grid_size
from remez_lab.polynomials.poly import Poly, evaluate, sum_polys
from remez_lab.polynomials.sampling import random_poly

logger = logging.getLogger(__name__)

MASS_TOL = 1e-12
MOMENT_TOL = 1e-10
NONNEG_ATOL = 1e-15
UNIFORM_TOL = 1e-12
TRANSFER_TOL = 1e-9
RECOVERY_TOL = 1e-8
SQRT_OMEGA_TOL = 1e-10
SELECTOR_TOL = 1e-10
DFT_TOL = 1e-10

# the pair from the sqrt(w) discussion with equal tau at K = 3
BETA = (2, 1, 1, 1, 1, 1, 1, 1)
BETA_PRIME = (2, 2, 2, 2, 2, 2, 2, 1)


class TrialSpec(NamedTuple):
    index: int
    n: Optional[int]
    d: Optional[int]
    K: Optional[int]
    seed: int


def _spawn_seeds(seed: int, count: int) -> List[int]:
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


def _with_seeds(config: ExperimentConfig, layout: List[tuple]) -> List[TrialSpec]:
    seeds = _spawn_seeds(config.seed, len(layout))
    return [TrialSpec(i, n, d, K, s) for i, ((n, d, K), s) in enumerate(zip(layout, seeds))]


def instance_layout(config: ExperimentConfig, K_values=None) -> List[tuple]:
    return [
        (n, d, K)
        for d in config.d_values
        for K in (K_values or config.K_values)
        for n in config.n_values
        for _ in range(config.trials)
    ]


def _instance(spec: TrialSpec, config: ExperimentConfig) -> Poly:
    return random_poly(spec.n, spec.d, spec.K, spec.seed, scheme=config.scheme, max_terms=config.max_terms)


def _record(spec: TrialSpec, f: Optional[Poly] = None, **kwargs) -> TrialRecord:
    return TrialRecord(
        index=spec.index,
        n=spec.n,
        d=spec.d,
        K=spec.K,
        seed=spec.seed,
        digest=instance_digest(f) if f is not None else None,
        **kwargs,
    )


def sqrt_omega_point(n: int, K: int) -> List[complex]:
    return [cmath.exp(1j * cmath.pi / K)] * n


def moment_system_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    sys = build_moment_system(spec.K)
    uniform = np.full(sys.size, 1.0 / sys.size)
    e1 = np.zeros(sys.size)
    e1[0] = 1.0
    uniform_gap = float(np.max(np.abs(sys.matrix @ uniform - e1)))
    ceiling = 1.0 / (2 * spec.K) ** 2
    metrics = {
        "eps_star": sys.eps_star,
        "eps_ceiling": ceiling,
        "inf_norm_inv": sys.inf_norm_inv,
        "norm_radius": sys.norm_radius,
        "uniform_gap": uniform_gap,
        "empirical_radius": empirical_lift_radius(sys),
    }
    passed = 0 < sys.eps_star <= ceiling and uniform_gap <= UNIFORM_TOL
    return _record(spec, metrics=metrics, passed=passed)


def measure_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    sys = build_moment_system(spec.K)
    rng = np.random.default_rng(spec.seed)
    z = sys.eps_star * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    measure = lift_measure(sys, z)
    metrics = {
        "z_abs": abs(z),
        "min_probability": measure.min_probability(),
        "mass_residual": measure.total_mass_residual(),
        "moment_residual": measure.moment_residual(),
    }
    passed = (
        metrics["min_probability"] >= -NONNEG_ATOL
        and metrics["mass_residual"] <= MASS_TOL
        and metrics["moment_residual"] <= MOMENT_TOL
    )
    return _record(spec, metrics=metrics, passed=passed)


def dk_bound_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    f = _instance(spec, config)
    ell = f.max_support_size
    norm_f = grid_sup_norm(f, f.K, cap=config.effective_cap)
    norm_df = grid_sup_norm(pseudoproject(f), f.K, cap=config.effective_cap)
    bound = SUPPORT_GROWTH**ell * norm_f
    metrics = {"ell": ell, "norm_f": norm_f, "norm_df": norm_df, "ratio": norm_df / bound if bound else 0.0}
    return _record(spec, f, metrics=metrics, passed=norm_df <= bound * (1 + config.rtol))


def transfer_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    f = _instance(spec, config)
    gap, above = transfer_identity_residual(f)
    metrics = {"ell": f.max_support_size, "gap": gap, "above_top": above}
    return _record(spec, f, metrics=metrics, passed=gap <= TRANSFER_TOL and above <= TRANSFER_TOL)


def _recovery_gap(f: Poly) -> Dict[str, float]:
    top = f.max_support_size
    classes = [c for c in inseparable_decompose(f) if c.support_size == top]
    recovered = vandermonde_recover(f)
    gap = 0.0
    for cls, part in zip(classes, recovered):
        keys = set(cls.part) | set(part)
        gap = max(gap, max(abs(cls.part.coefficient(a) - part.coefficient(a)) for a in keys))
    scale = max(1.0, float(np.abs(f.coeffs).max()))
    return {"ell": top, "J": len(classes), "classes": len(inseparable_decompose(f)), "gap": gap / scale}


def decomposition_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    f = _instance(spec, config)
    metrics = _recovery_gap(f)
    metrics["partition_exact"] = sum_polys((cls.part for cls in inseparable_decompose(f)), f.n, f.K) == f
    return _record(spec, f, metrics=metrics, passed=metrics["gap"] <= RECOVERY_TOL and metrics["partition_exact"])


def beta_pair_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    """z^beta + z^beta' at K = 3 must form a single class."""
    f = Poly(len(BETA), 3, {BETA: 1.0, BETA_PRIME: 1.0})
    metrics = _recovery_gap(f)
    passed = metrics["classes"] == 1 and metrics["gap"] <= RECOVERY_TOL
    return _record(spec, f, metrics=metrics, passed=passed, note="beta/beta' pair")


def property_b_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    f = _instance(spec, config)
    worst_ratio, worst_gap = 0.0, 0.0
    passed = True
    for cls in inseparable_decompose(f):
        g = cls.part
        at_half = abs(evaluate(g, sqrt_omega_point(f.n, f.K)))
        at_one = abs(evaluate(g, [1.0] * f.n))
        norm_g = grid_sup_norm(g, f.K, cap=config.effective_cap)
        gap = abs(at_half - at_one) / max(1.0, at_one)
        worst_gap = max(worst_gap, gap)
        if norm_g > 0:
            worst_ratio = max(worst_ratio, at_half / norm_g)
        passed &= at_half <= norm_g * (1 + config.rtol) and gap <= SQRT_OMEGA_TOL
    metrics = {"classes": len(inseparable_decompose(f)), "max_ratio": worst_ratio, "max_gap": worst_gap}
    return _record(spec, f, metrics=metrics, passed=bool(passed))


def selector_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    f = _instance(spec, config)
    reduction = reduce_at_maximizer(f, cap=config.effective_cap)
    value = abs(reduction.sqrt_omega_value())
    norm_g = grid_sup_norm(reduction.g, f.K, cap=config.effective_cap)
    norm_f = grid_sup_norm(f, f.K, cap=config.effective_cap)
    scale = max(1.0, reduction.norm_2k)
    metrics = {
        "m": reduction.m,
        "norm_2k": reduction.norm_2k,
        "g_at_sqrt_omega": value,
        "norm_g_k": norm_g,
        "norm_f_k": norm_f,
    }
    passed = abs(value - reduction.norm_2k) <= SELECTOR_TOL * scale and norm_g <= norm_f + SELECTOR_TOL * scale
    return _record(spec, f, metrics=metrics, passed=passed)


def remez_ratio_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    f = _instance(spec, config)
    certificate = certified_constant(spec.d, spec.K, config.precision)
    torus = torus_sup_lower(
        f,
        restarts=config.restarts,
        samples_per_axis=config.samples_per_axis,
        tol=config.torus_tol,
        seed=spec.seed,
        cap=config.effective_cap,
    )
    norm_k = grid_sup_norm(f, f.K, cap=config.effective_cap)
    norm_2k = grid_sup_norm(f, 2 * f.K, cap=config.effective_cap)
    ratio = torus.torus_lower / norm_k if norm_k else 0.0
    slack = 1 + config.rtol
    step1_ok = torus.torus_lower <= certificate.c1 * norm_2k * slack
    step2_ok = norm_2k <= certificate.c2 * norm_k * slack
    metrics = {
        "torus_lower": torus.torus_lower,
        "torus_upper": torus.torus_upper,
        "instance_bound": instance_bound(f, config.precision, cap=config.effective_cap),
        "norm_k": norm_k,
        "norm_2k": norm_2k,
        "ratio": ratio,
        "certified_C": certificate.C,
        "step1_ok": step1_ok,
        "step2_ok": step2_ok,
        "certificate_sound": certificate.sound,
    }
    passed = certificate.sound and ratio <= certificate.C * slack and step1_ok and step2_ok
    return _record(spec, f, metrics=metrics, passed=passed)


def bh_ratio_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    f = _instance(spec, config)
    if spec.d < 1:
        return _record(spec, f, skipped=True, note="the Bohnenblust-Hille exponent needs d >= 1")
    torus = torus_sup_lower(
        f, restarts=config.restarts, samples_per_axis=config.samples_per_axis, tol=config.torus_tol, seed=spec.seed
    )
    coefficient_norm = bh_norm(f, spec.d)
    metrics = {
        "bh_norm": coefficient_norm,
        "torus_lower": torus.torus_lower,
        "bh_ratio": coefficient_norm / torus.torus_lower if torus.torus_lower else 0.0,
    }
    return _record(spec, f, metrics=metrics)


def _pair_counts(keys: List) -> int:
    counts: Dict = {}
    for key in keys:
        counts[key] = counts.get(key, 0) + 1
    return sum(comb(c, 2) for c in counts.values())


def prime_certificate_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    """
    All pairs of multi-indices in {0..K-1}^n: pairs grouped together by exactly
    one of the two relations are disagreements.
    """
    if not is_odd_prime(spec.K):
        return _record(spec, skipped=True, note=str(NonPrimeModulusError(f"K={spec.K} is not an odd prime")))
    alphas = [tuple(int(a) for a in row) for row in grid_exponents(spec.K, spec.n, 0, grid_size(spec.K, spec.n))]
    exact = [tau_key(a, spec.K) for a in alphas]
    pattern = [bijection_pattern_key(a, spec.K) for a in alphas]
    agreeing = _pair_counts(list(zip(exact, pattern)))
    disagreements = _pair_counts(exact) + _pair_counts(pattern) - 2 * agreeing
    metrics = {"indices": len(alphas), "pairs": comb(len(alphas), 2), "disagreements": disagreements}
    return _record(spec, metrics=metrics, passed=disagreements == 0)


def composite_findings_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    alphas = grid_exponents(spec.K, spec.n, 0, grid_size(spec.K, spec.n))
    findings = class_pattern_findings((tuple(int(a) for a in row) for row in alphas), spec.K)
    return _record(spec, metrics=findings, note=None if is_odd_prime(spec.K) else "composite or even K")


def k2_sanity_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    f = _instance(spec, config)
    torus = torus_sup_lower(
        f,
        restarts=config.restarts,
        samples_per_axis=config.samples_per_axis,
        tol=config.torus_tol,
        seed=spec.seed,
        cap=config.effective_cap,
    )
    norm_2 = grid_sup_norm(f, 2, cap=config.effective_cap)
    bound = float((1 + np.sqrt(2)) ** spec.d) * norm_2
    metrics = {"torus_lower": torus.torus_lower, "norm_2": norm_2, "ratio": torus.torus_lower / norm_2 if norm_2 else 0.0}
    return _record(spec, f, metrics=metrics, passed=torus.torus_lower <= bound * (1 + config.rtol))


def roundtrip_trial(spec: TrialSpec, config: ExperimentConfig) -> TrialRecord:
    f = _instance(spec, config)
    recovered = group_dft(inverse_dft(f, cap=config.effective_cap), f.K, n=f.n, cap=config.effective_cap)
    keys = set(f) | set(recovered)
    dft_gap = max((abs(f.coefficient(a) - recovered.coefficient(a)) for a in keys), default=0.0)
    json_exact = deserialize(serialize(f)) == f
    metrics = {"dft_gap": dft_gap, "json_exact": json_exact}
    return _record(spec, f, metrics=metrics, passed=dft_gap <= DFT_TOL and json_exact)


def _plan(config: ExperimentConfig) -> List[tuple]:
    """(trial function, spec) pairs in report order."""
    suite = config.suite
    if suite == "moment-system":
        specs = _with_seeds(config, [(None, None, K) for K in config.K_values])
        return [(moment_system_trial, s) for s in specs]
    if suite == "measure":
        specs = _with_seeds(config, [(None, None, K) for K in config.K_values for _ in range(config.trials)])
        return [(measure_trial, s) for s in specs]
    if suite in ("prime-certificate", "composite-findings"):
        trial = prime_certificate_trial if suite == "prime-certificate" else composite_findings_trial
        specs = _with_seeds(config, [(n, None, K) for K in config.K_values for n in config.n_values])
        return [(trial, s) for s in specs]
    if suite == "k2-sanity":
        return [(k2_sanity_trial, s) for s in _with_seeds(config, instance_layout(config, K_values=[2]))]

    trial = {
        "dk-bound": dk_bound_trial,
        "transfer": transfer_trial,
        "decomposition": decomposition_trial,
        "property-b": property_b_trial,
        "selector": selector_trial,
        "remez-ratio": remez_ratio_trial,
        "bh-ratio": bh_ratio_trial,
        "roundtrip": roundtrip_trial,
    }[suite]
    layout = instance_layout(config)
    extra = suite == "decomposition" and 3 in config.K_values and config.trials > 0
    if extra:
        layout.append((len(BETA), None, 3))
    specs = _with_seeds(config, layout)
    plan = [(trial, s) for s in specs]
    if extra:
        plan[-1] = (beta_pair_trial, specs[-1])
    return plan


def _run_trial(item: tuple, config: ExperimentConfig) -> TrialRecord:
    trial, spec = item
    try:
        return trial(spec, config)
    except CapExceededError as e:
        logger.warning("Trial %d skipped: %s", spec.index, e)
        return _record(spec, skipped=True, note=str(e))
    except RemezLabError as e:
        logger.warning("Trial %d failed: %s", spec.index, e)
        return _record(spec, passed=False, note=f"{type(e).__name__}: {e}")


def run_suite(config: ExperimentConfig, progress: bool = True) -> SuiteReport:
    plan = _plan(config)
    logger.info("Running suite %s: %d trials", config.suite, len(plan))
    if config.suite == "remez-ratio":
        for d in config.d_values:
            for K in config.K_values:
                certified_constant(d, K, config.precision)

    run: Callable = partial(_run_trial, config=config)
    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        records = list(
            tqdm(executor.map(run, plan), total=len(plan), desc=config.suite, disable=not progress or not plan)
        )

    aggregates = aggregate(
        config.suite, records, growth_factor=config.growth_factor if config.suite == "remez-ratio" else None
    )
    report = SuiteReport(
        suite=config.suite,
        config=config.model_dump(),
        records=records,
        aggregates=aggregates,
        environment=Environment(seed=config.seed, cap=config.effective_cap),
    )
    logger.info(
        "Finished suite %s: %d trials, %d violations, %d skipped",
        config.suite,
        aggregates.trials,
        aggregates.violation_count,
        aggregates.skipped,
    )
    return report

import cmath
from itertools import product

import pytest

from remez_lab.exceptions import (
    InvalidMultiIndexError,
    InvalidProjectionSetError,
    NonPrimeModulusError,
    UndefinedSupportError,
)
from remez_lab.multipliers.inseparable import (
    bijection_pattern_key,
    bounded_projection,
    class_pattern_findings,
    inseparable_decompose,
    prime_inseparable,
    tau_key,
    vandermonde_recover,
)
from remez_lab.multipliers.pseudoprojection import tau_of
from remez_lab.norms.norm_oracle import grid_sup_norm
from remez_lab.polynomials.poly import Poly, evaluate, sum_polys

BETA = (2, 1, 1, 1, 1, 1, 1, 1)
BETA_PRIME = (2, 2, 2, 2, 2, 2, 2, 1)


def _max_gap(f: Poly, g: Poly) -> float:
    return max((abs(f.coefficient(a) - g.coefficient(a)) for a in set(f) | set(g)), default=0.0)


def test_equal_tau_single_class():
    classes = inseparable_decompose(Poly(2, 3, {(1, 0): 1, (0, 1): 1}))
    assert len(classes) == 1
    assert classes[0].support_size == 1
    assert classes[0].tau == tau_of((1,), 3)


def test_distinct_tau_two_classes():
    classes = inseparable_decompose(Poly(1, 3, {(1,): 1, (2,): 1}))
    assert [c.members for c in classes] == [((1,),), ((2,),)]


def test_beta_pair_single_class():
    classes = inseparable_decompose(Poly(8, 3, {BETA: 1.0, BETA_PRIME: -2.0}))
    assert len(classes) == 1
    assert set(classes[0].members) == {BETA, BETA_PRIME}


def test_class_invariants(make_random):
    for seed in range(10):
        f = make_random(4, 4, 5, seed)
        classes = inseparable_decompose(f)
        assert sum_polys((c.part for c in classes), f.n, f.K) == f
        members = [a for c in classes for a in c.members]
        assert sorted(members) == sorted(f)
        for cls in classes:
            assert abs(abs(cls.zeta) - 1) < 1e-12
            for alpha in cls.members:
                assert tau_key(alpha, f.K) == (cls.support_size, cls.tau)
                point = [cmath.exp(1j * cmath.pi / f.K)] * f.n
                assert evaluate(Poly.monomial(f.n, f.K, alpha), point) == pytest.approx(cls.zeta, abs=1e-12)
        for ell in {c.support_size for c in classes}:
            assert sum(1 for c in classes if c.support_size == ell) <= (f.K + f.degree) ** f.degree


def test_sigma_hat():
    cls = inseparable_decompose(Poly(3, 5, {(1, 4, 2): 1.0}))[0]
    assert cls.sigma_hat == {1: 2, 2: 1}


def test_recovery_single_class():
    f = Poly(2, 3, {(1, 0): 2.0, (0, 1): 3.0})
    [g] = vandermonde_recover(f)
    assert _max_gap(g, f) <= 1e-12


def test_recovery_two_classes():
    f = Poly(1, 3, {(1,): 1.0, (2,): -0.5j})
    parts = vandermonde_recover(f, ell=1)
    direct = [c.part for c in inseparable_decompose(f)]
    for g, expected in zip(parts, direct):
        assert _max_gap(g, expected) <= 1e-10


@pytest.mark.parametrize("K", [3, 4, 5])
def test_recovery_matches_direct_grouping(make_random, K):
    for seed in range(10):
        f = make_random(5, 3, K, seed, scheme="sparse-uniform", max_terms=6)
        top = [c for c in inseparable_decompose(f) if c.support_size == f.max_support_size]
        for cls, g in zip(top, vandermonde_recover(f)):
            assert _max_gap(cls.part, g) <= 1e-7


def test_recovery_extended_precision():
    f = Poly(2, 5, {(1, 1): 1.0, (2, 1): 2.0, (3, 4): -1.0, (2, 2): 0.5})
    top = [c for c in inseparable_decompose(f) if c.support_size == 2]
    for cls, g in zip(top, vandermonde_recover(f, extended=True)):
        assert _max_gap(cls.part, g) <= 1e-10


def test_recovery_preconditions():
    with pytest.raises(UndefinedSupportError):
        vandermonde_recover(Poly.zero(2, 3))
    with pytest.raises(ValueError):
        vandermonde_recover(Poly(2, 3, {(1, 1): 1.0}), ell=1)


def test_property_b_on_parts(make_random):
    for seed in range(10):
        f = make_random(3, 3, 3, seed)
        for cls in inseparable_decompose(f):
            at_half = abs(evaluate(cls.part, [cmath.exp(1j * cmath.pi / 3)] * 3))
            at_one = abs(evaluate(cls.part, [1.0] * 3))
            assert at_half <= grid_sup_norm(cls.part, 3) * (1 + 1e-9)
            assert at_half == pytest.approx(at_one, abs=1e-10)


@pytest.mark.parametrize("K", range(2, 9))
def test_half_root_identity(K):
    half = cmath.exp(1j * cmath.pi / K)
    omega = half**2
    for k in range(1, K):
        factor = 1 - omega**k
        assert half**k == pytest.approx(1j * factor / abs(factor), abs=1e-12)


def test_prime_inseparable_examples():
    assert prime_inseparable((1, 2, 0), (1, 2, 0), 3)
    assert prime_inseparable((1, 2), (2, 1), 3)
    assert not prime_inseparable((1,), (2,), 3)


def test_prime_inseparable_rejects_composite_and_bad_input():
    with pytest.raises(NonPrimeModulusError):
        prime_inseparable((1,), (1,), 4)
    with pytest.raises(NonPrimeModulusError):
        prime_inseparable((1,), (1,), 2)
    with pytest.raises(InvalidMultiIndexError):
        prime_inseparable((1, 0), (1,), 3)
    with pytest.raises(InvalidMultiIndexError):
        prime_inseparable((5,), (1,), 5)


@pytest.mark.parametrize("K, n", [(3, 3), (5, 2), (7, 2)])
def test_prime_characterization_exhaustive(K, n):
    alphas = list(product(range(K), repeat=n))
    for a in alphas:
        for b in alphas:
            assert prime_inseparable(a, b, K) == (tau_key(a, K) == tau_key(b, K))


def test_pattern_key_contents():
    assert bijection_pattern_key((4, 0, 1), 5) == (2, 5, (1, 1))


def test_composite_findings_counts_for_K6():
    # the 15 unordered pairs from 1..5 give 15 distinct products of (1 - w_6^a),
    # and the pattern key separates the same 15 pairs
    alphas = list(product(range(6), repeat=2))
    assert class_pattern_findings(alphas, 6) == {
        "indices": 36,
        "tau_classes": 21,
        "pattern_classes": 21,
        "tau_classes_split_by_pattern": 0,
        "pattern_classes_split_by_tau": 0,
    }
    assert class_pattern_findings([(a,) for a in range(6)], 6)["tau_classes"] == 6


def test_bounded_projection_full_class():
    f = Poly(2, 3, {(1, 0): 1.0, (0, 1): 2.0, (2, 0): 3.0})
    part = bounded_projection(f, [(1, 0), (0, 1)])
    assert part == Poly(2, 3, {(1, 0): 1.0, (0, 1): 2.0})


def test_bounded_projection_disjoint_set_is_zero():
    f = Poly(2, 3, {(1, 0): 1.0})
    # no term of f shares the key of z1 z2
    assert bounded_projection(f, [(1, 1)]).is_zero
    assert bounded_projection(f, []).is_zero


def test_bounded_projection_rejects_partial_or_mixed_sets():
    f = Poly(2, 3, {(1, 0): 1.0, (0, 1): 2.0, (2, 0): 3.0})
    with pytest.raises(InvalidProjectionSetError):
        bounded_projection(f, [(1, 0)])
    with pytest.raises(InvalidProjectionSetError):
        bounded_projection(f, [(1, 0), (0, 1), (2, 0)])


def test_corollary_key_selects_part_of_a_class():
    ones, twos = (1,) * 6, (2,) * 6
    f = Poly(6, 3, {ones: 1.0, twos: 1.0})
    assert len(inseparable_decompose(f)) == 1
    # degrees 6 and 12 differ, so the two terms have distinct corollary keys
    assert bounded_projection(f, [ones]) == Poly(6, 3, {ones: 1.0})


def test_bounded_projection_of_a_class_matches_part(make_random):
    f = make_random(3, 3, 5, seed=21)
    for cls in inseparable_decompose(f):
        assert bounded_projection(f, cls.members) == cls.part

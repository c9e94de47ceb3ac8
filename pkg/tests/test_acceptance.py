"""Acceptance suite: one PASS/FAIL line per criterion, printed to the terminal.

Run alone with ``pytest tests/test_acceptance.py -v``; the criterion lines
are printed even when output capture is on.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from wishcone import binomials, symfun, wishart
from wishcone.binomials import contiguous_binomial, general_binomial, oracle_binomial, positivity_scan
from wishcone.cones import make_cone
from wishcone.errors import OutOfDomain
from wishcone.montecarlo import empirical_laplace, sample_noncentral_wishart, verify_moment_formula
from wishcone.partitions import Partition, contiguous, enumerate_partitions, partitions_up_to
from wishcone.symfun import SymmetricPolynomial, apply_D, eigenvalue, jack
from wishcone.wishart import (
    FailedCondition,
    WishartParams,
    existence_check,
    laplace_transform,
    pochhammer_general,
    putative_moment,
    verify_certificate,
    zonal_constant,
    zonal_polynomial,
)

F = Fraction
P = Partition
ALPHAS = [F(2), F(1), F(1, 2), F(2, 3), F(1, 4)]
MC_SAMPLES = 1_000_000
MC_SEED = 20240601


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, f"criterion {number} failed: {detail}"

    return emit


@pytest.fixture
def cold_caches():
    """Timings are measured from empty memo tables."""
    for fn in (
        symfun._jack_coefficients,
        symfun._pair_action,
        symfun.monomial_exponents,
        symfun.power_sum_expansion,
        binomials._general,
        wishart._zonal_coefficients,
    ):
        fn.cache_clear()


def test_criterion_01_jack_ground_truth(report, cold_caches):
    start = time.perf_counter()
    a = jack(P((2,)), 2, 2) == SymmetricPolynomial(2, {P((2,)): 3, P((1, 1)): 2})
    b = jack(P((1, 1)), 2, 2) == SymmetricPolynomial(2, {P((1, 1)): 2})
    elapsed = time.perf_counter() - start
    report(1, "J_(2) = 3 m_(2) + 2 m_(1,1) and J_(1,1) = 2 m_(1,1) at alpha = 2", a and b and elapsed < 1, f"{elapsed:.3f}s < 1s")


def test_criterion_02_eigenfunction_suite(report, cold_caches):
    start = time.perf_counter()
    failures, checked = [], 0
    for alpha in ALPHAS:
        for n in range(7):
            for m in range(1, 5):
                for kappa in enumerate_partitions(n, m):
                    j = jack(kappa, m, alpha)
                    checked += 1
                    if apply_D(j, alpha) != j * eigenvalue(kappa, m, alpha):
                        failures.append((kappa, m, alpha))
    elapsed = time.perf_counter() - start
    report(2, "D(alpha) J = e J exactly, |kappa| <= 6, m <= 4, 5 alphas", not failures and elapsed < 60,
           f"{checked} cases, {len(failures)} failures, {elapsed:.2f}s < 60s")


def test_criterion_03_positivity(report, cold_caches):
    start = time.perf_counter()
    details, ok = [], True
    for alpha in ALPHAS:
        rep = positivity_scan(8, 4, alpha)
        ok &= rep.ok and rep.contiguous_checked > 0
        details.append(f"alpha={alpha}: {rep.pairs_checked} pairs, {rep.contiguous_checked} contiguous, {len(rep.violations)} violations")
    elapsed = time.perf_counter() - start
    report(3, "positivity_scan(8, 4, alpha) has no violations", ok and elapsed < 300, "; ".join(details) + f"; {elapsed:.2f}s < 300s")


def test_criterion_04_recursion_oracle(report, cold_caches):
    mismatches = sum_rule = checked = 0
    for alpha in ALPHAS:
        for n in range(1, 7):
            for kappa in enumerate_partitions(n, n):
                oracle = oracle_binomial(kappa, n, alpha)
                for sigma in partitions_up_to(n, n):
                    checked += 1
                    value = general_binomial(kappa, sigma, alpha)
                    mismatches += value != oracle.get(sigma, 0)
                    lhs = sum(
                        (contiguous_binomial(sigma, i, alpha) * general_binomial(kappa, contiguous(sigma, i), alpha)
                         for i in sigma.contiguous_indices()),
                        F(0),
                    )
                    sum_rule += lhs != (kappa.size - sigma.size) * value
    report(4, "recursion equals oracle and the sum rule holds, |kappa| <= 6", mismatches == 0 and sum_rule == 0,
           f"{checked} pairs, {mismatches} oracle mismatches, {sum_rule} sum-rule failures")


def test_criterion_05_zonal_normalization(report, cold_caches):
    failures = 0
    for d in (1, 2, 4, 8):
        for r in range(1, 5):
            for k in range(7):
                total = SymmetricPolynomial(r, {})
                for kappa in enumerate_partitions(k, r):
                    total = total + zonal_polynomial(kappa, r, d)
                target = {mu: F(math.factorial(k), math.prod(math.factorial(p) for p in mu)) for mu in enumerate_partitions(k, r)}
                failures += total != SymmetricPolynomial(r, target)
    split = (
        zonal_polynomial(P((1, 1)), 2, 1) == SymmetricPolynomial(2, {P((1, 1)): F(4, 3)})
        and zonal_polynomial(P((2,)), 2, 1) == SymmetricPolynomial(2, {P((2,)): 1, P((1, 1)): F(2, 3)})
    )
    report(5, "sum of Z_kappa equals trace^k (k <= 6, r <= 4, d in 1,2,4,8) and the k=2 split", failures == 0 and split,
           f"{failures} identity failures, k=2 split {'matches' if split else 'differs'}")


def _transcribed(r, d, beta, k):
    wallach = beta >= F(d * (r - 1), 2) or any(beta == F(d * j, 2) for j in range(r - 1))
    rank_ok = 2 * beta >= d * (r - 1) or d * k <= 2 * beta
    return wallach and rank_ok


def test_criterion_06_verdict_table(report, cold_caches):
    start = time.perf_counter()
    cells = mismatches = failing = bad_certs = 0
    for m in (2, 3, 4):
        for family in ("real", "complex"):
            cone = make_cone(family, m)
            for q in range(13):
                beta = F(q, 4)
                for k in range(m + 1):
                    params = WishartParams(cone, beta, (1,) * k + (0,) * (m - k))
                    verdict = existence_check(params)
                    cells += 1
                    mismatches += verdict.passes != _transcribed(m, cone.peirce, beta, k)
                    if not verdict.passes:
                        failing += 1
                        cert = verdict.certificate
                        value = putative_moment(cert.kappa, wishart.standardize(params), cert.t)
                        bad_certs += not (isinstance(value, Fraction) and value < 0 and value == cert.value)
    elapsed = time.perf_counter() - start
    report(6, "verdict table matches the transcribed conditions with exact negative certificates",
           mismatches == 0 and bad_certs == 0 and elapsed < 60,
           f"{cells} cells, {failing} failing, {mismatches} mismatches, {bad_certs} bad certificates, {elapsed:.2f}s < 60s")


def test_criterion_07_certificate_spot_checks(report, cold_caches):
    real3 = make_cone("real", 3)
    p1 = WishartParams(real3, F(3, 4), (0, 0, 0))
    v1 = existence_check(p1)
    poch = pochhammer_general(F(3, 4), P((1, 1, 1)), 2)
    ok1 = (
        v1.failed_condition is FailedCondition.GINDIKIN_WALLACH
        and v1.certificate.kappa == P((1, 1, 1))
        and v1.certificate.t == 0
        and poch == F(-3, 64)
        and v1.certificate.value == zonal_constant(P((1, 1, 1)), 3, 1) * poch
        and verify_certificate(p1, v1.certificate)
    )
    p2 = WishartParams(real3, F(1, 2), (1, 1, 0))
    v2 = existence_check(p2)
    ok2 = (
        v2.failed_condition is FailedCondition.RANK_CONDITION
        and v2.certificate.kappa == P((1, 1, 1))
        and v2.certificate.t >= 1
        and verify_certificate(p2, v2.certificate)
    )
    report(7, "spot certificates for (real:3, 3/4) and (real:3, 1/2, rank 2)", ok1 and ok2,
           f"zero-order value {v1.certificate.value} = {zonal_constant(P((1, 1, 1)), 3, 1)} * ({poch}); "
           f"rank certificate kappa={list(v2.certificate.kappa)}, t={v2.certificate.t}, value={v2.certificate.value}")


def _mc_statistics(threads: int):
    cone = make_cone("real", 2)
    params = WishartParams(cone, 1, (1, 0))
    rep = verify_moment_formula(params, [P((1,)), P((1, 1))], 1, MC_SAMPLES, MC_SEED, threads=threads)
    return rep


def test_criterion_08_mc_moments(report):
    start = time.perf_counter()
    rep = _mc_statistics(threads=4)
    elapsed = time.perf_counter() - start
    trace_row, z11_row = rep.rows
    ok = (
        trace_row.exact == 3
        and abs(trace_row.z_score) <= 4
        and trace_row.relative_error <= 0.02
        and abs(z11_row.z_score) <= 4
        and elapsed <= 60
    )
    report(8, "Monte-Carlo E[tr S] = 3 and E[Z_(1,1)(S)] match at 10^6 samples", ok,
           f"tr: {trace_row.empirical:.5f} vs 3, z={trace_row.z_score:.2f}, rel={trace_row.relative_error:.2e}; "
           f"Z11: {z11_row.empirical:.5f} vs {z11_row.exact:.5f}, z={z11_row.z_score:.2f}; {elapsed:.2f}s")


def test_criterion_09_mc_laplace(report):
    cone = make_cone("real", 2)
    params = WishartParams(cone, 1, (1, 0))
    batch = sample_noncentral_wishart(2, 1, (1, 0), MC_SAMPLES, MC_SEED + 1, threads=4)
    points = [
        [[F(1, 2), 0], [0, F(1, 2)]],
        [[F(1), F(1, 4)], [F(1, 4), F(1, 3)]],
        [[F(-1, 4), 0], [0, F(2)]],
        [[F(1, 5), F(-1, 5)], [F(-1, 5), F(1, 5)]],
        [[F(-3, 10), F(1, 10)], [F(1, 10), F(-1, 5)]],
    ]
    zs = []
    for u in points:
        exact = float(laplace_transform(params, u))
        mean, se = empirical_laplace(batch, u)
        zs.append((mean - exact) / se)
    rejected = []
    for u in ([[F(-1), 0], [0, 0]], [[F(-3, 2), 0], [0, F(1)]], [[F(-1, 2), F(1)], [F(1), F(-1, 2)]]):
        try:
            laplace_transform(params, u)
            rejected.append(False)
        except OutOfDomain:
            try:
                empirical_laplace(batch, u)
                rejected.append(False)
            except OutOfDomain:
                rejected.append(True)
    ok = all(abs(z) <= 4 for z in zs) and all(rejected)
    report(9, "empirical transform within 4 sigma at 5 interior points; exterior u rejected", ok,
           "z = " + ", ".join(f"{z:.2f}" for z in zs) + f"; {sum(rejected)}/{len(rejected)} exterior points rejected")


def test_criterion_10_determinism(report):
    base = _mc_statistics(threads=1)
    others = [_mc_statistics(threads=t) for t in (3, 8)]
    same = all(
        (a.empirical, a.standard_error) == (b.empirical, b.standard_error)
        for other in others
        for a, b in zip(base.rows, other.rows)
    )
    a = sample_noncentral_wishart(2, 1, (1, 0), 200_000, MC_SEED, threads=1).samples
    b = sample_noncentral_wishart(2, 1, (1, 0), 200_000, MC_SEED, threads=6).samples
    report(10, "same seed, different thread counts give bit-identical statistics", same and np.array_equal(a, b),
           "threads 1, 3, 8 compared")

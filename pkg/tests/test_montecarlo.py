from fractions import Fraction

import numpy as np
import pytest

from wishcone.cones import make_cone
from wishcone.errors import DegreeTooHigh, NonHalfInteger, OutOfDomain, RankExceedsDegrees
from wishcone.montecarlo import (
    empirical_laplace,
    empirical_moment,
    sample_noncentral_wishart,
    verify_laplace,
    verify_moment_formula,
)
from wishcone.partitions import Partition
from wishcone.wishart import WishartParams, laplace_transform, pochhammer_general, zonal_constant

F = Fraction
P = Partition
N = 1_000_000


@pytest.fixture(scope="module")
def batch_m2():
    return sample_noncentral_wishart(2, 1, (1, 0), N, seed=42, threads=4)


def test_refuses_infeasible_parameters():
    with pytest.raises(RankExceedsDegrees):
        sample_noncentral_wishart(2, F(1, 2), (1, 1), 10)
    with pytest.raises(NonHalfInteger):
        sample_noncentral_wishart(2, F(3, 4), (0, 0), 10)
    with pytest.raises(NonHalfInteger):
        sample_noncentral_wishart(2, 0, (0, 0), 10)


def test_scalar_chi_square_mean():
    batch = sample_noncentral_wishart(1, F(1, 2), (0,), N, seed=7, threads=2)
    mean, se = empirical_moment(batch, P((1,)))
    assert abs(mean - 0.5) <= 4 * se


def test_trace_mean(batch_m2):
    mean, se = empirical_moment(batch_m2, P((1,)))
    assert abs(mean - 3) <= 4 * se
    assert abs(mean - 3) / 3 <= 0.02


def test_every_sample_is_psd(batch_m2):
    s = batch_m2.samples
    assert np.array_equal(s, np.swapaxes(s, 1, 2))
    assert np.linalg.eigvalsh(s).min() >= -1e-12 * np.abs(s).max()


def test_empirical_moment_edge_cases(batch_m2):
    assert empirical_moment(batch_m2, P()) == (1.0, 0.0)
    with pytest.raises(DegreeTooHigh):
        empirical_moment(batch_m2, P((5,)))


def test_central_second_order():
    beta = F(3, 2)
    batch = sample_noncentral_wishart(3, beta, (0, 0, 0), N, seed=3, threads=4)
    for kappa in (P((1, 1)), P((2,))):
        exact = float(zonal_constant(kappa, 3, 1) * pochhammer_general(beta, kappa, 2))
        mean, se = empirical_moment(batch, kappa)
        assert abs(mean - exact) <= 4 * se


def test_empirical_laplace_examples():
    batch = sample_noncentral_wishart(1, F(1, 2), (0,), N, seed=11, threads=4)
    assert empirical_laplace(batch, [[0]]) == (1.0, 0.0)
    mean, se = empirical_laplace(batch, [[1]])
    assert abs(mean - 2**-0.5) <= 4 * se
    with pytest.raises(OutOfDomain):
        empirical_laplace(batch, [[-1]])


def test_mean_assignment_against_closed_form():
    """Five interior points, 10^6 samples, 3-sigma gate, with a rank-two non-centrality."""
    m, beta, omega = 3, F(3, 2), (F(2), F(1, 2), F(0))
    batch = sample_noncentral_wishart(m, beta, omega, N, seed=2024, threads=4)
    closed = WishartParams(make_cone("real", m), beta, omega)
    points = [
        [[F(1, 2), 0, 0], [0, F(1, 2), 0], [0, 0, F(1, 2)]],
        [[F(1, 5), F(1, 10), 0], [F(1, 10), F(3, 10), F(-1, 10)], [0, F(-1, 10), F(1, 4)]],
        [[F(-3, 10), 0, 0], [0, F(1), 0], [0, 0, F(2)]],
        [[F(1), F(1, 2), F(1, 4)], [F(1, 2), F(1), F(1, 2)], [F(1, 4), F(1, 2), F(1)]],
        [[F(-1, 5), F(1, 10), 0], [F(1, 10), F(-1, 5), 0], [0, 0, F(-1, 5)]],
    ]
    for u in points:
        exact = float(laplace_transform(closed, u))
        mean, se = empirical_laplace(batch, u)
        assert abs(mean - exact) <= 3 * se, (u, mean, exact, se)


def test_mean_placement_does_not_matter():
    # non-centrality on the second coordinate only
    batch = sample_noncentral_wishart(2, F(1, 2), (0, 3), N, seed=5, threads=4)
    closed = WishartParams(make_cone("real", 2), F(1, 2), (0, 3))
    u = [[F(1, 3), F(1, 6)], [F(1, 6), F(1, 2)]]
    mean, se = empirical_laplace(batch, u)
    assert abs(mean - float(laplace_transform(closed, u))) <= 4 * se


def test_determinism_across_threads():
    a = sample_noncentral_wishart(2, 1, (1, 0), 300_000, seed=9, chunk_size=4096, threads=1)
    b = sample_noncentral_wishart(2, 1, (1, 0), 300_000, seed=9, chunk_size=4096, threads=8)
    assert np.array_equal(a.samples, b.samples)
    c = sample_noncentral_wishart(2, 1, (1, 0), 300_000, seed=10, chunk_size=4096, threads=8)
    assert not np.array_equal(a.samples, c.samples)


def test_verify_moment_formula_examples(batch_m2):
    cone = make_cone("real", 2)
    report = verify_moment_formula(WishartParams(cone, 1, (1, 0)), [P((1,)), P((1, 1))], batch=batch_m2)
    assert report.passed
    assert report.rows[0].exact == 3
    zero = verify_moment_formula(WishartParams(cone, F(1, 2), (1, 0)), [P((1, 1))], 1, N, seed=1, threads=4)
    row = zero.rows[0]
    assert row.exact == 0 and row.relative_error is None and abs(row.z_score) <= 4
    assert zero.passed


def test_verify_moment_formula_with_t():
    cone = make_cone("real", 2)
    params = WishartParams(cone, F(3, 2), (F(1, 2), F(1, 4)))
    report = verify_moment_formula(params, [P((1,)), P((2,)), P((1, 1)), P((2, 1))], F(3), N, seed=8, threads=4)
    assert report.passed, report.to_dict()


def test_verify_laplace(batch_m2):
    cone = make_cone("real", 2)
    report = verify_laplace(WishartParams(cone, 1, (1, 0)), [[[0, 0], [0, 0]], [[1, 0], [0, 1]]], batch=batch_m2)
    assert report.passed
    assert report.rows[0].exact == 1 and report.rows[0].standard_error == 0

"""Monte-Carlo sampling of real non-central Wishart matrices at the unit scale.

For half-integer shape beta = n/2 a sample is S = sum_{j<=n} x_j x_j^T with
independent x_j ~ N(mu_j, I/2) and sum_j mu_j mu_j^T = diag(omega).  Its
Laplace transform is det(I + u)^(-beta) exp(-tr(diag(omega) u (I + u)^{-1})).

Random numbers come from numpy's counter-based Philox generator keyed by
(seed, chunk index), with normals from numpy's ziggurat sampler, so a batch
depends only on (seed, chunk_size, count) and never on the thread count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact
from .cones import Family, make_cone
from .errors import DegreeTooHigh, DimensionMismatch, InvalidParams, NonHalfInteger, OutOfDomain, RankExceedsDegrees
from .exact import RationalLike, as_rational
from .partitions import Partition
from .wishart import WishartParams, laplace_transform, putative_moment, standardize, zonal_polynomial

DEFAULT_CHUNK = 65536
MAX_MOMENT_DEGREE = 4
PSD_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class SampleBatch:
    m: int
    count: int
    samples: np.ndarray  # shape (count, m, m)
    seed: int
    chunk_size: int
    beta: Fraction = Fraction(0)
    omega: tuple[Fraction, ...] = ()

    def power_sums(self, k: int) -> dict[int, np.ndarray]:
        """{j: tr(S^j)} for every sample, 0 <= j <= k."""
        out = {0: np.full(self.count, float(self.m))}
        power = self.samples
        for j in range(1, k + 1):
            if j > 1:
                power = np.matmul(power, self.samples)
            out[j] = np.trace(power, axis1=1, axis2=2)
        return out


def _chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, chunk], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _fill_chunk(out: np.ndarray, start: int, stop: int, n: int, means: np.ndarray, seed: int, chunk: int):
    rng = _chunk_generator(seed, chunk)
    m = out.shape[1]
    x = rng.standard_normal((stop - start, n, m)) * math.sqrt(0.5)
    x += means
    s = np.matmul(np.swapaxes(x, 1, 2), x)
    out[start:stop] = 0.5 * (s + np.swapaxes(s, 1, 2))


def _assert_psd(samples: np.ndarray):
    scale = max(float(np.abs(samples).max(initial=0.0)), 1.0)
    eye = np.eye(samples.shape[1]) * (PSD_TOLERANCE * scale)
    try:
        np.linalg.cholesky(samples + eye)
    except np.linalg.LinAlgError as exc:
        raise AssertionError("sampled matrix is not positive semidefinite") from exc


def sample_noncentral_wishart(
    m: int,
    beta: RationalLike,
    omega: Sequence[RationalLike],
    count: int,
    seed: int = 0,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int = 1,
) -> SampleBatch:
    beta = as_rational(beta)
    omega = tuple(as_rational(w) for w in omega)
    if len(omega) != m:
        raise DimensionMismatch(f"omega needs {m} entries")
    if any(w < 0 for w in omega):
        raise InvalidParams("omega entries must be non-negative")
    if beta <= 0 or (2 * beta).denominator != 1:
        raise NonHalfInteger(f"2*beta must be a positive integer, got beta={beta}")
    n = int(2 * beta)
    nonzero = [i for i, w in enumerate(omega) if w]
    if len(nonzero) > n:
        raise RankExceedsDegrees(f"{len(nonzero)} nonzero noncentralities exceed 2*beta = {n}")
    if count < 1 or chunk_size < 1:
        raise InvalidParams("count and chunk_size must be positive")

    means = np.zeros((n, m))
    for row, i in enumerate(nonzero):
        means[row, i] = math.sqrt(omega[i])

    samples = np.empty((count, m, m))
    bounds = [(c, c * chunk_size, min(count, (c + 1) * chunk_size)) for c in range(-(-count // chunk_size))]

    def work(b):
        chunk, start, stop = b
        _fill_chunk(samples, start, stop, n, means, seed, chunk)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, bounds))
    else:
        for b in bounds:
            work(b)
    _assert_psd(samples)
    return SampleBatch(m, count, samples, seed, chunk_size, beta, omega)


def _mean_and_error(values: np.ndarray, floor: float = 0.0) -> tuple[float, float]:
    n = values.shape[0]
    mean = float(values.mean())
    if n < 2:
        return mean, max(0.0, floor)
    se = float(values.std(ddof=1)) / math.sqrt(n)
    return mean, max(se, floor)


def zonal_statistic(batch: SampleBatch, kappa: Partition) -> np.ndarray:
    """Z_kappa(S) for every sample, via power sums and the exact zonal expansion."""
    kappa = Partition(kappa)
    if kappa.size > MAX_MOMENT_DEGREE:
        raise DegreeTooHigh(f"|kappa| = {kappa.size} exceeds {MAX_MOMENT_DEGREE}")
    if len(kappa) > batch.m:
        return np.zeros(batch.count)
    poly = zonal_polynomial(kappa, batch.m, 1)
    value = poly.eval_power_sums(batch.power_sums(kappa.size))
    return np.broadcast_to(np.asarray(value, dtype=float), (batch.count,))


def empirical_moment(batch: SampleBatch, kappa: Partition) -> tuple[float, float]:
    """Sample mean and standard error of Z_kappa(S).

    The standard error is floored at the float round-off level of the
    statistic so that identically vanishing statistics give a finite z-score.
    """
    kappa = Partition(kappa)
    values = zonal_statistic(batch, kappa)
    typical = float(np.abs(np.trace(batch.samples, axis1=1, axis2=2)).mean()) ** kappa.size
    return _mean_and_error(values, 1e-12 * typical if kappa.size else 0.0)


def _unit_domain_check(u, m: int):
    mat = exact.to_matrix(u)
    if len(mat) != m:
        raise DimensionMismatch(f"u must be {m}x{m}")
    if not exact.is_symmetric(mat):
        raise InvalidParams("u must be symmetric")
    if not exact.is_pd(exact.mat_add(mat, exact.identity(m))):
        raise OutOfDomain("I + u is not positive definite")


def empirical_laplace(batch: SampleBatch, u) -> tuple[float, float]:
    """Sample mean and standard error of exp(-tr(u S))."""
    _unit_domain_check(u, batch.m)
    um = np.array([[float(as_rational(x)) for x in row] for row in u])
    values = np.exp(-np.einsum("ij,cji->c", um, batch.samples))
    return _mean_and_error(values)


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    exact: float
    empirical: float
    standard_error: float
    z_score: float
    relative_error: float | None
    passed: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class ComparisonReport:
    rows: list[ComparisonRow] = field(default_factory=list)
    samples: int = 0
    seed: int = 0
    z_gate: float = 4.0
    relative_gate: float = 0.02

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "samples": self.samples,
            "seed": self.seed,
            "z_gate": self.z_gate,
            "relative_gate": self.relative_gate,
            "rows": [r.to_dict() for r in self.rows],
        }


def _row(name, exact_value, mean, se, z_gate, rel_gate) -> ComparisonRow:
    z = (mean - exact_value) / se if se > 0 else (0.0 if mean == exact_value else math.inf)
    rel = abs(mean - exact_value) / abs(exact_value) if exact_value else None
    ok = abs(z) <= z_gate and (rel_gate is None or rel is None or rel <= rel_gate)
    return ComparisonRow(name, exact_value, mean, se, z, rel, ok)


def _sampleable(params: WishartParams) -> tuple[int, tuple[Fraction, ...]]:
    if params.cone.family is not Family.REAL:
        raise InvalidParams("sampling is only available for real symmetric matrices")
    std = standardize(params)
    if std.omega_is_matrix:
        mat = std.omega
        if std.omega_metric is not None or any(mat[i][j] for i in range(len(mat)) for j in range(len(mat)) if i != j):
            raise InvalidParams("pass the non-centrality as an eigenvalue vector for sampling")
        omega = tuple(mat[i][i] for i in range(len(mat)))
    else:
        omega = std.omega
    return params.cone.rank, omega


def verify_moment_formula(
    params: WishartParams,
    kappas: Sequence[Partition],
    t: RationalLike = 1,
    count: int = 1_000_000,
    seed: int = 0,
    *,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    z_gate: float = 4.0,
    relative_gate: float = 0.02,
    batch: SampleBatch | None = None,
) -> ComparisonReport:
    """Compare E Z_kappa(S(t)) from samples with the putative moment.

    The relative-error gate applies to |kappa| <= 2 and is skipped when the
    exact value is zero.
    """
    t = as_rational(t)
    m, omega = _sampleable(params)
    std = standardize(params)
    if batch is None:
        batch = sample_noncentral_wishart(m, std.beta, [w * t for w in omega], count, seed, chunk_size, threads)
    report = ComparisonReport(samples=batch.count, seed=batch.seed, z_gate=z_gate, relative_gate=relative_gate)
    for kappa in kappas:
        kappa = Partition(kappa)
        exact_value = float(putative_moment(kappa, std, t)) if len(kappa) <= m else 0.0
        mean, se = empirical_moment(batch, kappa)
        rel_gate = relative_gate if kappa.size <= 2 else None
        report.rows.append(_row(f"Z{list(kappa)}", exact_value, mean, se, z_gate, rel_gate))
    return report


def verify_laplace(
    params: WishartParams,
    points: Sequence,
    count: int = 1_000_000,
    seed: int = 0,
    *,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    z_gate: float = 4.0,
    batch: SampleBatch | None = None,
) -> ComparisonReport:
    """Compare the empirical transform with the closed form at each point u."""
    m, omega = _sampleable(params)
    std = standardize(params)
    if batch is None:
        batch = sample_noncentral_wishart(m, std.beta, omega, count, seed, chunk_size, threads)
    report = ComparisonReport(samples=batch.count, seed=batch.seed, z_gate=z_gate)
    cone = make_cone(Family.REAL, m)
    closed = WishartParams(cone, std.beta, omega)
    for k, u in enumerate(points):
        exact_value = float(laplace_transform(closed, u))
        mean, se = empirical_laplace(batch, u)
        report.rows.append(_row(f"laplace[{k}]", exact_value, mean, se, z_gate, None))
    return report

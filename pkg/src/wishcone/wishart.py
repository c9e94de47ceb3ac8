"""Non-central Wishart laws on symmetric cones: moments, transforms, existence.

Scale conventions follow the cone form of the Laplace transform

    E exp(-tr(u S)) = det(e + 2 P(sqrt(Sigma)) u)^(-beta) exp(-<(u^{-1} + 2 Sigma)^{-1}, Omega>)

and the "unit" (standardized) scale is Sigma = e/2, for which the transform is
det(e + u)^(-beta) exp(-<u (e + u)^{-1}, Omega>) and

    E Z_kappa(S) = Z_kappa(e) L_kappa^beta(-Omega).

The right-hand side is the *putative moment*; if it is negative for some
kappa the law cannot exist, and (kappa, t, value) is a certificate of that.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import mpmath

from . import exact
from .binomials import general_binomial
from .cones import ConeDescriptor, Family, wallach_contains, wallach_threshold
from .errors import (
    DimensionMismatch,
    InvalidParams,
    LengthExceedsVars,
    NegativeShape,
    NonPositiveT,
    NotNested,
    NotPositiveDefinite,
    OutOfDomain,
    SingularSystem,
)
from .exact import Matrix, RationalLike, as_rational
from .partitions import Partition, _check_alpha, enumerate_partitions, partitions_up_to
from .symfun import SymmetricPolynomial, evaluate, eval_at_ones, jack

UNIT_SCALE = Fraction(1, 2)

Scale = Union[Fraction, Matrix]
Omega = Union[tuple[Fraction, ...], Matrix]


def _is_matrix_like(value) -> bool:
    return len(value) > 0 and isinstance(value[0], (list, tuple))


@dataclass(frozen=True)
class WishartParams:
    """Shape ``beta``, scale and non-centrality of a (putative) Wishart law.

    ``scale`` is either a positive rational ``s`` meaning ``s * e`` (the
    string ``"unit"`` is accepted for ``1/2``) or an exact positive definite
    real symmetric matrix.  ``omega`` is a nonnegative eigenvalue vector of
    length ``rank`` or an exact PSD real symmetric matrix.

    ``omega_metric`` is set only by :func:`standardize` for matrix scales
    that are not multiples of the identity: the effective non-centrality is
    then ``G^{-1/2} omega G^{-1/2}`` with ``G = omega_metric``.  Its spectrum
    is that of ``G^{-1} omega``, which is all the zonal machinery needs.
    """

    cone: ConeDescriptor
    beta: Fraction
    omega: Omega
    scale: Scale = UNIT_SCALE
    omega_metric: Matrix | None = None

    def __post_init__(self):
        beta = as_rational(self.beta)
        if beta < 0:
            raise NegativeShape(f"beta must be non-negative, got {beta}")
        object.__setattr__(self, "beta", beta)
        r = self.cone.rank

        scale = self.scale
        if isinstance(scale, str):
            if scale != "unit":
                raise InvalidParams(f"unknown scale {scale!r}")
            scale = UNIT_SCALE
        if isinstance(scale, (list, tuple)):
            scale = self._real_matrix(scale, "scale")
            if not exact.is_pd(scale):
                raise NotPositiveDefinite("scale matrix must be symmetric positive definite")
        else:
            scale = as_rational(scale)
            if scale <= 0:
                raise NotPositiveDefinite("scalar scale must be positive")
        object.__setattr__(self, "scale", scale)

        omega = self.omega
        if _is_matrix_like(omega):
            omega = self._real_matrix(omega, "omega")
            if not exact.is_psd(omega):
                raise InvalidParams("omega must be symmetric positive semidefinite")
        else:
            omega = tuple(as_rational(x) for x in omega)
            if len(omega) != r:
                raise DimensionMismatch(f"omega needs {r} eigenvalues, got {len(omega)}")
            if any(x < 0 for x in omega):
                raise InvalidParams("omega eigenvalues must be non-negative")
        object.__setattr__(self, "omega", omega)

        if self.omega_metric is not None:
            metric = self._real_matrix(self.omega_metric, "omega_metric")
            if not exact.is_pd(metric):
                raise NotPositiveDefinite("omega_metric must be positive definite")
            if not self.omega_is_matrix:
                raise InvalidParams("omega_metric requires a matrix omega")
            object.__setattr__(self, "omega_metric", metric)

    def _real_matrix(self, rows, what: str) -> Matrix:
        if self.cone.family is not Family.REAL:
            raise InvalidParams(f"exact matrix {what} is only supported for the real symmetric family")
        mat = exact.to_matrix(rows)
        if len(mat) != self.cone.rank:
            raise DimensionMismatch(f"{what} must be {self.cone.rank}x{self.cone.rank}")
        return mat

    @property
    def omega_is_matrix(self) -> bool:
        return _is_matrix_like(self.omega)

    @property
    def scale_is_matrix(self) -> bool:
        return isinstance(self.scale, tuple)

    @property
    def is_standardized(self) -> bool:
        if self.scale_is_matrix:
            return self.scale == exact.identity(self.cone.rank, UNIT_SCALE)
        return self.scale == UNIT_SCALE

    @property
    def omega_rank(self) -> int:
        if self.omega_is_matrix:
            return exact.rank(self.omega)
        return sum(1 for x in self.omega if x)

    def omega_power_sums(self, k: int) -> dict[int, Fraction]:
        """``{j: sum of j-th powers of the effective non-centrality eigenvalues}``."""
        if not self.omega_is_matrix:
            return {j: sum((x**j for x in self.omega), Fraction(0)) for j in range(k + 1)}
        mat = self.omega
        if self.omega_metric is not None:
            mat = exact.matmul(exact.inverse(self.omega_metric), mat)
        return exact.power_traces(mat, k)

    def scaled_omega(self, t: RationalLike) -> "WishartParams":
        t = as_rational(t)
        if self.omega_is_matrix:
            return replace(self, omega=exact.mat_scale(self.omega, t))
        return replace(self, omega=tuple(x * t for x in self.omega))


class FailedCondition(str, Enum):
    GINDIKIN_WALLACH = "GindikinWallach"
    RANK_CONDITION = "RankCondition"


@dataclass(frozen=True)
class Certificate:
    kappa: Partition
    t: Fraction
    value: Fraction

    def to_dict(self) -> dict:
        return {"kappa": list(self.kappa), "t": exact.format_rational(self.t), "value": exact.format_rational(self.value)}


@dataclass(frozen=True)
class ExistenceVerdict:
    passes: bool
    failed_condition: FailedCondition | None = None
    certificate: Certificate | None = None

    def to_dict(self) -> dict:
        return {
            "passes": self.passes,
            "failed_condition": self.failed_condition.value if self.failed_condition else None,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


@dataclass(frozen=True)
class ZonalNormalization:
    degree: int
    rank: int
    peirce: int
    coefficients: dict[Partition, Fraction] = field(default_factory=dict)


# -- Pochhammer symbols -------------------------------------------------------


def pochhammer(b: RationalLike, k: int) -> Fraction:
    """Rising factorial b (b + 1) ... (b + k - 1)."""
    b = as_rational(b)
    out = Fraction(1)
    for i in range(k):
        out *= b + i
    return out


def pochhammer_general(a: RationalLike, kappa: Partition, alpha: RationalLike) -> Fraction:
    """prod_i (a - (i - 1)/alpha)_{kappa_i} with rising one-dimensional factors."""
    al = _check_alpha(alpha)
    a = as_rational(a)
    out = Fraction(1)
    for i, k in enumerate(Partition(kappa)):
        out *= pochhammer(a - i / al, k)
    return out


def pochhammer_ratio(a: RationalLike, kappa: Partition, sigma: Partition, alpha: RationalLike) -> Fraction:
    """(a)_kappa / (a)_sigma evaluated as a product, so it stays finite when (a)_sigma = 0."""
    al = _check_alpha(alpha)
    a = as_rational(a)
    kappa, sigma = Partition(kappa), Partition(sigma)
    if not kappa.contains(sigma):
        raise NotNested(f"{sigma} is not contained in {kappa}")
    out = Fraction(1)
    for i, k in enumerate(kappa):
        s = sigma.part(i + 1)
        out *= pochhammer(a - i / al + s, k - s)
    return out


# -- zonal polynomials --------------------------------------------------------


def _normalized_jack(kappa: Partition, r: int, alpha: Fraction) -> SymmetricPolynomial:
    poly = jack(kappa, r, alpha)
    return poly * (1 / eval_at_ones(poly))


@lru_cache(maxsize=None)
def _zonal_coefficients(k: int, r: int, d: int) -> tuple[tuple[Partition, Fraction], ...]:
    alpha = Fraction(2, d)
    kappas = enumerate_partitions(k, r)
    normalized = {kappa: _normalized_jack(kappa, r, alpha) for kappa in kappas}
    # (t_1 + ... + t_r)^k = sum_mu k!/prod(mu_i!) m_mu
    target = {mu: Fraction(math.factorial(k), math.prod(math.factorial(p) for p in mu)) for mu in kappas}
    solved: dict[Partition, Fraction] = {}
    for mu in kappas:
        pivot = normalized[mu].coefficient(mu)
        if pivot == 0:
            raise SingularSystem(f"zero pivot at {mu}")
        rest = sum((c * normalized[kappa].coefficient(mu) for kappa, c in solved.items()), Fraction(0))
        solved[mu] = (target[mu] - rest) / pivot
    if any(c <= 0 for c in solved.values()):
        raise SingularSystem("zonal normalization produced a non-positive constant")
    return tuple(solved.items())


def zonal_normalization(k: int, r: int, d: int) -> ZonalNormalization:
    """Constants c_kappa with sum_{|kappa|=k} c_kappa J_kappa/J_kappa(1^r) = tr^k."""
    if k < 0 or r < 1 or d < 1:
        raise ValueError("need k >= 0, r >= 1, d >= 1")
    return ZonalNormalization(k, r, d, dict(_zonal_coefficients(k, r, d)))


def zonal_constant(kappa: Partition, r: int, d: int) -> Fraction:
    """Z_kappa(e) = c_kappa."""
    kappa = Partition(kappa)
    if len(kappa) > r:
        raise LengthExceedsVars(f"{kappa} has more than {r} parts")
    return dict(_zonal_coefficients(kappa.size, r, d))[kappa]


def zonal_polynomial(kappa: Partition, r: int, d: int) -> SymmetricPolynomial:
    """Z_kappa as a symmetric polynomial in the ``r`` eigenvalues."""
    kappa = Partition(kappa)
    return _normalized_jack(kappa, r, Fraction(2, d)) * zonal_constant(kappa, r, d)


def zonal_value(kappa: Partition, eigenvalues: Sequence[RationalLike], d: int) -> Fraction:
    r = len(eigenvalues)
    if r == 0:
        raise DimensionMismatch("need at least one eigenvalue")
    return evaluate(zonal_polynomial(kappa, r, d), eigenvalues)


def zonal_value_from_power_sums(kappa: Partition, power_sums, r: int, d: int):
    """Z_kappa through power sums tr(x^j); exact for Fractions, approximate for floats."""
    return zonal_polynomial(kappa, r, d).eval_power_sums(power_sums)


# -- Laguerre polynomials and moments -----------------------------------------


def _spherical_values(kappa: Partition, r: int, alpha: Fraction, *, eigenvalues=None, power_sums=None):
    """J_sigma(x)/J_sigma(1^r) for every sigma ⊆ kappa."""
    out = {}
    for sigma in partitions_up_to(kappa.size, len(kappa)):
        if not kappa.contains(sigma):
            continue
        phi = _normalized_jack(sigma, r, alpha)
        out[sigma] = evaluate(phi, eigenvalues) if eigenvalues is not None else phi.eval_power_sums(power_sums)
    return out


def _laguerre_from_values(kappa: Partition, beta: Fraction, alpha: Fraction, t: Fraction, phis) -> Fraction:
    total = Fraction(0)
    for sigma, phi in phis.items():
        if not phi:
            continue
        total += (
            general_binomial(kappa, sigma, alpha)
            * pochhammer_ratio(beta, kappa, sigma, alpha)
            * t**sigma.size
            * phi
        )
    return total


def laguerre(
    kappa: Partition,
    beta: RationalLike,
    omega: Sequence[RationalLike],
    t: RationalLike,
    cone: ConeDescriptor,
) -> Fraction:
    """L_kappa^beta(-t Omega) for Omega with eigenvalues ``omega``.

    sum over sigma ⊆ kappa of (kappa choose sigma)_{2/d} (beta)_kappa/(beta)_sigma
    Z_sigma(t omega)/Z_sigma(e).
    """
    kappa = Partition(kappa)
    omega = [as_rational(x) for x in omega]
    t = as_rational(t)
    if len(omega) != cone.rank:
        raise DimensionMismatch(f"omega needs {cone.rank} eigenvalues")
    if len(kappa) > cone.rank:
        raise LengthExceedsVars(f"{kappa} has more than {cone.rank} parts")
    if t < 0 or any(x < 0 for x in omega):
        raise InvalidParams("t and omega must be non-negative")
    phis = _spherical_values(kappa, cone.rank, cone.alpha, eigenvalues=omega)
    return _laguerre_from_values(kappa, as_rational(beta), cone.alpha, t, phis)


def putative_moment(kappa: Partition, params: WishartParams, t: RationalLike) -> Fraction:
    """Z_kappa(e) L_kappa^beta(-t Omega): the value E Z_kappa(S(t)) must take if the law exists."""
    if not params.is_standardized:
        raise InvalidParams("putative_moment needs standardized (unit-scale) parameters")
    kappa = Partition(kappa)
    t = as_rational(t)
    if t < 0:
        raise InvalidParams("t must be non-negative")
    cone = params.cone
    if len(kappa) > cone.rank:
        raise LengthExceedsVars(f"{kappa} has more than {cone.rank} parts")
    if params.omega_is_matrix:
        phis = _spherical_values(kappa, cone.rank, cone.alpha, power_sums=params.omega_power_sums(kappa.size))
    else:
        phis = _spherical_values(kappa, cone.rank, cone.alpha, eigenvalues=params.omega)
    lag = _laguerre_from_values(kappa, params.beta, cone.alpha, t, phis)
    return zonal_constant(kappa, cone.rank, cone.peirce) * lag


# -- existence ----------------------------------------------------------------

_T_GRID = [Fraction(0)] + [Fraction(2) ** e for e in range(65)] + [Fraction(1, 2**e) for e in range(1, 65)]


def conditions_hold(cone: ConeDescriptor, beta: RationalLike, omega_rank: int) -> tuple[bool, bool]:
    """(beta in the Wallach set, rank condition) as plain predicates."""
    beta = as_rational(beta)
    in_wallach = wallach_contains(cone, beta)
    rank_ok = 2 * beta >= 2 * wallach_threshold(cone) or cone.peirce * omega_rank <= 2 * beta
    return in_wallach, rank_ok


def existence_check(params: WishartParams) -> ExistenceVerdict:
    """Decide the necessary conditions and certify any failure.

    A failure carries (kappa, t, value) with value = putative_moment(kappa,
    standardize(params), t) < 0 exactly.
    """
    std = standardize(params)
    cone, beta = std.cone, std.beta
    d, r = cone.peirce, cone.rank
    in_wallach, rank_ok = conditions_hold(cone, beta, std.omega_rank)
    if in_wallach and rank_ok:
        return ExistenceVerdict(True)

    if not in_wallach:
        # beta lies in (d(l-1)/2, d l/2) with l + 1 <= r: the t = 0 term (beta)_{1^{l+1}} < 0
        l = math.floor(2 * beta / d) + 1
        kappa = Partition((1,) * (l + 1))
        value = putative_moment(kappa, std, 0)
        if value >= 0:
            raise RuntimeError(f"zero-order certificate unexpectedly non-negative: {value}")
        return ExistenceVerdict(False, FailedCondition.GINDIKIN_WALLACH, Certificate(kappa, Fraction(0), value))

    k = std.omega_rank
    j = int(2 * beta / d)
    candidates = []
    if k + 1 <= r:
        candidates.append(Partition((1,) * (k + 1)))
    if Partition((1,) * (j + 2)) not in candidates:
        candidates.append(Partition((1,) * (j + 2)))
    for kappa in candidates:
        for t in _T_GRID:
            value = putative_moment(kappa, std, t)
            if value < 0:
                return ExistenceVerdict(False, FailedCondition.RANK_CONDITION, Certificate(kappa, t, value))
    raise RuntimeError("no negative putative moment found on the t grid")


def verify_certificate(params: WishartParams, certificate: Certificate) -> bool:
    return putative_moment(certificate.kappa, standardize(params), certificate.t) < 0


# -- standardization ------------------------------------------------------------


def standardize(params: WishartParams) -> WishartParams:
    """Move to unit scale e/2 keeping the rank of the non-centrality.

    Scalar scale s*e: Omega' = Omega/(2s).  Matrix scale Sigma:
    Omega' = (2 Sigma)^{-1/2} Omega (2 Sigma)^{-1/2}, stored as omega together
    with ``omega_metric = 2 Sigma`` unless Sigma is a multiple of the identity.
    """
    if params.is_standardized:
        return replace(params, scale=UNIT_SCALE)
    scale = params.scale
    if params.scale_is_matrix:
        if exact.is_scalar_matrix(scale):
            scale = scale[0][0]
        else:
            if not params.omega_is_matrix:
                if any(params.omega):
                    raise InvalidParams("a non-scalar scale matrix needs omega as a matrix, not eigenvalues")
                return replace(params, scale=UNIT_SCALE)
            if params.omega_metric is not None:
                raise InvalidParams("parameters already carry an omega metric")
            return replace(params, scale=UNIT_SCALE, omega_metric=exact.mat_scale(scale, 2))
    factor = 1 / (2 * scale)
    return replace(params.scaled_omega(factor), scale=UNIT_SCALE)


def tilt(params: WishartParams, t: RationalLike) -> WishartParams:
    """Exponential tilt taking Gamma(beta, t e; Omega) to Gamma(beta, e; Omega/t^2)."""
    t = as_rational(t)
    if t <= 0:
        raise NonPositiveT(f"t must be positive, got {t}")
    scale = params.scale
    if params.scale_is_matrix:
        if not exact.is_scalar_matrix(scale):
            raise InvalidParams("tilt needs a scale of the form t*e")
        scale = scale[0][0]
    if scale != t:
        raise InvalidParams(f"scale {scale} is not {t}*e")
    return replace(params.scaled_omega(1 / t**2), scale=Fraction(1))


# -- Laplace transform ------------------------------------------------------------


def _scale_matrix(params: WishartParams) -> Matrix:
    if params.scale_is_matrix:
        return params.scale
    return exact.identity(params.cone.rank, params.scale)


def _omega_matrix(params: WishartParams) -> Matrix:
    if params.omega_is_matrix:
        return params.omega
    return exact.diagonal(params.omega)


def in_laplace_domain(params: WishartParams, u) -> bool:
    """u in -Sigma^{-1}/2 + interior(cone), decided exactly."""
    u = exact.to_matrix(u)
    sigma = _scale_matrix(params)
    return exact.is_pd(exact.mat_add(exact.mat_scale(exact.inverse(sigma), Fraction(1, 2)), u))


def laplace_transform(params: WishartParams, u, *, convention: str = "cone", dps: int | None = None):
    """E exp(-tr(u S)) in closed form for the real symmetric family.

    ``convention="cone"`` (default) uses exp(-tr(Omega u (I + 2 Sigma u)^{-1}));
    ``convention="matrix"`` uses exp(-2 tr(Omega u Sigma (I + 2 u Sigma)^{-1})).
    The two agree at the unit scale Sigma = I/2.  The domain check
    Sigma^{-1}/2 + u > 0 is exact (float entries are taken at their binary
    value).  The result is an ``mpmath.mpf`` with ``dps`` digits (default
    30); its unbounded exponent keeps values near the domain boundary finite.
    """
    if params.cone.family is not Family.REAL:
        raise InvalidParams("closed-form transform is implemented for real symmetric matrices")
    if convention not in ("cone", "matrix"):
        raise ValueError(f"unknown convention {convention!r}")
    u = exact.to_matrix(u)
    r = params.cone.rank
    if len(u) != r:
        raise DimensionMismatch(f"u must be {r}x{r}")
    if not exact.is_symmetric(u):
        raise InvalidParams("u must be symmetric")
    if not in_laplace_domain(params, u):
        raise OutOfDomain("Sigma^{-1}/2 + u is not positive definite")
    sigma = _scale_matrix(params)
    omega = _omega_matrix(params)
    eye = exact.identity(r)
    determinant = exact.det(exact.mat_add(eye, exact.mat_scale(exact.matmul(sigma, u), 2)))
    with mpmath.workdps(dps or 30):
        if params.omega_metric is None:
            if convention == "cone":
                m = exact.matmul(u, exact.inverse(exact.mat_add(eye, exact.mat_scale(exact.matmul(sigma, u), 2))))
                expo = exact.trace(exact.matmul(omega, m))
            else:
                us = exact.matmul(u, sigma)
                m = exact.matmul(us, exact.inverse(exact.mat_add(eye, exact.mat_scale(us, 2))))
                expo = 2 * exact.trace(exact.matmul(omega, m))
            expo = _mpf(expo)
        else:
            root_inv = mpmath.inverse(mpmath.sqrtm(_mp_matrix(params.omega_metric)))
            eff = root_inv * _mp_matrix(omega) * root_inv
            um = _mp_matrix(u)
            expo = _mp_trace(eff * um * mpmath.inverse(mpmath.eye(r) + 2 * _mp_matrix(sigma) * um))
        value = mpmath.power(_mpf(determinant), -_mpf(params.beta)) * mpmath.exp(-expo)
        return +value


def _mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def _mp_matrix(a: Matrix):
    return mpmath.matrix([[_mpf(x) for x in row] for row in a])


def _mp_trace(a) -> mpmath.mpf:
    return mpmath.fsum(a[i, i] for i in range(a.rows))

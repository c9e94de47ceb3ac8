"""Exact Jack-polynomial machinery and existence checks for non-central Wishart laws on symmetric cones."""
from .binomials import (
    BinomialTable,
    PositivityReport,
    binomial_table,
    contiguous_binomial,
    general_binomial,
    oracle_binomial,
    positivity_scan,
)
from .cones import ConeDescriptor, Family, gindikin_contains, make_cone, parse_cone, wallach_contains, wallach_points
from .errors import *  # noqa: F401,F403
from .montecarlo import (
    ComparisonReport,
    SampleBatch,
    empirical_laplace,
    empirical_moment,
    sample_noncentral_wishart,
    verify_laplace,
    verify_moment_formula,
)
from .partitions import Partition, arm_leg, contiguous, enumerate_partitions, hooks, j_constant, partitions_up_to
from .symfun import SymmetricPolynomial, apply_D, eigenvalue, eval_at_ones, evaluate, jack, jack_at_ones
from .wishart import (
    Certificate,
    ExistenceVerdict,
    FailedCondition,
    WishartParams,
    ZonalNormalization,
    existence_check,
    laguerre,
    laplace_transform,
    pochhammer,
    pochhammer_general,
    pochhammer_ratio,
    putative_moment,
    standardize,
    tilt,
    verify_certificate,
    zonal_normalization,
    zonal_polynomial,
    zonal_value,
)

"""Generalized binomial coefficients for Jack polynomials.

Three routes are provided:

* :func:`contiguous_binomial` -- closed hook-length product for (sigma^i choose sigma);
* :func:`general_binomial` -- the top-down recursion on |kappa| - |sigma|
  driven by the contiguous coefficients;
* :func:`oracle_binomial` -- direct expansion of J_kappa(t + 1^m)/J_kappa(1^m)
  in the normalized Jack basis, independent of the other two.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import InsufficientVars, LengthExceedsVars
from .exact import RationalLike
from .partitions import Partition, _check_alpha, contiguous, hooks, j_constant, partitions_up_to
from .symfun import eval_at_ones, jack


def contiguous_binomial(sigma: Partition, i: int, alpha: RationalLike) -> Fraction:
    """(sigma^i choose sigma)_alpha via hook lengths.

    Only cells in row ``i`` or in the column ``c = sigma_i + 1`` of the new box
    change their hooks between sigma and sigma^i.  Cells outside column ``c``
    contribute lower_sigma * upper_{sigma^i}; cells in column ``c`` contribute
    upper_sigma * lower_{sigma^i}; the total is divided by j_sigma.
    """
    a = _check_alpha(alpha)
    sigma = Partition(sigma)
    bigger = contiguous(sigma, i)
    new_col = sigma.part(i) + 1
    num = Fraction(1)
    for s in sigma.cells():
        up_s, low_s = hooks(sigma, s, a)
        up_b, low_b = hooks(bigger, s, a)
        if s.col != new_col:
            num *= low_s * up_b
        else:
            num *= up_s * low_b
    return num / j_constant(sigma, a)


def general_binomial(kappa: Partition, sigma: Partition, alpha: RationalLike) -> Fraction:
    """(kappa choose sigma)_alpha by recursion on d = |kappa| - |sigma|.

    d * (kappa choose sigma) = sum_i (sigma^i choose sigma)(kappa choose sigma^i),
    with (kappa choose sigma) = delta at d = 0 and zero for d < 0.  Terms with
    sigma^i not contained in kappa vanish and are skipped.
    """
    return _general(Partition(kappa), Partition(sigma), _check_alpha(alpha))


@lru_cache(maxsize=None)
def _general(kappa: Partition, sigma: Partition, alpha: Fraction) -> Fraction:
    d = kappa.size - sigma.size
    if d < 0:
        return Fraction(0)
    if d == 0:
        return Fraction(int(kappa == sigma))
    if not kappa.contains(sigma):
        return Fraction(0)
    total = Fraction(0)
    for i in sigma.contiguous_indices(len(kappa)):
        up = contiguous(sigma, i)
        if kappa.contains(up):
            total += contiguous_binomial(sigma, i, alpha) * _general(kappa, up, alpha)
    return total / d


def _shifted_coefficients(kappa: Partition, m: int, alpha: Fraction) -> dict[Partition, Fraction]:
    """Monomial coefficients of J_kappa(t + 1^m) / J_kappa(1^m).

    For each term t^e of J_kappa, prod_i (t_i + 1)^{e_i} is expanded and only
    exponent vectors in non-increasing order are kept (the result is
    symmetric, so those determine everything).
    """
    poly = jack(kappa, m, alpha)
    norm = eval_at_ones(poly)
    out: dict[Partition, Fraction] = {}
    for e, c in poly.expand().items():
        # enumerate f <= e componentwise with f non-increasing
        def rec(idx: int, prefix: tuple[int, ...], weight: int):
            if idx == m:
                key = Partition(prefix)
                out[key] = out.get(key, Fraction(0)) + c * weight
                return
            cap = e[idx] if idx == 0 else min(e[idx], prefix[-1])
            for f in range(cap + 1):
                rec(idx + 1, prefix + (f,), weight * comb(e[idx], f))

        rec(0, (), 1)
    return {k: v / norm for k, v in out.items() if v}


def oracle_binomial(kappa: Partition, m: int, alpha: RationalLike) -> dict[Partition, Fraction]:
    """All (kappa choose sigma)_alpha by exact expansion in the Jack basis.

    Requires ``m >= |kappa|`` so every sigma with |sigma| <= |kappa| is visible
    in ``m`` variables.
    """
    kappa = Partition(kappa)
    a = _check_alpha(alpha)
    if len(kappa) > m:
        raise LengthExceedsVars(f"{kappa} has more than {m} parts")
    if m < kappa.size:
        raise InsufficientVars(f"need at least {kappa.size} variables, got {m}")
    target = _shifted_coefficients(kappa, m, a)
    result: dict[Partition, Fraction] = {}
    by_degree: dict[int, list[Partition]] = {}
    for sigma in partitions_up_to(kappa.size, m):
        by_degree.setdefault(sigma.size, []).append(sigma)
    for degree, sigmas in by_degree.items():
        # sigmas arrive in decreasing lex order, so J_sigma only touches later keys
        normalized = {}
        for sigma in sigmas:
            poly = jack(sigma, m, a)
            normalized[sigma] = poly * (1 / eval_at_ones(poly))
        solved: dict[Partition, Fraction] = {}
        for mu in sigmas:
            rest = sum((b * normalized[s].coefficient(mu) for s, b in solved.items()), Fraction(0))
            solved[mu] = (target.get(mu, Fraction(0)) - rest) / normalized[mu].coefficient(mu)
        result.update({s: b for s, b in solved.items() if b})
    return result


@dataclass(frozen=True)
class BinomialTable:
    alpha: Fraction
    entries: dict[tuple[Partition, Partition], Fraction] = field(default_factory=dict)


def binomial_table(max_degree: int, max_length: int, alpha: RationalLike) -> BinomialTable:
    """Every nonzero (kappa choose sigma) with sigma ⊆ kappa, |kappa| <= max_degree."""
    a = _check_alpha(alpha)
    parts = partitions_up_to(max_degree, max_length)
    entries = {}
    for kappa in parts:
        for sigma in parts:
            if sigma.size <= kappa.size and kappa.contains(sigma):
                entries[(kappa, sigma)] = general_binomial(kappa, sigma, a)
    return BinomialTable(a, entries)


@dataclass
class PositivityReport:
    alpha: Fraction
    max_degree: int
    max_length: int
    pairs_checked: int = 0
    contiguous_checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def positivity_scan(max_degree: int, m: int, alpha: RationalLike) -> PositivityReport:
    """Check (kappa choose sigma) >= 0 and (sigma^i choose sigma) > 0 exhaustively."""
    a = _check_alpha(alpha)
    report = PositivityReport(a, max_degree, m)
    parts = partitions_up_to(max_degree, m)
    for kappa in parts:
        for sigma in parts:
            if sigma.size > kappa.size:
                continue
            value = general_binomial(kappa, sigma, a)
            report.pairs_checked += 1
            if value < 0:
                report.violations.append(
                    {"kind": "general", "kappa": list(kappa), "sigma": list(sigma), "value": value}
                )
    for sigma in partitions_up_to(max_degree - 1, m) if max_degree > 0 else []:
        for i in sigma.contiguous_indices(m):
            value = contiguous_binomial(sigma, i, a)
            report.contiguous_checked += 1
            if value <= 0:
                report.violations.append(
                    {"kind": "contiguous", "sigma": list(sigma), "i": i, "value": value}
                )
    return report

"""Symmetric polynomials in the monomial basis and Jack polynomials.

Jack polynomials are built as eigenfunctions of the operator

    D(alpha) = (alpha/2) sum_i t_i^2 d^2/dt_i^2 + sum_{i != j} t_i^2/(t_i - t_j) d/dt_i

restricted to the span of monomial symmetric functions dominated by the
index partition.  The matrix of D(alpha) is triangular in dominance order,
so the eigenvector is obtained by back substitution in exact arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterator, Mapping, Sequence

from .errors import DimensionMismatch, LengthExceedsVars, SingularSystem
from .exact import RationalLike, as_rational
from .partitions import Partition, _check_alpha, enumerate_partitions

Exponent = tuple[int, ...]


def _multiset_permutations(values: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts, reverse=True)
    n = len(values)
    current: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(current) == n:
            yield tuple(current)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                current.append(k)
                yield from rec()
                current.pop()
                counts[k] += 1

    yield from rec()


@lru_cache(maxsize=None)
def monomial_exponents(mu: Partition, m: int) -> tuple[Exponent, ...]:
    """Exponent vectors of all distinct terms of ``m_mu`` in ``m`` variables."""
    return tuple(_multiset_permutations(Partition(mu).padded(m)))


def monomial_at_ones(mu: Partition, m: int) -> int:
    """Number of terms of ``m_mu`` in ``m`` variables, i.e. ``m_mu(1^m)``."""
    mu = Partition(mu)
    if len(mu) > m:
        return 0
    mult = mu.multiplicities()
    return factorial(m) // (factorial(m - len(mu)) * prod(factorial(c) for c in mult.values()))


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        yield [[first]] + sub
        for k in range(len(sub)):
            yield sub[:k] + [[first] + sub[k]] + sub[k + 1:]


@lru_cache(maxsize=None)
def power_sum_expansion(mu: Partition) -> tuple[tuple[Fraction, tuple[int, ...]], ...]:
    """Express ``m_mu`` as a polynomial in power sums ``p_j``.

    Uses Moebius inversion on the lattice of set partitions of the parts:
    the augmented monomial ``sum over injective index maps`` equals
    ``sum_pi prod_B (-1)^{|B|-1} (|B|-1)! p_{mu_B}``, and ``m_mu`` is that
    divided by the product of factorials of part multiplicities.
    Returns ``((coef, (j1, j2, ...)), ...)`` meaning ``coef * p_j1 * p_j2 ...``.
    """
    mu = Partition(mu)
    denom = prod(factorial(c) for c in mu.multiplicities().values())
    acc: dict[tuple[int, ...], Fraction] = {}
    for blocks in _set_partitions(list(range(len(mu)))):
        coef = Fraction(prod((-1) ** (len(b) - 1) * factorial(len(b) - 1) for b in blocks), denom)
        key = tuple(sorted((sum(mu[i] for i in b) for b in blocks), reverse=True))
        acc[key] = acc.get(key, Fraction(0)) + coef
    return tuple((c, k) for k, c in sorted(acc.items(), reverse=True) if c)


def monomial_from_power_sums(mu: Partition, power_sums: Mapping[int, object] | Callable[[int], object]):
    """Evaluate ``m_mu`` given power sums; works for Fractions, floats and numpy arrays."""
    get = power_sums if callable(power_sums) else power_sums.__getitem__
    total = None
    for coef, js in power_sum_expansion(Partition(mu)):
        term = prod((get(j) for j in js), start=1)
        term = term * (coef if isinstance(term, Fraction) or isinstance(term, int) else float(coef))
        total = term if total is None else total + term
    return Fraction(1) if total is None else total


@dataclass(frozen=True, eq=False)
class SymmetricPolynomial:
    """``sum_mu c_mu m_mu`` in ``num_vars`` variables with rational coefficients."""

    num_vars: int
    coeffs: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.num_vars < 1:
            raise DimensionMismatch("num_vars must be at least 1")
        clean: dict[Partition, Fraction] = {}
        for key, value in self.coeffs.items():
            key = Partition(key)
            if len(key) > self.num_vars:
                raise LengthExceedsVars(f"{key} has more than {self.num_vars} parts")
            value = as_rational(value)
            if value:
                clean[key] = clean.get(key, Fraction(0)) + value
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v})

    @classmethod
    def constant(cls, value: RationalLike, num_vars: int) -> "SymmetricPolynomial":
        return cls(num_vars, {Partition(): as_rational(value)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricPolynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = " + ".join(f"{v}*m{tuple(k)}" for k, v in self.sorted_items())
        return f"SymmetricPolynomial({self.num_vars}, {terms or '0'})"

    def sorted_items(self) -> list[tuple[Partition, Fraction]]:
        """Graded, then decreasing lexicographic."""
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0].size, tuple(-p for p in kv[0])))

    def coefficient(self, mu) -> Fraction:
        return self.coeffs.get(Partition(mu), Fraction(0))

    def _check_same(self, other: "SymmetricPolynomial"):
        if self.num_vars != other.num_vars:
            raise DimensionMismatch("polynomials live in different numbers of variables")

    def __add__(self, other: "SymmetricPolynomial") -> "SymmetricPolynomial":
        self._check_same(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SymmetricPolynomial(self.num_vars, out)

    def __sub__(self, other: "SymmetricPolynomial") -> "SymmetricPolynomial":
        return self + other * -1

    def __mul__(self, scalar: RationalLike) -> "SymmetricPolynomial":
        s = as_rational(scalar)
        return SymmetricPolynomial(self.num_vars, {k: v * s for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def restrict(self, m: int) -> "SymmetricPolynomial":
        """Set the variables beyond the first ``m`` to zero."""
        return SymmetricPolynomial(m, {k: v for k, v in self.coeffs.items() if len(k) <= m})

    def expand(self) -> dict[Exponent, Fraction]:
        """Full expansion as ``{exponent vector: coefficient}``."""
        out: dict[Exponent, Fraction] = {}
        for mu, c in self.coeffs.items():
            for e in monomial_exponents(mu, self.num_vars):
                out[e] = c
        return out

    @classmethod
    def from_expansion(cls, terms: Mapping[Exponent, Fraction], num_vars: int) -> "SymmetricPolynomial":
        """Read off monomial coefficients from sorted exponent vectors.

        Raises if the expansion is not symmetric.
        """
        coeffs = {}
        for e, c in terms.items():
            if c and list(e) == sorted(e, reverse=True):
                coeffs[Partition(e)] = c
        poly = cls(num_vars, coeffs)
        expanded = poly.expand()
        if any(terms.get(e, 0) != c for e, c in expanded.items()) or any(
            c and e not in expanded for e, c in terms.items()
        ):
            raise ValueError("expansion is not symmetric")
        return poly

    def __call__(self, point: Sequence[RationalLike]) -> Fraction:
        return evaluate(self, point)

    def eval_power_sums(self, power_sums):
        """Evaluate through power sums ``p_j`` (exact or floating)."""
        total = None
        for mu, c in self.coeffs.items():
            v = monomial_from_power_sums(mu, power_sums)
            term = v * (c if isinstance(v, (Fraction, int)) else float(c))
            total = term if total is None else total + term
        return Fraction(0) if total is None else total


def evaluate(p: SymmetricPolynomial, point: Sequence[RationalLike]) -> Fraction:
    """Exact value of ``p`` at ``point`` (length must equal ``p.num_vars``)."""
    if len(point) != p.num_vars:
        raise DimensionMismatch(f"point has {len(point)} entries, polynomial has {p.num_vars} variables")
    x = [as_rational(v) for v in point]
    total = Fraction(0)
    for mu, c in p.coeffs.items():
        s = Fraction(0)
        for e in monomial_exponents(mu, p.num_vars):
            term = Fraction(1)
            for xi, ei in zip(x, e):
                if ei:
                    term *= xi**ei
            s += term
        total += c * s
    return total


def eval_at_ones(p: SymmetricPolynomial) -> Fraction:
    return sum((c * monomial_at_ones(mu, p.num_vars) for mu, c in p.coeffs.items()), Fraction(0))


@lru_cache(maxsize=None)
def _pair_action(mu: Partition, m: int) -> tuple[tuple[Partition, int], ...]:
    """Image of ``m_mu`` under ``sum_{i != j} t_i^2/(t_i - t_j) d/dt_i``.

    For a pair (i, j) with exponents a > b the monomial and its swap
    combine to (xy)^b [a(x^{k+1} - y^{k+1}) - b xy (x^{k-1} - y^{k-1})],
    k = a - b, and the exact quotient by (x - y) is
    (xy)^b [a (x^k + y^k) + (a - b) sum_{l=1}^{k-1} x^l y^{k-l}].
    Equal exponents a = b give a (xy)^a.  Only the representative with
    a >= b is visited; symmetry of ``m_mu`` supplies the swapped partner.
    """
    out: dict[Exponent, int] = {}

    def bump(e: list[int], coef: int):
        key = tuple(e)
        out[key] = out.get(key, 0) + coef

    for e in monomial_exponents(mu, m):
        for i in range(m):
            for j in range(i + 1, m):
                a, b = e[i], e[j]
                if a < b:
                    continue
                if a == b:
                    if a:
                        bump(list(e), a)
                    continue
                k = a - b
                base = list(e)
                base[i], base[j] = b + k, b
                bump(base, a)
                base[i], base[j] = b, b + k
                bump(base, a)
                for l in range(1, k):
                    base[i], base[j] = b + l, b + k - l
                    bump(base, a - b)
    return tuple(
        (Partition(e), c) for e, c in out.items() if c and list(e) == sorted(e, reverse=True)
    )


def _second_derivative_weight(mu: Partition) -> int:
    return sum(p * (p - 1) for p in mu)


def apply_D(p: SymmetricPolynomial, alpha: RationalLike) -> SymmetricPolynomial:
    """Exact image of ``p`` under the Laplace-Beltrami-type operator D(alpha)."""
    a = _check_alpha(alpha)
    out: dict[Partition, Fraction] = {}
    for mu, c in p.coeffs.items():
        diag = a / 2 * _second_derivative_weight(mu)
        if diag:
            out[mu] = out.get(mu, Fraction(0)) + c * diag
        for nu, w in _pair_action(mu, p.num_vars):
            out[nu] = out.get(nu, Fraction(0)) + c * w
    return SymmetricPolynomial(p.num_vars, out)


def eigenvalue(kappa: Partition, m: int, alpha: RationalLike) -> Fraction:
    """Eigenvalue of D(alpha) on J_kappa in ``m`` variables."""
    kappa = Partition(kappa)
    a = as_rational(alpha)
    if len(kappa) > m:
        raise LengthExceedsVars(f"{kappa} has more than {m} parts")
    return (
        a * sum(Fraction(k * (k - 1), 2) for k in kappa)
        - sum(i * k for i, k in enumerate(kappa))
        + (m - 1) * kappa.size
    )


@lru_cache(maxsize=None)
def _jack_coefficients(kappa: Partition, alpha: Fraction) -> tuple[tuple[Partition, Fraction], ...]:
    n = kappa.size
    if n == 0:
        return ((Partition(), Fraction(1)),)
    basis = [mu for mu in enumerate_partitions(n, n) if kappa.dominates(mu)]
    e_top = eigenvalue(kappa, n, alpha)
    images = {mu: apply_D(SymmetricPolynomial(n, {mu: 1}), alpha).coeffs for mu in basis}
    x: dict[Partition, Fraction] = {kappa: Fraction(1)}
    for nu in basis[1:]:
        if images[nu].get(nu, 0) != eigenvalue(nu, n, alpha):
            raise SingularSystem(f"diagonal entry of D at {nu} disagrees with its eigenvalue")
        gap = e_top - eigenvalue(nu, n, alpha)
        if gap <= 0:
            raise SingularSystem(f"eigenvalue gap {gap} between {kappa} and {nu} is not positive")
        rhs = sum((images[mu].get(nu, Fraction(0)) * x[mu] for mu in x), Fraction(0))
        x[nu] = rhs / gap
    ones = Partition((1,) * n)
    scale = Fraction(factorial(n)) / x[ones]
    return tuple((mu, v * scale) for mu, v in x.items() if v)


def jack(kappa: Partition, m: int, alpha: RationalLike) -> SymmetricPolynomial:
    """Jack polynomial J_kappa(t; alpha) in ``m`` variables, J-normalized.

    The coefficient of ``m_{1^n}`` (n = |kappa|) equals n!.  Coefficients in
    the monomial basis do not depend on the number of variables, so the
    polynomial is built in ``|kappa|`` variables and then restricted.
    """
    kappa = Partition(kappa)
    a = _check_alpha(alpha)
    if len(kappa) > m:
        raise LengthExceedsVars(f"{kappa} has more than {m} parts")
    return SymmetricPolynomial(m, {mu: c for mu, c in _jack_coefficients(kappa, a) if len(mu) <= m})


def jack_at_ones(kappa: Partition, m: int, alpha: RationalLike) -> Fraction:
    return eval_at_ones(jack(kappa, m, alpha))

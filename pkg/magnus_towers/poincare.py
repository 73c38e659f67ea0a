"""Exact integer power series and the Poincare series (1 - dt + sum t^n_i)^-1 of quotients by strongly free families."""
import logging
import typing
from collections import Counter
from dataclasses import dataclass

from magnus_towers.monomial_combinatorics import MonomialFamily
from magnus_towers.utils import UsageError

__all__ = [
    "DegreeSpec",
    "IntSeries",
    "check_nonnegative",
    "defining_series",
    "invert_unit_series",
    "mild_poincare",
    "multiply",
    "theorem_main_series",
]

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntSeries:
    """The coefficients c_0, ..., c_N of an integer power series known modulo t^(N + 1).

    Attributes:
        coefficients (tuple[int, ...]): The coefficients, index k holding the coefficient of t^k.
    """

    coefficients: typing.Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not self.coefficients:
            raise UsageError("a series needs at least its constant coefficient")

    @classmethod
    def polynomial(cls, coefficients: typing.Mapping[int, int], N: int) -> "IntSeries":  # noqa: N803
        """Builds sum coefficients[k] t^k, dropping the degrees above N."""
        values = [0] * (N + 1)
        for degree, coefficient in coefficients.items():
            if 0 <= degree <= N:
                values[degree] += coefficient
        return cls(tuple(values))

    @property
    def N(self) -> int:  # noqa: N802
        """The highest degree known."""
        return len(self.coefficients) - 1

    def __getitem__(self, degree: int) -> int:
        return self.coefficients[degree]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self) -> typing.Iterator[int]:
        return iter(self.coefficients)

    def __mul__(self, other: "IntSeries") -> "IntSeries":
        return multiply(self, other)

    def truncate(self, N: int) -> "IntSeries":  # noqa: N803
        if N > self.N:
            raise UsageError(f"can't extend a series known to degree {self.N} up to degree {N}")
        return IntSeries(self.coefficients[: N + 1])

    def __str__(self) -> str:
        return f"{', '.join(str(c) for c in self.coefficients)} (mod t^{self.N + 1})"


@dataclass(frozen=True)
class DegreeSpec:
    """The degrees of a family of relations: a finite multiset plus possibly one relation in each degree >= tail_from.

    Attributes:
        finite (tuple[int, ...]): The degrees n_i of the finitely many relations, sorted.
        tail_from (int, optional): When set, one more relation in each degree tail_from, tail_from + 1, ...
    """

    finite: typing.Tuple[int, ...] = ()
    tail_from: typing.Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(sorted(self.finite)))
        for degree in self.finite:
            if degree < 2:
                raise UsageError(f"relation degrees must be at least 2, got {degree}")
        if self.tail_from is not None and self.tail_from < 2:
            raise UsageError(f"the tail must start in degree 2 or later, got {self.tail_from}")

    @classmethod
    def from_family(cls, family: MonomialFamily, upto: int = None) -> "DegreeSpec":
        """
        Reads the relation degrees off a monomial family.

        The first unbounded parametric member becomes the tail (its degrees are consecutive); any further unbounded one
        is materialized up to degree `upto`.

        Args:
            family (magnus_towers.MonomialFamily): The family whose member degrees are wanted.
            upto (int, optional): The degree at which extra unbounded parametric members are cut.

        Returns:
            magnus_towers.DegreeSpec: The degree multiset.
        """
        degrees = [member.degree for member in family.fixed]
        tail_from = None
        for param in family.parametric:
            fixed_part = len(param.prefix) + len(param.suffix)
            if param.is_infinite and tail_from is None:
                tail_from = fixed_part + param.start
                continue
            if param.is_infinite and upto is None:
                raise UsageError("a family with several unbounded parametric members needs a degree bound")
            degrees.extend(fixed_part + n for n in param.exponents(upto_degree=upto))
        return cls(tuple(degrees), tail_from)

    def count(self, degree: int) -> int:
        """The number of relations of the given degree."""
        tail = 1 if self.tail_from is not None and degree >= self.tail_from else 0
        return self.finite.count(degree) + tail

    def __str__(self) -> str:
        parts = [f"{degree}x{times}" for degree, times in sorted(Counter(self.finite).items())]
        if self.tail_from is not None:
            parts.append(f"{self.tail_from}..")
        return ", ".join(parts) or "none"


def multiply(a: IntSeries, b: IntSeries) -> IntSeries:
    """Returns the product of two series, known to the smaller of their two degrees."""
    N = min(a.N, b.N)  # noqa: N806
    product = [0] * (N + 1)
    for i in range(N + 1):
        if a[i]:
            for j in range(N + 1 - i):
                product[i + j] += a[i] * b[j]
    return IntSeries(tuple(product))


def invert_unit_series(s: IntSeries) -> IntSeries:
    """
    Inverts a series with constant coefficient 1 through the recurrence t_k = -sum_{j=1..k} s_j t_{k-j}.

    Args:
        s (magnus_towers.IntSeries): The series; s[0] must be 1.

    Returns:
        magnus_towers.IntSeries: The series t with s * t = 1 to degree s.N.
    """
    if s[0] != 1:
        raise UsageError(f"only series with constant coefficient 1 can be inverted over Z, got {s[0]}")
    inverse = [1]
    for k in range(1, s.N + 1):
        inverse.append(-sum(s[j] * inverse[k - j] for j in range(1, k + 1) if s[j]))
    return IntSeries(tuple(inverse))


def defining_series(d: int, spec: DegreeSpec, N: int) -> IntSeries:  # noqa: N803
    """Returns 1 - d t + sum_i t^(n_i), the tail included, to degree N."""
    if N < 0:
        raise UsageError(f"the series degree must be nonnegative, got N={N}")
    coefficients = {0: 1, 1: -d}
    for degree in range(2, N + 1):
        coefficients[degree] = spec.count(degree)
    return IntSeries.polynomial(coefficients, N)


def mild_poincare(d: int, spec: DegreeSpec, N: int) -> IntSeries:  # noqa: N803
    """
    Computes the Poincare series (1 - d t + sum_i t^(n_i))^-1 of the quotient of the free algebra on d letters by a
    strongly free family with the given relation degrees.

    Args:
        d (int): The number of generators.
        spec (magnus_towers.DegreeSpec): The relation degrees.
        N (int): The highest degree computed.

    Returns:
        magnus_towers.IntSeries: The coefficients dim(B_n / B_(n+1)) for n = 0..N.
    """
    series = invert_unit_series(defining_series(d, spec, N))
    _logger.debug("Poincare series for d=%d, relation degrees %s: %s", d, spec, series)
    return series


def theorem_main_series(d: int, r: int, N: int) -> IntSeries:  # noqa: N803
    """Returns (1 - d t + r t^2 + t^3 sum_{n>=0} t^n)^-1 to degree N: r quadratic relations, one in each degree >= 3."""
    if d < 1:
        raise UsageError(f"the generator count must be positive, got d={d}")
    if r < 0:
        raise UsageError(f"the relation count must be nonnegative, got r={r}")
    return mild_poincare(d, DegreeSpec((2,) * r, 3), N)


def check_nonnegative(s: IntSeries) -> typing.Optional[int]:
    """Returns the first degree with a negative coefficient, or None when every coefficient is >= 0."""
    return next((degree for degree, coefficient in enumerate(s) if coefficient < 0), None)

"""
Exact arithmetic in E = F_p<<X_1, ..., X_d>> modulo the monomials of degree >= N.

Monomials are ordered so that a lower degree is *greater*; at equal degree the comparison is lexicographic from the
left with X_1 <' X_2 <' ... <' X_d. Monomials of equal degree always have equal length, so the lexicographic
comparison never has to decide between a word and one of its prefixes.
"""
import enum
import functools
import logging
import math
import re
import typing
from dataclasses import dataclass

from sympy import isprime

from magnus_towers.utils import DocumentError, DomainError, InconclusiveError, NonPrimeError, UsageError, to_indices

__all__ = [
    "FieldElement",
    "Monomial",
    "OrderWitness",
    "TruncatedSeries",
    "highest_term",
    "initial_form",
    "monomial_compare",
    "require_odd_prime",
    "series_add",
    "series_mul",
    "valuation",
]

_logger = logging.getLogger(__name__)

Indices = typing.Tuple[int, ...]

# a minus sign that subtracts a term rather than negating a coefficient
_BINARY_MINUS = re.compile(r"(?<=[^+*(])-")


@functools.lru_cache(maxsize=256)
def require_odd_prime(p: int) -> int:
    """
    Validates the characteristic of the coefficient field.

    Args:
        p (int): The candidate characteristic.

    Returns:
        int: `p` itself, when it is an odd prime.
    """
    if not isinstance(p, int) or not isprime(p):
        raise NonPrimeError(f"p must be prime, got {p!r}")
    if p == 2:
        raise UsageError("p = 2 is not supported, p must be an odd prime")
    return p


def _order_key(indices: Indices) -> typing.Tuple[int, Indices]:
    # ascending key order is descending monomial order
    return len(indices), tuple(-index for index in indices)


@dataclass(frozen=True)
class FieldElement:
    """An element of F_p, stored as its residue in [0, p)."""

    value: int
    p: int

    def __post_init__(self):
        require_odd_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: typing.Union["FieldElement", int]) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise UsageError(f"cannot combine elements of F_{self.p} and F_{other.p}")
            return other.value
        return other

    def __add__(self, other: typing.Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other: typing.Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.value - self._coerce(other), self.p)

    def __mul__(self, other: typing.Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.value, self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)

    def inverse(self) -> "FieldElement":
        """Returns the multiplicative inverse; 0 has none."""
        if self.value == 0:
            raise DomainError("0 has no inverse in F_p")
        return FieldElement(pow(self.value, -1, self.p), self.p)


@dataclass(frozen=True)
class Monomial:
    """A word X_{i_1}...X_{i_n} in the letters X_1..X_d; the empty word is the unit monomial `1`.

    Attributes:
        indices (tuple[int, ...]): The letter indices, 1-based, read from left to right.
        d (int): The number of letters of the ambient algebra.
    """

    indices: Indices
    d: int

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        if self.d < 1:
            raise UsageError(f"the ambient generator count must be positive, got d={self.d}")
        for index in self.indices:
            if not 1 <= index <= self.d:
                raise UsageError(f"index {index} is outside [1, {self.d}]")

    @classmethod
    def parse(cls, text: str, d: int) -> "Monomial":
        """Reads the `X3.X2.X1` text form (`1` is the unit monomial)."""
        return cls(to_indices(text), d)

    @property
    def degree(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.d != other.d:
            raise UsageError(f"cannot multiply monomials over d={self.d} and d={other.d}")
        return Monomial(self.indices + other.indices, self.d)

    def __lt__(self, other: "Monomial") -> bool:
        return monomial_compare(self, other) is OrderWitness.LESS

    def __gt__(self, other: "Monomial") -> bool:
        return monomial_compare(self, other) is OrderWitness.GREATER

    def __le__(self, other: "Monomial") -> bool:
        return not self > other

    def __ge__(self, other: "Monomial") -> bool:
        return not self < other

    def __str__(self) -> str:
        return ".".join(f"X{index}" for index in self.indices) if self.indices else "1"


class OrderWitness(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


def monomial_compare(a: Monomial, b: Monomial) -> OrderWitness:
    """
    Compares two monomials: the lower degree is greater, equal degrees compare lexicographically from the left.

    Args:
        a (magnus_towers.Monomial): The left-hand monomial.
        b (magnus_towers.Monomial): The right-hand monomial, over the same `d`.

    Returns:
        magnus_towers.OrderWitness: Whether `a` is less than, equal to or greater than `b`.
    """
    if a.d != b.d:
        raise UsageError(f"cannot compare monomials over d={a.d} and d={b.d}")
    key_a, key_b = _order_key(a.indices), _order_key(b.indices)
    if key_a == key_b:
        return OrderWitness.EQUAL
    return OrderWitness.GREATER if key_a < key_b else OrderWitness.LESS


class TruncatedSeries:
    """An element of E modulo the ideal of monomials of degree >= N.

    Values are immutable. Coefficients are stored as residues in [1, p); zero coefficients are never stored.

    Attributes:
        d (int): The number of letters.
        p (int): The characteristic of the coefficient field.
        N (int): The truncation degree; every monomial of degree >= N has been discarded.
        discarded (bool): Whether some nonzero contribution of degree >= N was dropped while building the series.
    """

    __slots__ = ("_d", "_p", "_N", "_terms", "_discarded")

    def __init__(self, d: int, p: int, N: int, terms: typing.Mapping[Indices, int] = None, discarded: bool = False):
        require_odd_prime(p)
        if d < 1:
            raise UsageError(f"the ambient generator count must be positive, got d={d}")
        if N < 1:
            raise UsageError(f"the truncation degree must be positive, got N={N}")

        cleaned = {}
        for indices, coefficient in (terms or {}).items():
            indices = tuple(indices)
            for index in indices:
                if not 1 <= index <= d:
                    raise UsageError(f"index {index} is outside [1, {d}]")
            coefficient %= p
            if not coefficient:
                continue
            if len(indices) >= N:
                discarded = True
                continue
            cleaned[indices] = coefficient

        self._d, self._p, self._N = d, p, N
        self._terms = cleaned
        self._discarded = discarded

    @classmethod
    def _trusted(cls, d: int, p: int, N: int, terms: typing.Dict[Indices, int], discarded: bool) -> "TruncatedSeries":
        series = cls.__new__(cls)
        series._d, series._p, series._N = d, p, N
        series._terms = terms
        series._discarded = discarded
        return series

    @classmethod
    def zero(cls, d: int, p: int, N: int) -> "TruncatedSeries":
        return cls(d, p, N)

    @classmethod
    def one(cls, d: int, p: int, N: int) -> "TruncatedSeries":
        return cls(d, p, N, {(): 1})

    @classmethod
    def from_monomial(
        cls, monomial: typing.Union[Monomial, str, typing.Sequence[int]], d: int, p: int, N: int, coefficient: int = 1
    ) -> "TruncatedSeries":
        """Returns `coefficient * monomial` as a series."""
        return cls(d, p, N, {to_indices(monomial): coefficient})

    @classmethod
    def generator(cls, index: int, d: int, p: int, N: int) -> "TruncatedSeries":
        """Returns X_index."""
        return cls(d, p, N, {(index,): 1})

    @classmethod
    def parse(cls, text: str, d: int, p: int, N: int = None, exact: bool = False) -> "TruncatedSeries":  # noqa: N803
        """
        Reads the series text form, e.g. `2*X3.X2 + 1*X2.X3 + O(>=6)` or `X2.X3 - X3.X2`.

        Terms are `c*monomial`, a bare monomial (coefficient 1) or a bare integer (constant term), joined by `+` or
        `-`; coefficients may be negative. The `O(>=N)` marker, when present, fixes the truncation degree. Otherwise
        `N` is used, or with `exact` the text is a polynomial and the truncation lies just above its highest degree.

        Args:
            text (str): The text to read.
            d (int): The number of letters.
            p (int): The characteristic.
            N (int, optional): The truncation degree when the text carries no marker.
            exact (bool): Whether text without a marker is read as a polynomial, keeping every term.

        Returns:
            magnus_towers.TruncatedSeries: The series described by the text.
        """
        terms: typing.Dict[Indices, int] = {}
        marker = None
        compact = _BINARY_MINUS.sub("+-", text.replace(" ", ""))
        for chunk in compact.split("+"):
            if not chunk:
                raise DocumentError(f"empty term in series {text!r}")
            if chunk.startswith("O(>=") and chunk.endswith(")"):
                try:
                    marker = int(chunk[4:-1])
                except ValueError:
                    raise DocumentError(f"malformed truncation marker {chunk!r}") from None
                continue
            coefficient_text, star, monomial_text = chunk.partition("*")
            if not star:
                if chunk.lstrip("-").isdigit():
                    coefficient_text, monomial_text = chunk, "1"
                elif chunk.startswith("-"):
                    coefficient_text, monomial_text = "-1", chunk[1:]
                else:
                    coefficient_text, monomial_text = "1", chunk
            try:
                coefficient = int(coefficient_text)
            except ValueError:
                raise DocumentError(f"malformed coefficient {coefficient_text!r} in {text!r}") from None
            indices = to_indices(monomial_text)
            terms[indices] = terms.get(indices, 0) + coefficient

        truncation = marker if marker is not None else N
        if truncation is None and exact:
            truncation = max([len(indices) for indices in terms] + [0]) + 1
        if truncation is None:
            raise DocumentError(f"series {text!r} has no O(>=N) marker and no truncation degree was given")
        return cls(d, p, truncation, terms)

    @property
    def d(self) -> int:
        return self._d

    @property
    def p(self) -> int:
        return self._p

    @property
    def N(self) -> int:  # noqa: N802
        return self._N

    @property
    def discarded(self) -> bool:
        return self._discarded

    @property
    def terms(self) -> typing.Dict[Indices, int]:
        """A copy of the index-tuple -> coefficient map."""
        return dict(self._terms)

    def items(self) -> typing.List[typing.Tuple[Monomial, FieldElement]]:
        """The nonzero terms, sorted descending under the monomial order."""
        return [
            (Monomial(indices, self._d), FieldElement(self._terms[indices], self._p))
            for indices in sorted(self._terms, key=_order_key)
        ]

    def coefficient(self, monomial: typing.Union[Monomial, str, typing.Sequence[int]]) -> FieldElement:
        return FieldElement(self._terms.get(to_indices(monomial), 0), self._p)

    def constant_term(self) -> FieldElement:
        return FieldElement(self._terms.get((), 0), self._p)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self._d, self._p, self._N, self._terms) == (other._d, other._p, other._N, other._terms)

    def __hash__(self) -> int:
        return hash((self._d, self._p, self._N, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"TruncatedSeries(d={self._d}, p={self._p}, N={self._N}, {self})"

    def __str__(self) -> str:
        pieces = [
            f"{coefficient}*{monomial}" if monomial.indices else f"{coefficient}"
            for monomial, coefficient in self.items()
        ]
        return " + ".join(pieces or ["0"]) + f" + O(>={self._N})"

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if self._d != other._d or self._p != other._p:
            raise UsageError(
                f"cannot combine series over (d={self._d}, p={self._p}) and (d={other._d}, p={other._p})"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, -other)

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def __mul__(self, other: typing.Union["TruncatedSeries", int]) -> "TruncatedSeries":
        if isinstance(other, int):
            return self.scale(other)
        return series_mul(self, other)

    def __rmul__(self, other: int) -> "TruncatedSeries":
        return self.scale(other)

    def scale(self, scalar: typing.Union[int, FieldElement]) -> "TruncatedSeries":
        """Returns `scalar * self`."""
        scalar = int(scalar) % self._p
        if not scalar:
            return TruncatedSeries._trusted(self._d, self._p, self._N, {}, self._discarded)
        terms = {indices: coefficient * scalar % self._p for indices, coefficient in self._terms.items()}
        return TruncatedSeries._trusted(self._d, self._p, self._N, terms, self._discarded)

    def truncate(self, N: int) -> "TruncatedSeries":  # noqa: N803
        """Returns the image of the series modulo degree `N` (only lowering is meaningful)."""
        if N >= self._N:
            return self
        terms = {indices: coefficient for indices, coefficient in self._terms.items() if len(indices) < N}
        return TruncatedSeries._trusted(self._d, self._p, N, terms, self._discarded or len(terms) < len(self._terms))

    def homogeneous_component(self, degree: int) -> "TruncatedSeries":
        """Returns the sum of the terms of the given degree."""
        terms = {indices: coefficient for indices, coefficient in self._terms.items() if len(indices) == degree}
        return TruncatedSeries._trusted(self._d, self._p, self._N, terms, False)

    def without_constant(self) -> "TruncatedSeries":
        """Returns `self - constant_term`."""
        terms = {indices: coefficient for indices, coefficient in self._terms.items() if indices}
        return TruncatedSeries._trusted(self._d, self._p, self._N, terms, self._discarded)

    def inverse(self) -> "TruncatedSeries":
        """
        Returns the inverse of a series with nonzero constant term c: (c(1 + h))^{-1} = c^{-1} * sum_k (-h)^k.

        Returns:
            magnus_towers.TruncatedSeries: The inverse modulo degree N.
        """
        constant = self._terms.get((), 0)
        if not constant:
            raise DomainError("a series without constant term is not invertible")
        inverse_constant = pow(constant, -1, self._p)
        minus_h = self.scale(-inverse_constant).without_constant()
        result = TruncatedSeries.one(self._d, self._p, self._N)
        power = result
        # h has valuation >= 1, so (-h)^k vanishes for k >= N
        for _ in range(1, self._N):
            power = power * minus_h
            if power.is_zero():
                break
            result = result + power
        discarded = self._discarded or bool(minus_h)
        result = result.scale(inverse_constant)
        return TruncatedSeries._trusted(self._d, self._p, self._N, result._terms, discarded)


def series_add(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """
    Adds two series coefficientwise modulo p; the result is truncated at min(N_s, N_t).

    Args:
        s (magnus_towers.TruncatedSeries): The first summand.
        t (magnus_towers.TruncatedSeries): The second summand, over the same `d` and `p`.

    Returns:
        magnus_towers.TruncatedSeries: The sum, without zero coefficients.
    """
    s._check_compatible(t)
    N = min(s.N, t.N)  # noqa: N806
    s, t = s.truncate(N), t.truncate(N)
    terms = dict(s._terms)
    for indices, coefficient in t._terms.items():
        total = (terms.get(indices, 0) + coefficient) % s.p
        if total:
            terms[indices] = total
        else:
            terms.pop(indices, None)
    return TruncatedSeries._trusted(s.d, s.p, N, terms, s.discarded or t.discarded)


def series_mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """
    Multiplies two series (concatenation of monomials), dropping every product of degree >= min(N_s, N_t).

    Args:
        s (magnus_towers.TruncatedSeries): The left factor.
        t (magnus_towers.TruncatedSeries): The right factor, over the same `d` and `p`.

    Returns:
        magnus_towers.TruncatedSeries: The product.
    """
    s._check_compatible(t)
    N, p = min(s.N, t.N), s.p  # noqa: N806
    s, t = s.truncate(N), t.truncate(N)
    discarded = s.discarded or t.discarded

    right_terms = sorted(t._terms.items(), key=lambda item: len(item[0]))
    terms: typing.Dict[Indices, int] = {}
    for left, left_coefficient in s._terms.items():
        room = N - len(left)
        for right, right_coefficient in right_terms:
            if len(right) >= room:
                discarded = True
                break
            product = left + right
            terms[product] = (terms.get(product, 0) + left_coefficient * right_coefficient) % p

    terms = {indices: coefficient for indices, coefficient in terms.items() if coefficient}
    return TruncatedSeries._trusted(s.d, p, N, terms, discarded)


def valuation(s: TruncatedSeries) -> typing.Union[int, float]:
    """
    Returns the lowest degree of a nonzero term of `s`, or `math.inf` for the exactly zero series.

    Raises:
        magnus_towers.InconclusiveError: When `s` is zero below its truncation degree but terms were discarded, so
            the valuation is only known to be at least N.
    """
    if s.is_zero():
        if s.discarded:
            raise InconclusiveError(f"the series is zero below degree {s.N}, its valuation is >= {s.N}", s.N)
        return math.inf
    return min(len(indices) for indices in s._terms)


def _require_nonzero(s: TruncatedSeries, what: str) -> None:
    if s.is_zero():
        if s.discarded:
            raise InconclusiveError(f"the series is zero below degree {s.N}, so its {what} is unknown", s.N)
        raise DomainError(f"the zero series has no {what}")


def highest_term(s: TruncatedSeries, ignore_constant: bool = False) -> Monomial:
    """
    Returns the greatest monomial of `s` with a nonzero coefficient.

    Args:
        s (magnus_towers.TruncatedSeries): The series.
        ignore_constant (bool): Whether the constant term should be removed first (as for `x - 1`).

    Returns:
        magnus_towers.Monomial: The highest term.
    """
    if ignore_constant:
        s = s.without_constant()
    _require_nonzero(s, "highest term")
    return Monomial(min(s._terms, key=_order_key), s.d)


def initial_form(s: TruncatedSeries) -> TruncatedSeries:
    """Returns the homogeneous component of `s` of degree valuation(s)."""
    _require_nonzero(s, "initial form")
    return s.homogeneous_component(valuation(s))

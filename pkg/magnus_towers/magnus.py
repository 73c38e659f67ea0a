"""Free pro-p group words and their image under the Magnus isomorphism x_i -> 1 + X_i."""
import logging
import math
import typing
from dataclasses import dataclass

from magnus_towers.series_core import Monomial, TruncatedSeries, highest_term, require_odd_prime, valuation
from magnus_towers.utils import InconclusiveError, InternalData, UsageError, WordParseError

__all__ = [
    "Commutator",
    "Generator",
    "GroupWord",
    "Inverse",
    "Power",
    "Product",
    "ZassenhausDegree",
    "conjugate",
    "expand",
    "frobenius_word",
    "generator_power_series",
    "invert_word",
    "iterated_commutator",
    "parse_word",
    "word_hat",
    "zassenhaus_degree",
]

_logger = logging.getLogger(__name__)


class GroupWord:
    """Base class of the expression trees describing elements of the free pro-p group on x_1, ..., x_d."""

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        left = self.factors if isinstance(self, Product) else (self,)
        right = other.factors if isinstance(other, Product) else (other,)
        return Product(left + right)

    def __pow__(self, exponent: int) -> "GroupWord":
        return Power(self, exponent)

    def inverse(self) -> "GroupWord":
        return Inverse(self)

    def max_index(self) -> int:
        """Returns the largest generator index used in the word."""
        raise NotImplementedError

    def _atom_text(self) -> str:
        return f"({self})"


@dataclass(frozen=True)
class Generator(GroupWord):
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise UsageError(f"generator indices start at 1, got x{self.index}")

    def max_index(self) -> int:
        return self.index

    def _atom_text(self) -> str:
        return str(self)

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Inverse(GroupWord):
    word: GroupWord

    def max_index(self) -> int:
        return self.word.max_index()

    def __str__(self) -> str:
        return f"{self.word._atom_text()}^-1"


@dataclass(frozen=True)
class Product(GroupWord):
    factors: typing.Tuple[GroupWord, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def max_index(self) -> int:
        return max((factor.max_index() for factor in self.factors), default=0)

    def __str__(self) -> str:
        return "*".join(
            factor._atom_text() if isinstance(factor, Product) else str(factor) for factor in self.factors
        )


@dataclass(frozen=True)
class Power(GroupWord):
    base: GroupWord
    exponent: int

    def max_index(self) -> int:
        return self.base.max_index()

    def __str__(self) -> str:
        return f"{self.base._atom_text()}^{self.exponent}"


@dataclass(frozen=True)
class Commutator(GroupWord):
    """[a, b] = a^-1 b^-1 a b."""

    left: GroupWord
    right: GroupWord

    def max_index(self) -> int:
        return max(self.left.max_index(), self.right.max_index())

    def _atom_text(self) -> str:
        return str(self)

    def __str__(self) -> str:
        return f"[{self.left},{self.right}]"


@dataclass(frozen=True)
class ZassenhausDegree:
    """deg(x) = valuation of phi(x) - 1; `value` is None when the expansion vanishes below the truncation degree.

    Attributes:
        value (int, optional): The degree, or None when it is only known to be >= truncation.
        truncation (int): The truncation degree the expansion was computed at.
    """

    value: typing.Optional[int]
    truncation: int

    @property
    def truncation_limited(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return f">= {self.truncation} (truncation-limited)" if self.value is None else str(self.value)


class _WordParser:
    """Recursive descent parser for the word grammar (whitespace is insignificant).

    word := term { '*' term } ; term := atom [ '^' integer ] ;
    atom := generator | '[' word ',' word ']' | '(' word ')' ; generator := 'x' digits ; integer := ['-'] digits
    """

    def __init__(self, text: str):
        self.text = text
        self.position = 0

    def _skip(self) -> None:
        while self.position < len(self.text) and self.text[self.position].isspace():
            self.position += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.position] if self.position < len(self.text) else ""

    def _expect(self, character: str) -> None:
        if self._peek() != character:
            found = self._peek() or "end of input"
            raise WordParseError(f"expected {character!r}, found {found!r}", self.text, self.position)
        self.position += 1

    def _digits(self) -> str:
        self._skip()
        start = self.position
        while self.position < len(self.text) and self.text[self.position].isdigit():
            self.position += 1
        if start == self.position:
            raise WordParseError("expected digits", self.text, start)
        return self.text[start : self.position]

    def parse(self) -> GroupWord:
        word = self.word()
        if self._peek():
            raise WordParseError(f"unexpected {self._peek()!r}", self.text, self.position)
        return word

    def word(self) -> GroupWord:
        factors = [self.term()]
        while self._peek() == "*":
            self.position += 1
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def term(self) -> GroupWord:
        atom = self.atom()
        if self._peek() == "^":
            self.position += 1
            sign = 1
            if self._peek() == "-":
                self.position += 1
                sign = -1
            atom = Power(atom, sign * int(self._digits()))
        return atom

    def atom(self) -> GroupWord:
        character = self._peek()
        if character == "x":
            start = self.position
            self.position += 1
            index = int(self._digits())
            if index < 1:
                raise WordParseError("generator indices start at 1", self.text, start)
            return Generator(index)
        elif character == "[":
            self.position += 1
            left = self.word()
            self._expect(",")
            right = self.word()
            self._expect("]")
            return Commutator(left, right)
        elif character == "(":
            self.position += 1
            inner = self.word()
            self._expect(")")
            return inner
        found = character or "end of input"
        raise WordParseError(f"expected a generator, '[' or '(', found {found!r}", self.text, self.position)


def parse_word(text: str, d: int = None) -> GroupWord:
    """
    Parses a group word such as `[x1,[x2^9,x3]]` or `x1*x2^-1`.

    Args:
        text (str): The word in the word grammar.
        d (int, optional): When given, every generator index must lie in [1, d].

    Returns:
        magnus_towers.GroupWord: The expression tree.
    """
    if not text.strip():
        raise WordParseError("empty word", text, 0)
    word = _WordParser(text).parse()
    if d is not None and word.max_index() > d:
        raise UsageError(f"word {text!r} uses x{word.max_index()} but d={d}")
    return word


def invert_word(word: GroupWord) -> GroupWord:
    """Pushes an inversion down the tree: (uv)^-1 = v^-1 u^-1, (w^e)^-1 = w^-e and [a,b]^-1 = [b,a]."""
    if isinstance(word, Generator):
        return Power(word, -1)
    elif isinstance(word, Inverse):
        return word.word
    elif isinstance(word, Product):
        return Product(tuple(invert_word(factor) for factor in reversed(word.factors)))
    elif isinstance(word, Power):
        return Power(word.base, -word.exponent)
    elif isinstance(word, Commutator):
        return Commutator(word.right, word.left)
    raise UsageError(f"unsupported word node {type(word).__name__}")


def conjugate(g: GroupWord, word: GroupWord) -> GroupWord:
    """Returns g * word * g^-1."""
    return Product((g, word, Inverse(g)))


def iterated_commutator(i0: int, j0: int, base: int, n: int) -> GroupWord:
    """
    Builds f_{x_i0} o f_{x_j0}^{o n}(x_base), where f_x(y) = [x, y].

    When i0 < j0 < base its highest term is X_base X_j0^n X_i0.

    Args:
        i0 (int): The outermost generator.
        j0 (int): The repeated generator.
        base (int): The innermost generator.
        n (int): How many times `f_{x_j0}` is applied.

    Returns:
        magnus_towers.GroupWord: The nested commutator.
    """
    if len({i0, j0, base}) != 3:
        raise UsageError(f"iterated_commutator needs three distinct indices, got ({i0}, {j0}, {base})")
    if n < 0:
        raise UsageError(f"the repetition count must be >= 0, got {n}")
    word: GroupWord = Generator(base)
    for _ in range(n):
        word = Commutator(Generator(j0), word)
    return Commutator(Generator(i0), word)


def frobenius_word(i0: int, j0: int, n: int) -> GroupWord:
    """The word x_n = f_{x_1} o f_{x_i0}^{o n}(x_j0), with highest term X_j0 X_i0^n X_1, standing in for a Frobenius."""
    return iterated_commutator(1, i0, j0, n)


def _binomial_mod(n: int, k: int, p: int) -> int:
    # Lucas: C(n, k) = prod C(n_i, k_i) over the base-p digits
    result = 1
    while k:
        n, n_digit = divmod(n, p)
        k, k_digit = divmod(k, p)
        if k_digit > n_digit:
            return 0
        result = result * math.comb(n_digit, k_digit) % p
    return result


def generator_power_series(e: int, p: int, N: int) -> typing.List[int]:  # noqa: N803
    """
    Returns the coefficients C(e, k) mod p, k < N, of (1 + X)^e.

    Args:
        e (int): Any integer exponent (negative or huge values are fine).
        p (int): The characteristic.
        N (int): How many coefficients to return.

    Returns:
        typing.List[int]: The residues C(e, 0), ..., C(e, N - 1) in [0, p).
    """
    require_odd_prime(p)
    if e >= 0:
        return [_binomial_mod(e, k, p) for k in range(N)]
    # C(e, k) = (-1)^k C(k - e - 1, k)
    return [(-1) ** k * _binomial_mod(k - e - 1, k, p) % p for k in range(N)]


class _Expander:
    def __init__(self, p: int, d: int, N: int):  # noqa: N803
        self.p, self.d, self.N = p, d, N
        self.cache: typing.Dict[GroupWord, TruncatedSeries] = {}

    def one(self) -> TruncatedSeries:
        return TruncatedSeries.one(self.d, self.p, self.N)

    def __call__(self, word: GroupWord) -> TruncatedSeries:
        cached = self.cache.get(word)
        if cached is None:
            cached = self.cache[word] = self._expand(word)
        return cached

    def _expand(self, word: GroupWord) -> TruncatedSeries:
        if isinstance(word, Generator):
            return TruncatedSeries(self.d, self.p, self.N, {(): 1, (word.index,): 1})
        elif isinstance(word, Inverse):
            return self(invert_word(word.word))
        elif isinstance(word, Product):
            result = self.one()
            for factor in word.factors:
                result = result * self(factor)
            return result
        elif isinstance(word, Power):
            return self._power(word.base, word.exponent)
        elif isinstance(word, Commutator):
            # [a, b] = 1 + (ba)^-1 (ab - ba)
            a, b = self(word.left), self(word.right)
            difference = a * b - b * a
            inverse_ba = self(invert_word(word.left)) * self(invert_word(word.right))
            return self.one() + inverse_ba * difference
        raise UsageError(f"unsupported word node {type(word).__name__}")

    def _power(self, base: GroupWord, exponent: int) -> TruncatedSeries:
        if isinstance(base, Generator):
            coefficients = generator_power_series(exponent, self.p, self.N)
            terms = {(base.index,) * k: coefficient for k, coefficient in enumerate(coefficients) if coefficient}
            return TruncatedSeries(self.d, self.p, self.N, terms, discarded=exponent < 0 or exponent >= self.N)
        if exponent < 0:
            base, exponent = invert_word(base), -exponent
        result, square = self.one(), self(base)
        while exponent:
            if exponent & 1:
                result = result * square
            exponent >>= 1
            if exponent:
                square = square * square
        return result


def _check_arguments(word: GroupWord, p: int, d: int, N: int) -> None:  # noqa: N803
    require_odd_prime(p)
    if N < 2:
        raise UsageError(f"the truncation degree must be at least 2, got N={N}")
    if word.max_index() > d:
        raise UsageError(f"the word uses x{word.max_index()} but d={d}")


def expand(word: GroupWord, p: int, d: int, N: int = None) -> TruncatedSeries:  # noqa: N803
    """
    Returns phi(word) modulo degree N, where phi is the Magnus isomorphism x_i -> 1 + X_i.

    Args:
        word (magnus_towers.GroupWord): The group word.
        p (int): The characteristic.
        d (int): The number of generators.
        N (int, optional): The truncation degree, `InternalData.truncation` (12) by default.

    Returns:
        magnus_towers.TruncatedSeries: The truncated expansion.
    """
    N = InternalData.truncation if N is None else N  # noqa: N806
    _check_arguments(word, p, d, N)
    series = _Expander(p, d, N)(word)
    _logger.debug("expanded %s at p=%d, N=%d into %d terms", word, p, N, len(series))
    return series


def zassenhaus_degree(word: GroupWord, p: int, d: int, N: int = None) -> ZassenhausDegree:  # noqa: N803
    """Returns the valuation of expand(word) - 1, flagged as truncation-limited when it vanishes below N."""
    series = expand(word, p, d, N)
    difference = series.without_constant()
    if difference.is_zero():
        return ZassenhausDegree(None, series.N)
    return ZassenhausDegree(valuation(difference), series.N)


def word_hat(word: GroupWord, p: int, d: int, N: int = None) -> Monomial:  # noqa: N803
    """
    Returns the highest term of phi(word) - 1.

    Raises:
        magnus_towers.InconclusiveError: When phi(word) - 1 vanishes below the truncation degree.
    """
    series = expand(word, p, d, N)
    difference = series.without_constant()
    if difference.is_zero():
        raise InconclusiveError(f"{word} expands to 1 below degree {series.N}, no highest term", series.N)
    return highest_term(difference)

"""
Arithmetic front end over Q: tame primes, p-th power residues, linking numbers and the degree-2 part of Koch relations.

For a tame set S = {l_1, ..., l_d} the pro-p group G_S has generators x_1, ..., x_d and relations
rho_i = prod_{j != i} [x_i, x_j]^(a_j(i)) modulo the third Zassenhaus filtration step, where a_j(i) is the index of
l_i with respect to a primitive root mod l_j, reduced mod p. Only the zero/nonzero pattern of the a_j(i) is independent
of the chosen roots; changing the root mod l_j rescales column j.
"""
import enum
import logging
import math
import typing
from dataclasses import dataclass

from sympy import isprime, primerange
from sympy.ntheory import discrete_log as sympy_discrete_log
from sympy.ntheory import is_primitive_root, primitive_root

from magnus_towers.magnus import Commutator, Generator, GroupWord, Power, Product, expand
from magnus_towers.series_core import Monomial, TruncatedSeries, highest_term, require_odd_prime
from magnus_towers.utils import DomainError, InternalData, NonPrimeError, NotTameError, UsageError

__all__ = [
    "Constraint",
    "Direction",
    "LemmaCheck",
    "LinkingMatrix",
    "PresentationSketch",
    "RankInputs",
    "TamePrime",
    "alpha_bound",
    "column_scalars",
    "cross_check_initial_form",
    "discrete_log",
    "find_prime",
    "is_tame",
    "koch_word",
    "lemma_easy_check",
    "linking_matrix",
    "mirrored_pairs",
    "presentation_hats",
    "pth_power_residue",
    "relation_initial_form",
    "schmidt_h2_dimension",
    "shafarevich_rank",
    "smallest_primitive_root",
]

_logger = logging.getLogger(__name__)


def _require_prime(ell: int) -> int:
    if not isinstance(ell, int) or not isprime(ell):
        raise NonPrimeError(f"{ell!r} is not prime")
    return ell


def is_tame(ell: int, p: int) -> bool:
    """Returns whether ell = 1 (mod p); both arguments must be prime and p odd."""
    require_odd_prime(p)
    return _require_prime(ell) % p == 1


@dataclass(frozen=True)
class TamePrime:
    """A prime ell with ell = 1 (mod p).

    Attributes:
        ell (int): The prime.
        p (int): The odd prime it is tame for.
    """

    ell: int
    p: int

    def __post_init__(self):
        if not is_tame(self.ell, self.p):
            residue = self.ell % self.p
            raise NotTameError(f"{self.ell} is not tame for p={self.p}: {self.ell} = {residue} (mod {self.p})")


def pth_power_residue(a: int, ell: int, p: int) -> bool:
    """
    Returns whether `a` is a p-th power modulo the tame prime `ell`, i.e. a^((ell - 1)/p) = 1 (mod ell).

    Raises:
        magnus_towers.UsageError: When ell divides a.
    """
    TamePrime(ell, p)
    if a % ell == 0:
        raise UsageError(f"{a} is divisible by {ell}, its residue symbol is undefined")
    return pow(a, (ell - 1) // p, ell) == 1


def smallest_primitive_root(ell: int) -> int:
    """Returns the smallest generator of (Z/ell)^*."""
    return primitive_root(_require_prime(ell))


def discrete_log(a: int, g: int, ell: int) -> int:
    """Returns the k in [0, ell - 1) with g^k = a (mod ell); `g` must be a primitive root mod `ell`."""
    _require_prime(ell)
    if a % ell == 0:
        raise UsageError(f"{a} is divisible by {ell}, it has no discrete logarithm")
    return sympy_discrete_log(ell, a % ell, g)


@dataclass(frozen=True)
class LinkingMatrix:
    """The linking numbers a_j(i) of an ordered tame prime set.

    Attributes:
        p (int): The odd prime.
        primes (tuple[int, ...]): l_1, ..., l_d; the order fixes the generator numbering.
        entries (tuple[tuple[int, ...], ...]): entries[i - 1][j - 1] = a_j(i) in [0, p); the diagonal holds None.
        roots (tuple[int, ...]): The primitive root used modulo each l_j.
    """

    p: int
    primes: typing.Tuple[int, ...]
    entries: typing.Tuple[typing.Tuple[typing.Optional[int], ...], ...]
    roots: typing.Tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.primes)

    def entry(self, i: int, j: int) -> int:
        """Returns a_j(i), 1-based."""
        if i == j:
            raise UsageError(f"a_{j}({i}) is not defined on the diagonal")
        return self.entries[i - 1][j - 1]

    def row(self, i: int) -> typing.Dict[int, int]:
        """The nonzero a_j(i) of row i, keyed by j."""
        return {j: self.entry(i, j) for j in range(1, self.d + 1) if j != i and self.entry(i, j)}

    def pattern(self) -> typing.Tuple[typing.Tuple[typing.Optional[bool], ...], ...]:
        """Which a_j(i) are nonzero (None on the diagonal); this does not depend on the roots."""
        return tuple(tuple(None if value is None else bool(value) for value in row) for row in self.entries)

    def __str__(self) -> str:
        width = len(str(self.p - 1))
        lines = []
        for row in self.entries:
            lines.append(" ".join("-".rjust(width) if value is None else str(value).rjust(width) for value in row))
        return "\n".join(lines)


def _validate_prime_set(p: int, primes: typing.Sequence[int]) -> typing.Tuple[int, ...]:
    require_odd_prime(p)
    primes = tuple(primes)
    if not primes:
        raise UsageError("the prime set is empty")
    if len(set(primes)) != len(primes):
        raise UsageError(f"the primes {list(primes)} are not pairwise distinct")
    for ell in primes:
        TamePrime(ell, p)
    return primes


def linking_matrix(p: int, primes: typing.Sequence[int], roots: typing.Sequence[int] = None) -> LinkingMatrix:
    """
    Computes a_j(i) = log_{g_j}(l_i) mod p, with g_j the smallest primitive root mod l_j unless `roots` says otherwise.

    Args:
        p (int): The odd prime.
        primes (typing.Sequence[int]): The ordered, pairwise distinct tame primes.
        roots (typing.Sequence[int], optional): One primitive root modulo each prime.

    Returns:
        magnus_towers.LinkingMatrix: The matrix; a_j(i) = 0 exactly when l_i is a p-th power mod l_j.
    """
    primes = _validate_prime_set(p, primes)
    if roots is None:
        roots = tuple(smallest_primitive_root(ell) for ell in primes)
    else:
        roots = tuple(roots)
        if len(roots) != len(primes):
            raise UsageError(f"{len(roots)} roots were given for {len(primes)} primes")
        for g, ell in zip(roots, primes):
            if not is_primitive_root(g, ell):
                raise UsageError(f"{g} is not a primitive root mod {ell}")

    entries = []
    for ell_i in primes:
        entries.append(
            tuple(
                None if ell_i == ell_j else discrete_log(ell_i, g_j, ell_j) % p for ell_j, g_j in zip(primes, roots)
            )
        )
    matrix = LinkingMatrix(p, primes, tuple(entries), roots)
    _logger.debug("linking matrix for p=%d, primes %s, roots %s:\n%s", p, primes, roots, matrix)
    return matrix


def column_scalars(first: LinkingMatrix, second: LinkingMatrix) -> typing.Tuple[int, ...]:
    """
    Returns, for each column j, the lambda_j in F_p^* with second[i][j] = lambda_j * first[i][j] for every i != j.

    Raises:
        magnus_towers.DomainError: When some column of `second` is not a multiple of the same column of `first`.
    """
    if first.p != second.p or first.primes != second.primes:
        raise UsageError("the two matrices must be computed for the same p and prime set")
    p, scalars = first.p, []
    for j in range(1, first.d + 1):
        scalar = None
        for i in range(1, first.d + 1):
            if i == j:
                continue
            a, b = first.entry(i, j), second.entry(i, j)
            if bool(a) != bool(b):
                raise DomainError(f"the zero patterns differ at a_{j}({i})")
            if a:
                ratio = b * pow(a, -1, p) % p
                if scalar is not None and ratio != scalar:
                    raise DomainError(f"column {j} is not a scalar multiple of the other matrix's column {j}")
                scalar = ratio
        scalars.append(1 if scalar is None else scalar)
    return tuple(scalars)


def relation_initial_form(i: int, matrix: LinkingMatrix, N: int = 3) -> TruncatedSeries:  # noqa: N803
    """
    Returns Z_i = sum_{j != i} a_j(i) (X_i X_j - X_j X_i), the degree-2 initial form of Koch's relation rho_i.

    A zero row gives the zero series; the relation then has degree > 2 and is logged as a warning.

    Args:
        i (int): The relation index, 1-based.
        matrix (magnus_towers.LinkingMatrix): The linking numbers.
        N (int): The truncation degree of the returned series, at least 3.

    Returns:
        magnus_towers.TruncatedSeries: The homogeneous degree-2 form.
    """
    if not 1 <= i <= matrix.d:
        raise UsageError(f"relation index {i} is outside [1, {matrix.d}]")
    if N < 3:
        raise UsageError(f"a degree-2 form needs the truncation degree N >= 3, got N={N}")
    terms: typing.Dict[typing.Tuple[int, ...], int] = {}
    for j, a in matrix.row(i).items():
        terms[(i, j)] = terms.get((i, j), 0) + a
        terms[(j, i)] = terms.get((j, i), 0) - a
    form = TruncatedSeries(matrix.d, matrix.p, N, terms)
    if form.is_zero():
        _logger.warning("row %d of the linking matrix vanishes; rho_%d has degree > 2", i, i)
    return form


def koch_word(i: int, matrix: LinkingMatrix) -> GroupWord:
    """The word x_i^(l_i - 1) * prod_{j != i} [x_i, x_j]^(a_j(i)), the relation rho_i up to higher commutators."""
    word: GroupWord = Power(Generator(i), matrix.primes[i - 1] - 1)
    factors = [word] + [Power(Commutator(Generator(i), Generator(j)), a) for j, a in sorted(matrix.row(i).items())]
    return Product(tuple(factors))


def cross_check_initial_form(i: int, matrix: LinkingMatrix) -> bool:
    """Whether the degree-2 part of the Magnus expansion of `koch_word` equals `relation_initial_form`."""
    expansion = expand(koch_word(i, matrix), matrix.p, matrix.d, 3)
    return expansion.homogeneous_component(2) == relation_initial_form(i, matrix)


@dataclass(frozen=True)
class PresentationSketch:
    """The degree-2 data of the Koch presentation of G_S.

    Attributes:
        p (int): The odd prime.
        primes (tuple[int, ...]): The ordered prime set.
        initial_forms (tuple[magnus_towers.TruncatedSeries, ...]): Z_1, ..., Z_d.
        hats (tuple[magnus_towers.Monomial, ...]): The highest term of each Z_i, None for a zero row.
    """

    p: int
    primes: typing.Tuple[int, ...]
    initial_forms: typing.Tuple[TruncatedSeries, ...]
    hats: typing.Tuple[typing.Optional[Monomial], ...]

    @property
    def d(self) -> int:
        return len(self.primes)

    @property
    def zero_rows(self) -> typing.Tuple[int, ...]:
        """The (1-based) relations whose initial form vanishes."""
        return tuple(i for i, hat in enumerate(self.hats, start=1) if hat is None)

    def pairs(self) -> typing.Tuple[typing.Tuple[int, int], ...]:
        """The hats X_t X_s as unordered index pairs (min, max), in relation order."""
        return tuple(tuple(sorted(hat.indices)) for hat in self.hats if hat is not None)

    def hat_pairs(self) -> typing.Tuple[typing.Tuple[int, int], ...]:
        """The hats X_t X_s as ordered pairs (t, s)."""
        return tuple(tuple(hat.indices) for hat in self.hats if hat is not None)


def presentation_hats(p: int, primes: typing.Sequence[int], roots: typing.Sequence[int] = None) -> PresentationSketch:
    """
    Computes the initial forms of Koch's relations and their highest terms.

    Args:
        p (int): The odd prime.
        primes (typing.Sequence[int]): The ordered tame primes.
        roots (typing.Sequence[int], optional): Primitive roots replacing the smallest ones.

    Returns:
        magnus_towers.PresentationSketch: The forms and hats; zero rows are listed in `zero_rows`.
    """
    matrix = linking_matrix(p, primes, roots)
    forms = tuple(relation_initial_form(i, matrix) for i in range(1, matrix.d + 1))
    hats = tuple(None if form.is_zero() else highest_term(form) for form in forms)
    return PresentationSketch(p, matrix.primes, forms, hats)


def mirrored_pairs(
    pairs: typing.Iterable[typing.Sequence[int]], d: int
) -> typing.Tuple[typing.Tuple[int, ...], ...]:
    """Relabels every index i as d + 1 - i, which is what reversing the prime order does to the hats."""
    return tuple(tuple(sorted(d + 1 - index for index in pair)) for pair in pairs)


@dataclass(frozen=True)
class RankInputs:
    """The numbers entering Shafarevich's formula for d_p G_S^T.

    Attributes:
        sizeS (int): |S|.
        r1 (int): The number of real places.
        r2 (int): The number of complex places.
        sizeT (int): |T|, the places that must split completely.
        delta (int): 1 when the base field contains the p-th roots of unity, else 0.
        dimV (int): dim V_S^T / K^(*p).
    """

    sizeS: int  # noqa: N815
    r1: int
    r2: int
    sizeT: int  # noqa: N815
    delta: int
    dimV: int  # noqa: N815

    def __post_init__(self):
        for name in ("sizeS", "r1", "r2", "sizeT", "dimV"):
            if getattr(self, name) < 0:
                raise UsageError(f"{name} must be nonnegative, got {getattr(self, name)}")
        if self.delta not in (0, 1):
            raise UsageError(f"delta must be 0 or 1, got {self.delta}")


def shafarevich_rank(inputs: RankInputs) -> int:
    """Returns |S| - (r1 + r2) - 1 - |T| + delta + dim V as is; a negative value is left for the caller to interpret."""
    return inputs.sizeS - (inputs.r1 + inputs.r2) - 1 - inputs.sizeT + inputs.delta + inputs.dimV


def schmidt_h2_dimension(d: int, r1: int, r2: int, sizeT: int) -> int:  # noqa: N803
    """The relation count r = d + r1 + r2 + |T| - 1 of the mild groups G_S^T used to cut towers."""
    return d + r1 + r2 + sizeT - 1


def alpha_bound(r1: int, r2: int, sizeT: int) -> float:  # noqa: N803
    """Returns 3 + 2 sqrt(2 + r1 + r2 + |T|)."""
    if min(r1, r2, sizeT) < 0:
        raise UsageError("r1, r2 and |T| must be nonnegative")
    return 3 + 2 * math.sqrt(2 + r1 + r2 + sizeT)


@dataclass(frozen=True)
class LemmaCheck:
    """The brute-force check of d + r1 + r2 + |T| - 1 < (d - c)(c - 1) over the splits c.

    Attributes:
        d (int): The generator count.
        relations (int): d + r1 + r2 + |T| - 1.
        alpha (float): The bound d has to exceed.
        failures (tuple[int, ...]): The c in [2, d - 1] where the inequality fails.
        balanced (int): The split c = (d + 1) // 2 maximizing (d - c)(c - 1).
    """

    d: int
    relations: int
    alpha: float
    failures: typing.Tuple[int, ...]
    balanced: int

    @property
    def hypothesis_met(self) -> bool:
        return self.d > self.alpha

    @property
    def holds_for_every_c(self) -> bool:
        return self.hypothesis_met and not self.failures

    @property
    def holds_at_balanced(self) -> bool:
        return self.relations < (self.d - self.balanced) * (self.balanced - 1)

    def __bool__(self) -> bool:
        return self.holds_for_every_c

    def __str__(self) -> str:
        if not self.hypothesis_met:
            return f"hypothesis not met: d = {self.d} <= alpha = {self.alpha:.4f}"
        if not self.failures:
            return f"holds for every c in [2, {self.d - 1}] (c = {self.d} gives 0 and is excluded)"
        failed = ", ".join(str(c) for c in self.failures)
        balanced = "holds" if self.holds_at_balanced else "fails"
        return f"fails for c in {{{failed}}}; at the balanced split c = {self.balanced} it {balanced}"


def lemma_easy_check(d: int, r1: int, r2: int, sizeT: int) -> LemmaCheck:  # noqa: N803
    """
    Tests d + r1 + r2 + |T| - 1 < (d - c)(c - 1) for every integer c in [2, d - 1].

    The endpoint c = d makes the right side 0 and is always excluded. The check is truthy only when d > alpha and no c
    fails; the failures and the balanced split are reported either way.

    Args:
        d (int): The generator count, at least 4.
        r1 (int): The number of real places.
        r2 (int): The number of complex places.
        sizeT (int): |T|.

    Returns:
        magnus_towers.LemmaCheck: The per-split outcome.
    """
    if d < 4:
        raise UsageError(f"the check needs d >= 4, got d={d}")
    relations = schmidt_h2_dimension(d, r1, r2, sizeT)
    failures = tuple(c for c in range(2, d) if not relations < (d - c) * (c - 1))
    return LemmaCheck(d, relations, alpha_bound(r1, r2, sizeT), failures, (d + 1) // 2)


class Direction(enum.Enum):
    NEW_MOD_EXISTING = "new-mod-old"
    EXISTING_MOD_NEW = "old-mod-new"


@dataclass(frozen=True)
class Constraint:
    """A residue condition on the new prime q relative to an existing tame prime.

    Attributes:
        ell (int): The existing prime.
        direction (magnus_towers.Direction): `new-mod-old` tests q mod ell, `old-mod-new` tests ell mod q.
        want_residue (bool): Whether the tested number must be a p-th power.
    """

    ell: int
    direction: Direction
    want_residue: bool

    @classmethod
    def parse(cls, text: str) -> "Constraint":
        """Reads `residue:<ell>:{yes|no}:{new-mod-old|old-mod-new}`."""
        parts = text.strip().split(":")
        if len(parts) != 4 or parts[0] != "residue" or parts[2] not in ("yes", "no"):
            raise UsageError(
                f"malformed constraint {text!r}, expected residue:<ell>:{{yes|no}}:{{new-mod-old|old-mod-new}}"
            )
        try:
            ell = int(parts[1])
            direction = Direction(parts[3])
        except ValueError:
            raise UsageError(f"malformed constraint {text!r}") from None
        return cls(ell, direction, parts[2] == "yes")

    def satisfied_by(self, q: int, p: int) -> bool:
        if self.direction is Direction.NEW_MOD_EXISTING:
            return pth_power_residue(q, self.ell, p) == self.want_residue
        return pth_power_residue(self.ell, q, p) == self.want_residue

    def __str__(self) -> str:
        return f"residue:{self.ell}:{'yes' if self.want_residue else 'no'}:{self.direction.value}"


def _scan(p: int, constraints: typing.Tuple[Constraint, ...], low: int, high: int) -> typing.Optional[int]:
    # smallest qualifying prime in [low, high)
    excluded = {constraint.ell for constraint in constraints}
    for q in primerange(low, high):
        if q % p == 1 and q not in excluded and all(constraint.satisfied_by(q, p) for constraint in constraints):
            return q
    return None


def find_prime(
    p: int, constraints: typing.Sequence[Constraint] = (), bound: int = 1000, workers: int = None
) -> typing.Optional[int]:
    """
    Returns the smallest prime q <= bound, q = 1 (mod p), meeting every residue constraint, or None.

    The candidate range may be split into disjoint partitions scanned concurrently (`MAGNUS_PRIME_WORKERS`); the
    answer is the minimum over the partitions and doesn't depend on how many there are.

    Args:
        p (int): The odd prime.
        constraints (typing.Sequence[magnus_towers.Constraint]): Conditions relative to existing tame primes.
        bound (int): The largest candidate.
        workers (int, optional): How many partitions to scan concurrently.

    Returns:
        int, optional: The prime found, or None when the range is exhausted.
    """
    require_odd_prime(p)
    constraints = tuple(constraints)
    for constraint in constraints:
        TamePrime(constraint.ell, p)

    workers = workers or InternalData.prime_workers
    step = max(1, math.ceil((bound - 1) / workers))
    partitions = [(p, constraints, low, min(low + step, bound + 1)) for low in range(2, bound + 1, step)]
    _logger.debug("searching primes <= %d for p=%d in %d partitions", bound, p, len(partitions))
    found = [q for q in InternalData.gather(_scan, partitions, workers) if q is not None]
    return min(found, default=None)

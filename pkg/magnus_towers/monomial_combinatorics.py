"""Combinatorial freeness of monomial families, cut-pair selection and the normal-word counting oracle."""
import enum
import itertools
import logging
import typing
from collections import deque
from dataclasses import dataclass, field

from magnus_towers.series_core import Monomial
from magnus_towers.utils import DocumentError, DomainError, UsageError, to_indices

__all__ = [
    "CutPair",
    "CutStrategy",
    "FreenessPolicy",
    "FreenessVerdict",
    "MonomialFamily",
    "ParamMonomial",
    "ViolationKind",
    "Witness",
    "certify_family_with_cut",
    "choose_cut_pair",
    "count_normal_words",
    "extended_cut_pair",
    "has_overlap",
    "infer_split",
    "is_combinatorially_free",
    "is_submonomial",
    "refined_cut_pair",
]

_logger = logging.getLogger(__name__)

Indices = typing.Tuple[int, ...]
MonomialLike = typing.Union[Monomial, str, typing.Sequence[int]]


def _check_same_d(a: MonomialLike, b: MonomialLike) -> None:
    if isinstance(a, Monomial) and isinstance(b, Monomial) and a.d != b.d:
        raise UsageError(f"monomials over d={a.d} and d={b.d} can't be compared")


def _occurs(needle: Indices, haystack: Indices) -> bool:
    width = len(needle)
    return any(haystack[start : start + width] == needle for start in range(len(haystack) - width + 1))


def _overlap_length(a: Indices, b: Indices) -> int:
    # longest k with 0 < k < |a|, k < |b| and prefix_k(a) == suffix_k(b); 0 when there is none
    for k in range(min(len(a), len(b)) - 1, 0, -1):
        if a[:k] == b[-k:]:
            return k
    return 0


def is_submonomial(a: MonomialLike, b: MonomialLike) -> bool:
    """
    Returns whether `a` is a contiguous factor of `b`, i.e. b = beta * a * beta' for possibly empty beta, beta'.

    Args:
        a (magnus_towers.Monomial, str, typing.Sequence[int]): The candidate factor.
        b (magnus_towers.Monomial, str, typing.Sequence[int]): The monomial searched.
    """
    _check_same_d(a, b)
    return _occurs(to_indices(a), to_indices(b))


def has_overlap(a: MonomialLike, b: MonomialLike) -> bool:
    """
    Returns whether a nontrivial proper prefix of `a` equals a nontrivial proper suffix of `b`.

    That is a = u v and b = u' v' with all four parts nonempty and u = v'. A shared prefix (X5.X3 and X5.X2) is not an
    overlap.
    """
    _check_same_d(a, b)
    return _overlap_length(to_indices(a), to_indices(b)) > 0


@dataclass(frozen=True)
class ParamMonomial:
    """The family prefix * X_repeated^n * suffix for n in [start, stop] (stop None means unbounded).

    Attributes:
        prefix (tuple[int, ...]): The letters before the repeated run.
        repeated (int): The repeated letter.
        suffix (tuple[int, ...]): The letters after the repeated run.
        d (int): The number of letters.
        start (int): The smallest n, 1 by default.
        stop (int, optional): The largest n, or None for every n >= start.
    """

    prefix: Indices
    repeated: int
    suffix: Indices
    d: int
    start: int = 1
    stop: typing.Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "suffix", tuple(self.suffix))
        for index in (*self.prefix, self.repeated, *self.suffix):
            if not 1 <= index <= self.d:
                raise UsageError(f"index {index} is outside [1, {self.d}]")
        if self.start < 0 or (self.stop is not None and self.stop < self.start):
            raise UsageError(f"empty or negative parameter range [{self.start}, {self.stop}]")

    @classmethod
    def parse(cls, text: str, d: int) -> "ParamMonomial":
        """Reads the `X5.X4^n.X1` text form (exactly one letter carries `^n`)."""
        letters = text.replace(" ", "").split(".")
        marked = [position for position, letter in enumerate(letters) if letter.endswith("^n")]
        if len(marked) != 1:
            raise DocumentError(f"parametric monomial {text!r} needs exactly one letter of the form X<i>^n")
        position = marked[0]
        repeated = to_indices(letters[position][:-2])
        if len(repeated) != 1:
            raise DocumentError(f"parametric monomial {text!r}: only a single letter may be repeated")
        prefix = to_indices(".".join(letters[:position])) if position else ()
        suffix = to_indices(".".join(letters[position + 1 :])) if position + 1 < len(letters) else ()
        return cls(prefix, repeated[0], suffix, d)

    def member(self, n: int) -> Monomial:
        return Monomial(self.prefix + (self.repeated,) * n + self.suffix, self.d)

    def exponents(self, upto_degree: int = None, upto_n: int = None) -> range:
        """The exponents n in range whose member has degree <= upto_degree and n <= upto_n."""
        last = self.stop
        if upto_degree is not None:
            bound = upto_degree - len(self.prefix) - len(self.suffix)
            last = bound if last is None else min(last, bound)
        if upto_n is not None:
            last = upto_n if last is None else min(last, upto_n)
        if last is None:
            raise UsageError(f"{self} has infinitely many members; give a degree or exponent bound")
        return range(self.start, last + 1)

    @property
    def is_infinite(self) -> bool:
        return self.stop is None

    def _letters_at(self, initial: bool) -> typing.Set[int]:
        # letters occurring at non-initial (initial=False) or non-final positions of some member
        word = list(self.prefix) + [self.repeated] * 2 + list(self.suffix)
        letters = set(word[1:]) if not initial else set(word[:-1])
        members_without_run = self.start == 0
        if members_without_run:
            bare = self.prefix + self.suffix
            letters |= set(bare[1:] if not initial else bare[:-1])
        return letters

    def first_letters(self) -> typing.Set[int]:
        return {member[0] for member in self._boundary_members() if member}

    def last_letters(self) -> typing.Set[int]:
        return {member[-1] for member in self._boundary_members() if member}

    def _boundary_members(self) -> typing.List[Indices]:
        counts = [self.start, self.start + 1] if self.stop is None or self.stop > self.start else [self.start]
        return [self.member(n).indices for n in counts]

    def __str__(self) -> str:
        parts = [f"X{index}" for index in self.prefix] + [f"X{self.repeated}^n"]
        parts += [f"X{index}" for index in self.suffix]
        return ".".join(parts)


@dataclass(frozen=True)
class MonomialFamily:
    """A finite list of monomials plus parametric members, all over the same `d`.

    Attributes:
        fixed (tuple[magnus_towers.Monomial, ...]): The finitely many explicit members.
        parametric (tuple[magnus_towers.ParamMonomial, ...]): The parametric members.
        d (int): The number of letters.
    """

    fixed: typing.Tuple[Monomial, ...]
    parametric: typing.Tuple[ParamMonomial, ...] = ()
    d: int = 0

    def __post_init__(self):
        ambient = {member.d for member in self.fixed if isinstance(member, Monomial)}
        ambient.update(param.d for param in self.parametric)
        if self.d and ambient - {self.d}:
            raise UsageError(f"members over d={sorted(ambient - {self.d})} in a family over d={self.d}")
        if len(ambient) > 1:
            raise UsageError(f"the members are over different alphabets d={sorted(ambient)}")

        written = [to_indices(member) for member in self.fixed if not isinstance(member, Monomial)]
        d = self.d or (ambient.pop() if ambient else max([max(indices, default=1) for indices in written] + [1]))
        fixed = tuple(
            member if isinstance(member, Monomial) else Monomial(to_indices(member), d) for member in self.fixed
        )
        object.__setattr__(self, "fixed", fixed)
        object.__setattr__(self, "parametric", tuple(self.parametric))
        object.__setattr__(self, "d", d)

    @classmethod
    def parse(cls, text: str, d: int) -> "MonomialFamily":
        """Reads one monomial per line (`X3.X2`), parametric members as `X5.X4^n.X1`; `#` starts a comment."""
        fixed, parametric = [], []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "^n" in line:
                parametric.append(ParamMonomial.parse(line, d))
            else:
                fixed.append(Monomial.parse(line, d))
        return cls(tuple(fixed), tuple(parametric), d)

    def members(self, upto_degree: int) -> typing.List[Monomial]:
        """The fixed members and the parametric members of degree <= upto_degree."""
        members = [member for member in self.fixed if member.degree <= upto_degree]
        for param in self.parametric:
            members.extend(param.member(n) for n in param.exponents(upto_degree=upto_degree))
        return members

    def __str__(self) -> str:
        return "\n".join([str(member) for member in self.fixed] + [str(param) for param in self.parametric])


class FreenessPolicy(enum.Enum):
    STANDARD = "standard"
    LITERAL = "literal"


class ViolationKind(enum.Enum):
    SUBMONOMIAL = "submonomial"
    OVERLAP = "overlap"
    DUPLICATE = "duplicate"
    SHARED_PREFIX = "shared_prefix"


@dataclass(frozen=True)
class Witness:
    """Why a family is not combinatorially free.

    Attributes:
        first (magnus_towers.Monomial): The member the violation is stated for (the factor, or the overlap's left side).
        second (magnus_towers.Monomial): The other member.
        kind (magnus_towers.ViolationKind): The violated condition.
        shared (magnus_towers.Monomial, optional): The common factor, prefix or overlap.
    """

    first: Monomial
    second: Monomial
    kind: ViolationKind
    shared: typing.Optional[Monomial] = None

    def __str__(self) -> str:
        if self.kind is ViolationKind.SUBMONOMIAL:
            return f"{self.first} is a submonomial of {self.second}"
        elif self.kind is ViolationKind.DUPLICATE:
            return f"{self.first} occurs twice"
        elif self.kind is ViolationKind.OVERLAP:
            return f"prefix {self.shared} of {self.first} is a suffix of {self.second} (overlap)"
        return f"{self.first} and {self.second} share the prefix {self.shared}"


@dataclass(frozen=True)
class FreenessVerdict:
    free: bool
    witness: typing.Optional[Witness] = None

    def __post_init__(self):
        if self.free == (self.witness is not None):
            raise ValueError("a verdict carries a witness exactly when the family is not free")

    def __bool__(self) -> bool:
        return self.free

    def __str__(self) -> str:
        return "free" if self.free else f"not free: {self.witness}"


def _pair_witness(
    a: Monomial, b: Monomial, policy: FreenessPolicy, distinct: bool = True
) -> typing.Optional[Witness]:
    # conditions on the ordered pair (a, b); `distinct` is False when a and b are the same member
    if distinct:
        if a.indices == b.indices:
            return Witness(a, b, ViolationKind.DUPLICATE)
        if _occurs(a.indices, b.indices):
            return Witness(a, b, ViolationKind.SUBMONOMIAL, a)
    if policy is FreenessPolicy.STANDARD:
        k = _overlap_length(a.indices, b.indices)
        if k:
            return Witness(a, b, ViolationKind.OVERLAP, Monomial(a.indices[:k], a.d))
    elif distinct and len(a) > 1 and len(b) > 1 and a.indices[0] == b.indices[0]:
        return Witness(a, b, ViolationKind.SHARED_PREFIX, Monomial(a.indices[:1], a.d))
    return None


def _check_fixed(
    members: typing.Sequence[Monomial], policy: FreenessPolicy, self_overlap: bool
) -> typing.Optional[Witness]:
    for position, a in enumerate(members):
        if self_overlap and policy is FreenessPolicy.STANDARD:
            witness = _pair_witness(a, a, policy, distinct=False)
            if witness:
                return witness
        for other_position, b in enumerate(members):
            if position != other_position:
                witness = _pair_witness(a, b, policy)
                if witness:
                    return witness
    return None


def _check_fixed_against_param(
    fixed: Monomial, param: ParamMonomial, policy: FreenessPolicy
) -> typing.Optional[Witness]:
    # windows of length <= |fixed| look the same for every n >= |fixed|, so n <= |fixed| + 2 is exhaustive
    cutoff = max(param.start, len(fixed) + 2)
    for n in param.exponents(upto_n=cutoff):
        member = param.member(n)
        witness = _pair_witness(fixed, member, policy) or _pair_witness(member, fixed, policy)
        if witness:
            return witness
    return None


def _check_params(params: typing.Sequence[ParamMonomial], policy: FreenessPolicy) -> typing.Optional[Witness]:
    if not params:
        return None

    if policy is FreenessPolicy.LITERAL:
        members = []
        for param in params:
            members.extend(param.member(n) for n in param.exponents(upto_n=param.start + 1))
        for a, b in itertools.permutations(members, 2):
            witness = _pair_witness(a, b, policy)
            if witness:
                return witness
        return None

    first_letters = set().union(*(param.first_letters() for param in params))
    last_letters = set().union(*(param.last_letters() for param in params))
    inner_after_first = set().union(*(param._letters_at(initial=False) for param in params))
    inner_before_last = set().union(*(param._letters_at(initial=True) for param in params))
    anchored = not (first_letters & inner_after_first) and not (last_letters & inner_before_last)
    if not anchored:
        raise UsageError(
            "unsupported parametric shape: the first letter of a parametric member must not reappear after its "
            "start and its last letter must not appear before its end (e.g. X_j0.X_i0^n.X_1)"
        )

    # anchored members can't overlap, and one contains another only when they are equal
    for first, second in itertools.combinations(params, 2):
        bound = len(first.prefix) + len(first.suffix) + len(second.prefix) + len(second.suffix) + 2
        for n in first.exponents(upto_n=first.start + bound):
            member = first.member(n)
            for m in second.exponents(upto_n=second.start + bound):
                if second.member(m).indices == member.indices:
                    return Witness(member, second.member(m), ViolationKind.DUPLICATE)
    return None


def is_combinatorially_free(
    family: MonomialFamily,
    policy: typing.Union[FreenessPolicy, str] = FreenessPolicy.STANDARD,
    self_overlap: bool = True,
) -> FreenessVerdict:
    """
    Decides whether a monomial family is combinatorially free.

    Under the `standard` policy a family is free when no member is a submonomial of another, no two members are equal
    and no nontrivial proper prefix of a member is a nontrivial proper suffix of a member (the same member included when
    `self_overlap` is set). The `literal` policy replaces the overlap condition by "no two members share a nontrivial
    prefix".

    Parametric members are checked against fixed members up to a certified exponent cutoff, and against each other
    symbolically.

    Args:
        family (magnus_towers.MonomialFamily): The family to check.
        policy (magnus_towers.FreenessPolicy, str): `standard` (default) or `literal`.
        self_overlap (bool): Whether a member overlapping itself is a violation (standard policy only).

    Returns:
        magnus_towers.FreenessVerdict: The verdict, with a witness when the family is not free.
    """
    policy = FreenessPolicy(policy)
    witness = _check_fixed(family.fixed, policy, self_overlap)
    if witness is None:
        for param, member in itertools.product(family.parametric, family.fixed):
            witness = _check_fixed_against_param(member, param, policy)
            if witness:
                break
    if witness is None and self_overlap and policy is FreenessPolicy.STANDARD:
        for param in family.parametric:
            for n in param.exponents(upto_n=param.start + len(param.prefix) + len(param.suffix) + 2):
                witness = _pair_witness(param.member(n), param.member(n), policy, distinct=False)
                if witness:
                    break
            if witness:
                break
    if witness is None:
        witness = _check_params(family.parametric, policy)

    verdict = FreenessVerdict(witness is None, witness)
    _logger.debug("freeness (%s) of %d fixed + %d parametric members: %s", policy.value, len(family.fixed),
                  len(family.parametric), verdict)
    return verdict


class CutStrategy(enum.Enum):
    COROLLARY = "corollary"
    REMARK = "remark"
    EXTENDED = "extended"


@dataclass(frozen=True)
class CutPair:
    """The indices of the parametric family imposed to cut the tower.

    For the `corollary` and `extended` strategies the family is X_j0 X_i0^n X_1; for the `remark` strategy it is
    X_head X_j0^n X_i0 with i0 = 1.

    Attributes:
        i0 (int): The repeated letter (corollary/extended) or the last letter (remark).
        j0 (int): The first letter (corollary/extended) or the repeated letter (remark).
        strategy (magnus_towers.CutStrategy): How the pair was found.
        head (int, optional): The first letter of the remark family.
    """

    i0: int
    j0: int
    strategy: CutStrategy = CutStrategy.COROLLARY
    head: typing.Optional[int] = None

    def parametric(self, d: int) -> ParamMonomial:
        if self.strategy is CutStrategy.REMARK:
            return ParamMonomial((self.head,), self.j0, (self.i0,), d)
        return ParamMonomial((self.j0,), self.i0, (1,), d)

    def word_indices(self) -> typing.Tuple[int, int, int]:
        """The (outer, repeated, base) indices of the nested commutators whose highest terms form the family."""
        if self.strategy is CutStrategy.REMARK:
            return self.i0, self.j0, self.head
        return 1, self.i0, self.j0


def _validate_pairs(
    pairs: typing.Iterable[typing.Tuple[int, int]], c: int, d: int
) -> typing.Set[typing.Tuple[int, int]]:
    pairs = [tuple(pair) for pair in pairs]
    if len(set(pairs)) != len(pairs):
        raise UsageError("the highest-term pairs must be pairwise distinct")
    for t, s in pairs:
        if not (1 <= s <= c < t <= d):
            raise UsageError(f"pair (t={t}, s={s}) doesn't satisfy s <= c < t with c={c}, d={d}")
    return set(pairs)


def infer_split(pairs: typing.Iterable[typing.Tuple[int, int]]) -> int:
    """
    Returns the smallest c with s <= c < t for every highest-term pair X_t X_s.

    Raises:
        magnus_towers.UsageError: When no pair is given or no such c exists; the split must then be given explicitly.
    """
    pairs = list(pairs)
    if not pairs:
        raise UsageError("the split c can't be inferred without relations; give it explicitly")
    c = max(s for _, s in pairs)
    if c >= min(t for t, _ in pairs):
        raise UsageError(f"no split c separates the pairs {sorted(pairs)}; give it explicitly")
    return c


def choose_cut_pair(pairs: typing.Iterable[typing.Tuple[int, int]], c: int, d: int) -> CutPair:
    """
    Picks (i0, j0) with 1 < i0 <= c < j0 <= d and X_j0 X_i0 not among the highest terms.

    The grid is scanned by increasing j0, then increasing i0. A pair always exists when r < (d - c)(c - 1).

    Args:
        pairs (typing.Iterable[typing.Tuple[int, int]]): The highest terms X_t X_s as (t, s) with s <= c < t.
        c (int): The split position, c >= 2.
        d (int): The number of generators.

    Returns:
        magnus_towers.CutPair: The first admissible pair.
    """
    if c < 2:
        raise UsageError(f"the split must satisfy c >= 2, got c={c}")
    taken = _validate_pairs(pairs, c, d)
    for j0 in range(c + 1, d + 1):
        for i0 in range(2, c + 1):
            if (j0, i0) not in taken:
                _logger.debug("cut pair (i0, j0) = (%d, %d) from the corollary grid", i0, j0)
                return CutPair(i0, j0)
    bound = (d - c) * (c - 1)
    raise DomainError(f"no admissible (i0, j0): r = {len(taken)} >= (d - c)(c - 1) = {bound}")


def refined_cut_pair(pairs: typing.Iterable[typing.Tuple[int, int]], c: int, d: int) -> CutPair:
    """
    The fallback with the weaker bound r <= (d - c)c - 2: any (i0, j0) != (1, d) with i0 <= c < j0 and X_j0 X_i0 free.

    When i0 > 1 the family is X_j0 X_i0^n X_1 as usual, when i0 = 1 it is X_d X_j0^n X_1.
    """
    if c < 1:
        raise UsageError(f"the split must satisfy c >= 1, got c={c}")
    taken = _validate_pairs(pairs, c, d)
    bound = (d - c) * c - 2
    if len(taken) > bound:
        raise DomainError(f"no admissible (i0, j0): r = {len(taken)} > (d - c)c - 2 = {bound}")
    for j0 in range(c + 1, d + 1):
        for i0 in range(1, c + 1):
            if (i0, j0) == (1, d) or (j0, i0) in taken:
                continue
            if i0 > 1:
                return CutPair(i0, j0)
            return CutPair(i0, j0, CutStrategy.REMARK, head=d)
    raise DomainError(f"every (i0, j0) with i0 <= {c} < j0 <= {d} is taken by a highest term")


def certify_family_with_cut(
    relation_hats: typing.Sequence[MonomialLike], cut: CutPair, d: int = None
) -> FreenessVerdict:
    """
    Checks that the degree-2 relation hats together with the cut's parametric family (n >= 1) are combinatorially free.

    Args:
        relation_hats (typing.Sequence[magnus_towers.Monomial]): The highest terms X_t X_s of the relations.
        cut (magnus_towers.CutPair): The cut pair.
        d (int, optional): The number of generators, taken from the hats when omitted.

    Returns:
        magnus_towers.FreenessVerdict: The verdict for the union family.
    """
    hats = [Monomial(to_indices(hat), d or getattr(hat, "d", None) or 1) for hat in relation_hats]
    d = d or max([hat.d for hat in hats] + [cut.i0, cut.j0, cut.head or 1])
    hats = [Monomial(hat.indices, d) for hat in hats]
    for hat in hats:
        if hat.degree != 2:
            raise UsageError(f"relation hats must have degree 2, got {hat}")
    return is_combinatorially_free(MonomialFamily(tuple(hats), (cut.parametric(d),), d))


def extended_cut_pair(relation_hats: typing.Sequence[MonomialLike], d: int) -> CutPair:
    """
    Scans every 1 < i0 < j0 <= d (increasing j0, then i0) and returns the first pair whose family X_j0 X_i0^n X_1
    makes the union with the relation hats combinatorially free, checked directly rather than through a count bound.
    """  # noqa
    hats = [Monomial(to_indices(hat), d) for hat in relation_hats]
    taken = {hat.indices for hat in hats}
    for j0 in range(3, d + 1):
        for i0 in range(2, j0):
            if (j0, i0) in taken:
                continue
            cut = CutPair(i0, j0, CutStrategy.EXTENDED)
            if certify_family_with_cut(hats, cut, d):
                _logger.debug("cut pair (i0, j0) = (%d, %d) from the extended scan", i0, j0)
                return cut
    raise DomainError("no pair 1 < i0 < j0 <= d makes the family with X_j0.X_i0^n.X_1 combinatorially free")


@dataclass
class _Automaton:
    """Aho-Corasick automaton over the letters 1..d; dead states are those recognizing a forbidden factor."""

    d: int
    goto: typing.List[typing.Dict[int, int]] = field(default_factory=lambda: [{}])
    dead: typing.List[bool] = field(default_factory=lambda: [False])

    def add(self, word: Indices) -> None:
        state = 0
        for letter in word:
            following = self.goto[state].get(letter)
            if following is None:
                following = len(self.goto)
                self.goto[state][letter] = following
                self.goto.append({})
                self.dead.append(False)
            state = following
        self.dead[state] = True

    def build(self) -> typing.List[typing.List[int]]:
        # complete the transition table using failure links, breadth first
        delta = [[0] * (self.d + 1) for _ in self.goto]
        failure = [0] * len(self.goto)
        queue = deque()
        for letter in range(1, self.d + 1):
            child = self.goto[0].get(letter)
            if child is not None:
                delta[0][letter] = child
                queue.append(child)
        while queue:
            state = queue.popleft()
            self.dead[state] = self.dead[state] or self.dead[failure[state]]
            for letter in range(1, self.d + 1):
                child = self.goto[state].get(letter)
                if child is None:
                    delta[state][letter] = delta[failure[state]][letter]
                else:
                    failure[child] = delta[failure[state]][letter]
                    delta[state][letter] = child
                    queue.append(child)
        return delta


def count_normal_words(family: MonomialFamily, d: int = None, upto: int = 10) -> typing.List[int]:
    """
    Counts, for n = 0..upto, the degree-n monomials containing no member of the family as a submonomial.

    These are the dimensions of the graded pieces of the monomial algebra A / (family), computed with a
    forbidden-factor automaton.

    Args:
        family (magnus_towers.MonomialFamily): The forbidden monomials; parametric members are cut at degree `upto`.
        d (int, optional): The number of letters, the family's by default.
        upto (int): The largest degree counted.

    Returns:
        typing.List[int]: The counts for degrees 0..upto.
    """
    d = d or family.d
    automaton = _Automaton(d)
    for member in family.members(upto):
        if member.degree == 0:
            return [0] * (upto + 1)
        automaton.add(member.indices)
    delta = automaton.build()

    counts = []
    distribution = {0: 1}
    for degree in range(upto + 1):
        counts.append(sum(distribution.values()))
        if degree == upto:
            break
        following: typing.Dict[int, int] = {}
        for state, ways in distribution.items():
            for letter in range(1, d + 1):
                target = delta[state][letter]
                if not automaton.dead[target]:
                    following[target] = following.get(target, 0) + ways
        distribution = following
    return counts

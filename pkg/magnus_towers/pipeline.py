import logging
import typing
from dataclasses import dataclass

from magnus_towers.arithmetic_linking import Constraint, find_prime, linking_matrix, presentation_hats
from magnus_towers.magnus import expand, iterated_commutator, parse_word, word_hat, zassenhaus_degree
from magnus_towers.monomial_combinatorics import (
    CutPair,
    CutStrategy,
    FreenessPolicy,
    MonomialFamily,
    certify_family_with_cut,
    choose_cut_pair,
    extended_cut_pair,
    infer_split,
    is_combinatorially_free,
    refined_cut_pair,
)
from magnus_towers.poincare import DegreeSpec, check_nonnegative, mild_poincare, theorem_main_series
from magnus_towers.schemas import (
    CutReport,
    LinkingReport,
    MildnessReport,
    PresentationDocument,
    Relation,
    RelationKind,
)
from magnus_towers.series_core import Monomial, highest_term
from magnus_towers.utils import DomainError, ExitCode, InconclusiveError, InternalData, UsageError, parse_int_list

__all__ = ["CommandOutput", "Pipeline"]

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandOutput:
    """The text a command prints on standard output and the exit code it ends with."""

    text: str
    exit_code: ExitCode = ExitCode.SUCCESS


class Pipeline:
    """Runs the workflows behind the command-line subcommands.

    Every `cmd_*` method is deterministic: the same arguments give byte-identical text. Checked properties that turn
    out false are reported through the exit code; every other failure is raised as a `MagnusError`.

    Examples:
        >>> print(Pipeline().cmd_expand("x1", p=3, d=1).text)
        1 + 1*X1 + O(>=12)

    Args:
        truncation (int, optional): The default truncation degree, `MAGNUS_TRUNCATION` (12) unless given.
        series_to (int, optional): The default highest series degree, `MAGNUS_SERIES_TO` (12) unless given.
    """

    cut_words_shown = 3

    def __init__(self, truncation: int = None, series_to: int = None):
        self.truncation = InternalData.truncation if truncation is None else truncation
        self.series_to = InternalData.series_to if series_to is None else series_to

    def document_from_primes(self, p: int, primes: typing.Sequence[int]) -> PresentationDocument:
        """
        Builds the presentation document of G_S whose relations are the degree-2 initial forms of Koch's relations.

        Raises:
            magnus_towers.InconclusiveError: When a row of the linking matrix vanishes, so that the relation's initial
                form lies in degree > 2 and isn't computed.
        """  # noqa
        sketch = presentation_hats(p, primes)
        if sketch.zero_rows:
            rows = ", ".join(str(i) for i in sketch.zero_rows)
            raise InconclusiveError(f"relations {rows} have no degree-2 initial form", 3)
        relations = [Relation(RelationKind.FORM, str(form), sketch.d, p) for form in sketch.initial_forms]
        return PresentationDocument(p=p, d=sketch.d, primes=list(sketch.primes), relations=relations)

    def relation_hats(self, document: PresentationDocument, truncation: int = None) -> typing.List[Monomial]:
        """Highest terms of the relations: through the Magnus expansion for words, directly for initial forms."""
        truncation = self.truncation if truncation is None else truncation
        hats = []
        for relation in document.relations:
            if relation.kind is RelationKind.WORD:
                hats.append(word_hat(relation.word, document.p, document.d, truncation))
            else:
                hats.append(highest_term(relation.form))
        _logger.debug("relation hats: %s", ", ".join(str(hat) for hat in hats))
        return hats

    @staticmethod
    def ordered_primes(primes: str, reverse: bool = False) -> typing.List[int]:
        """Reads the comma-separated prime list, reversed when `reverse` is set."""
        ordered = parse_int_list(primes, "--primes")
        return ordered[::-1] if reverse else ordered

    def _resolve_document(
        self, document: typing.Optional[str], p: typing.Optional[int], primes: typing.Optional[str]
    ) -> PresentationDocument:
        if document is not None:
            return PresentationDocument.parse(document)
        if p is None or not primes:
            raise UsageError("give either a presentation document or --p with --primes")
        return self.document_from_primes(p, parse_int_list(primes, "--primes"))

    def cmd_expand(self, word: str, p: int, d: int, trunc: int = None, hat: bool = False) -> CommandOutput:
        """
        Prints the truncated Magnus expansion of a word and, with `hat`, its highest term and Zassenhaus degree.

        Args:
            word (str): The word, e.g. `[x1,[x2^9,x3]]`.
            p (int): The odd prime.
            d (int): The number of generators.
            trunc (int, optional): The truncation degree.
            hat (bool): Whether to add the highest term and the degree.

        Returns:
            magnus_towers.CommandOutput: The printed text.
        """
        trunc = self.truncation if trunc is None else trunc
        parsed = parse_word(word, d)
        lines = [str(expand(parsed, p, d, trunc))]
        if hat:
            lines.append(f"hat: {word_hat(parsed, p, d, trunc)}")
            lines.append(f"degree: {zassenhaus_degree(parsed, p, d, trunc)}")
        return CommandOutput("\n".join(lines) + "\n")

    def cmd_linking(self, p: int, primes: str, reverse: bool = False, roots: str = None) -> CommandOutput:
        """
        Prints the linking matrix of an ordered tame prime set with the initial forms and hats of Koch's relations.

        Args:
            p (int): The odd prime.
            primes (str): Comma-separated primes; their order numbers the generators.
            reverse (bool): Number the generators in the reverse prime order.
            roots (str, optional): Comma-separated primitive roots replacing the smallest ones, one per prime as given.

        Returns:
            magnus_towers.CommandOutput: The printed text.
        """
        ordered = self.ordered_primes(primes, reverse)
        root_list = parse_int_list(roots, "--roots") or None
        if root_list and reverse:
            root_list.reverse()
        matrix = linking_matrix(p, ordered, root_list)
        report = LinkingReport(matrix=matrix, sketch=presentation_hats(p, ordered, root_list))
        return CommandOutput(report.render())

    def mildness(
        self, document: PresentationDocument, series_to: int = None, trunc: int = None, policy: str = "standard"
    ) -> MildnessReport:
        """Computes the hats of a presentation, checks their combinatorial freeness and, when free, the series."""
        series_to = self.series_to if series_to is None else series_to
        hats = self.relation_hats(document, trunc)
        family = MonomialFamily(tuple(hats), (), document.d)
        verdict = is_combinatorially_free(family, FreenessPolicy(policy))
        series = mild_poincare(document.d, DegreeSpec.from_family(family), series_to) if verdict else None
        return MildnessReport(p=document.p, d=document.d, hats=hats, verdict=verdict, series=series)

    def cmd_mildcheck(
        self,
        document: str = None,
        p: int = None,
        primes: str = None,
        series_to: int = None,
        trunc: int = None,
        policy: str = "standard",
    ) -> CommandOutput:
        """
        Certifies mildness: the hats of the relations are combinatorially free, hence cd(G) <= 2, dim H^2(G) is the
        relation count and the Poincare series is (1 - dt + sum t^n_i)^-1.

        Args:
            document (str, optional): The text of a presentation document.
            p (int, optional): The odd prime, with `primes`, when no document is given.
            primes (str, optional): Comma-separated tame primes, when no document is given.
            series_to (int, optional): The highest series degree.
            trunc (int, optional): The truncation degree used for word relations.
            policy (str): `standard` or `literal`.

        Returns:
            magnus_towers.CommandOutput: The report; exit code 1 when the hats aren't free.
        """
        report = self.mildness(self._resolve_document(document, p, primes), series_to, trunc, policy)
        return CommandOutput(report.render(), ExitCode.SUCCESS if report.verdict else ExitCode.PROPERTY_FALSE)

    def _auto_cut(
        self, pairs: typing.List[typing.Tuple[int, int]], hats: typing.List[Monomial], c: int, d: int, strict: bool
    ) -> CutPair:
        try:
            return choose_cut_pair(pairs, c, d)
        except DomainError as corollary_error:
            if strict:
                raise
            _logger.info("corollary grid exhausted (%s), trying the fallbacks", corollary_error)
            try:
                return refined_cut_pair(pairs, c, d)
            except DomainError:
                pass
            try:
                return extended_cut_pair(hats, d)
            except DomainError:
                raise corollary_error from None

    def cmd_cut(
        self,
        document: str = None,
        p: int = None,
        primes: str = None,
        series_to: int = None,
        trunc: int = None,
        i0: int = None,
        j0: int = None,
        c: int = None,
        strict: bool = False,
    ) -> CommandOutput:
        """
        Cuts the tower: imposes words x_n with highest terms X_j0 X_i0^n X_1 (n >= 1) on a mild presentation with
        quadratic hats X_t X_s, s <= c < t, and certifies that the enlarged family stays combinatorially free.

        The pair is searched in the grid 1 < i0 <= c < j0 <= d, which is guaranteed to work when r < (d - c)(c - 1).
        Unless `strict` is set, the search falls back to the weaker bound r <= (d - c)c - 2 and then to every
        1 < i0 < j0 <= d, certified directly.

        Args:
            document (str, optional): The text of a presentation document.
            p (int, optional): The odd prime, with `primes`, when no document is given.
            primes (str, optional): Comma-separated tame primes, when no document is given.
            series_to (int, optional): The highest series degree.
            trunc (int, optional): The truncation degree used for word relations.
            i0 (int, optional): The repeated letter of a manually chosen pair (needs `j0`).
            j0 (int, optional): The first letter of a manually chosen pair (needs `i0`).
            c (int, optional): The split, inferred from the hats when omitted.
            strict (bool): Only search the guaranteed grid.

        Returns:
            magnus_towers.CommandOutput: The report; exit code 1 when the presentation isn't mild or the combined
            family isn't free.
        """  # noqa
        series_to = self.series_to if series_to is None else series_to
        presentation = self._resolve_document(document, p, primes)
        d = presentation.d
        mildness = self.mildness(presentation, series_to, trunc)
        if not mildness.verdict:
            return CommandOutput(mildness.render(), ExitCode.PROPERTY_FALSE)

        hats = mildness.hats
        for hat in hats:
            if hat.degree != 2:
                raise UsageError(f"cutting needs quadratic hats X_t.X_s, got {hat}")
        pairs = [hat.indices for hat in hats]
        c = infer_split(pairs) if c is None else c

        if (i0 is None) != (j0 is None):
            raise UsageError("give both --i0 and --j0, or neither")
        if i0 is not None:
            if not 1 < i0 < j0 <= d:
                raise UsageError(f"a manual pair needs 1 < i0 < j0 <= d, got i0={i0}, j0={j0}, d={d}")
            strategy = CutStrategy.COROLLARY if i0 <= c < j0 else CutStrategy.EXTENDED
            cut = CutPair(i0, j0, strategy)
        else:
            cut = self._auto_cut(pairs, hats, c, d, strict)
        _logger.info("cut pair (i0, j0) = (%d, %d), strategy %s", cut.i0, cut.j0, cut.strategy.value)

        verdict = certify_family_with_cut(hats, cut, d)
        outer, repeated, base = cut.word_indices()
        words = []
        for n in range(1, self.cut_words_shown + 1):
            word = iterated_commutator(outer, repeated, base, n)
            words.append((n, word, word_hat(word, presentation.p, d, n + 3)))
        series = theorem_main_series(d, len(hats), series_to) if verdict else None

        report = CutReport(
            p=presentation.p,
            d=d,
            c=c,
            hats=hats,
            cut=cut,
            family=cut.parametric(d),
            words=words,
            verdict=verdict,
            series=series,
        )
        return CommandOutput(report.render(), ExitCode.SUCCESS if verdict else ExitCode.PROPERTY_FALSE)

    def cmd_poincare(self, d: int, rel_degrees: str = "", tail_from: int = None, upto: int = None) -> CommandOutput:
        """
        Prints the coefficients of (1 - dt + sum_i t^n_i)^-1 and where, if anywhere, a coefficient turns negative.

        Args:
            d (int): The number of generators.
            rel_degrees (str): Comma-separated relation degrees.
            tail_from (int, optional): Add one relation in every degree >= tail_from.
            upto (int, optional): The highest degree.

        Returns:
            magnus_towers.CommandOutput: The printed text.
        """
        if d < 1:
            raise UsageError(f"the generator count must be positive, got d={d}")
        upto = self.series_to if upto is None else upto
        spec = DegreeSpec(tuple(parse_int_list(rel_degrees, "--rel-degrees")), tail_from)
        series = mild_poincare(d, spec, upto)
        negative = check_nonnegative(series)
        if negative is None:
            return CommandOutput(f"{series}\nall coefficients nonnegative\n")
        return CommandOutput(f"{series}\nfirst negative coefficient in degree {negative}\n")

    def cmd_primesearch(self, p: int, constraints: str = "", bound: int = 1000) -> CommandOutput:
        """
        Prints the smallest prime q <= bound with q = 1 (mod p) meeting the residue constraints, or `none`.

        Args:
            p (int): The odd prime.
            constraints (str): Comma-separated `residue:<ell>:{yes|no}:{new-mod-old|old-mod-new}` conditions.
            bound (int): The largest candidate.

        Returns:
            magnus_towers.CommandOutput: The printed text.
        """
        parsed = [Constraint.parse(chunk) for chunk in (constraints or "").split(",") if chunk.strip()]
        found = find_prime(p, parsed, bound)
        return CommandOutput(f"{'none' if found is None else found}\n")

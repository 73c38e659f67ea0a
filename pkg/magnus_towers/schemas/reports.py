import typing

from magnus_towers.arithmetic_linking import LinkingMatrix, PresentationSketch, mirrored_pairs
from magnus_towers.magnus import GroupWord
from magnus_towers.monomial_combinatorics import CutPair, FreenessVerdict, ParamMonomial
from magnus_towers.poincare import IntSeries
from magnus_towers.schemas.base_schema import BaseSchema
from magnus_towers.series_core import Monomial

__all__ = ["CutReport", "LinkingReport", "MildnessReport"]

SPLIT_SET_DISCLAIMER = (
    "arithmetic realization of the split set (primes with these Frobenius elements) not verified, out of scope"
)


def _monomials(monomials: typing.Iterable[Monomial]) -> str:
    return ", ".join(str(monomial) for monomial in monomials) or "none"


def _pairs(pairs: typing.Iterable[typing.Sequence[int]]) -> str:
    return ", ".join("{" + ",".join(str(index) for index in pair) + "}" for pair in pairs) or "none"


class LinkingReport(BaseSchema):
    """Class representing the output of `linking`: the matrix, the relation initial forms and their highest terms.

    Attributes:
        matrix (magnus_towers.LinkingMatrix): The linking numbers.
        sketch (magnus_towers.PresentationSketch): The initial forms and hats.
    """

    def __init__(self, **kwargs):
        self.matrix: LinkingMatrix = kwargs["matrix"]
        self.sketch: PresentationSketch = kwargs["sketch"]

        super().__init__()

    def render(self) -> str:
        sketch = self.sketch
        lines = [
            f"p = {self.matrix.p}",
            f"primes = {', '.join(str(ell) for ell in self.matrix.primes)}",
            f"primitive roots = {', '.join(str(g) for g in self.matrix.roots)}",
            "linking numbers a_j(i) (row i, column j; entries depend on the roots, the zero pattern does not):",
            str(self.matrix),
            "relation initial forms:",
        ]
        for i, (form, hat) in enumerate(zip(sketch.initial_forms, sketch.hats), start=1):
            hat_text = "zero row, relation of degree > 2" if hat is None else str(hat)
            lines.append(f"  Z{i} = {form}   hat {hat_text}")
        lines.append(f"hats: {_monomials(hat for hat in sketch.hats if hat is not None)}")
        lines.append(f"hat pairs: {_pairs(sketch.pairs())}")
        lines.append(f"hat pairs, generators numbered i -> d+1-i: {_pairs(mirrored_pairs(sketch.pairs(), sketch.d))}")
        if sketch.zero_rows:
            lines.append(f"zero rows: {', '.join(str(i) for i in sketch.zero_rows)}")
        return "\n".join(lines) + "\n"


class MildnessReport(BaseSchema):
    """Class representing the output of `mildcheck`.

    Attributes:
        p (int): The odd prime.
        d (int): The number of generators.
        hats (list[magnus_towers.Monomial]): The highest terms of the relations.
        verdict (magnus_towers.FreenessVerdict): The combinatorial freeness verdict on the hats.
        series (magnus_towers.IntSeries, optional): The Poincare series, present exactly when the hats are free.
    """

    def __init__(self, **kwargs):
        self.p: int = kwargs["p"]
        self.d: int = kwargs["d"]
        self.hats: typing.List[Monomial] = list(kwargs["hats"])
        self.verdict: FreenessVerdict = kwargs["verdict"]
        self.series: typing.Optional[IntSeries] = kwargs.get("series")

        if bool(self.verdict) != (self.series is not None):
            raise ValueError("a mildness report carries a series exactly when the hats are free")

        super().__init__()

    @property
    def relation_count(self) -> int:
        return len(self.hats)

    def render(self) -> str:
        lines = [
            f"p = {self.p}, d = {self.d}, relations = {self.relation_count}",
            f"hats: {_monomials(self.hats)}",
            f"verdict: {self.verdict}",
        ]
        if self.verdict:
            lines += [
                "cd(G) <= 2",
                f"dim H^2(G) = {self.relation_count}",
                f"Poincare series: {self.series}",
            ]
        return "\n".join(lines) + "\n"


class CutReport(BaseSchema):
    """Class representing the output of `cut`.

    Attributes:
        p (int): The odd prime.
        d (int): The number of generators.
        c (int): The split with s <= c < t for every hat X_t X_s.
        hats (list[magnus_towers.Monomial]): The highest terms of the relations.
        cut (magnus_towers.CutPair): The chosen pair.
        family (magnus_towers.ParamMonomial): The highest terms of the imposed words.
        words (list[tuple[int, magnus_towers.GroupWord, magnus_towers.Monomial]]): A few of the imposed words x_n with
            the highest terms computed from their Magnus expansions.
        verdict (magnus_towers.FreenessVerdict): The verdict on the hats together with the family.
        series (magnus_towers.IntSeries, optional): (1 - dt + rt^2 + t^3 sum t^n)^-1, present exactly when free.
    """

    def __init__(self, **kwargs):
        self.p: int = kwargs["p"]
        self.d: int = kwargs["d"]
        self.c: int = kwargs["c"]
        self.hats: typing.List[Monomial] = list(kwargs["hats"])
        self.cut: CutPair = kwargs["cut"]
        self.family: ParamMonomial = kwargs["family"]
        self.words: typing.List[typing.Tuple[int, GroupWord, Monomial]] = list(kwargs.get("words") or [])
        self.verdict: FreenessVerdict = kwargs["verdict"]
        self.series: typing.Optional[IntSeries] = kwargs.get("series")

        if bool(self.verdict) != (self.series is not None):
            raise ValueError("a cut report carries a series exactly when the combined family is free")

        super().__init__()

    def render(self) -> str:
        r = len(self.hats)
        lines = [
            f"p = {self.p}, d = {self.d}, c = {self.c}, r = {r}, (d - c)(c - 1) = {(self.d - self.c) * (self.c - 1)}",
            f"hats: {_monomials(self.hats)}",
            f"cut pair: i0 = {self.cut.i0}, j0 = {self.cut.j0} ({self.cut.strategy.value})",
            f"imposed family: {self.family}, n >= 1",
        ]
        for n, word, hat in self.words:
            lines.append(f"  x{n} = {word}   hat {hat}")
        lines.append(f"combined verdict: {self.verdict}")
        if self.verdict:
            lines += [
                "cd(Gamma) = 2",
                "dim H^2(Gamma) = infinite",
                f"Poincare series (1 - {self.d}t + {r}t^2 + t^3/(1 - t))^-1: {self.series}",
            ]
        lines.append(f"split set: the words x_n above stand in for Frobenius elements; {SPLIT_SET_DISCLAIMER}")
        return "\n".join(lines) + "\n"

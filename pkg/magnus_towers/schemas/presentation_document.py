import enum
import typing

from magnus_towers.magnus import GroupWord, parse_word
from magnus_towers.schemas.base_schema import BaseSchema
from magnus_towers.series_core import TruncatedSeries, require_odd_prime
from magnus_towers.utils import DocumentError, UsageError, parse_int_list

__all__ = ["PresentationDocument", "Relation", "RelationKind"]


class RelationKind(enum.Enum):
    WORD = "word"
    FORM = "form"


class Relation:
    """One relation of a presentation, either a group word or an explicit initial form.

    Attributes:
        kind (magnus_towers.RelationKind): `word` or `form`.
        text (str): The relation as written in the document.
        word (magnus_towers.GroupWord, optional): The parsed word, for `word` relations.
        form (magnus_towers.TruncatedSeries, optional): The parsed initial form, for `form` relations.
    """

    def __init__(self, kind: RelationKind, text: str, d: int, p: int):
        self.kind = kind
        self.text = text.strip()
        self.word: typing.Optional[GroupWord] = None
        self.form: typing.Optional[TruncatedSeries] = None
        if kind is RelationKind.WORD:
            self.word = parse_word(self.text, d)
        else:
            self.form = TruncatedSeries.parse(self.text, d, p, exact=True).without_constant()
            if self.form.is_zero():
                raise DocumentError(f"the initial form {self.text!r} is zero")

    def __eq__(self, other: "Relation") -> bool:
        return isinstance(other, Relation) and (self.kind, self.text) == (other.kind, other.text)

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.text}"


class PresentationDocument(BaseSchema):
    """Class representing a pro-p presentation <x_1, ..., x_d | relations> read from the line-oriented document format.

    The format has one `key=value` per line and `#` comments:

    .. code-block:: text

        # G_S for S = {31, 19, 13, 337, 7}
        p=3
        d=5
        primes=31,19,13,337,7
        rel=word:[x1,x3]^2*[x1,x5]
        rel=form:1*X5.X1 + 2*X1.X5

    Attributes:
        p (int): The odd prime.
        d (int): The number of generators.
        labels (list[str]): Optional names of the generators.
        primes (list[int]): The tame primes the presentation was derived from, if any.
        relations (list[magnus_towers.Relation]): The relations in document order.
    """

    def __init__(self, **kwargs):
        self.p: int = kwargs["p"]
        self.d: int = kwargs["d"]
        self.labels: typing.List[str] = list(kwargs.get("labels") or [])
        self.primes: typing.List[int] = list(kwargs.get("primes") or [])
        self.relations: typing.List[Relation] = list(kwargs.get("relations") or [])

        require_odd_prime(self.p)
        if self.d < 1:
            raise DocumentError(f"d must be positive, got d={self.d}")
        if self.labels and len(self.labels) != self.d:
            raise DocumentError(f"{len(self.labels)} labels were given for d={self.d} generators")
        if self.primes and len(self.primes) != self.d:
            raise DocumentError(f"{len(self.primes)} primes were given for d={self.d} generators")

        super().__init__()

    @classmethod
    def parse(cls, text: str) -> "PresentationDocument":
        """
        Reads a presentation document.

        Args:
            text (str): The document text.

        Returns:
            magnus_towers.PresentationDocument: The presentation.

        Raises:
            magnus_towers.DocumentError: When a line is malformed, a key is repeated or `p`/`d` is missing.
        """
        header: typing.Dict[str, str] = {}
        relation_lines: typing.List[typing.Tuple[int, str]] = []
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, equals, value = line.partition("=")
            key = key.strip()
            if not equals:
                raise DocumentError(f"line {number}: expected key=value, got {line!r}")
            if key == "rel":
                relation_lines.append((number, value))
            elif key in ("p", "d", "labels", "primes"):
                if key in header:
                    raise DocumentError(f"line {number}: {key}= is given twice")
                header[key] = value.strip()
            else:
                raise DocumentError(f"line {number}: unknown key {key!r}")

        for key in ("p", "d"):
            if key not in header:
                raise DocumentError(f"the document has no {key}= line")
        try:
            p, d = int(header["p"]), int(header["d"])
        except ValueError:
            raise DocumentError(f"p and d must be integers, got p={header['p']!r}, d={header['d']!r}") from None

        relations = []
        for number, value in relation_lines:
            kind_text, colon, body = value.partition(":")
            try:
                kind = RelationKind(kind_text.strip())
            except ValueError:
                raise DocumentError(f"line {number}: relations start with word: or form:, got {value!r}") from None
            if not colon or not body.strip():
                raise DocumentError(f"line {number}: empty relation")
            try:
                relations.append(Relation(kind, body, d, p))
            except UsageError as error:
                raise DocumentError(f"line {number}: {error}") from error

        labels = [label.strip() for label in header["labels"].split(",")] if header.get("labels") else []
        return cls(
            p=p,
            d=d,
            labels=labels,
            primes=parse_int_list(header.get("primes"), "primes"),
            relations=relations,
        )

    def render(self) -> str:
        lines = [f"p={self.p}", f"d={self.d}"]
        if self.labels:
            lines.append(f"labels={','.join(self.labels)}")
        if self.primes:
            lines.append(f"primes={','.join(str(ell) for ell in self.primes)}")
        lines.extend(f"rel={relation}" for relation in self.relations)
        return "\n".join(lines) + "\n"

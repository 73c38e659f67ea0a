import enum
import re
import typing

from magnus_towers.utils.exceptions import DocumentError

__all__ = ["ExitCode", "parse_int_list", "to_indices"]

_LETTER = re.compile(r"^X(\d+)$")


class ExitCode(enum.IntEnum):
    SUCCESS = 0
    PROPERTY_FALSE = 1
    USAGE = 2
    INCONCLUSIVE = 3


def parse_int_list(text: typing.Optional[str], name: str = "list") -> typing.List[int]:
    """
    Parses a comma-separated list of integers; an empty string is the empty list.

    Args:
        text (str, optional): Text such as "31,19,13" (whitespace is ignored).
        name (str): The name of the option being parsed, used in error messages.

    Returns:
        typing.List[int]: The integers in the order they were written.
    """
    if text is None or not text.strip():
        return []
    values = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        try:
            values.append(int(chunk))
        except ValueError:
            raise DocumentError(f"{name}: {chunk!r} is not an integer") from None
    return values


def to_indices(monomial: typing.Union[str, typing.Sequence[int], "Monomial"]) -> typing.Tuple[int, ...]:  # noqa
    """
    Returns the index tuple of a monomial regardless of whether it is given as text (`X3.X2`), a sequence or a Monomial.

    Args:
        monomial (str, typing.Sequence[int], magnus_towers.Monomial): The monomial in any of its accepted forms.
    """  # noqa
    if isinstance(monomial, str):
        text = monomial.replace(" ", "")
        if text == "1":
            return ()
        indices = []
        for letter in text.split("."):
            found = _LETTER.match(letter)
            if found is None:
                raise DocumentError(f"malformed monomial {monomial!r}: {letter!r} is not of the form X<index>")
            indices.append(int(found[1]))
        return tuple(indices)
    elif hasattr(monomial, "indices"):
        return tuple(monomial.indices)
    else:
        return tuple(int(index) for index in monomial)

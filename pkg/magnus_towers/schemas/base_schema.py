import typing

__all__ = ["BaseSchema"]


def _summary(value: typing.Any) -> str:
    if isinstance(value, (list, tuple)):
        return f"<{len(value)} items>"
    if isinstance(value, (int, str)) or value is None:
        return repr(value)
    return f"{type(value).__name__}(...)"


class BaseSchema:
    """Base class for all report and document schemas.

    Subclasses assign their fields in `__init__` and call `super().__init__()` last; the public fields then drive
    equality, item access and the representation, while `render` gives the text the command line prints.
    """

    def __init__(self):
        self._fields = tuple(name for name in vars(self) if not name.startswith("_"))

    @property
    def fields(self) -> typing.Dict[str, typing.Any]:
        """The public fields of the schema, in assignment order."""
        return {name: getattr(self, name) for name in self._fields}

    def __getitem__(self, item: str) -> typing.Any:
        if item not in self._fields:
            raise KeyError(item)
        return getattr(self, item)

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and self.fields == other.fields

    def __repr__(self) -> str:
        shown = ", ".join(f"{name}={_summary(value)}" for name, value in self.fields.items())
        return f"{type(self).__name__}({shown})"

    def render(self) -> str:
        """Returns the text printed by the command-line tool for this schema."""
        raise NotImplementedError

"""Exception types raised by flatpersistence."""


class InvalidParameterError(ValueError):
    """A numeric or categorical parameter is outside its documented range."""


class ParseError(ValueError):
    """A CSV/JSON input could not be parsed.

    ``line`` is the 1-based line number of the offending row when known.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class UndefinedInputError(ValueError):
    """The input is valid but the requested quantity is undefined for it."""

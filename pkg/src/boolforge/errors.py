class BoolforgeError(Exception):
    pass


class SignatureMismatch(BoolforgeError):
    pass


class CapExceeded(BoolforgeError):
    """A size limit (generator count, oracle budget, minimizer size) was hit."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class InconsistentEquation(BoolforgeError):
    """Every atom is dead: the equation has no solution over any sub-algebra."""


class ParseError(BoolforgeError):
    def __init__(self, message, offset, expected=(), line=None, column=None):
        where = f"offset {offset}"
        if line is not None:
            where = f"line {line}, column {column} ({where})"
        text = f"{message} at {where}"
        if expected:
            text += "; expected one of: " + ", ".join(sorted(expected))
        super().__init__(text)
        self.offset = offset
        self.expected = frozenset(expected)
        self.line = line
        self.column = column

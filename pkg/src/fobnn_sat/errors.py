class InputError(ValueError):
    """Malformed or unsupported input (CLI exit code 2)."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)


class UnsupportedConstruct(InputError):
    def __init__(self, construct: str):
        self.construct = construct
        super().__init__(f"unsupported: {construct}")


class GuardExceeded(RuntimeError):
    """An analysis size guard was exceeded (CLI exit code 1)."""

"""Exception hierarchy shared by every solver and the CLI."""


class AdversolveError(Exception):
    """Base class; the CLI maps subclasses to distinct exit codes."""

    exit_code = 4


class ParseError(AdversolveError):
    exit_code = 3

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class GraphError(AdversolveError, ValueError):
    """Malformed or unsuitable game graph (cycles, missing labels, ...)."""


class StateExplosionError(AdversolveError):
    exit_code = 5

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"state explosion: {size} states exceeds cap {cap}")


class InconsistentOracleError(AdversolveError):
    exit_code = 6


class InfeasibleError(AdversolveError, ValueError):
    exit_code = 7

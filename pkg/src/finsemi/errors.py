"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SemigroupError(Exception):
    """Base class for all errors raised by finsemi."""


class InputError(SemigroupError):
    """Malformed or invalid user input (CLI exit code 2)."""


class TableShapeError(InputError):
    def __init__(self, message: str):
        super().__init__(message)


class ClosureViolation(InputError):
    def __init__(self, row: int, col: int, value: int):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"entry at ({row}, {col}) is {value}, outside the element range")


class AssociativityViolation(InputError):
    def __init__(self, a: int, b: int, c: int, left: int, right: int):
        self.triple = (a, b, c)
        self.left, self.right = left, right
        super().__init__(
            f"not associative: ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}"
        )


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class NotAnIdeal(SemigroupError):
    def __init__(self, witness: tuple[int, int, int]):
        self.witness = witness
        s, x, p = witness
        super().__init__(f"not a two-sided ideal: product of {s} and {x} is {p}, outside the set")


class NotACongruence(SemigroupError):
    def __init__(self, x: int, y: int, s: int):
        self.witness = (x, y, s)
        super().__init__(f"not a congruence: {x} ~ {y} but translation by {s} separates them")


class OrderMismatch(SemigroupError):
    pass


class SizeLimitExceeded(InputError):
    def __init__(self, order: int, cap: int, what: str = "operation"):
        self.order, self.cap = order, cap
        super().__init__(f"{what} is capped at order {cap}, got {order}")


class PartitionMismatch(SemigroupError):
    pass


class NotT2RShaped(SemigroupError):
    pass


class NoDecomposition(SemigroupError):
    pass


class CheckpointVersionMismatch(InputError):
    pass


class ClassificationGap(SemigroupError):
    """A weakly exponential Delta-semigroup matched no template."""

    def __init__(self, table, diagnostics: dict):
        self.table = table
        self.diagnostics = diagnostics
        super().__init__(f"weakly exponential Delta-semigroup of order {table.order} matches no template")

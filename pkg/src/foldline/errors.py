"""Error types shared across the library.

Every error carries a machine-readable ``kind`` string next to the human
message; the CLI surfaces both.
"""

from __future__ import annotations


class FoldlineError(Exception):
    """Base class for all library errors."""

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


class DatumError(FoldlineError):
    """Invalid Cartan datum, automorphism, or folding input."""


class SemifieldError(FoldlineError):
    """Semifield misuse: model mismatch, underflow, zero denominator."""


class WordError(FoldlineError):
    """Invalid word, move, or enumeration overflow."""


class FoldingError(FoldlineError):
    """Unfolding/folding failures: bad filling, broken block pattern."""


class MonoidError(FoldlineError):
    """Monoid misuse: negative generator exponent, bad crystal input."""


class UsageError(FoldlineError):
    """Command-line usage error."""

    def __init__(self, message: str):
        super().__init__("usage", message)

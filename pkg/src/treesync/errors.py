"""Exception types raised across the package."""

from __future__ import annotations


class TreeSyncError(Exception):
    """Base class for every error raised by treesync."""


class InvalidGraph(TreeSyncError, ValueError):
    pass


class NotATree(TreeSyncError, ValueError):
    pass


class SizeLimit(TreeSyncError):
    """Input exceeds the bound of an exhaustive or backtracking routine."""


class LengthMismatch(TreeSyncError, ValueError):
    pass


class NotBalanced(TreeSyncError, ValueError):
    pass


class NotSameClass(TreeSyncError, ValueError):
    pass


class IndexOutOfRange(TreeSyncError, IndexError):
    pass


class MissingBeta(TreeSyncError, ValueError):
    pass


class NoConvergence(TreeSyncError, ArithmeticError):
    pass


class InvalidPack(TreeSyncError, ValueError):
    pass


class MissingDegree(TreeSyncError, ValueError):
    pass


class NotOnSubspace(TreeSyncError, ValueError):
    pass


class NotAdmissible(TreeSyncError, ValueError):
    pass


class NonFiniteState(TreeSyncError, ArithmeticError):
    pass


class RateViolation(TreeSyncError):
    """A trajectory decayed slower than the Lyapunov bound allows."""


class PartialViolation(TreeSyncError):
    """The leaf coupling violates the required bound on its first partial."""


class ConstructionError(TreeSyncError, RuntimeError):
    """An internal invariant of the automorphism construction failed."""


class ConfigError(TreeSyncError, ValueError):
    pass


class ParseError(TreeSyncError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

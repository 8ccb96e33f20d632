"""Exception hierarchy shared by every module.

Usage errors (bad arity, malformed input, violated preconditions) are kept
apart from domain negatives (a map that is not an automorphism, a plane map
that does not lift) so callers such as the CLI can tell them apart.
"""

from __future__ import annotations


class GrautError(Exception):
    """Base class for all grautkit errors."""


class UsageError(GrautError, ValueError):
    """A precondition on the arguments was violated."""


class DomainError(GrautError):
    """A well-formed input has a negative mathematical answer."""


class NotAutomorphism(DomainError):
    def __init__(self, message: str, stage: str = "") -> None:
        super().__init__(message)
        self.stage = stage


class NotLiftable(DomainError):
    pass


class NotSplittable(DomainError):
    pass


class UnsupportedGrading(DomainError):
    pass


class InternalError(GrautError, AssertionError):
    """An invariant that the mathematics guarantees did not hold."""

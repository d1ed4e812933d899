"""Error hierarchy and the checked 64-bit storage bound.

Domain errors mean the input was mathematically out of scope; resource
errors mean a configured bound (entry width, iteration cap, search
budget) was hit. The CLI maps them to exit codes 1 and 2 respectively.
"""

from __future__ import annotations

__all__ = [
    "INT64_MAX",
    "INT64_MIN",
    "DomainError",
    "IterationCapExceeded",
    "MarkovMutatorError",
    "NotClusterCyclic",
    "NotInShat",
    "OperationCancelled",
    "OverflowLimitError",
    "ProductMismatch",
    "RadicandMismatch",
    "ResourceError",
    "SearchBudgetExceeded",
    "SignMismatch",
    "ValidationError",
    "ensure_int64",
]

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


class MarkovMutatorError(Exception):
    """Base class for every error this package raises deliberately."""


class DomainError(MarkovMutatorError):
    """The request is well-formed but its data is out of domain."""


class ResourceError(MarkovMutatorError):
    """A configured bound was exceeded."""


class ValidationError(DomainError):
    """A six-tuple failed the matrix invariants."""


class ProductMismatch(ValidationError):
    """xyz differs from x'y'z'."""


class SignMismatch(ValidationError):
    """Some column pairs an entry with a primed entry of a different sign."""


class RadicandMismatch(DomainError):
    """Same-radicand arithmetic was attempted on two distinct radicands.

    For triples with integer entry squares and integer product this
    cannot happen; seeing it means the input triple was invalid.
    """


class NotClusterCyclic(DomainError):
    """The operation requires a cluster-cyclic matrix."""


class NotInShat(DomainError):
    """The triple is not one with p^2, q^2, r^2 and pqr all integers."""


class OverflowLimitError(ResourceError):
    """A stored value left the signed 64-bit range.

    Results are never silently wrapped; arithmetic is exact up to the
    point of storage and the offending value is reported.
    """


class IterationCapExceeded(ResourceError):
    """An iterative descent hit its cap; carries the last iterate."""

    def __init__(self, message: str, last: object = None) -> None:
        super().__init__(message)
        self.last = last


class SearchBudgetExceeded(ResourceError):
    """A search exhausted its budget without finding what a theorem promises."""


class OperationCancelled(ResourceError):
    """A cooperative cancellation token was set mid-search."""


def ensure_int64(value: int, context: str = "entry") -> int:
    """Return value unchanged if it fits in signed 64 bits, else raise."""
    if value < INT64_MIN or value > INT64_MAX:
        raise OverflowLimitError(f"{context} {value} exceeds the signed 64-bit range")
    return value

"""Exception hierarchy shared by all kshift modules."""

from __future__ import annotations


class KshiftError(Exception):
    """Base class for all library errors."""


class InvalidShapeError(KshiftError):
    """A skew shape whose inner partition is not contained in the outer one."""


class NvarsMismatchError(KshiftError):
    """Two polynomials with incompatible variable counts or splits."""


class UnboundedTruncationError(KshiftError):
    """An operation that requires a finite degree bound got an unbounded one."""


class SingularPointError(KshiftError):
    """A rational point on the singular locus of a symmetrized formula."""


class NonDivisibleError(KshiftError):
    """A leading coefficient that does not divide exactly during basis expansion."""


class NonSymmetricError(KshiftError):
    """An input polynomial that is not symmetric under variable permutations."""


class ParameterError(KshiftError):
    """Sweep or truncation parameters that cannot support the requested check."""


class ResourceLimitError(KshiftError):
    """A request beyond the hard resource limits (e.g. too many variables)."""

"""Exception hierarchy for liftgeo.

Every failure mode that callers are expected to catch has its own class;
the CLI maps them onto exit codes.
"""

from __future__ import annotations


class LiftGeoError(Exception):
    """Base class for all liftgeo errors."""


class DimensionError(LiftGeoError):
    """Operation not supported in this dimension, or dimensions disagree."""


class EmptyInputError(LiftGeoError):
    """Operation requires a nonempty polyhedron."""


class UnboundedInputError(LiftGeoError):
    """Operation requires a bounded polyhedron (e.g. area)."""


class InvalidInputError(LiftGeoError):
    """Malformed construction input (empty facet list, bad vertex set, ...)."""


class InvalidApexError(InvalidInputError):
    """The point f is not admissible: it lies in S, or not strictly inside."""


class UnsupportedSError(LiftGeoError):
    """Operation defined only for S = Z^n."""


class EmptySError(LiftGeoError):
    """The S-descriptor denotes an empty set of integer points."""


class DegenerateBodyError(LiftGeoError):
    """B intersected with conv(S) is lower-dimensional; not supported."""


class InconclusiveSearchError(LiftGeoError):
    """A bounded search exhausted its window without settling the question."""


class ParseError(LiftGeoError):
    """A body-spec or tableau-row document failed to parse."""

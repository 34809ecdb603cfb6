"""The minimal valid function of a body: psi(r) = max_i a_i . r."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .bodies import SFreeBody
from .errors import DimensionError
from .geom import RationalVec


@dataclass(frozen=True)
class GaugeValue:
    """Exact value together with the full set of maximizing facet indices."""

    value: Fraction
    argmax: tuple[int, ...]


class PointClass(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def psi(body: SFreeBody, r: RationalVec) -> GaugeValue:
    """Evaluate max_i a_i . r with its argmax set."""
    if r.dim != body.n:
        raise DimensionError(f"ray has dimension {r.dim}, body has {body.n}")
    values = [a.dot(r) for a in body.facets]
    best = max(values)
    return GaugeValue(best, tuple(i for i, v in enumerate(values) if v == best))


def psi_value(body: SFreeBody, r: RationalVec) -> Fraction:
    if r.dim != body.n:
        raise DimensionError(f"ray has dimension {r.dim}, body has {body.n}")
    return max(a.dot(r) for a in body.facets)


def classify_point(body: SFreeBody, x: RationalVec) -> PointClass:
    """Position of x relative to B_psi = {x : psi(x - f) <= 1}."""
    v = psi_value(body, x - body.f)
    if v < 1:
        return PointClass.INTERIOR
    if v == 1:
        return PointClass.BOUNDARY
    return PointClass.EXTERIOR

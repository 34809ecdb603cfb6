"""Named families of maximal S-free bodies used by the CLI, docs and tests.

Every entry is parameterized by exact rationals and validated for
maximality on emission.  The generic triangle family (one lattice point in
the relative interior of each facet, no integer vertices) is the stock
example without the covering property.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .bodies import SDescriptor, SFreeBody, body_from_facets
from .errors import InvalidInputError
from .geom import RationalVec, rat


def _params(overrides: Mapping[str, str], defaults: dict[str, Fraction]) -> dict[str, Fraction]:
    out = dict(defaults)
    for key, value in overrides.items():
        if key not in defaults:
            raise InvalidInputError(f"unknown parameter {key!r}")
        out[key] = rat(value)
    return out


def split(overrides: Mapping[str, str] = {}) -> SFreeBody:
    """The split 0 <= x_1 <= 1 with apex (f1, f2), 0 < f1 < 1."""
    p = _params(overrides, {"f1": Fraction(1, 2), "f2": Fraction(0)})
    f1, f2 = p["f1"], p["f2"]
    if not 0 < f1 < 1:
        raise InvalidInputError("split requires 0 < f1 < 1")
    f = RationalVec.of(f1, f2)
    facets = [
        RationalVec.of(Fraction(1) / (1 - f1), 0),
        RationalVec.of(Fraction(-1) / f1, 0),
    ]
    return body_from_facets(f, facets, SDescriptor.integers())


def triangle_integer_vertices(overrides: Mapping[str, str] = {}) -> SFreeBody:
    """conv{(0,0), (2,0), (0,2)}: one facet holds two lattice points, the
    hypotenuse holds (1,1); all vertices integral."""
    p = _params(overrides, {"f1": Fraction(1, 2), "f2": Fraction(1, 2)})
    f = RationalVec.of(p["f1"], p["f2"])
    facets = [RationalVec.of(-2, 0), RationalVec.of(0, -2), RationalVec.of(1, 1)]
    body = body_from_facets(f, facets, SDescriptor.integers())
    if not body.polyhedron().contains_strict(f):
        raise InvalidInputError("apex must be interior")
    return body


def triangle_type2(overrides: Mapping[str, str] = {}) -> SFreeBody:
    """Base on the x-axis through (0,0) and (1,0), apex (1/2, h) with
    1 < h < 2; the slanted facets pass through (0,1) and (1,1)."""
    p = _params(overrides, {"h": Fraction(3, 2)})
    h = p["h"]
    if not 1 < h < 2:
        raise InvalidInputError("triangle_type2 requires 1 < h < 2")
    f = RationalVec.of(Fraction(1, 2), Fraction(1, 2))
    # base x2 >= 0; left x2 - (2h-2) x1 <= 1; right x2 + (2h-2) x1 <= 2h - 1
    s = 2 * h - 2
    rows = [
        (RationalVec.of(0, -1), Fraction(0)),
        (RationalVec.of(-s, 1), Fraction(1)),
        (RationalVec.of(s, 1), s + 1),
    ]
    facets = []
    for normal, rhs in rows:
        gap = rhs - normal.dot(f)
        facets.append(normal.scale(Fraction(1) / gap))
    return body_from_facets(f, facets, SDescriptor.integers())


def triangle_generic(overrides: Mapping[str, str] = {}) -> SFreeBody:
    """Generic maximal lattice-free triangle: facet lines through (0,0),
    (1,0) and (0,1) with slope parameters, no integer vertices.

    The defaults kappa = tau = nu = 1/2 give a body without the covering
    property (covered fraction 41/56)."""
    p = _params(
        overrides,
        {
            "kappa": Fraction(1, 2),
            "tau": Fraction(1, 2),
            "nu": Fraction(1, 2),
            "f1": Fraction(1, 4),
            "f2": Fraction(1, 4),
        },
    )
    kappa, tau, nu = p["kappa"], p["tau"], p["nu"]
    if kappa <= 0 or tau <= 0 or nu <= 0:
        raise InvalidInputError("slopes must be positive")
    f = RationalVec.of(p["f1"], p["f2"])
    # nu x1 + x2 >= 0 (through (0,0));  x1 + kappa x2 <= 1 (through (1,0));
    # -tau x1 + x2 <= 1 (through (0,1))
    rows = [
        (RationalVec.of(-nu, -1), Fraction(0)),
        (RationalVec.of(1, kappa), Fraction(1)),
        (RationalVec.of(-tau, 1), Fraction(1)),
    ]
    facets = []
    for normal, rhs in rows:
        gap = rhs - normal.dot(f)
        if gap <= 0:
            raise InvalidInputError("apex is not interior for these parameters")
        facets.append(normal.scale(Fraction(1) / gap))
    return body_from_facets(f, facets, SDescriptor.integers())


def quadrilateral_generic(overrides: Mapping[str, str] = {}) -> SFreeBody:
    """The diamond |x1 - 1/2| + |x2 - 1/2| <= 1 with one lattice point in
    the relative interior of each of the four facets."""
    p = _params(overrides, {"f1": Fraction(1, 2), "f2": Fraction(1, 2)})
    f = RationalVec.of(p["f1"], p["f2"])
    rows = [
        (RationalVec.of(1, 1), Fraction(2)),
        (RationalVec.of(1, -1), Fraction(1)),
        (RationalVec.of(-1, 1), Fraction(1)),
        (RationalVec.of(-1, -1), Fraction(0)),
    ]
    facets = []
    for normal, rhs in rows:
        gap = rhs - normal.dot(f)
        if gap <= 0:
            raise InvalidInputError("apex is not interior")
        facets.append(normal.scale(Fraction(1) / gap))
    return body_from_facets(f, facets, SDescriptor.integers())


def wedge_general_s(overrides: Mapping[str, str] = {}) -> SFreeBody:
    """Unbounded wedge with apex (3/4, 1/2) opening away from
    S = Z^2 cap {x1 >= 0}; facet witnesses (0,0) and (0,1)."""
    p = _params(overrides, {})
    del p
    s = SDescriptor.polyhedral([RationalVec.of(-1, 0)], [Fraction(0)])
    f = RationalVec.of(0, Fraction(1, 2))
    facets = [
        RationalVec.of(Fraction(4, 3), 2),
        RationalVec.of(Fraction(4, 3), -2),
    ]
    return body_from_facets(f, facets, s)


CATALOG: dict[str, Callable[[Mapping[str, str]], SFreeBody]] = {
    "split": split,
    "triangle_integer_vertices": triangle_integer_vertices,
    "triangle_type2": triangle_type2,
    "triangle_generic": triangle_generic,
    "quadrilateral_generic": quadrilateral_generic,
    "wedge_generalS": wedge_general_s,
}


def catalog_names() -> list[str]:
    return sorted(CATALOG)


def catalog_body(name: str, overrides: Mapping[str, str] = {}) -> SFreeBody:
    if name not in CATALOG:
        raise KeyError(name)
    return CATALOG[name](overrides)

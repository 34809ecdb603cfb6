from fractions import Fraction as F

import pytest

from liftgeo import (
    RationalVec,
    SDescriptor,
    body_from_facets,
    body_from_vertices_2d,
    lattice_points_in_body,
    verify_maximal_sfree,
    vertices_2d,
)
from liftgeo.errors import EmptySError, InvalidApexError, InvalidInputError

from helpers import make_split, make_triangle, make_wedge

Z2 = SDescriptor.integers()


def test_split_from_facets():
    body = make_split()
    # a_i(x - f) <= 1 expands to 0 <= x1 <= 1
    P = body.polyhedron()
    assert P.contains(RationalVec.of(0, 7))
    assert P.contains(RationalVec.of(1, -3))
    assert not P.contains(RationalVec.of(F(11, 10), 0))
    assert not P.contains_strict(RationalVec.of(0, 0))


def test_triangle_from_facets():
    body = make_triangle()
    verts, rays, lin = vertices_2d(body.polyhedron())
    assert {v.coords for v in verts} == {(0, 0), (2, 0), (0, 2)}
    assert not rays and not lin


def test_apex_in_s_rejected():
    with pytest.raises(InvalidApexError):
        body_from_facets(RationalVec.of(0, 0), [RationalVec.of(1, 0)], Z2)


def test_empty_facets_rejected():
    with pytest.raises(InvalidInputError):
        body_from_facets(RationalVec.of("1/2", "0"), [], Z2)


def test_positive_multiple_dedupe():
    body = body_from_facets(
        RationalVec.of("1/2", "0"),
        [RationalVec.of(1, 0), RationalVec.of(2, 0), RationalVec.of(-2, 0)],
        Z2,
    )
    # the tighter (larger) multiple wins
    assert body.facets == (RationalVec.of(2, 0), RationalVec.of(-2, 0))


def test_body_from_vertices_triangle():
    body = body_from_vertices_2d(
        [RationalVec.of(0, 0), RationalVec.of(2, 0), RationalVec.of(0, 2)],
        [],
        RationalVec.of("1/2", "1/2"),
        Z2,
    )
    assert set(a.coords for a in body.facets) == {(-2, 0), (0, -2), (1, 1)}


def test_body_from_vertices_split_with_rays():
    body = body_from_vertices_2d(
        [RationalVec.of(0, 0), RationalVec.of(1, 0)],
        [RationalVec.of(0, 1), RationalVec.of(0, -1)],
        RationalVec.of("1/2", "0"),
        Z2,
    )
    assert set(a.coords for a in body.facets) == {(2, 0), (-2, 0)}


def test_body_from_vertices_boundary_apex_rejected():
    with pytest.raises(InvalidApexError):
        body_from_vertices_2d(
            [RationalVec.of(0, 0), RationalVec.of(2, 0), RationalVec.of(0, 2)],
            [],
            RationalVec.of(0, 0),
            Z2,
        )


def test_round_trip_facets_vertices():
    for body in (make_split(), make_triangle()):
        verts, rays, lin = vertices_2d(body.polyhedron())
        rays = rays + [l for l in lin] + [l.scale(-1) for l in lin]
        again = body_from_vertices_2d(verts, rays, body.f, body.s)
        assert set(a.coords for a in again.facets) == set(a.coords for a in body.facets)


def test_round_trip_random_bodies():
    import random

    rng = random.Random(321)
    f = RationalVec.of("1/3", "-2/7")
    for _ in range(25):
        facets = []
        for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            facets.append(
                RationalVec.of(
                    F(sx * rng.randint(1, 9), rng.randint(1, 4)),
                    F(sy * rng.randint(1, 9), rng.randint(1, 4)),
                )
            )
        body = body_from_facets(f, facets, Z2)
        from liftgeo.geom import irredundant

        if len(irredundant(body.polyhedron()).rows) != len(body.facets):
            continue  # a drawn row was redundant: degenerate sample
        verts, rays, lin = vertices_2d(body.polyhedron())
        assert not rays and not lin  # normals positively span by construction
        again = body_from_vertices_2d(verts, [], f, Z2)
        assert set(a.coords for a in again.facets) == set(a.coords for a in body.facets)


def test_verify_split_maximal():
    report = verify_maximal_sfree(make_split())
    assert report.verdict == "maximal"
    assert report.is_maximal and report.is_s_free
    assert {w.coords for w in report.facet_witnesses} == {(1, 0), (0, 0)}


def test_verify_triangle_maximal():
    report = verify_maximal_sfree(make_triangle())
    assert report.verdict == "maximal"
    assert {w.coords for w in report.facet_witnesses} == {(0, 1), (1, 0), (1, 1)}
    # every witness is tight exactly on its own facet
    body = make_triangle()
    for i, w in enumerate(report.facet_witnesses):
        for j, a in enumerate(body.facets):
            v = a.dot(w - body.f)
            assert v == 1 if j == i else v < 1


def test_verify_shrunk_triangle_not_maximal():
    body = body_from_vertices_2d(
        [RationalVec.of(0, 0), RationalVec.of("3/2", "0"), RationalVec.of("0", "3/2")],
        [],
        RationalVec.of("1/2", "1/2"),
        Z2,
    )
    report = verify_maximal_sfree(body)
    assert report.verdict == "not_maximal"
    assert report.is_s_free
    # the hypotenuse x1 + x2 <= 3/2 has no lattice point in its relative interior
    missing = [i for i, w in enumerate(report.facet_witnesses) if w is None]
    assert len(missing) == 1
    a = body.facets[missing[0]]
    assert a[0] == a[1] and a[0] > 0


def test_verify_interior_violator():
    body = body_from_facets(
        RationalVec.of("1/2", "1/2"),
        [RationalVec.of(1, 0), RationalVec.of(-1, 0), RationalVec.of(0, 1), RationalVec.of(0, -1)],
        Z2,
    )
    report = verify_maximal_sfree(body)
    assert not report.is_s_free
    assert report.interior_violator is not None
    assert report.verdict == "not_maximal"


def test_lattice_points_split_representatives():
    assert [p.coords for p in lattice_points_in_body(make_split())] == [(0, 0), (1, 0)]


def test_lattice_points_triangle_all_six():
    assert [p.coords for p in lattice_points_in_body(make_triangle())] == [
        (0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0),
    ]


def test_lattice_points_wedge():
    body = make_wedge()
    pts = lattice_points_in_body(body)
    assert [p.coords for p in pts] == [(0, 0), (0, 1)]
    for p in pts:
        assert p.is_integral()
        assert body.s.contains(p)
        assert all(a.dot(p - body.f) <= 1 for a in body.facets)


def test_wedge_maximal():
    report = verify_maximal_sfree(make_wedge())
    assert report.verdict == "maximal"


def test_sdescriptor_empty():
    with pytest.raises(EmptySError):
        SDescriptor.polyhedral(
            [RationalVec.of(1, 0), RationalVec.of(-1, 0)],
            [F(2, 3), F(-1, 2)],
        )


def test_sdescriptor_lower_dimensional():
    with pytest.raises(InvalidInputError):
        SDescriptor.polyhedral(
            [RationalVec.of(1, 0), RationalVec.of(-1, 0)],
            [0, 0],
        )


def test_maximality_report_invariant():
    # is_maximal iff s-free and every facet has a witness
    for body, expected in ((make_split(), True), (make_triangle(), True)):
        report = verify_maximal_sfree(body)
        assert report.is_maximal == (
            report.is_s_free and all(w is not None for w in report.facet_witnesses)
        )
        assert report.is_maximal is expected

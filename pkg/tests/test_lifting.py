import random
from dataclasses import replace
from fractions import Fraction as F

import pytest

from liftgeo import (
    RationalVec,
    lifted_body,
    minimal_lifting_eval,
    lifting_region,
    pi_star,
    pi_star_certificate_check,
    pi_star_periodic,
    poly_equal,
    psi_value,
    single_ray_validity,
)
from liftgeo.errors import DimensionError, UnsupportedSError

from helpers import (
    full_catalog,
    make_split,
    make_triangle,
    make_wedge,
    oracle_pi_star_grid,
    random_ray,
    zn_catalog,
)


def test_lifted_body_rows_triangle():
    tri = make_triangle()
    lb = lifted_body(tri, RationalVec.of(1, 0), 1)
    # facet a1 = (-2, 0): -2(x1 - 1/2) + 3 x3 <= 1
    rows = {tuple(n.coords): rhs for n, rhs in lb.rows()}
    assert rows[(-2, 0, 3)] == F(0)  # -2 x1 + 3 x3 <= 1 - 1 = 0


def test_lifted_body_rows_split():
    split = make_split()
    lb = lifted_body(split, RationalVec.of("1/4", "0"), F(1, 2))
    rows = {tuple(n.coords): rhs for n, rhs in lb.rows()}
    assert rows[(2, 0, 0)] == F(2)
    assert rows[(-2, 0, 1)] == F(0)


def test_lifted_body_lambda_zero_lineality():
    for _, body in zn_catalog():
        r = RationalVec.of("2/3", "-1/5")
        lb = lifted_body(body, r, 0)
        direction = RationalVec(tuple(r.coords) + (F(1),))
        for normal, _ in lb.rows():
            assert normal.dot(direction) == 0


def test_slice_identity():
    for _, body in full_catalog():
        lb = lifted_body(body, RationalVec.of("1/3", "2/7"), F(5, 9))
        assert poly_equal(lb.slice_at_zero(), body.polyhedron())


def test_monotonicity_in_lambda():
    split = make_split()
    r = RationalVec.of("1/4", "0")
    big = lifted_body(split, r, F(1, 2))
    small = lifted_body(split, r, F(1, 4))
    # every sampled point of B(1/2) with nonnegative last coordinate is in B(1/4)
    for x1 in range(-2, 3):
        for t in range(0, 4):
            p = RationalVec.of(x1, 0)
            if big.contains(p, F(t)):
                assert small.contains(p, F(t))


def test_single_ray_validity_examples():
    split = make_split()
    ok, viol = single_ray_validity(split, RationalVec.of(1, 0), 0)
    assert ok and viol is None
    ok, viol = single_ray_validity(split, RationalVec.of(1, 0), F(-1, 10))
    assert not ok
    x, t = viol
    assert t >= 1
    assert psi_value(split, x - split.f - RationalVec.of(1, 0).scale(t)) + F(-1, 10) * t < 1
    ok, _ = single_ray_validity(split, RationalVec.of("1/4", "0"), F(1, 2))
    assert ok


def test_pi_star_split_examples():
    split = make_split()
    assert pi_star(split, RationalVec.of(1, 0)).value == 0
    assert pi_star(split, RationalVec.of("1/4", "0")).value == F(1, 2)
    r = RationalVec.of("1/2", "0")
    assert pi_star(split, r).value == 1 == psi_value(split, r)


def test_pi_star_blocking_point_is_boundary():
    for _, body in full_catalog():
        rng = random.Random(17)
        for _ in range(10):
            r = random_ray(rng)
            res = pi_star(body, r)
            x, t = res.blocking_point
            assert t >= 1 and x.is_integral() and body.s.contains(x)
            assert psi_value(body, x - body.f - r.scale(t)) == 1 - res.value * t


def test_certificate_check_true_and_perturbed():
    split = make_split()
    r = RationalVec.of("1/4", "0")
    res = pi_star(split, r)
    ok, reason = pi_star_certificate_check(split, r, res)
    assert ok, reason
    lower = replace(res, value=res.value - F(1, 100))
    ok, reason = pi_star_certificate_check(split, r, lower)
    assert not ok and "interior" in reason
    higher = replace(res, value=res.value + F(1, 100))
    ok, reason = pi_star_certificate_check(split, r, higher)
    assert not ok and "boundary" in reason


def test_pi_star_periodic_examples():
    split = make_split()
    assert pi_star_periodic(split, RationalVec.of("5/4", "0")).value == F(1, 2)
    assert pi_star_periodic(split, RationalVec.of(1, 0)).value == 0
    tri = make_triangle()
    assert pi_star_periodic(tri, RationalVec.of(3, -2)).value == 0


def test_pi_star_periodic_requires_integer_lattice():
    with pytest.raises(UnsupportedSError):
        pi_star_periodic(make_wedge(), RationalVec.of(1, 0))


def test_pi_star_periodic_translated_certificate():
    split = make_split()
    r = RationalVec.of("-7/4", "3")
    res = pi_star_periodic(split, r)
    ok, reason = pi_star_certificate_check(split, r, res)
    assert ok, reason


def test_periodicity_invariant():
    rng = random.Random(23)
    for _, body in zn_catalog():
        for _ in range(20):
            r = random_ray(rng)
            w = RationalVec.of(rng.randint(-9, 9), rng.randint(-9, 9))
            assert pi_star_periodic(body, r).value == pi_star_periodic(body, r + w).value


def test_sandwich():
    rng = random.Random(29)
    for _, body in full_catalog():
        for _ in range(15):
            r = random_ray(rng)
            assert pi_star(body, r).value <= psi_value(body, r)


def test_validity_consistency():
    rng = random.Random(37)
    for _, body in zn_catalog():
        for _ in range(5):
            r = random_ray(rng, max_den=4, spread=1)
            value = pi_star(body, r).value
            ok, _ = single_ray_validity(body, r, value, window=6, t_max=10)
            assert ok
            ok, viol = single_ray_validity(body, r, value - F(1, 1000), window=6, t_max=10)
            assert not ok and viol is not None


def test_oracle_equivalence_smoke():
    rng = random.Random(41)
    for _, body in full_catalog():
        for _ in range(8):
            r = random_ray(rng, max_den=4, spread=2)
            res = pi_star(body, r)
            sup, arg = oracle_pi_star_grid(body, r, window=8, t_max=12)
            x, t = res.blocking_point
            if t <= 12 and all(abs(c) <= 8 for c in x.coords):
                assert sup == res.value
            else:
                assert sup <= res.value


def test_minimal_lifting_eval_examples():
    split = make_split()
    rc = lifting_region(split)
    assert minimal_lifting_eval(split, rc, RationalVec.of("5/4", "0")) == F(1, 2)
    assert minimal_lifting_eval(split, rc, RationalVec.of("-1/4", "3")) == F(1, 2)
    assert minimal_lifting_eval(split, rc, RationalVec.zero(2)) == 0


def test_minimal_lifting_eval_not_covered():
    from helpers import make_triangle_generic

    body = make_triangle_generic()
    rc = lifting_region(body)
    # the complex does not cover; some ray must signal not-covered
    rng = random.Random(43)
    missing = 0
    for _ in range(60):
        r = random_ray(rng)
        if minimal_lifting_eval(body, rc, r) is None:
            missing += 1
    assert missing > 0


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        pi_star(make_split(), RationalVec.of(1, 2, 3))


def test_wedge_general_s_values():
    wedge = make_wedge()
    # along the S-facing axis the recession candidate is exact: 4/3 * r1
    for r, expected in (
        (RationalVec.of("1/4", "0"), F(1, 3)),
        (RationalVec.of("3/4", "0"), F(1)),
    ):
        res = pi_star(wedge, r)
        assert res.value == expected
        ok, reason = pi_star_certificate_check(wedge, r, res)
        assert ok, reason


def test_bound_certification_flags():
    # integer-lattice searches are always complete
    rng = random.Random(47)
    for _, body in zn_catalog():
        for _ in range(5):
            assert pi_star(body, random_ray(rng)).bound_certified
    # the general-S tail bound is honestly flagged when it cannot be closed
    wedge = make_wedge()
    res = pi_star(wedge, RationalVec.of("-3/2", "2"))
    assert res.value == -2
    assert not res.bound_certified
    sup, _ = oracle_pi_star_grid(wedge, RationalVec.of("-3/2", "2"), window=8, t_max=16)
    assert sup == res.value

import warnings

import pytest
from hypothesis import given, strategies as st

from ellipdilog import InvalidArgumentError, Lattice, TorusPoint, halvings, neg_canonical, points_equal
from ellipdilog.torus import is_two_torsion, is_zero, third_point, two_torsion

coord = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
LAT = Lattice(0.15 + 1.1j)


def test_lattice_rejects_small_imaginary_part():
    with pytest.raises(InvalidArgumentError):
        Lattice(0.3 + 0.1j)
    with pytest.raises(InvalidArgumentError):
        Lattice(complex("nan"))


def test_lattice_warns_when_series_slow():
    with pytest.warns(UserWarning):
        Lattice(0.1 + 0.3j)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        Lattice(0.1 + 0.9j)


@given(coord, coord)
def test_reduce_lands_in_fundamental_cell(u, v):
    z = u + v * LAT.tau
    w = LAT.reduce(z)
    a, b = LAT.coords(w)
    assert 0 <= a < 1 and 0 <= b < 1
    assert LAT.distance(z, w) < 1e-12


@given(coord, coord, st.integers(-4, 4), st.integers(-4, 4))
def test_distance_is_lattice_invariant(u, v, m, n):
    z = u + v * LAT.tau
    assert LAT.distance(z, z + m + n * LAT.tau) < 1e-12
    assert abs(LAT.distance(z, 0.1) - LAT.distance(z + m + n * LAT.tau, 0.1)) < 1e-12


def test_split_recovers_integers():
    z = 0.2 + 0.1 * LAT.tau + 3 - 2 * LAT.tau
    w, m, n = LAT.split(z)
    assert (m, n) == (3, -2)
    assert abs(w - (0.2 + 0.1 * LAT.tau)) < 1e-13


def test_point_arithmetic_keeps_lifts():
    p, q = TorusPoint(0.3 + 0.2j, LAT), TorusPoint(2.1 + 1j, LAT)
    assert (p + q).lift == p.lift + q.lift
    assert (p - q).lift == p.lift - q.lift
    assert (2 * p).lift == 2 * p.lift
    assert points_equal(p + LAT.tau, p)


def test_two_torsion_and_halvings():
    tors = two_torsion(LAT)
    assert len(tors) == 4
    assert all(is_two_torsion(t) for t in tors)
    assert is_zero(tors[0])
    p = TorusPoint(0.37 + 0.61 * LAT.tau, LAT)
    hs = halvings(p)
    assert len(hs) == 4
    for h in hs:
        assert points_equal(2 * h, p)
    for i in range(4):
        for j in range(i):
            assert not points_equal(hs[i], hs[j])


def test_third_point():
    p = TorusPoint(0.8 + 0.3 * LAT.tau, LAT)
    assert points_equal(3 * third_point(p), p)


@given(coord, coord)
def test_neg_canonical_is_a_class_function(u, v):
    p = TorusPoint(u + v * LAT.tau, LAT)
    a, sa = neg_canonical(p)
    b, sb = neg_canonical(-p)
    assert points_equal(a, b, 1e-9)
    if not is_two_torsion(p):
        assert sa == -sb
        assert points_equal(sa * p, a, 1e-9)


def test_neg_canonical_on_two_torsion():
    for t in two_torsion(LAT):
        c, s = neg_canonical(t)
        assert s == 1 and points_equal(c, t)

import math

import pytest

from ghcalc import IVector, Interval, Star, WMapConfig
from ghcalc.errors import InvalidInterval, LengthMismatch
from ghcalc.ivector import dot, gh_distance, vec_leq, vec_norm, vec_op, w_map


def iv(*pairs):
    return IVector.of(*(Interval(lo, hi) for lo, hi in pairs))


def test_construction_and_access():
    v = iv((1, 2), (0, 1))
    assert len(v) == 2
    assert v[0] == Interval(1, 2)
    assert list(v) == [Interval(1, 2), Interval(0, 1)]
    with pytest.raises(LengthMismatch):
        IVector(())


def test_zero():
    z = IVector.zero(3)
    assert all(c == Interval(0, 0) for c in z)


def test_parse_and_str_roundtrip():
    v = iv((1, 2), (-0.5, 3))
    assert IVector.parse(str(v)) == v
    assert IVector.parse("([1,2] , [0,1])") == iv((1, 2), (0, 1))
    with pytest.raises(InvalidInterval):
        IVector.parse("[1,2]")
    with pytest.raises(InvalidInterval):
        IVector.parse("()")


def test_csv_row_roundtrip():
    v = iv((1, 2), (-0.125, 3.5))
    assert IVector.from_csv_row(v.to_csv_row()) == v
    with pytest.raises(InvalidInterval):
        IVector.from_csv_row("1.0,2.0,3.0")


def test_componentwise_operations():
    a = iv((1, 2), (0, 1))
    b = iv((1, 1), (2, 3))
    assert vec_op(a, b, Star.ADD) == iv((2, 3), (2, 4))
    assert vec_op(a, b, Star.SUB) == iv((0, 1), (-3, -1))
    assert vec_op(a, b, Star.GH_SUB) == iv((0, 1), (-2, -2))
    with pytest.raises(LengthMismatch):
        vec_op(a, IVector.of(Interval(0, 0)), Star.ADD)


def test_vec_norm():
    assert vec_norm(iv((3, 4), (-5, 1))) == pytest.approx(math.sqrt(41), rel=1e-15)
    assert vec_norm(IVector.zero(4)) == 0.0


def test_dot_product():
    assert dot((1.0, -1.0), iv((1, 2), (0, 3))) == Interval(-2, 2)
    assert dot((0.0,), IVector.of(Interval(1, 5))) == Interval(0, 0)
    with pytest.raises(LengthMismatch):
        dot((1.0,), iv((1, 2), (0, 1)))


def test_w_map_default_is_midpoint():
    assert w_map(iv((1, 3), (-2, 4))) == (2.0, 1.0)
    assert w_map(iv((1, 3),), WMapConfig(1.0, 0.0)) == (1.0,)


def test_w_map_config_validation():
    with pytest.raises(ValueError):
        WMapConfig(0.7, 0.7)
    with pytest.raises(ValueError):
        WMapConfig(-0.1, 1.1)
    cfg = WMapConfig(0.25, 0.75)
    assert cfg.w + cfg.w_prime == 1.0


def test_vec_leq():
    assert vec_leq(iv((1, 2), (0, 1)), iv((1, 3), (0, 1)))
    assert not vec_leq(iv((1, 2), (2, 3)), iv((1, 3), (0, 1)))
    with pytest.raises(LengthMismatch):
        vec_leq(iv((1, 2),), iv((1, 2), (0, 1)))


def test_gh_distance():
    assert gh_distance(IVector.of(Interval(1, 3)), IVector.of(Interval(0, 2))) == 1.0
    v = iv((1, 2), (0, 1))
    assert gh_distance(v, v) == 0.0

import numpy as np
import pytest
from hypothesis import given, strategies as st

from momhull import MomentPoint, evaluate
from momhull.io import (
    ParseError,
    format_curve,
    format_naming,
    format_namings,
    format_points,
    parse_curve,
    parse_naming,
    parse_namings,
    parse_points,
)
from momhull.principal import principal_from_moments
from momhull.transform import random_curve

from conftest import UNIT, namings

RADAU = """\
n 2
t_min 0
t_max 1
parity half
atoms 2
0 0.16666666666666663
0.59999999999999998 0.83333333333333337
"""


def test_radau_file():
    C = principal_from_moments(MomentPoint.of([0.5, 0.3]), UNIT)
    assert format_naming(C) == RADAU
    P = parse_naming("# comment\n\n" + RADAU)
    assert format_naming(P) == RADAU


@given(namings(zeros=True))
def test_naming_round_trip_byte_identical(P):
    text = format_naming(P)
    assert format_naming(parse_naming(text)) == text


@given(st.lists(namings(), min_size=1, max_size=3))
def test_many_namings(Ps):
    text = format_namings(Ps)
    back = parse_namings(text)
    assert len(back) == len(Ps) and format_namings(back) == text


@given(namings(), st.integers(1, 4))
def test_points_round_trip_byte_identical(P, count):
    pts = [evaluate(P)] * count
    text = format_points(P.interval, pts)
    batch = parse_points(text)
    assert batch.interval == P.interval and batch.n == P.n
    assert format_points(batch.interval, batch.points) == text
    assert all(np.array_equal(a.v, b.v) for a, b in zip(batch.points, pts))


def test_curve_round_trip():
    curve = random_curve(3, seed=2)
    text = format_curve(curve)
    assert np.array_equal(parse_curve(text).coeff, curve.coeff)
    assert format_curve(parse_curve(text)) == text


@pytest.mark.parametrize(
    "text",
    [
        "",
        "n 2\nt_min 0\n",
        "n 2\nt_min 0\nt_max 1\nparity odd\natoms 1\n0 1\n",
        "n 2\nt_min 0\nt_max 1\nparity half\natoms 2\n0 1\n",
        "n x\nt_min 0\nt_max 1\nparity half\natoms 1\n0 1\n",
        "n 2\nt_max 1\nt_min 0\nparity half\natoms 1\n0 1\n",
    ],
)
def test_bad_naming_files(text):
    with pytest.raises(ParseError):
        parse_namings(text)


@pytest.mark.parametrize("text", ["", "2 0\n0.5 0.3\n", "2 0 1\n0.5\n", "2 0 1\n"])
def test_bad_point_files(text):
    with pytest.raises(ParseError):
        parse_points(text)

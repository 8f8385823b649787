import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mfzeta.targets import EMPTY, Ball, Box, Point, is_subset, parse_target


def test_contains_examples():
    assert Point(1.0).contains([1.0], 0.0)
    box = Box([0.5], [1.5])
    assert box.contains([1.6], 0.1)
    assert not box.contains([1.6], 0.05)
    # max-norm: the corner (1, 1) lies on the unit ball around the origin
    assert Ball([0.0, 0.0], 1.0).contains([1.0, 1.0], 0.0)


def test_contains_vectorized_and_negative_slack():
    box = Box([0.0, 0.0], [1.0, 1.0])
    pts = np.array([[0.5, 0.5], [1.2, 0.5], [0.5, -0.05]])
    np.testing.assert_array_equal(box.contains(pts, 0.1), [True, False, True])
    with pytest.raises(ValueError):
        box.contains([0.5, 0.5], -1.0)


def test_shrink_examples():
    b = Box([0.0], [1.0]).shrink(0.25)
    np.testing.assert_allclose(b.bounds(), ([0.25], [0.75]))
    assert Box([0.0], [1.0]).shrink(0.6) is EMPTY
    ball = Ball([0.3], 1.0).shrink(0.3)
    assert isinstance(ball, Ball) and ball.radius == pytest.approx(0.7)
    assert Point(1.0).shrink(0.1) is EMPTY
    assert Point(1.0).shrink(0.0).contains([1.0])


def test_empty_matches_nothing():
    assert not EMPTY.contains([0.0], 100.0)
    assert not EMPTY.contains(np.zeros((3, 1)), 1.0).any()


def test_box_rejects_inverted():
    with pytest.raises(ValueError):
        Box([1.0], [0.0])


@pytest.mark.parametrize(
    "text, kind, lo, hi",
    [
        ("point:1.0", "point", [1.0], [1.0]),
        ("box:0.5,1.5", "box", [0.5], [1.5]),
        ("ball:0.7,0.1", "ball", [0.6], [0.8]),
        ("box:0.5,1.0;0.9,1.1", "box", [0.5, 0.9], [1.0, 1.1]),
        ("point:0.9;1.0", "point", [0.9, 1.0], [0.9, 1.0]),
        ("ball:0.7;1.0,0.1", "ball", [0.6, 0.9], [0.8, 1.1]),
    ],
)
def test_parse_target(text, kind, lo, hi):
    t = parse_target(text)
    assert t.kind == kind
    np.testing.assert_allclose(t.bounds(), (lo, hi))
    assert parse_target(t.spec()).kind == kind


@pytest.mark.parametrize("bad", ["", "point", "cube:1", "box:1", "box:2,1", "ball:0.5", "point:x"])
def test_parse_target_rejects(bad):
    with pytest.raises(ValueError):
        parse_target(bad)


@given(st.floats(-5, 5), st.floats(0, 2), st.floats(-8, 8), st.floats(0, 3), st.floats(0, 3))
def test_membership_monotone_in_slack(lo, width, x, r1, extra):
    box = Box([lo], [lo + width])
    if box.contains([x], r1):
        assert box.contains([x], r1 + extra)


@given(st.floats(-3, 3), st.floats(0.1, 3), st.floats(0.01, 1))
def test_enlarged_erosion_stays_inside(lo, width, eps):
    box = Box([lo], [lo + width])
    inner = box.shrink(eps)
    if inner is EMPTY:
        return
    r = 0.999 * eps
    grid = np.linspace(lo - 1, lo + width + 1, 401)[:, None]
    inside_enlarged = inner.contains(grid, r)
    assert np.all(box.contains(grid[inside_enlarged], 0.0))


def test_is_subset():
    assert is_subset(Box([0.6], [0.9]), Box([0.5], [1.0]))
    assert not is_subset(Box([0.4], [0.9]), Box([0.5], [1.0]))
    assert is_subset(EMPTY, Point(1.0))

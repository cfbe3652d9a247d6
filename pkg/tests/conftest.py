"""Shared hypothesis strategies and helpers for the test suite."""

import contextlib

from hypothesis import strategies as st

from rrr.geometry import BBox

COORD = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
SIZE = st.floats(min_value=0.0, max_value=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def boxes(draw):
    return BBox(draw(COORD), draw(COORD), draw(SIZE), draw(SIZE))


@st.composite
def int_boxes(draw, lo=-1000, hi=1000, max_size=500):
    x = draw(st.integers(lo, hi))
    y = draw(st.integers(lo, hi))
    w = draw(st.integers(0, max_size))
    h = draw(st.integers(0, max_size))
    return BBox(x, y, w, h)


@st.composite
def nested_int_boxes(draw):
    """(outer, inner) integer boxes with exact containment."""
    outer = draw(int_boxes(max_size=500))
    dx = draw(st.integers(0, int(outer.w)))
    dy = draw(st.integers(0, int(outer.h)))
    w = draw(st.integers(0, int(outer.w) - dx))
    h = draw(st.integers(0, int(outer.h) - dy))
    inner = BBox(outer.x + dx, outer.y + dy, w, h)
    return outer, inner


@contextlib.contextmanager
def criterion(number: int, description: str):
    """Print one pass/fail line per acceptance criterion."""
    try:
        yield
    except BaseException:
        print(f"[criterion {number:2d}] FAIL  {description}")
        raise
    print(f"[criterion {number:2d}] PASS  {description}")

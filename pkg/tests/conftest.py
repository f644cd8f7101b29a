import numpy as np
import pytest
from hypothesis import settings, strategies as st

from momhull import Interval, Naming, Parity

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

UNIT = Interval(0.0, 1.0)
WIDE = Interval(-1.0, 2.0)

st_n = st.integers(min_value=1, max_value=8)
# raw moments on intervals far from the origin lose about max|t|^n * 1e-16 absolute,
# which defeats the default eps_mem; those get their own test with a looser block
st_interval = st.sampled_from([UNIT, WIDE, Interval(-1.0, 1.0), Interval(-0.5, 0.25)])


@st.composite
def namings(draw, n=None, interval=None, max_atoms=6, zeros=False):
    """Correct-parity namings with sorted atoms; optionally some zero weights."""
    n = draw(st_n) if n is None else n
    I = draw(st_interval) if interval is None else interval
    k = draw(st.integers(min_value=1, max_value=max_atoms))
    u = draw(st.lists(st.floats(0.0, 1.0), min_size=k, max_size=k))
    w = draw(st.lists(st.floats(0.01, 1.0), min_size=k, max_size=k))
    if zeros:
        mask = draw(st.lists(st.booleans(), min_size=k, max_size=k))
        w = [0.0 if z else x for x, z in zip(w, mask)]
        if not any(w):
            w[-1] = 1.0
    ts = sorted(I.t_min + x * I.width for x in u)
    parity = Parity.for_n(n)
    if parity is Parity.HALF:
        ts = [I.t_min] + ts
        w = [draw(st.floats(0.0, 1.0))] + w
    total = sum(w)
    return Naming.build(I, n, [(t, c / total) for t, c in zip(ts, w)], parity)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

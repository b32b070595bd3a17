from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from sispace.piecewise import PiecewiseFn

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@st.composite
def piecewise_fns(draw, max_pieces=3, max_degree=2):
    """Small real piecewise polynomials on a half-integer grid."""
    n = draw(st.integers(1, max_pieces))
    nodes = draw(st.lists(st.integers(-4, 6), min_size=n + 1, max_size=n + 1, unique=True))
    bps = [Fraction(v, 2) for v in sorted(nodes)]
    pieces = [draw(st.lists(st.integers(-3, 3), min_size=1, max_size=max_degree + 1))
              for _ in range(n)]
    return PiecewiseFn.make(bps, pieces)


@st.composite
def trig_polys(draw, max_degree=6, real=False):
    from sispace.trigpoly import TrigPoly
    lo = draw(st.integers(-max_degree, max_degree))
    hi = draw(st.integers(lo, max_degree))
    fl = st.floats(-2, 2, allow_nan=False)
    coeffs = {}
    for k in range(lo, hi + 1):
        coeffs[k] = complex(draw(fl), 0.0 if real else draw(fl))
    return TrigPoly.from_dict(coeffs)


# acceptance criterion -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split("-")[1])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {detail}")

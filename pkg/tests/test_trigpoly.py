import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import trig_polys
from sispace.trigpoly import (DivisionRemainderError, TrigPoly, divide_out, pair,
                              roots_on_torus, sin2, sin_power, weighted_norm2)

PHI_HAT1 = TrigPoly.from_dict({0: 2 / 3, 1: 1 / 6, -1: 1 / 6})
PHI_PSI1 = TrigPoly.from_dict({0: 2 / 3, 1: -1 / 3, -1: -1 / 3})


def test_evaluation():
    assert TrigPoly.constant(1)(0.37) == 1
    assert PHI_HAT1.real_values(0.0) == pytest.approx(1.0, abs=1e-15)
    assert PHI_PSI1.real_values(0.0) == pytest.approx(0.0, abs=1e-15)
    t = np.linspace(0, 1, 17)
    assert np.allclose(PHI_HAT1.real_values(t), (2 + np.cos(2 * np.pi * t)) / 3, atol=1e-15)


def test_derivative_evaluation_against_finite_differences():
    p = TrigPoly.from_dict({-2: 0.3 - 0.1j, 0: 1.0, 3: 0.25j})
    x, h = 0.31, 1e-5
    fd = (p(x + h) - p(x - h)) / (2 * h)
    assert abs(p(x, derivative=1) - fd) < 1e-6 * np.abs(p(x, derivative=1))
    assert p.derivative()(x) == pytest.approx(p(x, derivative=1))


def test_multiplication_examples():
    assert (TrigPoly.monomial(1) * TrigPoly.monomial(-1)).allclose(TrigPoly.constant(1), atol=0)
    s = TrigPoly.from_dict({0: 0.5, 1: -0.25, -1: -0.25})
    assert (s * TrigPoly.constant(2)).allclose(TrigPoly.from_dict({0: 1, 1: -0.5, -1: -0.5}))
    assert (s * TrigPoly.zero()).is_zero
    assert s.allclose(sin2(0.0))


def test_pair_examples():
    for n in range(-2, 3):
        for m in range(-2, 3):
            assert pair(TrigPoly.monomial(n), TrigPoly.monomial(m)) == (1 if n == m else 0)
    assert pair(PHI_HAT1, TrigPoly.constant(1)) == pytest.approx(2 / 3, abs=1e-15)
    one = TrigPoly.constant(1)
    assert pair(one, one * PHI_HAT1).real == pytest.approx(2 / 3, abs=1e-15)
    from scipy import integrate
    quad = integrate.quad(lambda t: float(PHI_HAT1.real_values(t)), 0, 1)[0]
    assert weighted_norm2(one, PHI_HAT1) == pytest.approx(quad, abs=1e-13)


@given(trig_polys())
def test_pair_nonnegative_and_parseval(p):
    v = pair(p, p)
    assert v.real >= 0 and v.imag == 0
    assert v.real == pytest.approx(float(np.sum(np.abs(p.coeffs) ** 2)), rel=1e-15, abs=0)


@given(trig_polys(), trig_polys())
def test_pair_matches_quadrature(p, q):
    t = np.arange(256) / 256  # exact for degree < 128 by aliasing-free trapezoid rule
    quad = np.mean(p(t) * np.conj(q(t)))
    assert abs(pair(p, q) - quad) < 1e-12 * max(1.0, p.l1() * q.l1())


def test_roots_examples():
    assert roots_on_torus(PHI_PSI1) == [(0.0, 2)]
    assert roots_on_torus(PHI_HAT1) == []
    r = roots_on_torus(sin_power(0.5, 4))
    assert len(r) == 1 and r[0].multiplicity == 4 and r[0].location == pytest.approx(0.5, abs=1e-8)


@given(st.lists(st.tuples(st.floats(0, 0.999), st.integers(1, 2)), min_size=1, max_size=2),
       st.floats(1.5, 4.0))
def test_roots_of_squares_are_even(zeros, lift):
    # |q|^2 with q vanishing at the chosen points, times a positive factor
    locs = []
    for x, _ in zeros:
        if all(min(abs(x - y), 1 - abs(x - y)) > 0.08 for y in locs):
            locs.append(x)
    q = TrigPoly.constant(1.0)
    for x, (_, order) in zip(locs, zeros):
        z0 = np.exp(2j * np.pi * x)
        q = q * TrigPoly(0, np.array([-z0, 1.0])) ** order
    positive = TrigPoly.from_dict({0: lift, 1: 0.5, -1: 0.5})
    w = q.abs2() * positive
    roots = roots_on_torus(w)
    assert all(r.multiplicity % 2 == 0 for r in roots)
    assert len(roots) == len(locs)


def test_divide_out_examples():
    q = divide_out(PHI_PSI1, 0.0, 2)
    assert q.allclose(TrigPoly.constant(4 / 3), atol=1e-14)
    assert divide_out(sin2(0.0), 0.0, 2).allclose(TrigPoly.constant(1.0), atol=1e-15)
    with pytest.raises(DivisionRemainderError):
        divide_out(PHI_HAT1, 0.0, 2)
    with pytest.raises(DivisionRemainderError):
        divide_out(PHI_PSI1, 0.0, 4)


@given(trig_polys(max_degree=4), st.floats(0, 1), st.sampled_from([2, 4, 6]))
def test_divide_out_round_trip(q, x0, m):
    if q.is_zero:
        return
    p = q * sin_power(x0, m)
    back = divide_out(p, x0, m, tol=1e-9) * sin_power(x0, m)
    assert (back - p).max_abs() < 1e-9


@given(trig_polys())
def test_json_round_trip(p):
    again = TrigPoly.from_json(json.loads(json.dumps(p.to_json())))
    assert again.allclose(p, atol=0)


def test_conjugate_function_and_abs2():
    p = TrigPoly.from_dict({1: 2j, -3: 1 - 1j})
    t = np.linspace(0, 1, 11)
    assert np.allclose(p.conj()(t), np.conj(p(t)))
    assert np.allclose(p.abs2()(t), np.abs(p(t)) ** 2)
    assert p.abs2().is_real_valued(1e-15)

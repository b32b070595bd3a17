from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from conftest import piecewise_fns
from sispace.piecewise import (D_MAX, DegreeOverflowError, PiecewiseFn, box, bspline, combine,
                               convolve, decay_order, fourier, ft_bound_constant, hat,
                               inner_product, period_of_spectrum, psi1, shift_dilate)


def quad_inner(f, g, k=0):
    """Oracle: adaptive quadrature of f(t) conj(g(t + k)) piece by piece."""
    pts = sorted({float(b) for b in f.breakpoints} | {float(b) - k for b in g.breakpoints})
    total = 0.0
    for a, b in zip(pts, pts[1:]):
        total += integrate.quad(lambda t: np.real(f(t) * np.conj(g(t + k))), a, b)[0]
    return total


def quad_fourier(f, xi):
    a, b = (float(v) for v in f.support)
    pts = [float(v) for v in f.breakpoints]
    re = integrate.quad(lambda t: np.real(f(t) * np.exp(-2j * np.pi * t * xi)), a, b,
                        points=pts, limit=200, epsabs=1e-13)[0]
    im = integrate.quad(lambda t: np.imag(f(t) * np.exp(-2j * np.pi * t * xi)), a, b,
                        points=pts, limit=200, epsabs=1e-13)[0]
    return re + 1j * im


def test_box_values_and_integral():
    b = box()
    assert b(0.5) == 1
    assert b(1.5) == 0
    assert b.integral() == 1


def test_convolve_box_box_is_hat():
    c = convolve(box(), box())
    assert c.support == (0, 2)
    assert c(1.0) == pytest.approx(1.0, abs=1e-15)
    assert c(0.5) == pytest.approx(0.5, abs=1e-15)
    assert c == hat()


def test_bspline_orders():
    assert bspline(1) == box()
    assert bspline(2) == hat()
    b4 = bspline(4)
    assert b4.support == (0, 4)
    assert b4.integral() == 1
    # cubic B-spline at its centre: 2/3
    assert b4(2.0) == pytest.approx(2 / 3, abs=1e-14)


def test_shift_dilate_supports():
    assert shift_dilate(hat(), 2, 0).support == (0, 1)
    assert shift_dilate(hat(), 2, 2).support == (1, 2)
    assert shift_dilate(box(), 1, 3)(3.5) == 1


def test_combine_examples():
    h2 = shift_dilate(hat(), 2, 0)
    h2s = shift_dilate(hat(), 2, 2)
    assert combine([1, -1], [h2, h2s]) == psi1()
    assert combine([0], [box()]).is_zero
    two = combine([1, 1], [box(), box().shift(-1)])
    assert two.support == (0, 2)
    t = np.linspace(-0.5, 2.5, 301)
    assert np.array_equal(two(t), ((t >= 0) & (t < 2)).astype(float))


def test_inner_product_examples():
    assert inner_product(box(), box(), 0) == 1
    assert inner_product(hat(), hat(), 0) == Fraction(2, 3)
    assert inner_product(box(), box(), 1) == 0
    assert inner_product(hat(), hat(), 1) == Fraction(1, 6)


def test_fourier_closed_forms():
    xi = np.array([-2.7, -0.3, 1e-5, 0.25, 0.5, 1.7, 13.1])
    box_hat = np.sinc(xi) * np.exp(-1j * np.pi * xi)
    assert np.allclose(fourier(box(), xi), box_hat, atol=1e-14)
    assert fourier(box(), 0.0) == 1
    hat_hat = np.sinc(xi) ** 2 * np.exp(-2j * np.pi * xi)
    assert np.allclose(fourier(hat(), xi), hat_hat, atol=1e-14)


@pytest.mark.parametrize("xi", [1e-7, 1e-4, 0.01, 0.3, 0.9, 2.5, 40.0])
def test_fourier_against_quadrature(xi):
    f = bspline(3) - psi1() * 2
    assert abs(fourier(f, xi) - quad_fourier(f, xi)) < 1e-10


def test_degree_overflow():
    with pytest.raises(DegreeOverflowError):
        PiecewiseFn.make([0, 1], [[0] * (D_MAX + 1) + [1]])
    big = bspline(9)
    with pytest.raises(DegreeOverflowError):
        convolve(big, bspline(9))


def test_decay_and_bound_constants():
    assert decay_order(box()) == 1
    assert decay_order(hat()) == 2
    assert decay_order(bspline(4)) == 4
    assert ft_bound_constant(box()) == pytest.approx(1 / np.pi, rel=1e-12)
    assert ft_bound_constant(hat()) == pytest.approx(1 / np.pi ** 2, rel=1e-12)
    xi = np.linspace(0.05, 30, 2000)
    for f in (box(), hat(), psi1(), bspline(3)):
        p, C = decay_order(f), ft_bound_constant(f)
        assert np.all(np.abs(fourier(f, xi)) <= C * xi ** -p * (1 + 1e-9))


def test_period_of_spectrum():
    assert period_of_spectrum(hat()) == 1
    assert period_of_spectrum(psi1()) == 2


@given(piecewise_fns(), piecewise_fns(), st.integers(-3, 3))
def test_inner_product_conjugate_symmetry(f, g, k):
    a = inner_product(f, g, k)
    b = inner_product(g, f, -k)
    assert a == b  # real rational fixtures: conj is the identity


@given(piecewise_fns(), piecewise_fns(), st.integers(-2, 2))
def test_inner_product_matches_quadrature(f, g, k):
    assert abs(float(inner_product(f, g, k)) - quad_inner(f, g, k)) < 1e-9


def test_inner_product_complex_conjugate_symmetry():
    f = PiecewiseFn.make([0, 1, 2], [[1j, 2], [3, -1j]])
    g = PiecewiseFn.make([0, Fraction(1, 2), 1], [[1], [2j, 1]])
    for k in (-1, 0, 1):
        assert abs(inner_product(f, g, k) - np.conj(inner_product(g, f, -k))) < 1e-14


@given(piecewise_fns(), st.lists(st.floats(-2, 2, allow_nan=False), min_size=1, max_size=4))
def test_fourier_of_shift_combination(f, cs):
    ks = list(range(-1, len(cs) - 1))
    g = combine(cs, [f.shift(k) for k in ks])
    xi = np.random.default_rng(0).uniform(-5, 5, 50)
    symbol = sum(c * np.exp(2j * np.pi * k * xi) for c, k in zip(cs, ks))
    lhs, rhs = fourier(g, xi), fourier(f, xi) * symbol
    scale = max(1.0, float(np.max(np.abs(rhs))))
    assert np.max(np.abs(lhs - rhs)) / scale < 1e-10


@given(piecewise_fns(max_pieces=2), piecewise_fns(max_pieces=2))
def test_convolve_commutative(f, g):
    a, b = convolve(f, g), convolve(g, f)
    t = np.linspace(-5, 8, 1000)
    assert np.max(np.abs(a(t) - b(t))) < 1e-12


@given(piecewise_fns(max_pieces=2), piecewise_fns(max_pieces=2))
def test_convolution_theorem(f, g):
    xi = np.random.default_rng(1).uniform(-4, 4, 30)
    lhs = fourier(convolve(f, g), xi)
    rhs = fourier(f, xi) * fourier(g, xi)
    scale = max(1.0, float(np.max(np.abs(rhs))))
    assert np.max(np.abs(lhs - rhs)) / scale < 1e-10


def test_json_roundtrip():
    from sispace.generators import generator_from_dict
    for f in (box(), hat(), psi1(), bspline(3)):
        assert generator_from_dict(f.to_json()) == f

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from scipy.special import polygamma

from conftest import piecewise_fns
from sispace.bracket import (autocorrelation, autocorrelation_exact, bracket_numeric,
                             generator_bracket, hurwitz_tail, kar1_rhs, kar2_rhs,
                             second_derivative_relation, verify_identity_kar1,
                             verify_identity_kar2)
from sispace.piecewise import box, bspline, fourier, hat, inner_product, psi1

FIXTURES = {"box": box, "hat": hat, "psi1": psi1, "bspline3": lambda: bspline(3)}


def test_autocorrelation_examples():
    assert autocorrelation_exact(box()) == {0: 1}
    assert autocorrelation_exact(hat()) == {0: Fraction(2, 3), 1: Fraction(1, 6),
                                            -1: Fraction(1, 6)}
    ac = autocorrelation_exact(psi1())
    assert ac[1] / ac[0] == Fraction(-1, 2) and ac[-1] == ac[1]
    assert set(ac) == {-1, 0, 1}


def test_hurwitz_tail_against_polygamma():
    q = np.array([0.3, 1.0, 7.5, 1e4])
    # sum_{j>=0} (q + j)^-2 = psi'(q), (q + j)^-4 = psi'''(q) / 6
    assert np.allclose(hurwitz_tail(2, q), polygamma(1, q), rtol=1e-13, atol=0)
    assert np.allclose(hurwitz_tail(4, q), polygamma(3, q) / 6, rtol=1e-13, atol=0)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_autocorrelation_agrees_with_bracket(name):
    phi = FIXTURES[name]()
    t = np.random.default_rng(7).uniform(0, 1, 100)
    s = generator_bracket(phi, t, 2000)
    exact = autocorrelation(phi).real_values(t)
    rounding = 1e-14  # summing ~4000 squares in double precision
    assert np.max(np.abs(s.value - exact)) <= s.tail_bound + rounding
    raw = generator_bracket(phi, t, 2000, tail_correction=False)
    assert np.max(np.abs(raw.value - exact)) <= raw.tail_bound + rounding


def test_bracket_examples():
    s = bracket_numeric(lambda x: fourier(box(), x), 0.5, 10_000, decay=1, bound_const=1 / np.pi)
    assert abs(s.value[0] - 1) < 1e-6
    s = generator_bracket(hat(), 0.25, 1000)
    assert abs(s.value[0] - 2 / 3) <= s.tail_bound
    s = generator_bracket(psi1(), 0.0, 1000)
    assert abs(s.value[0]) <= s.tail_bound


def test_bracket_rejects_slow_decay():
    with pytest.raises(ValueError):
        bracket_numeric(lambda x: x, 0.1, 10, decay=0.5)


@given(piecewise_fns())
def test_autocorrelation_structure(f):
    assume(not f.is_zero)
    ac = autocorrelation_exact(f)
    length = f.support[1] - f.support[0]
    for k, v in ac.items():
        assert abs(k) < length
        assert ac.get(-k) == v  # c_{-k} = conj(c_k), real fixtures
    assert ac[0] == inner_product(f, f, 0)


def test_autocorrelation_complex_hermitian():
    from sispace.piecewise import PiecewiseFn
    f = PiecewiseFn.make([0, 1, Fraction(5, 2)], [[1j, 1], [2, -1j]])
    ac = autocorrelation_exact(f)
    for k, v in ac.items():
        assert ac[-k] == pytest.approx(np.conj(v), abs=1e-15)


def test_lattice_sum_examples():
    c = verify_identity_kar1(0.5, 10_000)
    assert c.rhs == pytest.approx(np.pi ** 2, rel=1e-15)
    assert c.rel_error < 1e-12
    c = verify_identity_kar2(0.5, 10_000)
    assert c.rhs == pytest.approx(np.pi ** 4 / 3, rel=1e-15)
    assert c.rel_error < 1e-12
    assert verify_identity_kar1(0.25, 10_000).rel_error < 1e-6
    assert verify_identity_kar2(0.25, 10_000).rel_error < 1e-6
    assert kar1_rhs(0.1) == pytest.approx(kar1_rhs(1.1), rel=1e-12)
    assert kar2_rhs(0.1) == pytest.approx(kar2_rhs(1.1), rel=1e-12)


def test_lattice_sum_lhs_against_polygamma_oracle():
    for xi in (0.013, 0.25, 0.77):
        oracle2 = polygamma(1, xi) + polygamma(1, 1 - xi)
        oracle4 = (polygamma(3, xi) + polygamma(3, 1 - xi)) / 6
        assert verify_identity_kar1(xi, 500).lhs == pytest.approx(oracle2, rel=1e-13)
        assert verify_identity_kar2(xi, 500).lhs == pytest.approx(oracle4, rel=1e-13)


def test_lattice_sum_rejects_integers():
    with pytest.raises(ValueError):
        verify_identity_kar1(1.0)


@pytest.mark.parametrize("xi", [0.05, 0.3, 0.5, 0.81])
def test_second_derivative_relation(xi):
    _, _, rel = second_derivative_relation(xi)
    assert rel < 1e-6

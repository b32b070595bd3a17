import numpy as np
import pytest
from hypothesis import given, strategies as st

from sispace.analysis import classify, profile
from sispace.bracket import autocorrelation
from sispace.orthonorm import (NotOrthonormalError, OrthoGenerator, check_onb, ortho_hat,
                               prescribe_phi, shifts_orthonormal)
from sispace.piecewise import box, bspline, fourier, hat, psi1
from sispace.trigpoly import TrigPoly, roots_on_torus

GRID = (np.arange(16) + 0.5) / 16


def random_h(rng, degree=10):
    lo = int(rng.integers(-degree, 1))
    hi = int(rng.integers(lo, lo + degree + 1))
    n = hi - lo + 1
    return TrigPoly(lo, rng.normal(size=n) + 1j * rng.normal(size=n))


def test_box_is_its_own_orthonormalization():
    g = OrthoGenerator.from_generator(box())
    xi = np.linspace(-3.3, 4.1, 57)
    assert np.allclose(g(xi), fourier(box(), xi), atol=1e-15)


def test_hat_orthonormalized_modulus():
    g = OrthoGenerator.from_generator(hat())
    xi = np.linspace(-3.3, 4.1, 57)
    want = np.abs(fourier(hat(), xi)) ** 2 * 3 / (2 + np.cos(2 * np.pi * xi))
    assert np.allclose(np.abs(g(xi)) ** 2, want, atol=1e-15)


@pytest.mark.parametrize("gen", [box, hat, psi1, lambda: bspline(4)],
                         ids=["box", "hat", "psi1", "bspline4"])
def test_check_onb(gen):
    dev, s = check_onb(OrthoGenerator.from_generator(gen()), GRID, 2000)
    assert dev < 1e-6
    assert s.tail_bound > 0


def test_check_onb_catches_wrong_normalizer():
    g = OrthoGenerator.from_generator(hat(), autocorrelation(hat()) * 2.0)
    dev, _ = check_onb(g, GRID, 500)
    assert dev == pytest.approx(0.5, abs=1e-6)


def test_limit_at_singular_point():
    g = OrthoGenerator.from_generator(psi1())
    # |psi1^(xi)|^2 / Phi(xi) -> finite limit at xi = 0 since both vanish to order 2
    near = g(1e-6)
    at = g(0.0)
    assert abs(at - near) < 1e-5
    # neighbours xi + k sum to one, including the singular point
    dev, _ = check_onb(g, np.array([0.0, 0.5]), 2000)
    assert dev < 1e-6


def test_unbounded_quotient_raises():
    # pairing box^ with a weight vanishing at 0 gives an unbounded quotient
    g = OrthoGenerator.from_generator(box(), autocorrelation(psi1()))
    with pytest.raises(ValueError):
        g(0.0)


def test_shifts_orthonormal():
    assert shifts_orthonormal(box())
    assert not shifts_orthonormal(hat())
    with pytest.raises(NotOrthonormalError):
        prescribe_phi(TrigPoly.constant(1.0), hat())


def test_prescribe_examples():
    phi = prescribe_phi(TrigPoly.from_dict({1: 0.5, -1: 0.5}), box())
    assert autocorrelation(phi).allclose(TrigPoly.from_dict({0: 0.5, 2: 0.25, -2: 0.25}),
                                         atol=1e-15)
    phi = prescribe_phi(TrigPoly.from_dict({0: 1.0, 1: -1.0}), box())
    assert autocorrelation(phi).allclose(TrigPoly.from_dict({0: 2.0, 1: -1.0, -1: -1.0}),
                                         atol=1e-15)


def test_prescribe_round_trip_random():
    rng = np.random.default_rng(11)
    for _ in range(25):
        h = random_h(rng)
        phi = prescribe_phi(h, box())
        assert (autocorrelation(phi) - h.abs2()).max_abs() < 1e-12


@pytest.mark.parametrize("m", [-3, 0, 2])
def test_unimodular_symbol_gives_orthonormal_shifts(m):
    phi = prescribe_phi(TrigPoly.monomial(m), box())
    g = OrthoGenerator.from_generator(phi)
    dev, _ = check_onb(g, GRID, 2000)
    assert dev < 1e-6


@given(st.lists(st.floats(0.05, 0.95), min_size=1, max_size=2, unique=True))
def test_singular_points_follow_zeros_of_h(zeros):
    zeros = [z for i, z in enumerate(zeros) if all(abs(z - w) > 0.1 for w in zeros[:i])]
    h = TrigPoly.constant(1.0)
    for x in zeros:
        h = h * TrigPoly(0, np.array([-np.exp(2j * np.pi * x), 1.0]))
    w = autocorrelation(prescribe_phi(h, box()))
    report = classify(w)
    want = roots_on_torus(h.abs2())
    assert np.allclose(report.profile.locations, [r.location for r in want], atol=1e-6)
    assert list(report.profile.orders) == [r.multiplicity // 2 for r in want]
